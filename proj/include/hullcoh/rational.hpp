#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "hullcoh/error.hpp"

namespace hullcoh {

/// Exact rational number. gmpxx keeps every arithmetic result canonical
/// (gcd(num, den) = 1, den > 0).
using Rat = mpq_class;

/// Parses "p", "-p" or "p/q" with decimal integers. Returns nullopt on any
/// malformed text, including a zero denominator.
inline std::optional<Rat> try_parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s, bool allow_sign) {
    if (!s.empty() && allow_sign && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer(num, true)) return std::nullopt;
  if (slash != std::string_view::npos && !is_integer(den, false)) return std::nullopt;

  std::string num_str(num);
  if (!num_str.empty() && num_str[0] == '+') num_str.erase(0, 1);
  mpz_class n(num_str, 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    d = mpz_class(std::string(den), 10);
    if (d == 0) return std::nullopt;
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline Rat parse_rational(std::string_view text) {
  auto r = try_parse_rational(text);
  if (!r) throw parse_error("malformed rational \"" + std::string(text) + "\"");
  return *r;
}

/// Shorthand for literals in code and tests: q("1/2").
/// n/d in lowest terms. The two-argument mpq_class constructor does not
/// canonicalize, so every fraction built from parts goes through here.
inline Rat frac(long n, long d) {
  if (d == 0) throw validation_error("zero denominator");
  Rat r(n, 1);
  r /= d;
  return r;
}

inline Rat q(std::string_view text) { return parse_rational(text); }

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat& r) { return r.get_str(10); }

}  // namespace hullcoh
