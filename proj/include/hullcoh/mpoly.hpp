#pragma once

#include <map>
#include <vector>

#include "hullcoh/matrix.hpp"

namespace hullcoh {

/// Exponent vector; all monomials of one polynomial share its length.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

/// Monomials in `vars` variables of total degree <= d, graded then lexicographic.
inline std::vector<Monomial> monomials_up_to(std::size_t vars, unsigned d) {
  std::vector<Monomial> out;
  Monomial m(vars, 0);
  for (unsigned deg = 0; deg <= d; ++deg) {
    // enumerate compositions of deg into vars parts
    std::vector<Monomial> layer;
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (i + 1 == vars) {
        m[i] = left;
        layer.push_back(m);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        m[i] = e;
        self(self, i + 1, left - e);
      }
    };
    if (vars == 0) {
      if (deg == 0) out.push_back({});
      continue;
    }
    rec(rec, 0, deg);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// Sparse polynomial in a fixed number of variables over Q.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::size_t vars) : vars_(vars) {}

  static MPoly constant(std::size_t vars, const Rat& c) {
    MPoly p(vars);
    p.add_term(Monomial(vars, 0), c);
    return p;
  }
  static MPoly variable(std::size_t vars, std::size_t i) {
    MPoly p(vars);
    Monomial m(vars, 0);
    m[i] = 1;
    p.add_term(m, 1);
    return p;
  }

  std::size_t vars() const noexcept { return vars_; }
  const std::map<Monomial, Rat>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  void add_term(const Monomial& m, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator*=(const Rat& s) {
    if (sgn(s) == 0) terms_.clear();
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator*(MPoly a, const Rat& s) { return a *= s; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a += b * Rat(-1); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out(a.vars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        out.add_term(m, ca * cb);
      }
    return out;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  Rat evaluate(const Vec& x) const {
    Rat s = 0;
    for (const auto& [m, c] : terms_) {
      Rat t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned e = 0; e < m[i]; ++e) t *= x[i];
      s += t;
    }
    return s;
  }

  /// p(q_0, ..., q_{vars-1}); the q_i share a variable count.
  MPoly substitute(const std::vector<MPoly>& q) const {
    const std::size_t out_vars = q.empty() ? 0 : q[0].vars();
    MPoly out(out_vars);
    // powers cached per variable
    std::vector<std::vector<MPoly>> pw(q.size());
    auto power_of = [&](std::size_t i, unsigned e) -> const MPoly& {
      auto& v = pw[i];
      if (v.empty()) v.push_back(constant(out_vars, 1));
      while (v.size() <= e) v.push_back(v.back() * q[i]);
      return v[e];
    };
    for (const auto& [m, c] : terms_) {
      MPoly t = constant(out_vars, c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t = t * power_of(i, m[i]);
      out += t;
    }
    return out;
  }

 private:
  std::size_t vars_ = 0;
  std::map<Monomial, Rat> terms_;
};

}  // namespace hullcoh
