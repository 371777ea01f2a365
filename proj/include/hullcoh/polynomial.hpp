#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hullcoh/linalg.hpp"

namespace hullcoh {

/// Dense univariate polynomial over Q, coefficients from the constant term up.
/// The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& a) { return Poly({a}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const Rat& lead() const { return c_.back(); }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly p = *this;
    Rat l = lead();
    for (auto& a : p.c_) a /= l;
    return p;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division: a = q b + r with deg r < deg b.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw validation_error("polynomial division by zero");
    std::vector<Rat> rem = a.c_;
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> quot(a.c_.size() - b.c_.size() + 1);
    for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
      Rat f = rem[k + b.c_.size() - 1] / b.lead();
      quot[k] = f;
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  /// Monic gcd (zero if both are zero).
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Horner evaluation at a square matrix.
  Matrix evaluate(const Matrix& m) const {
    const std::size_t n = m.rows();
    Matrix acc(n, n);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * m;
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
  }
  Rat evaluate(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
      if (sgn(c_[i]) == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + hullcoh::to_string(c_[i]) + ")";
      if (i > 0) s += "x^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Characteristic polynomial det(x I - M) by Faddeev-LeVerrier (exact over Q).
inline Poly characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw validation_error("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    c[n - k] = -(m * mk).trace() / static_cast<long>(k);
  }
  return Poly(std::move(c));
}

/// Minimal polynomial from the first linear dependency among I, M, M^2, ...
inline Poly minimal_polynomial(const Matrix& m) {
  if (!m.is_square()) throw validation_error("minimal polynomial of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Poly::constant(1);
  std::vector<Vec> powers;
  Matrix p = Matrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    Vec flat(p.data().begin(), p.data().end());
    if (k > 0) {
      auto coeffs = solve(Matrix::from_columns(n * n, powers), flat);
      if (coeffs) {
        std::vector<Rat> mp(k + 1);
        for (std::size_t i = 0; i < k; ++i) mp[i] = -(*coeffs)[i];
        mp[k] = 1;
        return Poly(std::move(mp));
      }
    }
    powers.push_back(std::move(flat));
    p = p * m;
  }
  throw audit_error("minimal polynomial search exceeded the Cayley-Hamilton bound");
}

/// Squarefree part p / gcd(p, p').
inline Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  Poly g = Poly::gcd(p, p.derivative());
  return Poly::divmod(p, g).first.monic();
}

inline bool is_squarefree(const Poly& p) { return Poly::gcd(p, p.derivative()).degree() == 0; }

}  // namespace hullcoh
