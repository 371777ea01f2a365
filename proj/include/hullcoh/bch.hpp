#pragma once

#include "hullcoh/lie_algebra.hpp"
#include "hullcoh/mpoly.hpp"

namespace hullcoh {

inline constexpr std::size_t kMaxBchClass = 4;

/// Vector in u whose coordinates are polynomials.
using PolyVec = std::vector<MPoly>;

inline PolyVec poly_bracket(const LieAlgebra& u, const PolyVec& x, const PolyVec& y) {
  const std::size_t n = u.dim();
  const std::size_t vars = x.empty() ? 0 : x[0].vars();
  PolyVec out(n, MPoly(vars));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      MPoly xy = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(u.c(i, j, k)) != 0) out[k] += xy * u.c(i, j, k);
    }
  }
  return out;
}

namespace detail {

// Degree <= 4 BCH series; exact on algebras of class <= 4.
template <class V, class Br, class Add>
V bch_terms(const V& x, const V& y, Br br, Add axpy) {
  V xy = br(x, y);
  V xxy = br(x, xy);
  V yxy = br(y, xy);
  V yxxy = br(y, xxy);
  V z = x;
  axpy(z, y, 1);
  axpy(z, xy, frac(1, 2));
  axpy(z, xxy, frac(1, 12));
  axpy(z, yxy, frac(-1, 12));
  axpy(z, yxxy, frac(-1, 24));
  return z;
}

inline void require_bch_class(const LieAlgebra& u) {
  auto cls = nilpotency_class(u);
  if (!cls) throw validation_error("exp-coordinate multiplication needs a nilpotent Lie algebra");
  if (*cls > kMaxBchClass)
    throw validation_error("nilpotency class " + std::to_string(*cls) + " exceeds the BCH bound " +
                           std::to_string(kMaxBchClass));
}

}  // namespace detail

/// log(exp x exp y) in u.
inline Vec bch(const LieAlgebra& u, const Vec& x, const Vec& y) {
  detail::require_bch_class(u);
  return detail::bch_terms(
      x, y, [&](const Vec& a, const Vec& b) { return u.bracket(a, b); },
      [](Vec& z, const Vec& v, const Rat& s) {
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += s * v[i];
      });
}

inline PolyVec bch(const LieAlgebra& u, const PolyVec& x, const PolyVec& y) {
  detail::require_bch_class(u);
  return detail::bch_terms(
      x, y, [&](const PolyVec& a, const PolyVec& b) { return poly_bracket(u, a, b); },
      [](PolyVec& z, const PolyVec& v, const Rat& s) {
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += v[i] * s;
      });
}

inline PolyVec constant_polyvec(const Vec& v, std::size_t vars) {
  PolyVec out;
  for (const auto& c : v) out.push_back(MPoly::constant(vars, c));
  return out;
}

inline PolyVec coordinate_polyvec(std::size_t n) {
  PolyVec out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(MPoly::variable(n, i));
  return out;
}

inline PolyVec apply_linear(const Matrix& a, const PolyVec& x) {
  const std::size_t vars = x.empty() ? 0 : x[0].vars();
  PolyVec out(a.rows(), MPoly(vars));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) out[i] += x[j] * a(i, j);
  return out;
}

}  // namespace hullcoh
