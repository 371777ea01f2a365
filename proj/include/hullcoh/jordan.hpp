#pragma once

#include "hullcoh/polynomial.hpp"

namespace hullcoh {

inline bool is_nilpotent_matrix(const Matrix& m) {
  if (!m.is_square()) return false;
  if (m.rows() == 0) return true;
  Matrix p = m;
  for (std::size_t k = 1; k < m.rows(); ++k) {
    if (p.is_zero()) return true;
    p = p * m;
  }
  return p.is_zero();
}

inline bool is_unipotent_matrix(const Matrix& m) {
  return m.is_square() && is_nilpotent_matrix(m - Matrix::identity(m.rows()));
}

/// Semisimple over the algebraic closure: the minimal polynomial is squarefree.
inline bool is_semisimple_matrix(const Matrix& m) {
  return m.is_square() && (m.rows() == 0 || is_squarefree(minimal_polynomial(m)));
}

struct AdditiveJordan {
  Matrix semisimple;
  Matrix nilpotent;
};

struct MultiplicativeJordan {
  Matrix semisimple;
  Matrix unipotent;
};

/// M = S + N with S semisimple, N nilpotent, SN = NS; both are polynomials in M.
///
/// Newton iteration S <- S - p(S) p'(S)^{-1} on the squarefree part p of the
/// characteristic polynomial. Every iterate is a polynomial in M, p'(S) stays
/// invertible, and p(S) converges to zero quadratically in the nilpotent
/// filtration, so at most ceil(log2 n) + 1 steps are needed.
inline AdditiveJordan jordan_chevalley_additive(const Matrix& m) {
  if (!m.is_square()) throw validation_error("Jordan-Chevalley decomposition needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {m, m};
  Poly p = squarefree_part(characteristic_polynomial(m));
  Poly dp = p.derivative();
  Matrix s = m;
  std::size_t max_steps = 2;
  while ((std::size_t{1} << (max_steps - 2)) < n) ++max_steps;
  for (std::size_t step = 0;; ++step) {
    Matrix ps = p.evaluate(s);
    if (ps.is_zero()) break;
    if (step == max_steps) throw audit_error("Jordan-Chevalley Newton iteration did not converge");
    auto inv = try_inverse(dp.evaluate(s));
    if (!inv) throw audit_error("Jordan-Chevalley Newton step hit a singular derivative");
    s = s - ps * *inv;
  }
  AdditiveJordan out{s, m - s};
  if (out.semisimple * out.nilpotent != out.nilpotent * out.semisimple)
    throw audit_error("Jordan-Chevalley certificate: parts do not commute");
  if (!is_nilpotent_matrix(out.nilpotent)) throw audit_error("Jordan-Chevalley certificate: N not nilpotent");
  if (!is_semisimple_matrix(out.semisimple))
    throw audit_error("Jordan-Chevalley certificate: minpoly(S) not squarefree");
  return out;
}

/// A = A_s A_u = A_u A_s for invertible A.
inline MultiplicativeJordan jordan_chevalley_multiplicative(const Matrix& a) {
  auto inv = try_inverse(a);
  if (!inv) throw validation_error("multiplicative Jordan-Chevalley decomposition of a singular matrix");
  auto [s, nil] = jordan_chevalley_additive(a);
  (void)nil;
  MultiplicativeJordan out{s, inverse(s) * a};
  if (!is_unipotent_matrix(out.unipotent)) throw audit_error("multiplicative Jordan-Chevalley: A_u not unipotent");
  if (out.semisimple * out.unipotent != out.unipotent * out.semisimple)
    throw audit_error("multiplicative Jordan-Chevalley: parts do not commute");
  return out;
}

/// log(U) = sum_{k>=1} (-1)^{k+1} (U - I)^k / k, a finite sum for unipotent U.
inline Matrix nilpotent_log(const Matrix& u) {
  if (!u.is_square()) throw validation_error("log of non-square matrix");
  const std::size_t n = u.rows();
  Matrix x = u - Matrix::identity(n);
  if (!is_nilpotent_matrix(x)) throw validation_error("log: matrix is not unipotent");
  Matrix result(n, n);
  Matrix p = x;
  for (std::size_t k = 1; k < n + 1 && !p.is_zero(); ++k) {
    Rat coef = frac(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    result += p * coef;
    p = p * x;
  }
  return result;
}

/// exp(N) = sum_k N^k / k!, a finite sum for nilpotent N.
inline Matrix unipotent_exp(const Matrix& nil) {
  if (!nil.is_square()) throw validation_error("exp of non-square matrix");
  const std::size_t n = nil.rows();
  if (!is_nilpotent_matrix(nil)) throw validation_error("exp: matrix is not nilpotent");
  Matrix result = Matrix::identity(n);
  Matrix p = nil;
  Rat fact = 1;
  for (std::size_t k = 1; k < n + 1 && !p.is_zero(); ++k) {
    fact *= static_cast<unsigned long>(k);
    result += p * (1 / fact);
    p = p * nil;
  }
  return result;
}

}  // namespace hullcoh
