#pragma once

#include <vector>

#include "hullcoh/linalg.hpp"

namespace hullcoh {

/// Finite cochain complex C^0 -> C^1 -> ... -> C^top over Q.
/// differentials[k] maps C^k to C^{k+1} (dims[k+1] x dims[k]).
struct CochainComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;

  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }

  /// d_k as a matrix, with the zero maps out of the top degree made explicit.
  Matrix d(std::size_t k) const {
    if (k < differentials.size()) return differentials[k];
    return Matrix(0, dims.at(k));
  }

  bool d_squared_zero() const {
    for (std::size_t k = 0; k + 1 < differentials.size(); ++k)
      if (!(differentials[k + 1] * differentials[k]).is_zero()) return false;
    return true;
  }
};

/// H^k presented by representative cocycles and a projection onto their span
/// modulo coboundaries.
struct CohomologyDegree {
  Matrix representatives;  ///< cochain_dim x h, cocycles
  Matrix projection;       ///< h x cochain_dim, exact on cocycles, kills coboundaries
  std::size_t dim() const { return representatives.cols(); }
};

struct CohomologyBasis {
  std::vector<CohomologyDegree> degrees;
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees) out.push_back(d.dim());
    return out;
  }
};

/// Cocycles modulo coboundaries per degree. Representatives are the pivot
/// columns of [coboundary basis | cocycle basis], so they are deterministic.
inline CohomologyBasis compute_cohomology(const CochainComplex& c) {
  CohomologyBasis out;
  for (std::size_t k = 0; k < c.dims.size(); ++k) {
    Subspace cocycles = kernel_basis(c.d(k));
    Subspace coboundaries = k == 0 ? Subspace(c.dims[0]) : column_space(c.d(k - 1));
    auto qb = quotient_basis(cocycles, coboundaries);
    out.degrees.push_back({qb.lifts, qb.projection});
  }
  return out;
}

/// Matrix of the map H(src) -> H(dst) induced by a cochain map in one degree.
inline Matrix induced_on_cohomology(const CohomologyDegree& src, const CohomologyDegree& dst,
                                    const Matrix& cochain_map) {
  if (src.dim() == 0 || dst.dim() == 0) return Matrix(dst.dim(), src.dim());
  return dst.projection * (cochain_map * src.representatives);
}

/// f_{k+1} d_k = d'_k f_k in every degree.
inline bool is_cochain_map(const CochainComplex& src, const CochainComplex& dst, const std::vector<Matrix>& f) {
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    if (k >= src.differentials.size()) break;
    if (f[k + 1] * src.differentials[k] != dst.differentials[k] * f[k]) return false;
  }
  return true;
}

/// Dimension of ker and coker of an endomorphism of a finite-dimensional space.
struct KerCoker {
  std::size_t ker;
  std::size_t coker;
};
inline KerCoker ker_coker(const Matrix& endo) {
  std::size_t r = rank(endo);
  return {endo.cols() - r, endo.rows() - r};
}

}  // namespace hullcoh
