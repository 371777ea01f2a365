#pragma once

#include <span>
#include <vector>

#include "hullcoh/cochain.hpp"
#include "hullcoh/exterior.hpp"
#include "hullcoh/lie_algebra.hpp"

namespace hullcoh {

/// Representation of a Lie algebra on Q^dim: action[i] = rho(e_i).
struct LieModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;

  static LieModule trivial(const LieAlgebra& g, std::size_t dim = 1) {
    return {dim, std::vector<Matrix>(g.dim(), Matrix(dim, dim))};
  }

  Matrix rho(const Vec& x) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sgn(x[i]) != 0) m += action[i] * x[i];
    return m;
  }
};

/// rho([e_i, e_j]) = [rho(e_i), rho(e_j)] for all pairs.
inline void validate_module(const LieAlgebra& g, const LieModule& v) {
  if (v.action.size() != g.dim()) throw validation_error("module has the wrong number of action matrices");
  for (const auto& m : v.action)
    if (m.rows() != v.dim || m.cols() != v.dim) throw validation_error("module action matrix has the wrong size");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      if (v.rho(g.bracket_basis(i, j)) != commutator(v.action[i], v.action[j]))
        throw validation_error("module law fails for the pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

/// Chevalley-Eilenberg complex Hom(wedge^k g, V). A cochain in degree k is laid
/// out subset-major: index = position(I) * dim V + v with I in lexicographic order.
struct CEComplex {
  LieAlgebra g;
  LieModule module;
  ExteriorIndex index;
  CochainComplex complex;

  std::size_t offset(Mask m) const { return index.position(m) * module.dim; }
};

inline CEComplex build_ce_complex(const LieAlgebra& g, const LieModule& v) {
  validate_module(g, v);
  const std::size_t n = g.dim(), dv = v.dim;
  CEComplex out{g, v, ExteriorIndex(n), {}};
  const auto& idx = out.index;
  for (std::size_t k = 0; k <= n; ++k) out.complex.dims.push_back(idx.count(k) * dv);

  const Matrix id = Matrix::identity(dv);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix d(out.complex.dims[k + 1], out.complex.dims[k]);
    for (Mask jm : idx.masks(k + 1)) {
      const std::size_t row = idx.position(jm) * dv;
      auto js = mask_indices(jm);
      for (std::size_t i = 0; i < js.size(); ++i) {
        Rat sign = i % 2 == 0 ? 1 : -1;
        d.add_block(row, out.offset(jm & ~(Mask{1} << js[i])), v.action[js[i]], sign);
      }
      for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = a + 1; b < js.size(); ++b) {
          Mask rest = jm & ~(Mask{1} << js[a]) & ~(Mask{1} << js[b]);
          auto rest_idx = mask_indices(rest);
          Rat sign = (a + b) % 2 == 0 ? 1 : -1;
          for (std::size_t m = 0; m < n; ++m) {
            const Rat& c = g.c(js[a], js[b], m);
            if (sgn(c) == 0) continue;
            std::vector<std::size_t> seq{m};
            seq.insert(seq.end(), rest_idx.begin(), rest_idx.end());
            auto w = sort_wedge(seq);
            if (!w) continue;
            d.add_block(row, out.offset(w->mask), id, sign * c * w->sign);
          }
        }
    }
    out.complex.differentials.push_back(std::move(d));
  }
  if (!out.complex.d_squared_zero()) throw audit_error("Chevalley-Eilenberg differential fails d^2 = 0");
  return out;
}

inline CohomologyBasis cohomology(const CEComplex& c) { return compute_cohomology(c.complex); }

/// (automorphism of g, operator on V) with m rho(x) m^{-1} = rho(a x).
struct GroupPair {
  Matrix automorphism;
  Matrix module_op;
};

/// (derivation of g, operator on V) with [sigma, rho(x)] = rho(D x).
struct InfinitesimalPair {
  Matrix derivation;
  Matrix module_op;
};

inline void validate_pair(const CEComplex& c, const GroupPair& p) {
  const auto& g = c.g;
  const auto& v = c.module;
  if (!is_automorphism(g, p.automorphism)) throw validation_error("not a module-automorphism pair: bracket not preserved");
  if (p.module_op.rows() != v.dim || p.module_op.cols() != v.dim || !try_inverse(p.module_op))
    throw validation_error("not a module-automorphism pair: module operator not invertible");
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (p.module_op * v.action[i] != v.rho(p.automorphism.column(i)) * p.module_op)
      throw validation_error("not a module-automorphism pair: compatibility fails at basis vector " + std::to_string(i));
}

inline void validate_pair(const CEComplex& c, const InfinitesimalPair& p) {
  const auto& g = c.g;
  const auto& v = c.module;
  if (!is_derivation(g, p.derivation)) throw validation_error("not a derivation pair: D is not a derivation");
  if (p.module_op.rows() != v.dim || p.module_op.cols() != v.dim)
    throw validation_error("not a derivation pair: module operator has the wrong size");
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (commutator(p.module_op, v.action[i]) != v.rho(p.derivation.column(i)))
      throw validation_error("not a derivation pair: compatibility fails at basis vector " + std::to_string(i));
}

/// (Phi w)(x_1..x_k) = m w(a^{-1} x_1, ..., a^{-1} x_k); block (J, I) = minor_{I,J}(a^{-1}) m.
inline std::vector<Matrix> group_cochain_map(const CEComplex& c, const GroupPair& p) {
  validate_pair(c, p);
  const std::size_t n = c.g.dim(), dv = c.module.dim;
  Matrix ainv = inverse(p.automorphism);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix e = exterior_power(ainv, k, c.index);
    Matrix f(c.complex.dims[k], c.complex.dims[k]);
    const auto& masks = c.index.masks(k);
    for (std::size_t jr = 0; jr < masks.size(); ++jr)
      for (std::size_t ir = 0; ir < masks.size(); ++ir)
        if (sgn(e(ir, jr)) != 0) f.add_block(jr * dv, ir * dv, p.module_op, e(ir, jr));
    out.push_back(std::move(f));
  }
  if (!is_cochain_map(c.complex, c.complex, out)) throw audit_error("group-induced map is not a cochain map");
  return out;
}

/// (L w)(x_1..x_k) = sigma w(x_1..x_k) - sum_i w(x_1..D x_i..x_k).
inline std::vector<Matrix> derivation_cochain_map(const CEComplex& c, const InfinitesimalPair& p) {
  validate_pair(c, p);
  const std::size_t n = c.g.dim(), dv = c.module.dim;
  const Matrix id = Matrix::identity(dv);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix f(c.complex.dims[k], c.complex.dims[k]);
    for (Mask jm : c.index.masks(k)) {
      const std::size_t row = c.offset(jm);
      f.add_block(row, row, p.module_op);
      auto js = mask_indices(jm);
      for (std::size_t pos = 0; pos < js.size(); ++pos)
        for (std::size_t m = 0; m < n; ++m) {
          const Rat& dm = p.derivation(m, js[pos]);
          if (sgn(dm) == 0) continue;
          auto seq = js;
          seq[pos] = m;
          auto w = sort_wedge(seq);
          if (!w) continue;
          f.add_block(row, c.offset(w->mask), id, -dm * w->sign);
        }
    }
    out.push_back(std::move(f));
  }
  if (!is_cochain_map(c.complex, c.complex, out)) throw audit_error("derivation-induced map is not a cochain map");
  return out;
}

inline std::vector<Matrix> project_to_cohomology(const CohomologyBasis& h, const std::vector<Matrix>& cochain_maps) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < h.degrees.size(); ++k)
    out.push_back(induced_on_cohomology(h.degrees[k], h.degrees[k], cochain_maps[k]));
  return out;
}

inline std::vector<Matrix> induced_map_group(const CEComplex& c, const CohomologyBasis& h, const GroupPair& p) {
  return project_to_cohomology(h, group_cochain_map(c, p));
}

inline std::vector<Matrix> induced_map_derivation(const CEComplex& c, const CohomologyBasis& h,
                                                  const InfinitesimalPair& p) {
  return project_to_cohomology(h, derivation_cochain_map(c, p));
}

/// Per-degree invariant subspaces of H^k in cohomology coordinates.
struct InvariantCohomology {
  std::vector<Subspace> degrees;
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& s : degrees) out.push_back(s.dim());
    return out;
  }
};

/// Joint fixed space of the group-induced maps intersected with the joint
/// kernel of the infinitesimal maps, degree by degree.
inline InvariantCohomology invariant_cohomology(const CEComplex& c, const CohomologyBasis& h,
                                                const std::vector<GroupPair>& group_pairs,
                                                const std::vector<InfinitesimalPair>& infinitesimal_pairs) {
  std::vector<std::vector<Matrix>> gmaps, imaps;
  for (const auto& p : group_pairs) gmaps.push_back(induced_map_group(c, h, p));
  for (const auto& p : infinitesimal_pairs) imaps.push_back(induced_map_derivation(c, h, p));
  InvariantCohomology out;
  for (std::size_t k = 0; k < h.degrees.size(); ++k) {
    const std::size_t hk = h.degrees[k].dim();
    std::vector<Matrix> gk, ik;
    for (const auto& m : gmaps) gk.push_back(m[k]);
    for (const auto& m : imaps) ik.push_back(m[k]);
    out.degrees.push_back(Subspace::intersect(joint_fixed_subspace(gk, hk), joint_kernel(ik, hk)));
  }
  return out;
}

/// Convenience: dims of H^k(g, V).
inline std::vector<std::size_t> ce_cohomology_dims(const LieAlgebra& g, const LieModule& v) {
  return cohomology(build_ce_complex(g, v)).dims();
}

}  // namespace hullcoh
