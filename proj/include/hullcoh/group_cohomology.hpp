#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "hullcoh/ce.hpp"
#include "hullcoh/cochain.hpp"
#include "hullcoh/resolution.hpp"

namespace hullcoh {

/// Hom_Gamma_i(F, V) for the level-i part of the resolution. Masks are
/// subsets of {i..n-1}; they are indexed after shifting down by i.
struct TowerLevel {
  std::size_t level = 0;
  ExteriorIndex index;
  CochainComplex complex;

  std::size_t position(Mask global) const { return index.position(global >> level); }
  Mask global_mask(Mask local) const { return local << level; }
};

inline TowerLevel build_tower_level(const Resolution& res, const ModuleEvaluator& ev, std::size_t level) {
  const std::size_t n = res.rank(), dv = ev.dim();
  TowerLevel t{level, ExteriorIndex(n - level), {}};
  for (std::size_t k = 0; k <= n - level; ++k) t.complex.dims.push_back(t.index.count(k) * dv);
  for (std::size_t k = 0; k + level < n; ++k) {
    Matrix d(t.complex.dims[k + 1], t.complex.dims[k]);
    for (Mask local : t.index.masks(k + 1)) {
      const std::size_t row = t.index.position(local) * dv;
      for (const auto& [c, v] : res.boundary(t.global_mask(local)))
        d.add_block(row, t.position(c.mask) * dv, ev.rho(c.g), v);
    }
    t.complex.differentials.push_back(std::move(d));
  }
  if (!t.complex.d_squared_zero()) throw audit_error("tower complex fails d^2 = 0 at level " + std::to_string(level));
  return t;
}

/// Cochain-level action of t_i on C(Gamma_{i+1}): (t* f)(b_M) = rho(t_i) f(tau_i(b_M)).
inline std::vector<Matrix> tower_t_action(const Resolution& res, const ModuleEvaluator& ev, const TowerLevel& lower) {
  const std::size_t i = lower.level - 1, dv = ev.dim();
  const Matrix& ti = ev.generator(i, false);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < lower.complex.dims.size(); ++k) {
    Matrix f(lower.complex.dims[k], lower.complex.dims[k]);
    for (Mask local : lower.index.masks(k)) {
      const std::size_t row = lower.index.position(local) * dv;
      for (const auto& [c, v] : res.tau(i, lower.global_mask(local)))
        f.add_block(row, lower.position(c.mask) * dv, ti * ev.rho(c.g), v);
    }
    out.push_back(std::move(f));
  }
  if (!is_cochain_map(lower.complex, lower.complex, out))
    throw audit_error("t-action is not a cochain map at level " + std::to_string(lower.level));
  return out;
}

/// dim H^k(Gamma_i) = dim coker(t* - 1 on H^{k-1}(Gamma_{i+1})) + dim ker(t* - 1 on H^k(Gamma_{i+1})).
struct WangAudit {
  std::size_t level;
  std::size_t degree;
  std::size_t dim;
  std::size_t coker;
  std::size_t ker;
  bool ok() const { return dim == coker + ker; }
};

struct GroupCohomology {
  std::vector<std::size_t> dims;
  CohomologyBasis basis;
  CochainComplex complex;
  std::vector<WangAudit> wang;
  bool h0_matches_fixed_space = false;

  bool audits_pass() const {
    for (const auto& w : wang)
      if (!w.ok()) return false;
    return h0_matches_fixed_space;
  }
};

/// H*(Gamma, V) from the tower, with the Wang audit at every level and the
/// H^0 cross-check against the joint fixed space of the generator matrices.
inline GroupCohomology group_cohomology(const Resolution& res, const GammaModule& m) {
  const auto& p = res.collector().presentation();
  validate_module(p, m);
  ModuleEvaluator ev(res.collector(), m);
  const std::size_t n = p.n;

  GroupCohomology out;
  TowerLevel lower = build_tower_level(res, ev, n);
  CohomologyBasis lower_h = compute_cohomology(lower.complex);
  for (std::size_t i = n; i-- > 0;) {
    TowerLevel level = build_tower_level(res, ev, i);
    CohomologyBasis h = compute_cohomology(level.complex);
    auto t = tower_t_action(res, ev, lower);
    std::vector<KerCoker> kc;
    for (std::size_t k = 0; k < lower_h.degrees.size(); ++k) {
      Matrix tk = induced_on_cohomology(lower_h.degrees[k], lower_h.degrees[k], t[k]);
      kc.push_back(ker_coker(tk - Matrix::identity(tk.rows())));
    }
    for (std::size_t k = 0; k < h.degrees.size(); ++k) {
      std::size_t coker = k > 0 && k - 1 < kc.size() ? kc[k - 1].coker : 0;
      std::size_t ker = k < kc.size() ? kc[k].ker : 0;
      out.wang.push_back({i, k, h.degrees[k].dim(), coker, ker});
    }
    lower = std::move(level);
    lower_h = std::move(h);
  }
  out.basis = std::move(lower_h);
  out.complex = std::move(lower.complex);
  out.dims = out.basis.dims();

  Subspace fixed = joint_fixed_subspace(m.rho, m.dim);
  out.h0_matches_fixed_space = fixed == Subspace::span(out.basis.degrees[0].representatives) ||
                               (fixed.dim() == 0 && out.dims[0] == 0);
  for (const auto& w : out.wang)
    if (!w.ok())
      throw audit_error("Wang exactness fails at level " + std::to_string(w.level) + " degree " + std::to_string(w.degree));
  if (!out.h0_matches_fixed_space) throw audit_error("H^0 differs from the joint fixed space of the generators");
  return out;
}

inline GroupCohomology group_cohomology(const PolyZPresentation& p, const GammaModule& m) {
  validate_presentation(p);
  Resolution res(p);
  return group_cohomology(res, m);
}

/// Per-degree maps H^k(Gamma, M) -> H^k(Gamma, M') induced by an equivariant f.
inline std::vector<Matrix> induced_by_module_map(const PolyZPresentation& p, const GammaModule& src, const GammaModule& dst,
                                                 const Matrix& f, const GroupCohomology& hs, const GroupCohomology& hd) {
  if (f.rows() != dst.dim || f.cols() != src.dim) throw validation_error("module map has the wrong shape");
  for (std::size_t i = 0; i < p.n; ++i)
    if (f * src.rho[i] != dst.rho[i] * f)
      throw validation_error("module map is not equivariant for generator " + p.labels[i]);
  std::vector<Matrix> cochain;
  for (std::size_t k = 0; k <= p.n; ++k) {
    const std::size_t count = binomial(p.n, k);
    Matrix m(count * dst.dim, count * src.dim);
    for (std::size_t b = 0; b < count; ++b) m.set_block(b * dst.dim, b * src.dim, f);
    cochain.push_back(std::move(m));
  }
  if (!is_cochain_map(hs.complex, hd.complex, cochain)) throw audit_error("module map does not commute with the differentials");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k <= p.n; ++k) out.push_back(induced_on_cohomology(hs.basis.degrees[k], hd.basis.degrees[k], cochain[k]));
  return out;
}

// ---------------------------------------------------------------------------
// Koszul model for Z^n

/// Koszul complex of commuting invertible rho(e_i): the CE complex of the
/// abelian Lie algebra acting through X_i = rho(e_i) - 1.
struct KoszulModel {
  std::vector<Matrix> rho;
  CEComplex ce;
  CohomologyBasis basis;
};

inline KoszulModel koszul_cohomology_Zn(const std::vector<Matrix>& rho, std::size_t dim) {
  const std::size_t n = rho.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i].rows() != dim || rho[i].cols() != dim || !try_inverse(rho[i]))
      throw validation_error("Koszul model needs invertible matrices of the module dimension");
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commutator(rho[i], rho[j]).is_zero()) throw validation_error("Koszul model needs commuting matrices");
  }
  LieModule x{dim, {}};
  for (const auto& r : rho) x.action.push_back(r - Matrix::identity(dim));
  CEComplex ce = build_ce_complex(LieAlgebra::abelian(n), x);
  CohomologyBasis h = cohomology(ce);
  return {rho, std::move(ce), std::move(h)};
}

namespace detail {

/// S(X, a) = 1 + X + ... + X^{a-1} for a > 0, -(X^{-1} + ... + X^{a}) for a < 0.
inline Matrix geometric_sum(const Matrix& x, const Matrix& xinv, std::int64_t a) {
  const std::size_t d = x.rows();
  Matrix s(d, d);
  Matrix p = Matrix::identity(d);
  if (a > 0) {
    for (std::int64_t l = 0; l < a; ++l, p = p * x) s += p;
  } else {
    for (std::int64_t l = -1; l >= a; --l) {
      p = p * xinv;
      s -= p;
    }
  }
  return s;
}

/// Determinant of a square array of pairwise commuting matrices (Leibniz).
inline Matrix commuting_determinant(const std::vector<std::vector<Matrix>>& a, std::size_t dim) {
  const std::size_t k = a.size();
  if (k == 0) return Matrix::identity(dim);
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  Matrix out(dim, dim);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Matrix term = Matrix::identity(dim);
    bool zero = false;
    for (std::size_t i = 0; i < k && !zero; ++i) {
      const Matrix& e = a[i][perm[i]];
      if (e.is_zero()) zero = true;
      else term = term * e;
    }
    if (!zero) out += sign > 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

/// Cochain map on the Koszul model induced by (alpha in GL_n(Z), m) with
/// m rho(e_i) m^{-1} = rho(alpha e_i).
///
/// The resolution map is the exterior power of the Fox matrix C of beta =
/// alpha^{-1}: x^v - 1 = sum_i c_i(v) (x_i - 1) with
/// c_i(v) = x_1^{v_1} ... x_{i-1}^{v_{i-1}} S(x_i, v_i), and C_{ij} = c_i(beta e_j).
/// The block (J, I) of the cochain map is m rho(minor_{I,J}(C)).
inline std::vector<Matrix> koszul_auto_cochain_map(const KoszulModel& km, const Matrix& alpha, const Matrix& m) {
  const std::size_t n = km.rho.size(), dv = km.ce.module.dim;
  if (!is_unimodular_integer(alpha) || alpha.rows() != n) throw validation_error("automorphism of Z^n must be an integer matrix with determinant +-1");
  if (m.rows() != dv || m.cols() != dv || !try_inverse(m)) throw validation_error("module operator must be invertible of the module dimension");
  std::vector<Matrix> rinv;
  for (const auto& r : km.rho) rinv.push_back(inverse(r));
  auto rho_of = [&](const Vec& v) {
    Matrix r = Matrix::identity(dv);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t e = to_int64(v[i], "lattice coordinate");
      if (e != 0) r = r * power(e > 0 ? km.rho[i] : rinv[i], static_cast<unsigned>(e > 0 ? e : -e));
    }
    return r;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (m * km.rho[i] != rho_of(alpha.column(i)) * m)
      throw validation_error("not a module-automorphism pair: m rho(e_" + std::to_string(i) + ") m^-1 != rho(alpha e_" + std::to_string(i) + ")");

  Matrix beta = inverse(alpha);
  std::vector<std::vector<Matrix>> fox(n, std::vector<Matrix>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Vec v = beta.column(j);
    Matrix prefix = Matrix::identity(dv);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t e = to_int64(v[i], "lattice coordinate");
      fox[i][j] = prefix * detail::geometric_sum(km.rho[i], rinv[i], e);
      if (e != 0) prefix = prefix * power(e > 0 ? km.rho[i] : rinv[i], static_cast<unsigned>(e > 0 ? e : -e));
    }
  }

  const auto& idx = km.ce.index;
  std::vector<Matrix> out;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& masks = idx.masks(k);
    Matrix f(masks.size() * dv, masks.size() * dv);
    for (std::size_t jr = 0; jr < masks.size(); ++jr) {
      auto js = mask_indices(masks[jr]);
      for (std::size_t ir = 0; ir < masks.size(); ++ir) {
        auto is = mask_indices(masks[ir]);
        std::vector<std::vector<Matrix>> minor(k, std::vector<Matrix>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) minor[a][b] = fox[is[a]][js[b]];
        f.set_block(jr * dv, ir * dv, m * detail::commuting_determinant(minor, dv));
      }
    }
    out.push_back(std::move(f));
  }
  if (!is_cochain_map(km.ce.complex, km.ce.complex, out)) throw audit_error("Koszul automorphism map is not a cochain map");
  return out;
}

inline std::vector<Matrix> induced_map_auto_Zn(const KoszulModel& km, const Matrix& alpha, const Matrix& m) {
  return project_to_cohomology(km.basis, koszul_auto_cochain_map(km, alpha, m));
}

// ---------------------------------------------------------------------------
// Finite actions

/// Order of an invertible matrix, or 0 if it exceeds the limit.
inline std::size_t matrix_order(const Matrix& a, std::size_t limit) {
  Matrix p = a;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (p.is_identity()) return k;
    p = p * a;
  }
  return 0;
}

/// Elements of the finite matrix group generated by `gens` (identity first).
inline std::vector<Matrix> finite_group_closure(const std::vector<Matrix>& gens, std::size_t dim, std::size_t limit) {
  std::vector<Matrix> elems{Matrix::identity(dim)};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& g : gens) {
      Matrix p = elems[head] * g;
      bool seen = false;
      for (const auto& e : elems)
        if (e == p) {
          seen = true;
          break;
        }
      if (seen) continue;
      if (elems.size() == limit) throw validation_error("finite action: group order exceeds the configured limit");
      elems.push_back(std::move(p));
    }
  return elems;
}

struct FiniteInvariants {
  std::vector<Subspace> degrees;
  std::vector<std::size_t> group_orders;
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& s : degrees) out.push_back(s.dim());
    return out;
  }
};

/// Joint fixed subspaces of per-degree actions of a finite group, cross-checked
/// against the image of the averaging projector.
/// actions[g][k] is the matrix of generator g on H^k.
inline FiniteInvariants invariants_under_finite_action(const std::vector<std::size_t>& dims,
                                                       const std::vector<std::vector<Matrix>>& actions,
                                                       std::size_t order_limit = 1000) {
  FiniteInvariants out;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<Matrix> gens;
    for (const auto& a : actions) {
      const Matrix& m = a.at(k);
      if (dims[k] > 0 && matrix_order(m, order_limit) == 0)
        throw validation_error("action on H^" + std::to_string(k) + " has infinite order or exceeds the order limit");
      gens.push_back(m);
    }
    Subspace fixed = joint_fixed_subspace(gens, dims[k]);
    auto group = finite_group_closure(gens, dims[k], order_limit);
    Matrix avg(dims[k], dims[k]);
    for (const auto& g : group) avg += g;
    avg *= frac(1, static_cast<long>(group.size()));
    if (Subspace::span(avg) != fixed && !(fixed.dim() == 0 && avg.is_zero()))
      throw audit_error("averaging projector disagrees with the fixed space on H^" + std::to_string(k));
    out.degrees.push_back(std::move(fixed));
    out.group_orders.push_back(group.size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Crystallographic groups: finite extensions of Z^n

/// Point-group element: conjugation alpha on the lattice and rho of a lift.
struct PointGroupGenerator {
  Matrix alpha;
  Matrix module_op;
};

struct CrystallographicGroup {
  std::size_t rank = 0;                       ///< lattice rank n
  std::size_t module_dim = 1;
  std::vector<Matrix> lattice_rho;            ///< rho(e_i), commuting
  std::vector<PointGroupGenerator> point_group;
};

inline void validate_crystallographic(const CrystallographicGroup& g, std::size_t order_limit = 1000) {
  if (g.lattice_rho.size() != g.rank) throw validation_error("crystallographic group needs one module matrix per lattice generator");
  std::vector<Matrix> alphas;
  for (const auto& p : g.point_group) {
    if (p.alpha.rows() != g.rank || !is_unimodular_integer(p.alpha))
      throw validation_error("point-group generator must act on the lattice by an integer matrix with determinant +-1");
    if (matrix_order(p.alpha, order_limit) == 0) throw validation_error("point-group generator has infinite order on the lattice");
    alphas.push_back(p.alpha);
  }
  finite_group_closure(alphas, g.rank, order_limit);
}

struct CrystallographicCohomology {
  KoszulModel lattice;
  std::vector<std::vector<Matrix>> actions;
  FiniteInvariants invariants;
  std::vector<std::size_t> dims() const { return invariants.dims(); }
};

/// H*(Gamma, V) = H*(Z^n, V)^F for the finite point group F.
inline CrystallographicCohomology crystallographic_cohomology(const CrystallographicGroup& g,
                                                              std::size_t order_limit = 1000) {
  validate_crystallographic(g, order_limit);
  KoszulModel km = koszul_cohomology_Zn(g.lattice_rho, g.module_dim);
  std::vector<std::vector<Matrix>> actions;
  for (const auto& p : g.point_group) actions.push_back(induced_map_auto_Zn(km, p.alpha, p.module_op));
  auto inv = invariants_under_finite_action(km.basis.dims(), actions, order_limit);
  return {std::move(km), std::move(actions), std::move(inv)};
}

}  // namespace hullcoh
