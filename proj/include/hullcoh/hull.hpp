#pragma once

#include <optional>
#include <set>
#include <string>

#include "hullcoh/bch.hpp"
#include "hullcoh/ce.hpp"
#include "hullcoh/group_cohomology.hpp"

namespace hullcoh {

// A hull T x| U of Gamma is never described by polynomial equations. It is
// represented by the images of the generators of Gamma: the automorphism
// Ad(gamma) of u = Lie(U) and the operator rho(gamma) on V. Anything taken
// over the whole hull is computed as a joint fixed space of these operators,
// which is legitimate because a vector is fixed by a group exactly when it is
// fixed by its Zariski closure.

/// Image of one generator gamma = exp(translation) * s in the hull.
struct HullGenerator {
  Matrix automorphism;  ///< Ad(gamma) on u
  Matrix module_op;     ///< rho(gamma) on V
  Vec translation;      ///< log of the unipotent part; empty if not known
  Matrix torus;         ///< Ad(s) on u
};

struct HullData {
  LieAlgebra u;
  LieModule module;  ///< u acting on V
  std::vector<HullGenerator> generators;
  std::optional<PolyZPresentation> presentation;
  std::optional<CrystallographicGroup> crystallographic;

  std::size_t module_dim() const { return module.dim; }

  /// Hirsch length of Gamma.
  std::size_t rank() const {
    if (presentation) return presentation->n;
    if (crystallographic) return crystallographic->rank;
    return 0;
  }

  GammaModule gamma_module() const {
    GammaModule m{module.dim, {}};
    for (const auto& g : generators) m.rho.push_back(g.module_op);
    return m;
  }
};

namespace detail {

inline Matrix log_unipotent_part(const Matrix& m) {
  if (m.rows() == 0) return m;
  return nilpotent_log(jordan_chevalley_multiplicative(m).unipotent);
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

inline Matrix exp_ad(const LieAlgebra& u, const Vec& x) { return unipotent_exp(u.ad(x)); }

}  // namespace detail

/// First failed hull invariant, or nullopt.
inline std::optional<std::string> find_hull_violation(const HullData& h) {
  const std::size_t n = h.u.dim(), dv = h.module.dim;
  if (!h.presentation && !h.crystallographic) return "hull is not attached to a group";
  if (!is_nilpotent(h.u)) return "u is not nilpotent";
  if (n != h.rank())
    return "fullness: dim u = " + std::to_string(n) + " but rank Gamma = " + std::to_string(h.rank());
  if (auto v = find_violation(h.u)) return "u: " + v->message();
  try {
    validate_module(h.u, h.module);
  } catch (const Error& e) {
    return std::string("module over u: ") + e.what();
  }
  const std::size_t expected =
      h.presentation ? h.presentation->n : h.crystallographic->rank + h.crystallographic->point_group.size();
  if (h.generators.size() != expected) return "hull needs one record per group generator";

  CEComplex shape{h.u, h.module, ExteriorIndex{}, {}};
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    const auto& g = h.generators[i];
    const std::string at = "generator " + std::to_string(i) + ": ";
    if (g.automorphism.rows() != n || g.automorphism.cols() != n) return at + "automorphism has the wrong size";
    if (g.module_op.rows() != dv || g.module_op.cols() != dv) return at + "module operator has the wrong size";
    if (!is_automorphism(h.u, g.automorphism)) return at + "automorphism does not preserve the bracket";
    try {
      validate_pair(shape, GroupPair{g.automorphism, g.module_op});
    } catch (const Error& e) {
      return at + e.what();
    }
    if (g.torus.rows() != n || !is_automorphism(h.u, g.torus)) return at + "torus part is not an automorphism of u";
    if (!g.translation.empty()) {
      if (g.translation.size() != n) return at + "translation has the wrong size";
      if (detail::exp_ad(h.u, g.translation) * g.torus != g.automorphism)
        return at + "automorphism differs from exp(ad translation) * torus";
    }
  }

  if (h.presentation) {
    GammaModule joint{n + dv, {}};
    for (const auto& g : h.generators) joint.rho.push_back(detail::block_diagonal(g.automorphism, g.module_op));
    try {
      validate_module(*h.presentation, joint);
    } catch (const Error& e) {
      return std::string("generator pairs: ") + e.what();
    }
  } else {
    const auto& cg = *h.crystallographic;
    const std::size_t r = cg.rank;
    for (std::size_t i = 0; i < r; ++i) {
      if (h.generators[i].module_op != cg.lattice_rho[i]) return "lattice module operators disagree with the group";
      for (std::size_t j = 0; j < r; ++j) {
        const auto& a = h.generators[i];
        const auto& b = h.generators[j];
        if (a.automorphism * b.automorphism != b.automorphism * a.automorphism ||
            a.module_op * b.module_op != b.module_op * a.module_op)
          return "lattice generator pairs do not commute";
      }
    }
    for (std::size_t p = 0; p < cg.point_group.size(); ++p) {
      const auto& pg = cg.point_group[p];
      const auto& g = h.generators[r + p];
      if (g.module_op != pg.module_op) return "point-group module operators disagree with the group";
      Matrix ginv_a = inverse(g.automorphism), ginv_m = inverse(g.module_op);
      for (std::size_t j = 0; j < r; ++j) {
        Matrix ea = Matrix::identity(n), em = Matrix::identity(dv);
        for (std::size_t k = 0; k < r; ++k) {
          const long e = to_int64(pg.alpha(k, j), "lattice exponent");
          const auto& lk = h.generators[k];
          const Matrix la = e >= 0 ? lk.automorphism : inverse(lk.automorphism);
          const Matrix lm = e >= 0 ? lk.module_op : inverse(lk.module_op);
          ea = ea * power(la, static_cast<unsigned>(e >= 0 ? e : -e));
          em = em * power(lm, static_cast<unsigned>(e >= 0 ? e : -e));
        }
        if (g.automorphism * h.generators[j].automorphism * ginv_a != ea ||
            g.module_op * h.generators[j].module_op * ginv_m != em)
          return "point-group generator " + std::to_string(p) + " violates its conjugation action on lattice generator " +
                 std::to_string(j);
      }
    }
  }
  return std::nullopt;
}

inline void validate_hull(const HullData& h) {
  if (auto v = find_hull_violation(h)) throw validation_error("hull: " + *v);
}

/// Z^n with commuting module matrices; semisimple parts act on V only.
inline HullData hull_abelian(std::size_t n, std::optional<GammaModule> v = std::nullopt) {
  GammaModule m = v ? *v : GammaModule::trivial(n);
  if (m.rho.size() != n) throw validation_error("abelian hull needs one module matrix per generator");
  HullData h;
  h.u = LieAlgebra::abelian(n);
  h.module.dim = m.dim;
  for (const auto& r : m.rho) h.module.action.push_back(detail::log_unipotent_part(r));
  for (std::size_t i = 0; i < n; ++i)
    h.generators.push_back({Matrix::identity(n), m.rho[i], unit_vector(n, i), Matrix::identity(n)});
  h.presentation = PolyZPresentation::free_abelian(n);
  validate_hull(h);
  return h;
}

/// Hull of a lattice generated by unitriangular integer matrices; `p` is its
/// poly-Z presentation with one generator per matrix.
inline HullData hull_nilpotent_unitriangular(const PolyZPresentation& p, const std::vector<Matrix>& gens,
                                             std::optional<GammaModule> v = std::nullopt) {
  if (gens.size() != p.n) throw validation_error("unitriangular hull needs one matrix per generator");
  if (gens.empty()) throw validation_error("unitriangular hull needs at least one generator");
  for (const auto& g : gens)
    if (!is_unipotent_matrix(g)) throw validation_error("unitriangular hull: generator is not unipotent");
  validate_module(p, GammaModule{gens[0].rows(), gens});
  GammaModule m = v ? *v : GammaModule::trivial(p.n);
  validate_module(p, m);

  const std::size_t top = gens[0].rows();
  std::vector<Matrix> logs, joint;
  for (std::size_t i = 0; i < p.n; ++i) {
    logs.push_back(nilpotent_log(gens[i]));
    joint.push_back(detail::block_diagonal(logs.back(), detail::log_unipotent_part(m.rho[i])));
  }
  MatrixLieAlgebra alone = generate_matrix_lie_algebra(logs);
  MatrixLieAlgebra both = generate_matrix_lie_algebra(joint);
  if (alone.basis.size() != both.basis.size())
    throw validation_error("unitriangular hull: the module does not factor through the Lie algebra of the logs");

  HullData h;
  h.u = both.algebra;
  h.module.dim = m.dim;
  for (const auto& b : both.basis) h.module.action.push_back(b.block(top, top, m.dim, m.dim));
  const std::size_t n = h.u.dim();
  for (std::size_t i = 0; i < p.n; ++i) {
    Vec x = *both.coordinates(joint[i]);
    Matrix ad = detail::exp_ad(h.u, x);
    // Ad(g) on the matrix realisation must match exp(ad log g).
    Matrix ginv = inverse(gens[i]);
    for (std::size_t k = 0; k < n; ++k) {
      Matrix lhs = gens[i] * both.basis[k].block(0, 0, top, top) * ginv;
      Matrix rhs(top, top);
      for (std::size_t j = 0; j < n; ++j) rhs += both.basis[j].block(0, 0, top, top) * ad(j, k);
      if (lhs != rhs) throw audit_error("unitriangular hull: Ad(g) differs from exp(ad log g)");
    }
    h.generators.push_back({ad, m.rho[i], x, Matrix::identity(n)});
  }
  h.presentation = p;
  validate_hull(h);
  return h;
}

/// Hull of Z^n x|_A Z: u = Q^n + Qc with [c, x] = log(A_u) x, t = exp(c) s with
/// Ad(s) = A_s + 1. Generator order t, e_1..e_n as in PolyZPresentation::semidirect.
inline HullData hull_semidirect_ZnZ(const Matrix& a, std::optional<GammaModule> v = std::nullopt) {
  PolyZPresentation p = PolyZPresentation::semidirect(a);
  const std::size_t n = a.rows();
  GammaModule m = v ? *v : GammaModule::trivial(n + 1);
  validate_module(p, m);
  auto jc = jordan_chevalley_multiplicative(a);
  Matrix nlog = nilpotent_log(jc.unipotent);

  HullData h;
  h.u = LieAlgebra(n + 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  labels.push_back("c");
  h.u.set_labels(labels);
  for (std::size_t j = 0; j < n; ++j) {
    Vec col(n + 1);
    for (std::size_t k = 0; k < n; ++k) col[k] = nlog(k, j);
    h.u.set_bracket(n, j, col);
  }
  h.module.dim = m.dim;
  h.module.action.resize(n + 1);
  for (std::size_t j = 0; j < n; ++j) h.module.action[j] = detail::log_unipotent_part(m.rho[j + 1]);
  h.module.action[n] = detail::log_unipotent_part(m.rho[0]);

  Matrix torus = detail::block_diagonal(jc.semisimple, Matrix::identity(1));
  Vec c = unit_vector(n + 1, n);
  h.generators.push_back({torus * detail::exp_ad(h.u, c), m.rho[0], c, torus});
  for (std::size_t j = 0; j < n; ++j) {
    Vec x = unit_vector(n + 1, j);
    h.generators.push_back({detail::exp_ad(h.u, x), m.rho[j + 1], x, Matrix::identity(n + 1)});
  }

  const Matrix& tauto = h.generators[0].automorphism;
  if (tauto.block(0, 0, n, n) != a || tauto.column(n) != c)
    throw audit_error("semidirect hull: t-automorphism does not restrict to A on Q^n");
  for (std::size_t j = 0; j < n; ++j)
    if (h.generators[j + 1].automorphism(n, n) != 1 || !h.generators[j + 1].automorphism.block(n, 0, 1, n).is_zero())
      throw audit_error("semidirect hull: e-automorphism moves c outside c + Q^n");
  h.presentation = std::move(p);
  validate_hull(h);
  return h;
}

/// Hull of a crystallographic group: u = Q^n, point-group elements act by alpha.
inline HullData hull_crystallographic(const CrystallographicGroup& g) {
  validate_crystallographic(g);
  const std::size_t n = g.rank;
  HullData h;
  h.u = LieAlgebra::abelian(n);
  h.module.dim = g.module_dim;
  for (const auto& r : g.lattice_rho) h.module.action.push_back(detail::log_unipotent_part(r));
  for (std::size_t i = 0; i < n; ++i)
    h.generators.push_back({Matrix::identity(n), g.lattice_rho[i], unit_vector(n, i), Matrix::identity(n)});
  for (const auto& pg : g.point_group) h.generators.push_back({pg.alpha, pg.module_op, {}, pg.alpha});
  h.crystallographic = g;
  validate_hull(h);
  return h;
}

// ---------------------------------------------------------------------------
// Lie side

struct LieSideCohomology {
  std::vector<std::size_t> full_dims;
  std::vector<std::size_t> invariant_dims;
  /// Each exp(ad x_gamma) paired with exp(rho(x_gamma)) is the identity on H*(u, V).
  bool inner_autos_trivial = true;
  /// Every generator acts trivially on H*(u, V).
  bool generators_trivial = true;
};

inline LieSideCohomology lie_side_invariant_cohomology(const HullData& h) {
  validate_hull(h);
  CEComplex c = build_ce_complex(h.u, h.module);
  CohomologyBasis basis = cohomology(c);
  std::vector<GroupPair> pairs;
  for (const auto& g : h.generators) pairs.push_back({g.automorphism, g.module_op});
  LieSideCohomology out;
  out.full_dims = basis.dims();
  out.invariant_dims = invariant_cohomology(c, basis, pairs, {}).dims();
  out.generators_trivial = out.full_dims == out.invariant_dims;
  for (const auto& g : h.generators) {
    if (g.translation.empty()) continue;
    Matrix r = h.module.rho(g.translation);
    if (!is_nilpotent_matrix(r)) {
      out.inner_autos_trivial = false;
      continue;
    }
    for (const auto& m : induced_map_group(c, basis, {detail::exp_ad(h.u, g.translation), unipotent_exp(r)}))
      if (!m.is_identity()) out.inner_autos_trivial = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial functions on U with values in V

/// Polynomial map x -> gamma^{-1} x on U = u in exponential coordinates.
inline PolyVec inverse_translation_map(const HullData& h, std::size_t gen) {
  const auto& g = h.generators.at(gen);
  if (g.translation.empty()) throw validation_error("polynomial module needs the translation part of every generator");
  const std::size_t n = h.u.dim();
  Vec neg = g.translation;
  for (auto& x : neg) x = -x;
  PolyVec z = bch(h.u, constant_polyvec(neg, n), coordinate_polyvec(n));
  return apply_linear(inverse(g.torus), z);
}

/// M_d: smallest Gamma-stable subspace of P(u) (x) V containing P_{<=d} (x) V,
/// with (gamma F)(x) = rho(gamma) F(gamma^{-1} x).
struct TruncatedPolyModule {
  unsigned degree = 0;
  std::size_t vars = 0;
  std::size_t value_dim = 0;
  std::vector<std::vector<MPoly>> basis;  ///< F = (F_0, ..., F_{dim V - 1})
  GammaModule action;

  std::size_t dim() const { return basis.size(); }
  unsigned max_poly_degree() const {
    unsigned d = 0;
    for (const auto& f : basis)
      for (const auto& p : f) d = std::max(d, p.degree());
    return d;
  }
};

namespace detail {

using PolyKey = std::pair<Monomial, std::size_t>;
using SparseTensor = std::map<PolyKey, Rat>;

inline SparseTensor to_sparse(const std::vector<MPoly>& f) {
  SparseTensor s;
  for (std::size_t j = 0; j < f.size(); ++j)
    for (const auto& [m, c] : f[j].terms()) s.emplace(PolyKey{m, j}, c);
  return s;
}

/// Echelon form keyed by the largest monomial of each row.
class SparseSpan {
 public:
  bool insert(SparseTensor v) {
    reduce(v);
    if (v.empty()) return false;
    auto lead = std::prev(v.end());
    Rat inv = 1 / lead->second;
    for (auto& [k, c] : v) c *= inv;
    PolyKey key = lead->first;
    rows_.emplace(std::move(key), std::move(v));
    return true;
  }

 private:
  static void add(SparseTensor& v, const PolyKey& k, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = v.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) v.erase(it);
    }
  }

  void reduce(SparseTensor& v) const {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      auto row = rows_.find(it->first);
      if (row == rows_.end()) continue;
      const PolyKey key = it->first;
      const Rat c = it->second;
      for (const auto& [k, x] : row->second) add(v, k, -c * x);
      it = v.lower_bound(key);
    }
  }

  std::map<PolyKey, SparseTensor> rows_;
};

/// Dense columns of `fs` over a shared key list.
inline Matrix dense_columns(const std::vector<PolyKey>& keys, const std::vector<std::vector<MPoly>>& fs) {
  std::map<PolyKey, std::size_t> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], i);
  Matrix out(keys.size(), fs.size());
  for (std::size_t c = 0; c < fs.size(); ++c)
    for (const auto& [k, v] : to_sparse(fs[c])) {
      auto it = index.find(k);
      if (it == index.end()) throw audit_error("polynomial module: vector leaves the computed span");
      out(it->second, c) = v;
    }
  return out;
}

inline std::vector<PolyKey> support(const std::vector<std::vector<MPoly>>& fs) {
  std::set<PolyKey> keys;
  for (const auto& f : fs)
    for (const auto& [k, v] : to_sparse(f)) keys.insert(k);
  return {keys.begin(), keys.end()};
}

inline Matrix coordinates_in(const std::vector<std::vector<MPoly>>& basis, const std::vector<std::vector<MPoly>>& fs,
                             const char* what) {
  auto keys = support(basis);
  auto x = solve(dense_columns(keys, basis), dense_columns(keys, fs));
  if (!x) throw audit_error(what);
  return *x;
}

}  // namespace detail

inline std::vector<MPoly> act_on_function(const HullData& h, std::size_t gen, const PolyVec& phi,
                                          const std::vector<MPoly>& f) {
  const Matrix& rho = h.generators[gen].module_op;
  std::vector<MPoly> composed;
  for (const auto& p : f) composed.push_back(p.substitute(phi));
  std::vector<MPoly> out(f.size(), MPoly(h.u.dim()));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      if (sgn(rho(i, j)) != 0) out[i] += composed[j] * rho(i, j);
  return out;
}

inline TruncatedPolyModule polynomial_action_module(const HullData& h, unsigned d, std::size_t dim_cap = 4000) {
  validate_hull(h);
  if (!h.presentation) throw validation_error("polynomial module needs a poly-Z presentation");
  const std::size_t r = h.u.dim(), dv = h.module.dim;
  std::vector<PolyVec> phis;
  for (std::size_t i = 0; i < h.generators.size(); ++i) phis.push_back(inverse_translation_map(h, i));

  TruncatedPolyModule out;
  out.degree = d;
  out.vars = r;
  out.value_dim = dv;
  detail::SparseSpan span;
  auto push = [&](std::vector<MPoly> f) {
    if (!span.insert(detail::to_sparse(f))) return;
    if (out.basis.size() == dim_cap) throw audit_error("polynomial module: closure exceeded the dimension cap");
    out.basis.push_back(std::move(f));
  };
  for (const auto& mono : monomials_up_to(r, d))
    for (std::size_t j = 0; j < dv; ++j) {
      std::vector<MPoly> f(dv, MPoly(r));
      f[j].add_term(mono, 1);
      push(std::move(f));
    }
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t g = 0; g < phis.size(); ++g) push(act_on_function(h, g, phis[g], out.basis[i]));

  out.action.dim = out.basis.size();
  for (std::size_t g = 0; g < phis.size(); ++g) {
    std::vector<std::vector<MPoly>> images;
    for (const auto& f : out.basis) images.push_back(act_on_function(h, g, phis[g], f));
    out.action.rho.push_back(detail::coordinates_in(out.basis, images, "polynomial module is not generator stable"));
  }
  validate_module(*h.presentation, out.action);
  return out;
}

/// Matrix of M_small -> M_big in their bases.
inline Matrix inclusion_map(const TruncatedPolyModule& small, const TruncatedPolyModule& big) {
  return detail::coordinates_in(big.basis, small.basis, "polynomial module inclusion fails");
}

}  // namespace hullcoh
