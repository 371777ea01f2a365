#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullcoh/jordan.hpp"
#include "hullcoh/probe_rng.hpp"

namespace hullcoh {

/// Finite-dimensional Lie algebra over Q given by structure constants
/// [e_i, e_j] = sum_k c(i, j, k) e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {
    for (std::size_t i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i));
  }
  static LieAlgebra abelian(std::size_t dim) { return LieAlgebra(dim); }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != dim_) throw validation_error("label count does not match dimension");
    labels_ = std::move(labels);
  }

  const Rat& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  Rat& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const Vec& v) {
    if (v.size() != dim_ || i >= dim_ || j >= dim_) throw validation_error("bracket index out of range");
    for (std::size_t k = 0; k < dim_; ++k) {
      c(i, j, k) = v[k];
      c(j, i, k) = -v[k];
    }
  }

  Vec bracket_basis(std::size_t i, std::size_t j) const {
    Vec v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = c(i, j, k);
    return v;
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (sgn(y[j]) == 0) continue;
        Rat xy = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn(c(i, j, k)) != 0) r[k] += xy * c(i, j, k);
      }
    }
    return r;
  }

  /// ad_x as a matrix: column j holds [x, e_j].
  Matrix ad(const Vec& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn(c(i, j, k)) != 0) m(k, j) += x[i] * c(i, j, k);
    }
    return m;
  }
  Matrix ad_basis(std::size_t i) const { return ad(unit_vector(dim_, i)); }

  bool is_abelian() const {
    for (const auto& x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Rat> c_;
  std::vector<std::string> labels_;
};

struct LieViolation {
  enum class Kind { Antisymmetry, Jacobi } kind;
  std::size_t i, j, k;
  std::string message() const {
    std::string what = kind == Kind::Antisymmetry ? "antisymmetry" : "Jacobi identity";
    return what + " fails at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
  }
};

/// First violated antisymmetry entry or Jacobi triple, if any.
inline std::optional<LieViolation> find_violation(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g.c(i, j, k) != -g.c(j, i, k)) return LieViolation{LieViolation::Kind::Antisymmetry, i, j, k};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        Vec s = g.bracket(ei, g.bracket(ej, ek));
        Vec t = g.bracket(ej, g.bracket(ek, ei));
        Vec u = g.bracket(ek, g.bracket(ei, ej));
        for (std::size_t m = 0; m < n; ++m)
          if (s[m] + t[m] + u[m] != 0) return LieViolation{LieViolation::Kind::Jacobi, i, j, k};
      }
  return std::nullopt;
}

inline void validate(const LieAlgebra& g) {
  if (auto v = find_violation(g)) throw validation_error("not a Lie algebra: " + v->message());
}

/// span{[a, b] : a in A, b in B}.
inline Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out.push_back(g.bracket(a.vector(i), b.vector(j)));
  return Subspace::span(g.dim(), out);
}

/// g, [g,g], [[g,g],[g,g]], ... up to and including the first repeated term.
inline std::vector<Subspace> derived_series(const LieAlgebra& g) {
  std::vector<Subspace> s{Subspace::full(g.dim())};
  while (true) {
    Subspace next = bracket_span(g, s.back(), s.back());
    bool stable = next.dim() == s.back().dim();
    s.push_back(std::move(next));
    if (stable || s.back().dim() == 0) break;
  }
  return s;
}

/// Lower central series of the subalgebra `h` (h, [h,h], [h,[h,h]], ...).
inline std::vector<Subspace> lower_central_series(const LieAlgebra& g, const Subspace& h) {
  std::vector<Subspace> s{h};
  while (true) {
    Subspace next = bracket_span(g, h, s.back());
    bool stable = next.dim() == s.back().dim();
    s.push_back(std::move(next));
    if (stable || s.back().dim() == 0) break;
  }
  return s;
}
inline std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  return lower_central_series(g, Subspace::full(g.dim()));
}

inline bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }
inline bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }

/// Nilpotency class (0 for the zero algebra, 1 for abelian), or nullopt if not nilpotent.
inline std::optional<std::size_t> nilpotency_class(const LieAlgebra& g) {
  auto s = lower_central_series(g);
  if (s.back().dim() != 0) return std::nullopt;
  return g.dim() == 0 ? 0 : s.size() - 1;
}

inline bool is_ideal(const LieAlgebra& g, const Subspace& s) {
  return s.contains(bracket_span(g, Subspace::full(g.dim()), s));
}

inline bool is_derivation(const LieAlgebra& g, const Matrix& d) {
  const std::size_t n = g.dim();
  if (d.rows() != n || d.cols() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec lhs = d * g.bracket_basis(i, j);
      Vec a = g.bracket(d.column(i), unit_vector(n, j));
      Vec b = g.bracket(unit_vector(n, i), d.column(j));
      for (std::size_t k = 0; k < n; ++k)
        if (lhs[k] != a[k] + b[k]) return false;
    }
  return true;
}

/// Invertible and bracket preserving.
inline bool is_automorphism(const LieAlgebra& g, const Matrix& a) {
  const std::size_t n = g.dim();
  if (a.rows() != n || a.cols() != n || !try_inverse(a)) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a * g.bracket_basis(i, j) != g.bracket(a.column(i), a.column(j))) return false;
  return true;
}


/// Nilradical of a solvable Lie algebra with certificates.
///
/// Construction: by Lie's theorem the ad-action is simultaneously triangular
/// over the algebraic closure with weights lambda_i; the nilradical is the
/// common kernel of the weights, which equals
///   { x : tr(M ad_x) = 0 for every M in the unital algebra generated by ad(g) }.
/// The result is certified (ideal, contains [g,g], nilpotent, Engel on every
/// basis vector, seeded maximality probe) and any failure is a hard error.
inline Subspace nilradical(const LieAlgebra& g, std::uint64_t seed = kDefaultSeed) {
  const std::size_t n = g.dim();
  if (n == 0) return Subspace(0);
  if (!is_solvable(g)) throw validation_error("nilradical: Lie algebra is not solvable");

  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad_basis(i));

  // Basis of the unital associative algebra generated by the ad_{e_i}.
  std::vector<Matrix> alg{Matrix::identity(n)};
  std::vector<Vec> flat{Vec(alg[0].data().begin(), alg[0].data().end())};
  for (std::size_t head = 0; head < alg.size(); ++head)
    for (const auto& a : ads) {
      Matrix p = alg[head] * a;
      Vec f(p.data().begin(), p.data().end());
      if (Subspace::span(n * n, flat).contains(f)) continue;
      alg.push_back(std::move(p));
      flat.push_back(std::move(f));
    }

  Matrix forms(alg.size(), n);
  for (std::size_t r = 0; r < alg.size(); ++r)
    for (std::size_t j = 0; j < n; ++j) forms(r, j) = (alg[r] * ads[j]).trace();
  Subspace nil = kernel_basis(forms);

  Subspace full = Subspace::full(n);
  if (!nil.contains(bracket_span(g, full, full))) throw audit_error("nilradical certificate: does not contain [g,g]");
  if (!is_ideal(g, nil)) throw audit_error("nilradical certificate: not an ideal");
  if (lower_central_series(g, nil).back().dim() != 0) throw audit_error("nilradical certificate: not nilpotent");
  for (std::size_t i = 0; i < nil.dim(); ++i)
    if (!is_nilpotent_matrix(g.ad(nil.vector(i)))) throw audit_error("nilradical certificate: Engel test failed");

  Matrix complement = complete_basis(nil.basis());
  if (complement.cols() > 0) {
    ProbeRng rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
      Vec coeffs = rng.nonzero_combination(complement.cols(), 3);
      Vec x = complement * coeffs;
      if (is_nilpotent_matrix(g.ad(x))) throw audit_error("nilradical certificate: maximality probe found an ad-nilpotent element outside");
    }
  }
  return nil;
}

/// ad_s restricted to a complement V of the nilradical.
struct AdSemisimpleMap {
  Subspace nilradical;
  Subspace complement;
  std::vector<Matrix> on_complement;  ///< (ad_A)_s for the basis vectors A of V
  std::vector<Matrix> on_basis;       ///< ad_s(e_j) for every basis vector of g

  Matrix apply(const Vec& x) const {
    Matrix m(nilradical.ambient_dim(), nilradical.ambient_dim());
    for (std::size_t j = 0; j < x.size(); ++j)
      if (sgn(x[j]) != 0) m += on_basis[j] * x[j];
    return m;
  }
};

/// Builds ad_{sA+X} = (ad_A)_s for A in V and X in n and checks that V is a
/// valid complement: g = V + n directly, (ad_A)_s B = 0 on V, and the images
/// are commuting semisimple derivations. Linearity of A -> (ad_A)_s on V is
/// probed on seeded random combinations. Returns nullopt with a reason on failure.
inline std::optional<AdSemisimpleMap> try_ad_s_map(const LieAlgebra& g, const Subspace& nil, const Subspace& v,
                                                   std::string* why = nullptr, std::uint64_t seed = kDefaultSeed) {
  const std::size_t n = g.dim();
  auto fail = [&](const std::string& reason) -> std::optional<AdSemisimpleMap> {
    if (why) *why = reason;
    return std::nullopt;
  };
  if (v.dim() + nil.dim() != n || (v + nil).dim() != n) return fail("V is not a vector-space complement of the nilradical");

  AdSemisimpleMap out{nil, v, {}, {}};
  for (std::size_t a = 0; a < v.dim(); ++a) out.on_complement.push_back(jordan_chevalley_additive(g.ad(v.vector(a))).semisimple);

  for (std::size_t a = 0; a < v.dim(); ++a) {
    const Matrix& s = out.on_complement[a];
    for (std::size_t b = 0; b < v.dim(); ++b)
      if (!is_zero(s * v.vector(b))) return fail("(ad_A)_s does not annihilate V");
    if (!is_derivation(g, s)) return fail("(ad_A)_s is not a derivation");
    for (std::size_t b = a + 1; b < v.dim(); ++b)
      if (commutator(s, out.on_complement[b]).is_zero() == false) return fail("semisimple parts do not commute");
  }

  ProbeRng rng(seed);
  for (int trial = 0; trial < 5 && v.dim() > 1; ++trial) {
    Vec coeffs = rng.nonzero_combination(v.dim(), 3);
    Matrix expect(n, n);
    for (std::size_t a = 0; a < v.dim(); ++a) expect += out.on_complement[a] * coeffs[a];
    if (jordan_chevalley_additive(g.ad(v.basis() * coeffs)).semisimple != expect)
      return fail("A -> (ad_A)_s is not linear on V");
  }

  Matrix joint = Matrix::hstack(v.basis(), nil.basis());
  for (std::size_t j = 0; j < n; ++j) {
    Vec coords = *solve(joint, unit_vector(n, j));
    Matrix m(n, n);
    for (std::size_t a = 0; a < v.dim(); ++a)
      if (sgn(coords[a]) != 0) m += out.on_complement[a] * coords[a];
    out.on_basis.push_back(std::move(m));
  }
  return out;
}

/// Which construction produced the complement V.
enum class ComplementSource { Coordinate, FittingNull, UserSupplied };

inline std::string to_string(ComplementSource s) {
  switch (s) {
    case ComplementSource::Coordinate: return "coordinate";
    case ComplementSource::FittingNull: return "fitting-null";
    case ComplementSource::UserSupplied: return "user";
  }
  return "?";
}

struct ComplementChoice {
  AdSemisimpleMap ad_s;
  ComplementSource source;
};

/// Generalised 0-eigenspace of ad_z for a seeded near-regular z; a Cartan
/// subalgebra when z is regular.
inline Subspace fitting_null_component(const LieAlgebra& g, std::uint64_t seed) {
  const std::size_t n = g.dim();
  ProbeRng rng(seed);
  std::optional<Subspace> best;
  for (int trial = 0; trial < 100; ++trial) {
    Vec z = rng.nonzero_combination(n, 3);
    Subspace h = kernel_basis(power(g.ad(z), static_cast<unsigned>(n)));
    if (!best || h.dim() < best->dim()) best = std::move(h);
  }
  return *best;
}

/// Chooses a complement V of the nilradical with (ad_A)_s(B) = 0 on V.
/// Tries the coordinate complement, then the Fitting-null construction, then
/// the user-supplied V; every candidate passes the same exact verification.
inline ComplementChoice semisimple_split_complement(const LieAlgebra& g, const Subspace& nil,
                                                    const std::optional<Subspace>& user = std::nullopt,
                                                    std::uint64_t seed = kDefaultSeed) {
  const std::size_t n = g.dim();
  std::string why;
  Subspace coordinate = Subspace::span(complete_basis(nil.basis()));
  if (auto m = try_ad_s_map(g, nil, coordinate, &why, seed)) return {*m, ComplementSource::Coordinate};

  if (n > 0) {
    Subspace h = fitting_null_component(g, seed);
    Subspace hn = Subspace::intersect(h, nil);
    Subspace fitting = Subspace::span(quotient_basis(h, hn).lifts);
    if (auto m = try_ad_s_map(g, nil, fitting, &why, seed)) return {*m, ComplementSource::FittingNull};
  }
  if (user) {
    if (auto m = try_ad_s_map(g, nil, *user, &why, seed)) return {*m, ComplementSource::UserSupplied};
    throw validation_error("user-supplied complement rejected: " + why);
  }
  throw validation_error("no valid complement V found (" + why + "); supply \"complement\" in the input file");
}

struct NilshadowResult {
  LieAlgebra u;                       ///< same dimension as g
  Matrix shadow_map;                  ///< (r + n) x n: X -> X - ad_s X in Im ad_s (+) g coordinates
  std::vector<Matrix> ads_generators; ///< ad_s(A_a) acting on u, for the basis A_a of V
  Subspace nilradical;
  Subspace complement;
  ComplementSource complement_source;
};

/// u = {X - ad_s X} inside Im ad_s |x g, identified with g through X.
/// [X - ad_sX, Y - ad_sY] = [X,Y] - ad_sX(Y) + ad_sY(X), which lies in the
/// nilradical and hence is again of the form Z - ad_s Z with Z itself.
inline NilshadowResult nilshadow(const LieAlgebra& g, const std::optional<Subspace>& user_complement = std::nullopt,
                                 std::uint64_t seed = kDefaultSeed) {
  validate(g);
  const std::size_t n = g.dim();
  Subspace nil = nilradical(g, seed);
  auto choice = semisimple_split_complement(g, nil, user_complement, seed);
  const auto& ads = choice.ad_s;

  LieAlgebra u(n);
  u.set_labels(g.labels());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec b = g.bracket_basis(i, j);
      Vec left = ads.on_basis[i] * unit_vector(n, j);
      Vec right = ads.on_basis[j] * unit_vector(n, i);
      for (std::size_t k = 0; k < n; ++k) b[k] += right[k] - left[k];
      u.set_bracket(i, j, b);
    }
  if (auto v = find_violation(u)) throw audit_error("nilshadow bracket fails: " + v->message());
  if (!is_nilpotent(u)) throw audit_error("nilshadow is not nilpotent");

  const std::size_t r = ads.on_complement.size();
  for (std::size_t a = 0; a < r; ++a) {
    const Matrix& s = ads.on_complement[a];
    if (!is_derivation(u, s)) throw audit_error("ad_s generator is not a derivation of the nilshadow");
    if (!is_semisimple_matrix(s)) throw audit_error("ad_s generator is not semisimple");
    for (std::size_t b = 0; b < r; ++b)
      if (!commutator(s, ads.on_complement[b]).is_zero()) throw audit_error("ad_s generators do not commute");
  }

  // Coordinates of ad_s(e_j) in the basis {ad_s(A_a)} of Im ad_s.
  Matrix shadow(r + n, n);
  if (r > 0) {
    std::vector<Vec> flat;
    for (const auto& s : ads.on_complement) flat.emplace_back(s.data().begin(), s.data().end());
    Matrix image_basis = Matrix::from_columns(n * n, flat);
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix& sj = ads.on_basis[j];
      Vec c = *solve(image_basis, Vec(sj.data().begin(), sj.data().end()));
      for (std::size_t a = 0; a < r; ++a) shadow(a, j) = -c[a];
    }
  }
  for (std::size_t j = 0; j < n; ++j) shadow(r + j, j) = 1;

  return {std::move(u), std::move(shadow), ads.on_complement, ads.nilradical, ads.complement, choice.source};
}

/// Lie algebra spanned by a set of square matrices and their iterated
/// commutators, with a basis of matrices and structure constants in that basis.
struct MatrixLieAlgebra {
  std::vector<Matrix> basis;
  LieAlgebra algebra;

  /// Coordinates of a matrix in the span of `basis`, or nullopt.
  std::optional<Vec> coordinates(const Matrix& m) const {
    if (basis.empty()) return m.is_zero() ? std::optional<Vec>(Vec{}) : std::nullopt;
    std::vector<Vec> flat;
    for (const auto& b : basis) flat.emplace_back(b.data().begin(), b.data().end());
    return solve(Matrix::from_columns(m.rows() * m.cols(), flat), Vec(m.data().begin(), m.data().end()));
  }
};

inline MatrixLieAlgebra generate_matrix_lie_algebra(const std::vector<Matrix>& gens, std::size_t max_dim = 64) {
  MatrixLieAlgebra out;
  if (gens.empty()) return out;
  const std::size_t n = gens[0].rows();
  std::vector<Vec> flat;
  auto try_add = [&](const Matrix& m) {
    Vec f(m.data().begin(), m.data().end());
    if (is_zero(f)) return;
    if (!flat.empty() && Subspace::span(n * n, flat).contains(f)) return;
    if (out.basis.size() == max_dim) throw validation_error("matrix Lie algebra closure exceeded the dimension bound");
    out.basis.push_back(m);
    flat.push_back(std::move(f));
  };
  for (const auto& g : gens) try_add(g);
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) try_add(commutator(out.basis[j], out.basis[i]));

  const std::size_t d = out.basis.size();
  out.algebra = LieAlgebra(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      auto c = out.coordinates(commutator(out.basis[i], out.basis[j]));
      if (!c) throw audit_error("matrix Lie algebra closure is not bracket closed");
      out.algebra.set_bracket(i, j, *c);
    }
  return out;
}

}  // namespace hullcoh
