#include <gtest/gtest.h>

#include "hullcoh/lie_algebra.hpp"
#include "support/corpus.hpp"

using namespace hullcoh;

namespace {

// Nilradical of a solvable algebra by brute force: [g,g] plus every
// ad-nilpotent combination of complement basis directions with coefficients
// in {-1,0,1}. Independent of the trace-form construction.
Subspace nilradical_oracle(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  Subspace full = Subspace::full(n);
  Subspace out = bracket_span(g, full, full);
  Matrix comp = complete_basis(out.basis());
  const std::size_t r = comp.cols();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < r; ++i) combos *= 3;
  for (std::size_t code = 1; code < combos; ++code) {
    Vec c(r);
    std::size_t x = code;
    for (std::size_t i = 0; i < r; ++i, x /= 3) c[i] = static_cast<long>(x % 3) - 1;
    Vec v = comp * c;
    if (is_nilpotent_matrix(g.ad(v))) out = out + Subspace::span(n, {v});
  }
  return out;
}

LieAlgebra change_of_basis(const LieAlgebra& g, const Matrix& p) {
  Matrix pinv = inverse(p);
  LieAlgebra h(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) h.set_bracket(i, j, pinv * g.bracket(p.column(i), p.column(j)));
  return h;
}

}  // namespace

TEST(LieValidate, Examples) {
  EXPECT_FALSE(find_violation(LieAlgebra::abelian(3)));
  EXPECT_FALSE(find_violation(corpus::heisenberg()));

  LieAlgebra bad(3);
  bad.set_bracket(0, 1, {1, 0, 0});
  bad.set_bracket(1, 2, {0, 1, 0});
  bad.set_bracket(0, 2, {0, 0, 1});
  auto v = find_violation(bad);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, LieViolation::Kind::Jacobi);
  EXPECT_EQ(v->i, 0u);
  EXPECT_EQ(v->j, 1u);
  EXPECT_EQ(v->k, 2u);
  EXPECT_THROW(validate(bad), Error);

  LieAlgebra asym(2);
  asym.c(0, 1, 0) = 1;
  ASSERT_TRUE(find_violation(asym));
  EXPECT_EQ(find_violation(asym)->kind, LieViolation::Kind::Antisymmetry);
}

TEST(LieSeries, Examples) {
  EXPECT_TRUE(is_nilpotent(corpus::heisenberg()));
  EXPECT_EQ(nilpotency_class(corpus::heisenberg()), 2u);
  EXPECT_EQ(nilpotency_class(corpus::filiform4()), 3u);
  EXPECT_TRUE(is_solvable(corpus::sol2()));
  EXPECT_FALSE(is_nilpotent(corpus::sol2()));
  EXPECT_TRUE(is_solvable(corpus::e2()));
  EXPECT_FALSE(is_nilpotent(corpus::e2()));

  LieAlgebra sl2(3);  // h, e, f
  sl2.set_bracket(0, 1, {0, 2, 0});
  sl2.set_bracket(0, 2, {0, 0, -2});
  sl2.set_bracket(1, 2, {1, 0, 0});
  validate(sl2);
  EXPECT_FALSE(is_solvable(sl2));
  EXPECT_THROW(nilradical(sl2), Error);
}

TEST(Nilradical, Examples) {
  EXPECT_EQ(nilradical(corpus::heisenberg()).dim(), 3u);
  EXPECT_EQ(nilradical(corpus::sol2()), Subspace::span(2, {Vec{0, 1}}));
  EXPECT_EQ(nilradical(corpus::e2()), Subspace::span(3, {Vec{0, 1, 0}, Vec{0, 0, 1}}));
  EXPECT_EQ(nilradical(LieAlgebra(0)).dim(), 0u);
}

TEST(Nilradical, AgreesWithBruteForceOnCorpus) {
  for (const auto& g : {corpus::heisenberg(), corpus::sol2(), corpus::e2(), corpus::sol3(), corpus::filiform4(),
                        corpus::jordan_block_solvable(), corpus::torus_on_heisenberg(), LieAlgebra::abelian(3)}) {
    Subspace n = nilradical(g);
    EXPECT_EQ(n, nilradical_oracle(g));
    EXPECT_TRUE(is_ideal(g, n));
    Subspace full = Subspace::full(g.dim());
    EXPECT_TRUE(n.contains(bracket_span(g, full, full)));
  }
}

TEST(Complement, Examples) {
  auto h = corpus::heisenberg();
  auto c0 = semisimple_split_complement(h, nilradical(h));
  EXPECT_EQ(c0.ad_s.complement.dim(), 0u);
  for (const auto& m : c0.ad_s.on_basis) EXPECT_TRUE(m.is_zero());

  auto s = corpus::sol2();
  auto c1 = semisimple_split_complement(s, nilradical(s));
  EXPECT_EQ(c1.ad_s.complement, Subspace::span(2, {Vec{1, 0}}));
  EXPECT_EQ(c1.ad_s.on_basis[0], s.ad_basis(0));
  EXPECT_EQ(c1.ad_s.on_basis[0], Matrix::diagonal({0, 1}));
  EXPECT_TRUE(c1.ad_s.on_basis[1].is_zero());

  auto e = corpus::e2();
  auto c2 = semisimple_split_complement(e, nilradical(e));
  EXPECT_EQ(c2.ad_s.complement, Subspace::span(3, {Vec{1, 0, 0}}));
  EXPECT_EQ(c2.ad_s.on_basis[0], e.ad_basis(0));
}

TEST(Complement, FittingFallbackAndUserRejection) {
  // Torus on Heisenberg in the basis a + x, b + y, x, y, z: the coordinate
  // complement is span{a + x, b + y}, whose semisimple parts do not kill each other.
  LieAlgebra g = corpus::torus_on_heisenberg();
  Matrix p = Matrix::identity(5);
  p(2, 0) = 1;
  p(3, 1) = 1;
  LieAlgebra h = change_of_basis(g, p);
  validate(h);
  Subspace n = nilradical(h);
  std::string why;
  EXPECT_FALSE(try_ad_s_map(h, n, Subspace::span(complete_basis(n.basis())), &why));
  auto c = semisimple_split_complement(h, n);
  EXPECT_EQ(c.source, ComplementSource::FittingNull);
  EXPECT_TRUE(is_nilpotent(nilshadow(h).u));

  auto s = corpus::sol2();
  EXPECT_FALSE(try_ad_s_map(s, nilradical(s), Subspace::span(2, {Vec{0, 1}}), &why));
}

TEST(Nilshadow, Examples) {
  auto h = nilshadow(corpus::heisenberg());
  EXPECT_EQ(h.u, corpus::heisenberg());
  EXPECT_TRUE(h.ads_generators.empty());

  auto s = nilshadow(corpus::sol2());
  EXPECT_TRUE(s.u.is_abelian());
  EXPECT_EQ(s.u.dim(), 2u);
  ASSERT_EQ(s.ads_generators.size(), 1u);
  EXPECT_EQ(s.shadow_map.rows(), 3u);
  EXPECT_EQ(s.shadow_map.cols(), 2u);
  EXPECT_EQ(s.shadow_map(0, 0), -1);
  EXPECT_EQ(s.shadow_map(0, 1), 0);

  auto e = nilshadow(corpus::e2());
  EXPECT_TRUE(e.u.is_abelian());
  EXPECT_EQ(e.u.dim(), 3u);
}

TEST(Nilshadow, NonSemisimpleAdGivesHeisenberg) {
  auto r = nilshadow(corpus::jordan_block_solvable());
  EXPECT_FALSE(r.u.is_abelian());
  EXPECT_EQ(nilpotency_class(r.u), 2u);
  EXPECT_EQ(r.u.bracket_basis(0, 2), (Vec{0, 1, 0}));
}

TEST(Nilshadow, InvariantsOnCorpus) {
  for (const auto& g : {corpus::heisenberg(), corpus::sol2(), corpus::e2(), corpus::sol3(), corpus::filiform4(),
                        corpus::jordan_block_solvable(), corpus::torus_on_heisenberg(), LieAlgebra::abelian(2)}) {
    auto r = nilshadow(g);
    EXPECT_TRUE(is_nilpotent(r.u));
    EXPECT_EQ(r.u.dim(), g.dim());
    for (const auto& a : r.ads_generators) {
      EXPECT_TRUE(is_derivation(r.u, a));
      EXPECT_TRUE(is_semisimple_matrix(a));
      for (const auto& b : r.ads_generators) EXPECT_TRUE(commutator(a, b).is_zero());
    }
    if (is_nilpotent(g)) {
      EXPECT_EQ(r.u, g);
    }
  }
}

TEST(Nilshadow, ZeroAlgebra) {
  auto r = nilshadow(LieAlgebra(0));
  EXPECT_EQ(r.u.dim(), 0u);
}

TEST(MatrixLie, HeisenbergFromElementaryMatrices) {
  Matrix a(3, 3), b(3, 3);
  a(0, 1) = 1;
  b(1, 2) = 1;
  auto m = generate_matrix_lie_algebra({a, b});
  EXPECT_EQ(m.algebra.dim(), 3u);
  EXPECT_EQ(nilpotency_class(m.algebra), 2u);
}
