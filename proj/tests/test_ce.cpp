#include <gtest/gtest.h>

#include "hullcoh/ce.hpp"
#include "support/corpus.hpp"

using namespace hullcoh;

namespace {

std::vector<std::size_t> binomials(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(binomial(n, k));
  return out;
}

long euler(const std::vector<std::size_t>& dims) {
  long e = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dims[k]);
  return e;
}

// Value of the 2-cochain w on (e_i, e_j), i < j, for trivial coefficients.
Rat pair_value(const CEComplex& c, const Vec& w, std::size_t i, std::size_t j) {
  return w[c.index.position((Mask{1} << i) | (Mask{1} << j))];
}

}  // namespace

TEST(CEComplex, AbelianHasZeroDifferentials) {
  for (std::size_t n = 0; n <= 4; ++n) {
    auto g = LieAlgebra::abelian(n);
    auto c = build_ce_complex(g, LieModule::trivial(g));
    for (const auto& d : c.complex.differentials) EXPECT_TRUE(d.is_zero());
    EXPECT_EQ(cohomology(c).dims(), binomials(n));
  }
}

TEST(CEComplex, HeisenbergDifferential) {
  auto g = corpus::heisenberg();
  auto c = build_ce_complex(g, LieModule::trivial(g));
  const Matrix& d1 = c.complex.differentials[1];
  Vec dz = d1 * unit_vector(3, 2);
  EXPECT_EQ(pair_value(c, dz, 0, 1), -1);
  EXPECT_EQ(pair_value(c, dz, 0, 2), 0);
  EXPECT_EQ(pair_value(c, dz, 1, 2), 0);
  EXPECT_TRUE(is_zero(d1 * unit_vector(3, 0)));
  EXPECT_TRUE(is_zero(d1 * unit_vector(3, 1)));
  EXPECT_EQ(cohomology(c).dims(), (std::vector<std::size_t>{1, 2, 2, 1}));
}

TEST(CEComplex, Sol2) {
  auto g = corpus::sol2();
  auto c = build_ce_complex(g, LieModule::trivial(g));
  Vec dx = c.complex.differentials[1] * unit_vector(2, 1);
  EXPECT_EQ(pair_value(c, dx, 0, 1), -1);
  auto h = cohomology(c);
  EXPECT_EQ(h.dims(), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(h.degrees[1].representatives.column(0), (Vec{1, 0}));
}

TEST(CEComplex, E2AndSol) {
  EXPECT_EQ(ce_cohomology_dims(corpus::e2(), LieModule::trivial(corpus::e2())),
            (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(ce_cohomology_dims(corpus::sol3(), LieModule::trivial(corpus::sol3())),
            (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(CEComplex, RejectsBadModule) {
  auto g = corpus::heisenberg();
  LieModule v{2, {Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}, Matrix(2, 2)}};
  EXPECT_THROW(build_ce_complex(g, v), Error);
}

TEST(CEComplex, ModuleIndexIsSubsetMajor) {
  auto g = LieAlgebra::abelian(2);
  LieModule v{2, {Matrix{{0, 1}, {0, 0}}, Matrix(2, 2)}};
  auto c = build_ce_complex(g, v);
  // d: C^0 = V -> C^1 = V (+) V; the first block is rho(e_0).
  const Matrix& d0 = c.complex.differentials[0];
  EXPECT_EQ(d0.block(0, 0, 2, 2), v.action[0]);
  EXPECT_TRUE(d0.block(2, 0, 2, 2).is_zero());
  EXPECT_EQ(cohomology(c).dims(), (std::vector<std::size_t>{1, 2, 1}));
}

TEST(InducedGroup, Examples) {
  auto g = LieAlgebra::abelian(2);
  auto c = build_ce_complex(g, LieModule::trivial(g));
  auto h = cohomology(c);
  auto id = induced_map_group(c, h, {Matrix::identity(2), Matrix::identity(1)});
  for (const auto& m : id) EXPECT_TRUE(m.is_identity());

  auto cat = induced_map_group(c, h, {Matrix{{2, 1}, {1, 1}}, Matrix::identity(1)});
  EXPECT_EQ(cat[2], (Matrix{{1}}));

  auto diag = induced_map_group(c, h, {Matrix::diagonal({2, 3}), Matrix::identity(1)});
  EXPECT_EQ(diag[1], Matrix::diagonal({Rat(1, 2), Rat(1, 3)}));
  EXPECT_EQ(diag[2], (Matrix{{Rat(1, 6)}}));
}

TEST(InducedGroup, RejectsIncompatiblePair) {
  auto g = corpus::heisenberg();
  auto c = build_ce_complex(g, LieModule::trivial(g));
  auto h = cohomology(c);
  try {
    induced_map_group(c, h, {Matrix::diagonal({2, 1, 1}), Matrix::identity(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not a module-automorphism pair"), std::string::npos);
  }
}

TEST(InducedGroup, Functorial) {
  ProbeRng rng(41);
  auto g = LieAlgebra::abelian(3);
  LieModule v{1, {Matrix(1, 1), Matrix(1, 1), Matrix(1, 1)}};
  auto c = build_ce_complex(g, v);
  auto h = cohomology(c);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = rng.matrix(3, 3, 2), b = rng.matrix(3, 3, 2);
    if (!try_inverse(a) || !try_inverse(b)) continue;
    Matrix ma{{Rat(rng.small_int(2) == 0 ? 1 : 2)}}, mb{{3}};
    auto fa = induced_map_group(c, h, {a, ma});
    auto fb = induced_map_group(c, h, {b, mb});
    auto fab = induced_map_group(c, h, {a * b, ma * mb});
    for (std::size_t k = 0; k < fa.size(); ++k) EXPECT_EQ(fab[k], fa[k] * fb[k]);
  }
}

TEST(InducedDerivation, Examples) {
  auto g = LieAlgebra::abelian(2);
  auto c = build_ce_complex(g, LieModule::trivial(g));
  auto h = cohomology(c);
  auto zero = induced_map_derivation(c, h, {Matrix(2, 2), Matrix(1, 1)});
  for (const auto& m : zero) EXPECT_TRUE(m.is_zero());

  auto w = induced_map_derivation(c, h, {Matrix::diagonal({1, -1}), Matrix(1, 1)});
  EXPECT_EQ(w[1], Matrix::diagonal({-1, 1}));
  EXPECT_TRUE(w[2].is_zero());

  auto fixed = invariant_cohomology(c, h, {}, {{Matrix::diagonal({0, 1}), Matrix(1, 1)}});
  EXPECT_EQ(fixed.dims(), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_TRUE(fixed.degrees[1].contains(Vec{1, 0}));
}

TEST(Invariants, Examples) {
  auto g3 = LieAlgebra::abelian(3);
  auto c3 = build_ce_complex(g3, LieModule::trivial(g3));
  auto h3 = cohomology(c3);
  EXPECT_EQ(invariant_cohomology(c3, h3, {}, {}).dims(), h3.dims());

  Matrix a(3, 3);
  a.set_block(0, 0, Matrix{{2, 1}, {1, 1}});
  a(2, 2) = 1;
  EXPECT_EQ(invariant_cohomology(c3, h3, {{a, Matrix::identity(1)}}, {}).dims(),
            (std::vector<std::size_t>{1, 1, 1, 1}));

  auto g2 = LieAlgebra::abelian(2);
  auto c2 = build_ce_complex(g2, LieModule::trivial(g2));
  EXPECT_EQ(invariant_cohomology(c2, cohomology(c2), {{Matrix::diagonal({-1, 1}), Matrix::identity(1)}}, {}).dims(),
            (std::vector<std::size_t>{1, 1, 0}));
}

TEST(CEProperties, EulerAndDualityOnCorpus) {
  for (const auto& g : {corpus::heisenberg(), corpus::filiform4(), corpus::sol2(), corpus::e2(), corpus::sol3(),
                        corpus::jordan_block_solvable(), corpus::torus_on_heisenberg()}) {
    auto dims = ce_cohomology_dims(g, LieModule::trivial(g));
    EXPECT_EQ(euler(dims), 0);
    if (!is_nilpotent(g)) continue;
    for (std::size_t k = 0; k < dims.size(); ++k) EXPECT_EQ(dims[k], dims[dims.size() - 1 - k]);
  }
}

TEST(CEProperties, InnerAutomorphismActsTrivially) {
  auto g = corpus::filiform4();
  auto c = build_ce_complex(g, LieModule::trivial(g));
  auto h = cohomology(c);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Matrix ad = g.ad_basis(i);
    for (const auto& m : induced_map_group(c, h, {unipotent_exp(ad), Matrix::identity(1)})) EXPECT_TRUE(m.is_identity());
  }
}
