#include <gtest/gtest.h>

#include "hullcoh/exterior.hpp"
#include "hullcoh/jordan.hpp"
#include "hullcoh/probe_rng.hpp"

using namespace hullcoh;

TEST(Rational, ParsesAndRejects) {
  EXPECT_EQ(q("6/4"), Rat(3, 2));
  EXPECT_EQ(q("-7"), Rat(-7));
  EXPECT_FALSE(try_parse_rational("2/0"));
  EXPECT_FALSE(try_parse_rational("1.5"));
  EXPECT_FALSE(try_parse_rational(""));
  EXPECT_FALSE(try_parse_rational("3/-4"));
}

TEST(Rref, Examples) {
  auto r = rref(Matrix{{1, 2}, {2, 4}});
  EXPECT_EQ(r.reduced, (Matrix{{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(r.transform * (Matrix{{1, 2}, {2, 4}}), r.reduced);

  auto id = rref(Matrix::identity(3));
  EXPECT_EQ(id.reduced, Matrix::identity(3));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));

  auto p = rref(Matrix{{0, 1}, {1, 0}});
  EXPECT_EQ(p.reduced, Matrix::identity(2));
  EXPECT_EQ(p.transform * (Matrix{{0, 1}, {1, 0}}), p.reduced);
}

TEST(Kernel, Examples) {
  auto k = kernel_basis(Matrix{{1, 2}, {2, 4}});
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.contains(Vec{-2, 1}));
  EXPECT_EQ(kernel_basis(Matrix::identity(2)).dim(), 0u);
  EXPECT_EQ(kernel_basis(Matrix(2, 2)).dim(), 2u);
}

TEST(Quotient, Examples) {
  auto a = quotient_basis(Subspace::full(2), Subspace::span(2, {Vec{1, 0}}));
  ASSERT_EQ(a.lifts.cols(), 1u);
  EXPECT_EQ(a.lifts.column(0), (Vec{0, 1}));

  Subspace w = Subspace::span(3, {Vec{1, 1, 0}});
  EXPECT_EQ(quotient_basis(w, w).lifts.cols(), 0u);

  auto c = quotient_basis(Subspace::full(3), w);
  ASSERT_EQ(c.lifts.cols(), 2u);
  EXPECT_TRUE((c.projection * c.lifts).is_identity());
  EXPECT_TRUE(is_zero(c.projection * Vec{1, 1, 0}));
  EXPECT_EQ((Subspace::span(c.lifts) + w).dim(), 3u);

  try {
    quotient_basis(w, Subspace::full(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not a subspace pair"), std::string::npos);
  }
}

TEST(JointFixed, Examples) {
  std::vector<Matrix> one{Matrix{{-1, 0}, {0, 1}}};
  auto s = joint_fixed_subspace(one, 2);
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_TRUE(s.contains(Vec{0, 1}));
  EXPECT_EQ(joint_fixed_subspace({}, 2).dim(), 2u);
  std::vector<Matrix> cat{Matrix{{2, 1}, {1, 1}}};
  EXPECT_EQ(joint_fixed_subspace(cat, 2).dim(), 0u);
}

TEST(JointFixed, OrderIndependentAndIdempotent) {
  ProbeRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = Matrix::identity(3);
    a(0, 1) = rng.small_int(2);
    Matrix b = Matrix::identity(3);
    b(2, 0) = rng.small_int(2);
    std::vector<Matrix> ab{a, b}, ba{b, a}, aab{a, a, b};
    EXPECT_EQ(joint_fixed_subspace(ab, 3), joint_fixed_subspace(ba, 3));
    EXPECT_EQ(joint_fixed_subspace(ab, 3), joint_fixed_subspace(aab, 3));
  }
}

TEST(Jordan, AdditiveExamples) {
  auto u = jordan_chevalley_additive(Matrix{{1, 1}, {0, 1}});
  EXPECT_EQ(u.semisimple, Matrix::identity(2));
  EXPECT_EQ(u.nilpotent, (Matrix{{0, 1}, {0, 0}}));

  Matrix cat{{2, 1}, {1, 1}};
  auto c = jordan_chevalley_additive(cat);
  EXPECT_EQ(c.semisimple, cat);
  EXPECT_TRUE(c.nilpotent.is_zero());

  auto j = jordan_chevalley_additive(Matrix{{2, 1}, {0, 2}});
  EXPECT_EQ(j.semisimple, Matrix::identity(2) * Rat(2));
  EXPECT_EQ(j.nilpotent, (Matrix{{0, 1}, {0, 0}}));
}

TEST(Jordan, MultiplicativeExamples) {
  Matrix u{{1, 1}, {0, 1}};
  auto a = jordan_chevalley_multiplicative(u);
  EXPECT_EQ(a.semisimple, Matrix::identity(2));
  EXPECT_EQ(a.unipotent, u);

  Matrix cat{{2, 1}, {1, 1}};
  auto b = jordan_chevalley_multiplicative(cat);
  EXPECT_EQ(b.semisimple, cat);
  EXPECT_TRUE(b.unipotent.is_identity());

  auto c = jordan_chevalley_multiplicative(Matrix{{2, 1}, {0, 2}});
  EXPECT_EQ(c.semisimple, Matrix::identity(2) * Rat(2));
  EXPECT_EQ(c.unipotent, (Matrix{{1, Rat(1, 2)}, {0, 1}}));

  EXPECT_THROW(jordan_chevalley_multiplicative(Matrix{{1, 2}, {2, 4}}), Error);
}

TEST(Jordan, IrrationalEigenvaluesStayRational) {
  // Rotation by 90 degrees plus a Jordan block: S has eigenvalues +-i.
  Matrix m(4, 4);
  m(0, 1) = -1; m(1, 0) = 1; m(2, 3) = -1; m(3, 2) = 1;
  m(0, 2) = 1; m(1, 3) = 1;
  auto jc = jordan_chevalley_additive(m);
  EXPECT_EQ(jc.semisimple + jc.nilpotent, m);
  EXPECT_FALSE(jc.nilpotent.is_zero());
  EXPECT_TRUE(is_squarefree(minimal_polynomial(jc.semisimple)));
}

TEST(ExpLog, Examples) {
  EXPECT_EQ(nilpotent_log(Matrix{{1, 1}, {0, 1}}), (Matrix{{0, 1}, {0, 0}}));
  EXPECT_EQ(nilpotent_log(Matrix{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}),
            (Matrix{{0, 1, Rat(1, 2)}, {0, 0, 1}, {0, 0, 0}}));
  EXPECT_TRUE(unipotent_exp(Matrix(3, 3)).is_identity());
  EXPECT_THROW(nilpotent_log(Matrix{{2, 0}, {0, 1}}), Error);
  EXPECT_THROW(unipotent_exp(Matrix{{1, 0}, {0, 0}}), Error);
}

TEST(ExpLog, MutuallyInverseOnStrictlyUpperTriangular) {
  ProbeRng rng(11);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      Matrix nil(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) nil(i, j) = frac(rng.small_int(3), 2);
      EXPECT_EQ(nilpotent_log(unipotent_exp(nil)), nil);
      Matrix u = Matrix::identity(n) + nil;
      EXPECT_EQ(unipotent_exp(nilpotent_log(u)), u);
      EXPECT_TRUE(jordan_chevalley_multiplicative(u).semisimple.is_identity());
    }
}

TEST(Linalg, RankNullity) {
  ProbeRng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 6;
    Matrix m = rng.matrix(r, c, 2);
    if (trial % 3 == 0 && r > 1) m.set_block(r - 1, 0, m.block(0, 0, 1, c));
    Subspace k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.dim(), c);
    EXPECT_TRUE((m * k.basis()).is_zero());
  }
}

TEST(Polynomial, CharpolyAndGcd) {
  Matrix m{{2, 1}, {1, 1}};
  EXPECT_EQ(characteristic_polynomial(m), Poly({1, -3, 1}));
  EXPECT_TRUE(characteristic_polynomial(m).evaluate(m).is_zero());
  Poly p = Poly({-1, 1}) * Poly({-1, 1}) * Poly({2, 1});
  EXPECT_EQ(squarefree_part(p), Poly({-2, 1, 1}));
  EXPECT_FALSE(is_squarefree(p));
}

TEST(Exterior, PowerIsFunctorial) {
  ProbeRng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = rng.matrix(4, 4, 2), b = rng.matrix(4, 4, 2);
    ExteriorIndex idx(4);
    for (std::size_t k = 0; k <= 4; ++k)
      EXPECT_EQ(exterior_power(a * b, k, idx), exterior_power(a, k, idx) * exterior_power(b, k, idx));
    EXPECT_EQ(exterior_power(a, 4, idx)(0, 0), determinant(a));
  }
}
