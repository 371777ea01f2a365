#include <gtest/gtest.h>

#include "hullcoh/verify.hpp"
#include "support/corpus.hpp"
#include "support/groups.hpp"

using namespace hullcoh;

namespace {

using Dims = std::vector<std::size_t>;

Dims group_column(const VerificationReport& r) {
  Dims d;
  for (const auto& row : r.rows) d.push_back(row.group_dim);
  return d;
}

Dims lie_column(const VerificationReport& r) {
  Dims d;
  for (const auto& row : r.rows) d.push_back(row.lie_dim);
  return d;
}

void expect_equal(const VerificationReport& r, const Dims& dims) {
  EXPECT_EQ(group_column(r), dims);
  EXPECT_EQ(lie_column(r), dims);
  EXPECT_TRUE(r.all_equal());
  EXPECT_TRUE(r.audits_ok());
}

}  // namespace

TEST(MainIso, Corpus) {
  expect_equal(verify_main_iso(hull_abelian(3)), {1, 3, 3, 1});
  expect_equal(verify_main_iso(hull_semidirect_ZnZ(corpus::cat_map())), {1, 1, 1, 1});
  expect_equal(verify_main_iso(hull_semidirect_ZnZ(Matrix{{1, 1}, {0, 1}})), {1, 2, 2, 1});
  expect_equal(verify_main_iso(hull_nilpotent_unitriangular(corpus::heisenberg_lattice(), corpus::heisenberg_matrices())),
               {1, 2, 2, 1});
  expect_equal(verify_main_iso(hull_semidirect_ZnZ(Matrix{{-1}})), {1, 1, 0});
}

TEST(MainIso, CrystallographicKlein) {
  CrystallographicGroup g{2, 1, {Matrix::identity(1), Matrix::identity(1)}, {{Matrix::diagonal({-1, 1}), Matrix::identity(1)}}};
  auto r = verify_main_iso(hull_crystallographic(g));
  expect_equal(r, {1, 1, 0});
  EXPECT_FALSE(r.notes.empty());
}

TEST(MainIso, LargerExamples) {
  auto ut4 = verify_main_iso(hull_nilpotent_unitriangular(corpus::unitriangular4(), corpus::unitriangular4_matrices()));
  EXPECT_TRUE(ut4.all_equal());
  EXPECT_TRUE(ut4.audits_ok());
  auto fil = verify_main_iso(hull_semidirect_ZnZ(corpus::filiform_block()));
  EXPECT_TRUE(fil.all_equal());
  auto f4 = corpus::filiform4();
  EXPECT_EQ(group_column(fil), ce_cohomology_dims(f4, LieModule::trivial(f4)));
}

TEST(MainIso, NontrivialCoefficients) {
  GammaModule v{2, {corpus::cat_map(), Matrix::identity(2), Matrix::identity(2)}};
  auto r = verify_main_iso(hull_semidirect_ZnZ(corpus::cat_map(), v), v);
  // The group column comes from the Wang tower alone.
  EXPECT_EQ(group_column(r), group_cohomology(PolyZPresentation::semidirect(corpus::cat_map()), v).dims);
  EXPECT_TRUE(r.all_equal());

  GammaModule u{2, {Matrix{{1, 1}, {0, 1}}, Matrix::identity(2), Matrix::identity(2)}};
  EXPECT_TRUE(verify_main_iso(hull_semidirect_ZnZ(Matrix{{1, 1}, {0, 1}}, u)).all_equal());

  GammaModule sign{1, {Matrix{{-1}}, Matrix{{1}}}};
  EXPECT_TRUE(verify_main_iso(hull_semidirect_ZnZ(Matrix{{-1}}, sign)).all_equal());

  EXPECT_THROW(verify_main_iso(hull_semidirect_ZnZ(corpus::cat_map()), v), Error);
}

TEST(MainIso, FlagsFakeHull) {
  // A valid record set whose torus acts on u by 2: not a hull of Z.
  auto h = hull_abelian(1);
  h.generators[0].torus = Matrix{{2}};
  h.generators[0].automorphism = Matrix{{2}};
  auto r = verify_main_iso(h);
  EXPECT_FALSE(r.all_equal());
  EXPECT_EQ(r.rows[1].verdict, Verdict::GroupLarger);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Nomizu, Examples) {
  expect_equal(verify_nomizu(hull_semidirect_ZnZ(Matrix{{1, 1}, {0, 1}})), {1, 2, 2, 1});
  expect_equal(verify_nomizu(hull_abelian(1)), {1, 1});

  Matrix u{{1, 1}, {0, 1}};
  GammaModule v{2, {u, Matrix::identity(2)}};
  auto r = verify_nomizu(hull_abelian(2, v));
  EXPECT_TRUE(r.all_equal());
  EXPECT_EQ(group_column(r), koszul_cohomology_Zn(v.rho, 2).basis.dims());

  auto ut4 = verify_nomizu(hull_nilpotent_unitriangular(corpus::unitriangular4(), corpus::unitriangular4_matrices()));
  EXPECT_TRUE(ut4.all_equal());

  auto sol = verify_nomizu(hull_semidirect_ZnZ(corpus::cat_map()));
  EXPECT_FALSE(sol.audits_ok());
}

TEST(Mostow, Examples) {
  auto ab = LieAlgebra::abelian(3);
  auto z3 = PolyZPresentation::free_abelian(3);
  expect_equal(verify_mostow(ab, LieModule::trivial(ab), z3, GammaModule::trivial(3)), {1, 3, 3, 1});

  auto sol = corpus::sol3();
  auto solp = PolyZPresentation::semidirect(corpus::cat_map());
  expect_equal(verify_mostow(sol, LieModule::trivial(sol), solp, GammaModule::trivial(3)), {1, 1, 1, 1});

  auto e2 = corpus::e2();
  auto r = verify_mostow(e2, LieModule::trivial(e2), z3, GammaModule::trivial(3));
  EXPECT_EQ(r.rows[1].lie_dim, 1u);
  EXPECT_EQ(r.rows[1].group_dim, 3u);
  EXPECT_TRUE(r.injection_holds());
  EXPECT_TRUE(r.strict_somewhere());
  EXPECT_TRUE(r.audits_ok());
  EXPECT_FALSE(r.notes.empty());
}

TEST(Mostow, InjectionFailureIsAnAudit) {
  auto ab = LieAlgebra::abelian(1);
  auto r = verify_mostow(ab, LieModule::trivial(ab), PolyZPresentation::free_abelian(1), GammaModule{1, {Matrix{{2}}}});
  EXPECT_FALSE(r.injection_holds());
  EXPECT_FALSE(r.audits_ok());
  EXPECT_THROW(verify_mostow(ab, LieModule::trivial(ab), PolyZPresentation::free_abelian(2), GammaModule::trivial(2)), Error);
}

TEST(Probe, TranslationOnLine) {
  for (unsigned d = 0; d <= 2; ++d) {
    auto r = vanishing_probe(hull_abelian(1), d, d + 4);
    EXPECT_EQ(r.status, ProbeStatus::Pass);
    ASSERT_EQ(r.classes.size(), 1u);
    EXPECT_EQ(r.classes[0].death, std::optional<unsigned>(d + 1));
    // Oracle: H^1(Z, P_{<=d}) = coker(t - 1) has dimension 1 since t - 1 maps onto P_{<=d-1}.
    auto m = polynomial_action_module(hull_abelian(1), d);
    Matrix delta = m.action.rho[0] - Matrix::identity(m.dim());
    EXPECT_EQ(m.dim() - rank(delta), 1u);
  }
  EXPECT_EQ(vanishing_probe(hull_abelian(1), 0, 0).status, ProbeStatus::Inconclusive);
}

TEST(Probe, KleinMatchesCrystallographicOracle) {
  auto h = hull_semidirect_ZnZ(Matrix{{-1}});
  for (unsigned d = 0; d <= 3; ++d) {
    auto m = polynomial_action_module(h, d);
    const Matrix& t = m.action.rho[0];
    CrystallographicGroup cg{2, m.dim(), {m.action.rho[1], t * t}, {{Matrix::diagonal({-1, 1}), t}}};
    EXPECT_EQ(group_cohomology(*h.presentation, m.action).dims, crystallographic_cohomology(cg).dims()) << "d = " << d;
  }
  for (unsigned d = 0; d <= 2; ++d) {
    auto r = vanishing_probe(h, d, d + 4);
    EXPECT_EQ(r.status, ProbeStatus::Pass) << "d_start = " << d;
    for (const auto& c : r.classes) EXPECT_LE(*c.death, d + 2);
  }
}

TEST(Probe, Heisenberg) {
  auto h = hull_semidirect_ZnZ(Matrix{{1, 1}, {0, 1}});
  for (unsigned d = 0; d <= 2; ++d) EXPECT_EQ(vanishing_probe(h, d, d + 4).status, ProbeStatus::Pass) << "d_start = " << d;
}
