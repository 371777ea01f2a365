#include <gtest/gtest.h>

#include "support/random_instances.hpp"

using namespace randomized;

namespace {

void expect_clean(const Tally& t) {
  EXPECT_EQ(t.instances, kInstancesPerFamily);
  for (const auto& f : t.failures) ADD_FAILURE() << f;
}

}  // namespace

TEST(Randomized, NilpotentAlgebras) { expect_clean(nilpotent_family(kDefaultSeed)); }
TEST(Randomized, SolvableAlgebras) { expect_clean(solvable_family(kDefaultSeed + 1)); }
TEST(Randomized, JordanChevalley) { expect_clean(jordan_family(kDefaultSeed + 2)); }
TEST(Randomized, ExpLog) { expect_clean(exp_log_family(kDefaultSeed + 3)); }
TEST(Randomized, GroupsAndHulls) { expect_clean(group_family(kDefaultSeed + 4)); }

TEST(Randomized, OraclesOnKnownInputs) {
  // x^3 - 3x - 1 checked by hand; gcd with the derivative of (x-1)^2 (x+2).
  Matrix companion{{0, 0, 1}, {1, 0, 3}, {0, 1, 0}};
  EXPECT_EQ(charpoly_oracle(companion), (Coeffs{-1, -3, 0, 1}));
  Coeffs p{2, -3, 0, 1};
  Coeffs dp{-3, 0, 3};
  EXPECT_EQ(poly_gcd(p, dp).size(), 2u);
  EXPECT_FALSE(jacobi_oracle([] {
    LieAlgebra g(3);
    g.set_bracket(0, 1, {0, 0, 1});
    g.set_bracket(1, 2, {1, 0, 0});
    g.set_bracket(0, 2, {1, 0, 0});
    return g;
  }()));
  EXPECT_EQ(fixed_dim_oracle(GammaModule{2, {Matrix{{1, 1}, {0, 1}}}}), 1u);
}
