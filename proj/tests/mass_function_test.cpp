#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dsfusion/mass_function.hpp"
#include "test_support.hpp"

using namespace dsfusion;

namespace {

const SubsetId kHead{0b01};
const SubsetId kHand{0b10};
const SubsetId kBoth{0b11};

Frame maradona_frame() { return make_frame({"head", "hand"}); }

}  // namespace

TEST(MakeBba, SortsAndLooksUp) {
  const auto m = make_bba(maradona_frame(), {{kBoth, 0.1}, {kHand, 0.3}, {kHead, 0.6}});
  ASSERT_EQ(m.focal_count(), 3U);
  EXPECT_EQ(m.focal_elements()[0].subset, kHead);
  EXPECT_EQ(m.focal_elements()[2].subset, kBoth);
  EXPECT_DOUBLE_EQ(m.mass(kHand), 0.3);
  EXPECT_EQ(m.mass(SubsetId::empty()), 0.0);
  EXPECT_NEAR(m.total(), 1.0, 1e-15);
  EXPECT_FALSE(m.is_vacuous());
}

TEST(MakeBba, DropsZeros) {
  const auto with_zero = make_bba(maradona_frame(), {{kHead, 0.9}, {kHand, 0.0}, {kBoth, 0.1}});
  const auto without = make_bba(maradona_frame(), {{kHead, 0.9}, {kBoth, 0.1}});
  EXPECT_EQ(with_zero, without);
  EXPECT_FALSE(with_zero.is_focal(kHand));
  // a zero on the empty set is not a focal element either
  EXPECT_NO_THROW(make_bba(maradona_frame(), {{SubsetId::empty(), 0.0}, {kHead, 1.0}}));
}

TEST(MakeBba, Errors) {
  const Frame f = maradona_frame();
  EXPECT_FUSION_ERROR(make_bba(f, {{SubsetId::empty(), 0.2}, {kHead, 0.8}}), ErrorCode::kMassOnEmptySet);
  EXPECT_FUSION_ERROR(make_bba(f, {{kHead, -0.1}, {kHand, 1.1}}), ErrorCode::kNegativeMass);
  EXPECT_FUSION_ERROR(make_bba(f, {{kHead, std::nan("")}, {kHand, 1.0}}), ErrorCode::kInvalidMass);
  EXPECT_FUSION_ERROR(make_bba(f, {{kHead, std::numeric_limits<double>::infinity()}}), ErrorCode::kInvalidMass);
  EXPECT_FUSION_ERROR(make_bba(f, {{kHead, 0.5}, {kHand, 0.47}}), ErrorCode::kSumNotOne);
  EXPECT_FUSION_ERROR(make_bba(f, {{kHead, 0.5}, {kHead, 0.5}}), ErrorCode::kDuplicateFocalElement);
  EXPECT_FUSION_ERROR(make_bba(f, {{SubsetId{0b100}, 1.0}}), ErrorCode::kSubsetOutOfFrame);
  EXPECT_FUSION_ERROR(make_bba(f, {}), ErrorCode::kSumNotOne);
}

TEST(MakeBba, SumTolerance) {
  const Frame f = maradona_frame();
  EXPECT_NO_THROW(make_bba(f, {{kHead, 0.5}, {kHand, 0.5 + 5e-10}}));
  EXPECT_FUSION_ERROR(make_bba(f, {{kHead, 0.5}, {kHand, 0.5 + 5e-9}}), ErrorCode::kSumNotOne);
}

TEST(MakeBba, NormalizeRescales) {
  const auto m = make_bba(maradona_frame(), {{kHead, 0.6}, {kHand, 0.2}}, {.normalize = true});
  EXPECT_DOUBLE_EQ(m.mass(kHead), 0.75);
  EXPECT_DOUBLE_EQ(m.mass(kHand), 0.25);
  EXPECT_FUSION_ERROR(make_bba(maradona_frame(), {{kHead, 0.0}}, {.normalize = true}), ErrorCode::kSumNotOne);
}

TEST(VacuousBba, PutsAllMassOnTheFrame) {
  const Frame f = numbered_frame(4);
  const auto m = vacuous_bba(f);
  EXPECT_TRUE(m.is_vacuous());
  ASSERT_EQ(m.focal_count(), 1U);
  EXPECT_EQ(m.mass(f.full()), 1.0);
}

TEST(DifferingSubsets, MaradonaInputsDifferOnTwoSingletons) {
  const Frame f = maradona_frame();
  const auto m1 = make_bba(f, {{kHead, 0.9}, {kBoth, 0.1}});
  const auto m2 = make_bba(f, {{kHead, 0.6}, {kHand, 0.3}, {kBoth, 0.1}});
  EXPECT_EQ(differing_subsets(m1, m2, 1e-9), (std::vector<SubsetId>{kHead, kHand}));
  EXPECT_NEAR(max_abs_difference(m1, m2), 0.3, 1e-15);
  EXPECT_TRUE(differing_subsets(m1, m1, 1e-9).empty());
  EXPECT_FUSION_ERROR(differing_subsets(m1, m2, 0.0), ErrorCode::kInvalidParams);
}

TEST(DifferingSubsets, FrameMismatch) {
  const auto m1 = vacuous_bba(make_frame({"a", "b"}));
  const auto m2 = vacuous_bba(make_frame({"b", "a"}));
  EXPECT_FUSION_ERROR(differing_subsets(m1, m2, 1e-9), ErrorCode::kFrameMismatch);
}

// Two normalized BBAs cannot differ on exactly one subset.
TEST(DifferingSubsetsProperty, NeverExactlyOne) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const auto m1 = test_support::random_mass(rng, n);
    const auto m2 = test_support::random_mass(rng, n);
    EXPECT_NE(differing_subsets(m1, m2, 1e-9).size(), 1U);
  }
}
