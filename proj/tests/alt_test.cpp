#include <gtest/gtest.h>

#include <random>

#include "dsfusion/alt.hpp"
#include "dsfusion/classic.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace dsfusion;

namespace {

const SubsetId kA{0b001};
const SubsetId kB{0b010};
const SubsetId kAB{0b011};
const SubsetId kC{0b100};
const SubsetId kAC{0b101};
const SubsetId kBC{0b110};
const SubsetId kABC{0b111};

}  // namespace

TEST(Transform, TwoDoctorsWorkedValues) {
  const auto [m1, m2] = two_doctors({0.3, 0.2, 0.3});
  const auto mu1 = transform(m1);
  EXPECT_NEAR(mu1.weight(kA), 13.0 / 20.0, 1e-15);
  EXPECT_NEAR(mu1.weight(kB), 7.0 / 20.0, 1e-15);
  EXPECT_NEAR(mu1.weight(kAB), 7.0 / 20.0, 1e-15);
  EXPECT_EQ(mu1.weight(kC), 0.0);
  EXPECT_EQ(mu1.weight(SubsetId::empty()), 0.0);

  const auto mu2 = transform(m2);
  EXPECT_NEAR(mu2.weight(kA), 0.2, 1e-15);
  EXPECT_NEAR(mu2.weight(kB), 0.2, 1e-15);
  EXPECT_NEAR(mu2.weight(kAB), 0.2, 1e-15);
  EXPECT_NEAR(mu2.weight(kC), 0.6, 1e-15);
  EXPECT_NEAR(mu2.weight(kAC), 0.1, 1e-15);
  EXPECT_NEAR(mu2.weight(kBC), 0.1, 1e-15);
  EXPECT_NEAR(mu2.weight(kABC), 0.1, 1e-15);
}

TEST(Transform, VacuousSpreadsEvenly) {
  const auto mu = transform(vacuous_bba(numbered_frame(3)), {.source = "vac"});
  EXPECT_EQ(mu.source(), "vac");
  EXPECT_EQ(mu.support_size(), 7U);
  for (std::uint64_t a = 1; a < 8; ++a) EXPECT_NEAR(mu.weight(SubsetId{a}), 1.0 / 3.0, 1e-15);
}

TEST(Transform, Guards) {
  const Frame big = numbered_frame(30);
  EXPECT_FUSION_ERROR(transform(vacuous_bba(big)), ErrorCode::kFrameTooLargeForAltFusion);
  const auto point = make_bba(big, {{SubsetId{1}, 1.0}});
  EXPECT_FUSION_ERROR(transform(point, {.path = TransformPath::kDense}), ErrorCode::kFrameTooLargeForDenseTable);
  EXPECT_EQ(transform(point).support_size(), 1U);
}

TEST(Transform, DenseAndSparseAgree) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto m = test_support::random_mass(rng, n);
    const auto d = transform(m, {.path = TransformPath::kDense});
    const auto s = transform(m, {.path = TransformPath::kSparse});
    ASSERT_EQ(d.support_size(), s.support_size());
    for (std::size_t i = 0; i < d.support_size(); ++i) {
      EXPECT_EQ(d.weights()[i].subset, s.weights()[i].subset);
      EXPECT_NEAR(d.weights()[i].weight, s.weights()[i].weight, 1e-12);
    }
  }
}

TEST(AltConflict, Examples) {
  const Frame f = numbered_frame(2);
  const auto p = make_bba(f, {{SubsetId{0b01}, 1.0}});
  const auto q = make_bba(f, {{SubsetId{0b10}, 1.0}});
  EXPECT_NEAR(alt_conflict(transform(p), transform(q)), 1.0, 1e-15);
  EXPECT_NEAR(alt_conflict(transform(p), transform(vacuous_bba(f))), 0.5, 1e-15);
  EXPECT_FUSION_ERROR(fuse(p, q), ErrorCode::kTotalAltConflict);
}

TEST(AltCombine, TwoDoctorsExactValues) {
  const auto [m1, m2] = two_doctors({0.3, 0.2, 0.3});
  const auto r = fuse(m1, m2);
  EXPECT_NEAR(r.conflict_mu, 1.11, 1e-12);
  EXPECT_NEAR(r.denominator, 183.0 / 200.0, 1e-12);
  EXPECT_NEAR(r.combined.mass(kA), 33.0 / 61.0, 1e-12);
  EXPECT_NEAR(r.combined.mass(kB), 21.0 / 61.0, 1e-12);
  EXPECT_NEAR(r.combined.mass(kAB), 7.0 / 61.0, 1e-12);
  EXPECT_EQ(r.combined.mass(kC), 0.0);
  EXPECT_NEAR(r.combined.total(), 1.0, 1e-12);
  ASSERT_TRUE(r.normalizer_K.has_value());
  EXPECT_NEAR(*r.normalizer_K, (183.0 / 200.0) / (1.0 - 1.11), 1e-9);
  EXPECT_LT(*r.normalizer_K, 0.0);
  EXPECT_FALSE(detect_anomaly(m1, m2, r.combined).anomalous);
}

TEST(AltCombine, MaradonaExactValues) {
  const Frame f = make_frame({"head", "hand"});
  const auto m1 = make_bba(f, {{SubsetId{0b01}, 0.9}, {SubsetId{0b11}, 0.1}});
  const auto m2 = make_bba(f, {{SubsetId{0b01}, 0.6}, {SubsetId{0b10}, 0.3}, {SubsetId{0b11}, 0.1}});
  const auto r = fuse(m1, m2);
  EXPECT_NEAR(r.conflict_mu, 0.365, 1e-12);
  EXPECT_NEAR(r.denominator, 0.7375, 1e-12);
  EXPECT_NEAR(r.combined.mass(SubsetId{0b01}), 279.0 / 295.0, 1e-12);
  EXPECT_NEAR(r.combined.mass(SubsetId{0b10}), 3.0 / 59.0, 1e-12);
  EXPECT_NEAR(r.combined.mass(SubsetId{0b11}), 1.0 / 295.0, 1e-12);
}

TEST(AltCombine, PointMassIsIdempotent) {
  const Frame f = numbered_frame(3);
  const auto p = make_bba(f, {{SubsetId{0b001}, 1.0}});
  const auto r = fuse(p, p);
  EXPECT_EQ(r.combined.mass(SubsetId{0b001}), 1.0);
  EXPECT_EQ(r.combined.focal_count(), 1U);
  EXPECT_EQ(r.conflict_mu, 0.0);
  ASSERT_TRUE(r.normalizer_K.has_value());
  EXPECT_EQ(*r.normalizer_K, 1.0);
}

TEST(AltCombine, NormalizerAgainstVacuous) {
  // {t1} against vacuous on two labels: conflict 1/2
  const Frame f = numbered_frame(2);
  const auto p = make_bba(f, {{SubsetId{0b01}, 1.0}});
  const auto r = fuse(p, vacuous_bba(f));
  ASSERT_TRUE(r.normalizer_K.has_value());
  EXPECT_NEAR(*r.normalizer_K, r.denominator / 0.5, 1e-12);
}

TEST(AltCombine, Guards) {
  const Frame f = numbered_frame(13);
  const auto v = vacuous_bba(f);
  EXPECT_FUSION_ERROR(fuse(v, v), ErrorCode::kFrameTooLargeForAltFusion);
  EXPECT_NO_THROW(fuse(make_bba(f, {{SubsetId{1}, 1.0}}), make_bba(f, {{SubsetId{3}, 1.0}}), {.max_frame = 13}));
  const auto a = vacuous_bba(make_frame({"x", "y"}));
  const auto b = vacuous_bba(make_frame({"y", "x"}));
  EXPECT_FUSION_ERROR(fuse(a, b), ErrorCode::kFrameMismatch);
}

TEST(AltCombine, StrategiesAgreeWithOracle) {
  std::mt19937_64 rng(32);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const auto m1 = test_support::random_mass(rng, n);
    const auto m2 = test_support::random_mass(rng, n);
    const auto want = oracle::alt(oracle::dense(m1), oracle::dense(m2));
    if (want.denominator <= 1e-9) continue;
    for (AltStrategy s : {AltStrategy::kPairs, AltStrategy::kDense, AltStrategy::kAuto}) {
      SCOPED_TRACE(std::string(to_string(s)));
      const auto r = fuse(m1, m2, {.strategy = s});
      if (s != AltStrategy::kAuto) EXPECT_EQ(r.strategy, s);
      EXPECT_NEAR(r.conflict_mu, want.conflict, 1e-12);
      EXPECT_NEAR(r.denominator, want.denominator, 1e-12);
      for (std::uint64_t a = 0; a < want.combined.size(); ++a) {
        EXPECT_NEAR(r.combined.mass(SubsetId{a}), want.combined[a], 1e-12);
      }
    }
  }
}

TEST(AltProperty, StructuralInvariants) {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const auto m1 = test_support::random_mass(rng, n);
    const auto m2 = test_support::random_mass(rng, n);
    const auto mu = transform(m1);

    double singletons = 0.0;
    for (std::size_t i = 0; i < n; ++i) singletons += mu.weight(SubsetId::singleton(i));
    EXPECT_NEAR(singletons, 1.0, 1e-9);

    for (std::uint64_t a = 1; a <= m1.frame().full().bits(); ++a) {
      for (std::uint64_t b = a; b <= m1.frame().full().bits(); b = (b + 1) | a) {
        EXPECT_GE(mu.weight(SubsetId{a}), mu.weight(SubsetId{b}) - 1e-15);
      }
    }

    try {
      const auto r = fuse(m1, m2);
      EXPECT_NEAR(r.combined.total(), 1.0, 1e-9);
      EXPECT_EQ(r.combined.mass(SubsetId::empty()), 0.0);
      const auto swapped = fuse(m2, m1);
      EXPECT_LE(max_abs_difference(r.combined, swapped.combined), 1e-15);
    } catch (const FusionError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTotalAltConflict);
    }
  }
}
