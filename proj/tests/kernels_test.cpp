#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <vector>

#include "dsfusion/kernels.hpp"

using namespace dsfusion::kernels;

namespace {

std::vector<double> random_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> t(std::size_t{1} << n);
  for (auto& v : t) v = unit(rng);
  return t;
}

std::vector<double> naive_subset_sum(const std::vector<double>& t) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = 0; b < t.size(); ++b) {
      if ((b & ~a) == 0) out[a] += t[b];
    }
  }
  return out;
}

std::vector<double> naive_superset_sum(const std::vector<double>& t) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = 0; b < t.size(); ++b) {
      if ((a & ~b) == 0) out[a] += t[b];
    }
  }
  return out;
}

bool bit_identical(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace

TEST(Kernels, ScalarMatchesNaiveZeta) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto t = random_table(n, rng);
    auto sub = t;
    scalar::subset_sum(sub, n);
    auto sup = t;
    scalar::superset_sum(sup, n);
    const auto want_sub = naive_subset_sum(t);
    const auto want_sup = naive_superset_sum(t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(sub[i], want_sub[i], 1e-12);
      EXPECT_NEAR(sup[i], want_sup[i], 1e-12);
    }
  }
}

TEST(Kernels, DifferenceInvertsSum) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto t = random_table(n, rng);
    auto x = t;
    scalar::subset_sum(x, n);
    scalar::subset_difference(x, n);
    auto y = t;
    scalar::superset_sum(y, n);
    scalar::superset_difference(y, n);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(x[i], t[i], 1e-12);
      EXPECT_NEAR(y[i], t[i], 1e-12);
    }
  }
}

TEST(Kernels, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_supported(Isa::kScalar));
  EXPECT_EQ(table_for(Isa::kScalar).isa, Isa::kScalar);
  EXPECT_TRUE(isa_supported(active().isa));
}

TEST(Kernels, UnsupportedIsaThrows) {
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!isa_supported(isa)) EXPECT_THROW(table_for(isa), std::invalid_argument);
  }
}

// Every vector variant must reproduce the scalar reference bit for bit.
TEST(Kernels, VariantsBitIdenticalToScalar) {
  const auto& ref = table_for(Isa::kScalar);
  std::mt19937_64 rng(9);
  for (Isa isa : supported_isas()) {
    SCOPED_TRACE(std::string(to_string(isa)));
    const auto& k = table_for(isa);
    for (std::size_t n = 0; n <= 14; ++n) {
      const auto t = random_table(n, rng);
      const auto other = random_table(n, rng);
      using Fn = void (*)(std::span<double>, std::size_t);
      for (auto [want_fn, got_fn] : {std::pair<Fn, Fn>{ref.subset_sum, k.subset_sum},
                                     {ref.subset_difference, k.subset_difference},
                                     {ref.superset_sum, k.superset_sum},
                                     {ref.superset_difference, k.superset_difference}}) {
        auto want = t;
        auto got = t;
        want_fn(want, n);
        got_fn(got, n);
        EXPECT_TRUE(bit_identical(want, got)) << "n=" << n;
      }
      auto want = t;
      auto got = t;
      ref.multiply(want, other);
      k.multiply(got, other);
      EXPECT_TRUE(bit_identical(want, got)) << "multiply n=" << n;
    }
  }
}
