#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mabbp/concentration.hpp"
#include "mabbp/errors.hpp"
#include "oracles.hpp"

namespace mabbp {
namespace {

TEST(Rho, FirstPullIsOne) { EXPECT_DOUBLE_EQ(rho(1, 100), 1.0); }

TEST(Rho, VanishesAtExhaustion) { EXPECT_EQ(rho(100, 100), 0.0); }

TEST(Rho, MidRangeTakesFirstBranch) {
  // min{0.68, 0.67 * 34/33}
  EXPECT_NEAR(rho(33, 100), 0.68, 1e-12);
  EXPECT_NEAR(rho(33, 100), oracle::rho_direct(33, 100), 1e-15);
}

TEST(Rho, RejectsOutOfRangePullCounts) {
  EXPECT_THROW(rho(0, 100), DomainError);
  EXPECT_THROW(rho(101, 100), DomainError);
}

TEST(SampleSize, ZeroU) {
  EXPECT_EQ(sample_size(0.0, 2), 0.0);
  EXPECT_EQ(sample_size(0.0, 100000), 0.0);
}

TEST(SampleSize, WorkedCases) {
  EXPECT_DOUBLE_EQ(sample_size(1.0, 10), 1.0);
  EXPECT_EQ(sample_size_ceil(1.0, 10), 1u);
  EXPECT_EQ(oracle::min_pulls_brute_force(1.0, 10), 1u);

  EXPECT_NEAR(sample_size(50.0, 100), 50.5 / 1.5, 1e-12);
  EXPECT_EQ(sample_size_ceil(50.0, 100), 34u);
  EXPECT_EQ(oracle::min_pulls_brute_force(50.0, 100), 34u);
}

TEST(SampleSize, InfiniteUMeansExhaustion) {
  EXPECT_EQ(sample_size(INFINITY, 77), 77.0);
  EXPECT_EQ(sample_size_ceil(INFINITY, 77), 77u);
}

TEST(SampleSize, RejectsNegativeU) {
  EXPECT_THROW(sample_size(-1e-9, 10), DomainError);
  EXPECT_THROW(sample_size(NAN, 10), DomainError);
}

TEST(SampleSize, BoundedAndMonotoneInU) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 100000)(rng);
    double prev = -1.0;
    for (double u = 0.0; u < 20.0 * static_cast<double>(n); u = u * 1.7 + 0.37) {
      const double m = sample_size(u, n);
      ASSERT_GE(m, 0.0);
      ASSERT_LE(m, static_cast<double>(n));
      ASSERT_GE(m, prev) << "u=" << u << " N=" << n;
      prev = m;
    }
  }
}

// The closed form never undershoots the brute-force minimum and overshoots by
// at most the one pull lost to relaxing the quadratic.
TEST(SampleSize, WithinOnePullOfBruteForce) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10000)(rng);
    const double u = std::uniform_real_distribution<double>(0.0, 10.0 * static_cast<double>(n))(rng);
    const std::size_t best = oracle::min_pulls_brute_force(u, n);
    const std::size_t closed = std::max<std::size_t>(1, sample_size_ceil(u, n));
    EXPECT_LE(best, closed) << "u=" << u << " N=" << n;
    EXPECT_LE(closed, best + 1) << "u=" << u << " N=" << n;
  }
}

TEST(ConfidenceToU, Examples) {
  EXPECT_NEAR(confidence_to_u(1.0, std::exp(-1.0), 1.0), 0.5, 1e-15);
  EXPECT_NEAR(confidence_to_u(0.5, std::exp(-1.0), 1.0), 2.0, 1e-14);
  EXPECT_NEAR(confidence_to_u(0.1, 0.05, 1.0), 149.78661367769953, 1e-9);
  // Range width enters squared.
  EXPECT_NEAR(confidence_to_u(0.5, std::exp(-1.0), 3.0), 18.0, 1e-12);
}

TEST(ConfidenceToU, RejectsBadArguments) {
  EXPECT_THROW(confidence_to_u(0.0, 0.1, 1.0), DomainError);
  EXPECT_THROW(confidence_to_u(-0.1, 0.1, 1.0), DomainError);
  EXPECT_THROW(confidence_to_u(0.1, 0.1, 0.0), DomainError);
  EXPECT_THROW(confidence_to_u(0.1, 0.0, 1.0), DomainError);
  EXPECT_THROW(confidence_to_u(0.1, 1.0, 1.0), DomainError);
}

}  // namespace
}  // namespace mabbp
