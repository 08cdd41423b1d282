#include <gtest/gtest.h>

#include <cmath>

#include "gltkit/acs.hpp"
#include "gltkit/batteries.hpp"
#include "gltkit/error.hpp"
#include "gltkit/shuffle.hpp"

using namespace gltkit;

namespace {

AcsPair exact_pair(const AcsPair& base) {
  AcsPair p = base;
  for (auto& [m, fam] : p.approximants) fam = base.target;
  return p;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

}  // namespace

TEST(SplitModulus, Examples) {
  SplitMix64 rng(1);
  const auto a = random_matrix(rng, 6, 6);
  EXPECT_EQ(split_modulus(a, a), 0.0);

  // Rank-2 difference of huge norm: rho <= 2/6.
  const auto r = 100.0 * (random_matrix(rng, 6, 2) * random_matrix(rng, 2, 6));
  EXPECT_LE(split_modulus(a + r, a), 2.0 / 6 + 1e-12);

  const double eps = 0.01;
  EXPECT_NEAR(split_modulus(a + eps * ComplexMatrix::identity(6), a), eps, 1e-12);
  EXPECT_THROW(split_modulus(a, ComplexMatrix(6, 5)), DomainError);
}

TEST(SplitModulus, FromValues) {
  const double s1[] = {3, 0.2, 0.1};
  EXPECT_NEAR(split_modulus_from_values(s1), 1.0 / 3, 1e-15);
  const double s2[] = {0.05, 0.05};
  EXPECT_NEAR(split_modulus_from_values(s2), 0.05, 1e-15);
  const double s3[] = {9, 9};
  EXPECT_EQ(split_modulus_from_values(s3), 1.0);
}

TEST(SplitModulus, SymmetricAndPermutationInvariant) {
  SplitMix64 rng(2);
  const auto a = random_matrix(rng, 6, 4), b = random_matrix(rng, 6, 4);
  const double rho = split_modulus(a, b);
  EXPECT_NEAR(split_modulus(b, a), rho, 1e-14);
  const auto p = p_shuffle(2, 3), q = p_shuffle(2, 2);
  EXPECT_NEAR(split_modulus(conjugate(p, a, q), conjugate(p, b, q)), rho, 1e-12);
}

TEST(SplitModulus, EckartYoungAgainstRandomProjections) {
  SplitMix64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto d = random_matrix(rng, 4, 4);
    const auto sigma = svd_values(d);
    for (std::size_t j = 1; j < 4; ++j) {
      // Truncated SVD attains sigma_{j+1}.
      const auto e = eigh_vectors(gram(d));
      ComplexMatrix v(4, j);
      for (std::size_t c = 0; c < j; ++c)
        for (std::size_t i = 0; i < 4; ++i) v(i, c) = e.vectors(i, 3 - c);
      const auto truncated = d * v * v.adjoint();
      EXPECT_NEAR(norm2(d - truncated), sigma[j], 1e-10);
      // No random rank-j approximation does better.
      for (int trial = 0; trial < 50; ++trial) {
        const auto rj = random_matrix(rng, 4, j) * random_matrix(rng, j, 4);
        EXPECT_GE(norm2(d - rj), sigma[j] - 1e-10);
      }
    }
  }
}

TEST(AcsCheck, ExactApproximantsGiveZero) {
  const std::size_t sizes[] = {16, 32}, ms[] = {1, 2, 4};
  const auto r = acs_check(exact_pair(staircase_pair(sizes, ms)), 0.0);
  for (double v : r.rho_hat) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(AcsCheck, StaircaseWithinNormBound) {
  const std::size_t sizes[] = {32, 64, 128}, ms[] = {1, 2, 4, 8};
  const auto r = acs_check(staircase_pair(sizes, ms), 1.0);
  EXPECT_TRUE(strictly_decreasing(r.rho_hat));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(r.rho_hat[k], 4.0 / (2.0 * static_cast<double>(r.ms[k])) + 1e-12);
  // Entries outside the tail half are not computed.
  EXPECT_TRUE(std::isnan(r.rho[0][0]));
  EXPECT_FALSE(std::isnan(r.rho[0][1]));
}

TEST(AcsCheck, NegativeControlFails) {
  const std::size_t sizes[] = {16, 32, 64}, ms[] = {1, 2, 4, 8};
  const auto r = acs_check(identity_zero_pair(sizes, ms), 0.1);
  for (double v : r.rho_hat) EXPECT_EQ(v, 1.0);
  EXPECT_FALSE(r.pass);
}

TEST(AcsCheck, ExactIndexNeverIncreasesRho) {
  const std::size_t sizes[] = {16, 32}, ms[] = {1, 2};
  auto pair = staircase_pair(sizes, ms);
  const auto before = acs_check(pair, 1.0);
  pair.approximants.push_back({3, pair.target});
  const auto after = acs_check(pair, 1.0);
  EXPECT_EQ(after.rho_hat.back(), 0.0);
  EXPECT_EQ(after.rho_hat[0], before.rho_hat[0]);
  EXPECT_EQ(after.rho_hat[1], before.rho_hat[1]);
}

TEST(AcsTensor, Examples) {
  const std::size_t sizes[] = {6, 12}, ms[] = {1, 2, 4};
  const auto stair = staircase_pair(sizes, ms);
  const auto exact = acs_tensor_check(exact_pair(stair), exact_pair(stair), 0.0);
  for (double v : exact.rho_hat) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(exact.pass);
  EXPECT_TRUE(exact.hypothesis_met);

  const auto tensored = acs_tensor_check(stair, stair, 1.0);
  EXPECT_TRUE(strictly_decreasing(tensored.rho_hat));
  EXPECT_TRUE(tensored.hypothesis_met);

  const auto failing = acs_tensor_check(identity_zero_pair(sizes, ms), exact_pair(stair), 0.2);
  EXPECT_FALSE(failing.pass);
}

TEST(AcsTensor, KronPairSchedule) {
  const std::size_t sizes[] = {4, 8}, ms[] = {1, 2};
  const auto k = kron_pair(staircase_pair(sizes, ms), identity_zero_pair(sizes, ms));
  EXPECT_EQ(k.target.schedule.front(), (MultiIndex{4, 4}));
  EXPECT_EQ(k.target.at(MultiIndex{8, 8}).rows(), 64u);
  EXPECT_EQ(k.approximants.size(), 2u);
}

TEST(AcsTensor, UnmetHypothesisIsReported) {
  const std::size_t sizes[] = {8, 16}, ms[] = {1, 2};
  AcsPair wild;
  wild.target.schedule = schedule_1d(sizes);
  wild.target.generator = [](const MultiIndex& n) {
    const auto size = static_cast<std::size_t>(n[0]);
    ComplexMatrix a(size, size);
    for (std::size_t i = 0; i < size; ++i) a(i, i) = 1e6 * static_cast<double>(i + 1);
    return a;
  };
  for (std::size_t m : ms) wild.approximants.push_back({m, wild.target});
  const auto r = acs_tensor_check(wild, wild, 0.1);
  EXPECT_FALSE(r.hypothesis_met);
  EXPECT_NE(r.note.find("UNMET-HYPOTHESIS"), std::string::npos);
  for (double v : r.rho_hat) EXPECT_EQ(v, 0.0);
}
