#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mabbp/datagen.hpp"
#include "mabbp/errors.hpp"
#include "mabbp/exact.hpp"
#include "mabbp/lsh.hpp"
#include "mabbp/metrics.hpp"
#include "oracles.hpp"

namespace mabbp {
namespace {

VectorSet random_set(std::mt19937_64& rng, std::size_t rows, std::size_t dim) {
  std::normal_distribution<float> normal(0.0f, 1.0f);
  std::vector<float> data(rows * dim);
  for (auto& x : data) x = normal(rng);
  return VectorSet(rows, dim, std::move(data));
}

Query query_row(const VectorSet& vs, std::size_t i) {
  return Query(std::vector<float>(vs.row(i).begin(), vs.row(i).end()));
}

TEST(NaiveTopk, OneHot) {
  std::vector<float> data(16, 0.0f);
  for (std::size_t i = 0; i < 4; ++i) data[i * 4 + i] = 1.0f;
  VectorSet vs(4, 4, data);
  const auto r = naive_topk(vs, Query({0, 0, 1, 0}), 1);
  EXPECT_EQ(r.topk_ids, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(r.topk_scores, (std::vector<double>{1.0}));
  EXPECT_EQ(r.ops, 16u);
}

TEST(NaiveTopk, KEqualsNReturnsAllSorted) {
  VectorSet vs(3, 2, {1, 0, 3, 0, 2, 0});
  const auto r = naive_topk(vs, Query({1, 5}), 3);
  EXPECT_EQ(r.topk_ids, (std::vector<std::uint32_t>{1, 2, 0}));
  EXPECT_THROW(naive_topk(vs, Query({1, 5}), 4), PreconditionError);
}

TEST(NaiveTopk, TiesGoToSmallerId) {
  VectorSet vs(3, 1, {2, 5, 5});
  EXPECT_EQ(naive_topk(vs, Query({1}), 1).topk_ids, (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(top_indices({1.0, 3.0, 3.0, 0.5}, 3), (std::vector<std::uint32_t>{1, 2, 0}));
}

TEST(NaiveTopk, MatchesReverseOrderSummation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto vs = random_set(rng, 20, 6);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    std::vector<float> q(6);
    for (auto& x : q) x = normal(rng);
    const auto truth = oracle::inner_products_reverse(vs.data(), 20, 6, q);
    const auto r = naive_topk(vs, Query(q), 20);
    for (std::size_t i = 0; i < 20; ++i) {
      ASSERT_NEAR(r.topk_scores[i], truth[r.topk_ids[i]], 1e-9);
      if (i > 0) ASSERT_GE(r.topk_scores[i - 1], r.topk_scores[i]);
    }
  }
}

TEST(LshTransform, UnitNormVectorLiftsWithZero) {
  const std::vector<float> v{0.6f, 0.8f};
  const auto lifted = lift_data_vector(v, 1.0);
  ASSERT_EQ(lifted.size(), 3u);
  EXPECT_NEAR(lifted[2], 0.0, 1e-7);
  const auto small = lift_data_vector(v, 0.5);
  EXPECT_NEAR(small[2], std::sqrt(0.75), 1e-7);
  const auto q = lift_query(std::vector<float>{3, 4});
  EXPECT_NEAR(q[0], 0.6, 1e-12);
  EXPECT_NEAR(q[1], 0.8, 1e-12);
  EXPECT_EQ(q[2], 0.0);
}

TEST(LshIndex, SingleVectorHasOneBucketPerTable) {
  VectorSet vs(1, 3, {1, 2, 3});
  const auto index = LshIndex::build(vs, 6, 4, 1);
  ASSERT_EQ(index.tables(), 4u);
  for (std::size_t t = 0; t < 4; ++t) {
    ASSERT_EQ(index.table(t).size(), 1u);
    EXPECT_EQ(index.table(t).begin()->second, (LshIndex::Bucket{0}));
  }
}

TEST(LshIndex, ParameterChecks) {
  VectorSet vs(1, 3, {1, 2, 3});
  EXPECT_THROW(LshIndex::build(vs, 0, 1, 1), ConfigError);
  EXPECT_THROW(LshIndex::build(vs, 65, 1, 1), ConfigError);
  EXPECT_THROW(LshIndex::build(vs, 4, 0, 1), ConfigError);
  const auto index = LshIndex::build(vs, 4, 2, 1);
  EXPECT_THROW(index.restricted(5, 1), ConfigError);
  EXPECT_THROW(index.restricted(2, 3), ConfigError);
}

TEST(LshIndex, RestrictedEqualsFreshBuild) {
  std::mt19937_64 rng(3);
  const auto vs = random_set(rng, 200, 32);
  const auto big = LshIndex::build(vs, 12, 8, 99);
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 1}, {4, 3}, {12, 8}, {7, 5}}) {
    const auto sub = big.restricted(a, b);
    const auto fresh = LshIndex::build(vs, a, b, 99);
    ASSERT_EQ(sub.tables(), fresh.tables());
    for (std::size_t t = 0; t < b; ++t) {
      for (std::size_t k = 0; k < a; ++k) {
        const auto p = sub.projection(t, k);
        const auto f = fresh.projection(t, k);
        ASSERT_TRUE(std::equal(p.begin(), p.end(), f.begin(), f.end()));
      }
      ASSERT_EQ(sub.table(t), fresh.table(t));
    }
    for (std::size_t i = 0; i < 10; ++i) {
      const auto q = query_row(vs, i);
      ASSERT_EQ(sub.candidates(q), fresh.candidates(q));
    }
  }
}

TEST(LshIndex, MoreTablesNeverLoseCandidates) {
  std::mt19937_64 rng(5);
  const auto vs = random_set(rng, 300, 40);
  const auto index = LshIndex::build(vs, 8, 50, 7);
  const auto few = index.restricted(8, 1);
  double recall_few = 0.0, recall_many = 0.0;
  for (int qi = 0; qi < 20; ++qi) {
    const auto q = Query([&] {
      std::normal_distribution<float> normal(0.0f, 1.0f);
      std::vector<float> v(40);
      for (auto& x : v) x = normal(rng);
      return v;
    }());
    const auto c1 = few.candidates(q);
    const auto c50 = index.candidates(q);
    ASSERT_TRUE(std::includes(c50.begin(), c50.end(), c1.begin(), c1.end()));
    const auto truth = naive_topk(vs, q, 5).topk_ids;
    recall_few += precision(lsh_query(few, vs, q, 5).ids, truth, 5);
    recall_many += precision(lsh_query(index, vs, q, 5).ids, truth, 5);
  }
  EXPECT_GE(recall_many, recall_few);
}

TEST(LshQuery, ArgmaxInEveryBucketGivesPrecisionOne) {
  std::mt19937_64 rng(6);
  const auto vs = random_set(rng, 50, 16);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    // Scaling a row up makes it the inner-product argmax for its own direction.
    std::vector<float> boosted(vs.data());
    for (std::size_t j = 0; j < 16; ++j) boosted[i * 16 + j] *= 4.0f;
    VectorSet bvs(50, 16, boosted);
    const auto q = query_row(bvs, i);
    const auto bindex = LshIndex::build(bvs, 2, 10, 4);
    const auto cands = bindex.candidates(q);
    if (!std::binary_search(cands.begin(), cands.end(), static_cast<std::uint32_t>(i))) continue;
    ASSERT_EQ(naive_topk(bvs, q, 1).topk_ids[0], i);
    const auto r = lsh_query(bindex, bvs, q, 1);
    ASSERT_EQ(r.ids, (std::vector<std::uint32_t>{static_cast<std::uint32_t>(i)}));
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(LshQuery, EmptyUnionIsPadded) {
  // Lifted data is (1, 0); the query (-1, 0) falls on the other side of any
  // projection with a nonzero first coordinate.
  VectorSet vs(2, 1, {1.0f, 1.0f});
  const auto index = LshIndex::build(vs, 1, 1, 0);
  ASSERT_NE(index.projection(0, 0)[0], 0.0f);
  EXPECT_EQ(index.candidates(Query({1.0f})), (std::vector<std::uint32_t>{0, 1}));
  const auto r = lsh_query(index, vs, Query({-1.0f}), 2);
  EXPECT_TRUE(r.padded);
  EXPECT_EQ(r.candidates, 0u);
  EXPECT_EQ(r.ids, (std::vector<std::uint32_t>{0, 1}));
}

TEST(LshQuery, ForcedEmptyUnionIsPadded) {
  // The lone vector has the maximum norm, so it lifts with 0 and its negation
  // flips the sign of every projection.
  std::mt19937_64 rng(13);
  const auto vs = random_set(rng, 1, 64);
  const auto index = LshIndex::build(vs, 64, 1, 2);
  std::vector<float> neg(vs.row(0).begin(), vs.row(0).end());
  for (auto& x : neg) x = -x;
  const auto r = lsh_query(index, vs, Query(neg), 1);
  EXPECT_TRUE(r.padded);
  EXPECT_EQ(r.ids, (std::vector<std::uint32_t>{0}));
}

TEST(LshQuery, OpsAudit) {
  const auto vs = gen_vectors({Distribution::gaussian, 1000, 1000, 21});
  const auto qs = gen_vectors({Distribution::gaussian, 5, 1000, 22});
  const auto index = LshIndex::build(vs, 8, 16, 23);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto q = query_row(qs, i);
    const auto r = lsh_query(index, vs, q, 5);
    EXPECT_EQ(r.candidates, index.candidates(q).size());
    EXPECT_EQ(r.ops, r.candidates * 1000u + 16u * 8u * 1001u);
    const double p = precision(r.ids, naive_topk(vs, q, 5).topk_ids, 5);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    EXPECT_EQ(std::set<std::uint32_t>(r.ids.begin(), r.ids.end()).size(), 5u);
  }
}

TEST(LshQuery, RejectsForeignVectorSetAndLargeK) {
  std::mt19937_64 rng(1);
  const auto vs = random_set(rng, 5, 4);
  const auto other = random_set(rng, 6, 4);
  const auto index = LshIndex::build(vs, 2, 2, 0);
  EXPECT_THROW(lsh_query(index, other, query_row(vs, 0), 1), ConfigError);
  EXPECT_THROW(lsh_query(index, vs, query_row(vs, 0), 6), PreconditionError);
  EXPECT_THROW(index.candidates(Query({1, 2})), ConfigError);
}

}  // namespace
}  // namespace mabbp
