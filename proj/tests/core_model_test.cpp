#include <gtest/gtest.h>

#include "cachecode/core_model.hpp"
#include "cachecode/errors.hpp"
#include "oracles.hpp"

using namespace cachecode;

TEST(Wrap, StaysInOneToK) {
  EXPECT_EQ(wrap(1, 6), 1);
  EXPECT_EQ(wrap(6, 6), 6);
  EXPECT_EQ(wrap(7, 6), 1);
  EXPECT_EQ(wrap(0, 6), 6);
  EXPECT_EQ(wrap(-5, 6), 1);
  EXPECT_EQ(wrap(13, 6), 1);
}

TEST(SystemParams, RejectsOutOfRangeCacheSize) {
  EXPECT_THROW((SystemParams{6, 6, 7}.validate()), InstanceError);
  EXPECT_THROW((SystemParams{6, 6, -1}.validate()), InstanceError);
  EXPECT_THROW((SystemParams{6, 0, 0}.validate()), InstanceError);
  EXPECT_NO_THROW((SystemParams{6, 6, 6}.validate()));
}

TEST(SystemParams, DeliveryNeedsAtLeastKFiles) {
  EXPECT_THROW((SystemParams{5, 6, 2}.validate_for_delivery()), InstanceError);
  EXPECT_NO_THROW((SystemParams{6, 6, 2}.validate_for_delivery()));
}

TEST(SystemParams, MemoryIsINOverK) {
  const SystemParams p{12, 6, 4};
  EXPECT_EQ(p.memory(), Rational(8));
  EXPECT_EQ(p.cache_fraction(), Rational(2, 3));
}

TEST(CacheLayout, CyclicRuns) {
  const auto layout = build_cache_layout({6, 6, 4});
  const std::vector<int> user1(layout.packets(1).begin(), layout.packets(1).end());
  EXPECT_EQ(user1, (std::vector<int>{1, 2, 3, 4}));
  const std::vector<int> user5(layout.packets(5).begin(), layout.packets(5).end());
  EXPECT_EQ(user5, (std::vector<int>{5, 6, 1, 2}));
  EXPECT_TRUE(layout.caches(6, 3));
  EXPECT_FALSE(layout.caches(6, 4));
}

TEST(CacheLayout, MatchesOracleEverywhere) {
  for (int k = 1; k <= 12; ++k) {
    for (int i = 0; i <= k; ++i) {
      const auto layout = build_cache_layout({k, k, i});
      for (int u = 1; u <= k; ++u) {
        EXPECT_EQ(layout.cache_size(u), i);
        for (int p = 1; p <= k; ++p) {
          EXPECT_EQ(layout.caches(u, p), oracle::cached(k, i, u, p)) << k << " " << i;
        }
      }
    }
  }
}

TEST(CacheLayout, RejectsRepeatedPacket) {
  EXPECT_THROW(CacheLayout(2, {{1, 1}, {2}}), InstanceError);
  EXPECT_THROW(CacheLayout(2, {{3}, {2}}), InstanceError);
}

TEST(DemandList, PacketsAfterTheCachedRun) {
  const auto list = build_demand_list({6, 6, 4}, DemandVector::identity(6));
  ASSERT_EQ(list.size(), 12u);
  EXPECT_EQ(list[0], (SubpacketId{1, 5}));
  EXPECT_EQ(list[1], (SubpacketId{1, 6}));
  EXPECT_EQ(list[10], (SubpacketId{6, 4}));
  EXPECT_EQ(list[11], (SubpacketId{6, 5}));
}

TEST(DemandList, ComplementOfCache) {
  for (int k = 1; k <= 10; ++k) {
    for (int i = 0; i <= k; ++i) {
      const auto list = build_demand_list({k, k, i}, DemandVector::identity(k));
      EXPECT_EQ(static_cast<int>(list.size()), k * (k - i));
      for (const auto& s : list) EXPECT_FALSE(oracle::cached(k, i, s.user, s.packet));
    }
  }
}

TEST(DemandVector, RandomIsSeededAndInRange) {
  const auto a = DemandVector::random(10, 4, 99);
  const auto b = DemandVector::random(10, 4, 99);
  EXPECT_EQ(a.files, b.files);
  for (int f : a.files) {
    EXPECT_GE(f, 1);
    EXPECT_LE(f, 4);
  }
  EXPECT_NE(DemandVector::random(10, 4, 100).files, a.files);
}

TEST(DemandVector, ValidateChecksLengthAndRange) {
  const SystemParams p{3, 3, 1};
  EXPECT_THROW((DemandVector{{1, 2}}.validate(p)), InstanceError);
  EXPECT_THROW((DemandVector{{1, 2, 4}}.validate(p)), InstanceError);
  EXPECT_NO_THROW((DemandVector{{3, 3, 3}}.validate(p)));
}

TEST(SubpacketSet, InsertEraseAndOrder) {
  SubpacketSet set(4);
  EXPECT_TRUE(set.insert({2, 3}));
  EXPECT_FALSE(set.insert({2, 3}));
  EXPECT_TRUE(set.insert({1, 4}));
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.items(), (std::vector<SubpacketId>{{1, 4}, {2, 3}}));
  EXPECT_TRUE(set.erase({1, 4}));
  EXPECT_FALSE(set.erase({1, 4}));
  EXPECT_FALSE(set.contains({1, 4}));
  EXPECT_TRUE(set.contains({2, 3}));
}
