#include <gtest/gtest.h>

#include "cachecode/delivery.hpp"
#include "cachecode/errors.hpp"
#include "cachecode/verifier.hpp"
#include "oracles.hpp"

using namespace cachecode;

namespace {

std::vector<Codeword> example_codewords() {
  std::vector<Codeword> out;
  for (const auto& c : oracle::example_six_four()) {
    Codeword cw;
    for (const auto& [u, p] : c) cw.terms.push_back({u, p});
    out.push_back(cw);
  }
  return out;
}

}  // namespace

TEST(FileStore, SlicesAreEqualParts) {
  const FileStore store(3, {{1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11, 12}});
  EXPECT_EQ(store.subpacket_size(), 2u);
  const auto s = store.subpacket(2, 3);
  EXPECT_EQ(std::vector<std::uint8_t>(s.begin(), s.end()), (std::vector<std::uint8_t>{11, 12}));
}

TEST(FileStore, RejectsBadShapes) {
  EXPECT_THROW(FileStore(3, {{1, 2, 3, 4}}), InstanceError);
  EXPECT_THROW(FileStore(2, {{1, 2}, {1, 2, 3, 4}}), InstanceError);
}

TEST(FileStore, RandomIsSeeded) {
  const auto a = FileStore::random(3, 4, 5, 7);
  const auto b = FileStore::random(3, 4, 5, 7);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_TRUE(std::equal(a.file(n).begin(), a.file(n).end(), b.file(n).begin()));
  }
  EXPECT_EQ(a.file_size(), 20u);
}

TEST(Verify, ExampleScheduleIsDecodable) {
  const auto report = verify_instantaneous_decodability(example_codewords(),
                                                        build_cache_layout({6, 6, 4}));
  EXPECT_TRUE(report.decodable);
  EXPECT_TRUE(report.coverage_ok);
  EXPECT_TRUE(report.violations.empty());
}

TEST(Verify, FlagsUnknownTerm) {
  const std::vector<Codeword> bad{{{{1, 5}, {3, 6}}}};
  const auto report = verify_instantaneous_decodability(bad, build_cache_layout({6, 6, 4}));
  EXPECT_FALSE(report.decodable);
  ASSERT_FALSE(report.violations.empty());
  const auto& v = report.violations.front();
  EXPECT_EQ(v.kind, ViolationKind::kUnknownTerm);
  EXPECT_EQ(v.term, (SubpacketId{1, 5}));
  ASSERT_TRUE(v.other);
  EXPECT_EQ(*v.other, (SubpacketId{3, 6}));
  EXPECT_EQ(*v.codeword, 0u);
}

TEST(Verify, EmptyScheduleWithFullCaches) {
  const auto report = verify_instantaneous_decodability(std::vector<Codeword>{},
                                                        build_cache_layout({6, 6, 6}));
  EXPECT_TRUE(report.decodable);
  EXPECT_TRUE(report.coverage_ok);
}

TEST(Verify, CoverageProblems) {
  auto codewords = example_codewords();
  codewords.push_back({{{1, 5}}});
  codewords.push_back({{{2, 2}}});
  codewords[2].terms.pop_back();
  const auto report = verify_instantaneous_decodability(codewords, build_cache_layout({6, 6, 4}));
  EXPECT_TRUE(report.decodable);
  EXPECT_FALSE(report.coverage_ok);
  std::vector<ViolationKind> kinds;
  for (const auto& v : report.violations) kinds.push_back(v.kind);
  EXPECT_EQ(kinds, (std::vector<ViolationKind>{ViolationKind::kDuplicate,
                                               ViolationKind::kAlreadyCached,
                                               ViolationKind::kMissing}));
  EXPECT_EQ(report.violations.back().term, (SubpacketId{1, 6}));
}

TEST(Verify, OutOfRangeIndex) {
  const std::vector<Codeword> bad{{{{1, 9}}}};
  const auto report = verify_instantaneous_decodability(bad, build_cache_layout({6, 6, 4}));
  EXPECT_FALSE(report.decodable);
  EXPECT_EQ(report.violations.front().kind, ViolationKind::kInvalidIndex);
}

TEST(Simulate, ExampleRoundTrip) {
  const auto store = FileStore::random(6, 6, 6, 2024);
  const auto report = simulate_end_to_end(example_codewords(), build_cache_layout({6, 6, 4}),
                                          DemandVector::identity(6), store);
  EXPECT_TRUE(report.success);
  EXPECT_EQ(report.decode_passes, 1);
  EXPECT_EQ(report.transmitted_bytes, 18u);
  EXPECT_NO_THROW(report.require_success());
}

TEST(Simulate, EveryoneWantsFileOne) {
  const auto report = simulate_end_to_end({6, 6, 4}, DemandVector{{1, 1, 1, 1, 1, 1}}, 5);
  EXPECT_TRUE(report.success);
  EXPECT_EQ(report.seed, 5u);
}

TEST(Simulate, FullCachesNeedNothing) {
  const auto report = simulate_end_to_end({6, 6, 6}, DemandVector::identity(6), 1);
  EXPECT_TRUE(report.success);
  EXPECT_EQ(report.transmitted_bytes, 0u);
}

TEST(Simulate, DetectsUndecodableCodeword) {
  auto codewords = example_codewords();
  // Merge the last two transmissions: users now face two unknown terms.
  codewords[1].terms.insert(codewords[1].terms.end(), codewords[2].terms.begin(),
                            codewords[2].terms.end());
  codewords.pop_back();
  const auto store = FileStore::random(6, 6, 1, 3);
  const auto report = simulate_end_to_end(codewords, build_cache_layout({6, 6, 4}),
                                          DemandVector::identity(6), store);
  EXPECT_FALSE(report.success);
  EXPECT_THROW(report.require_success(), SimulationMismatch);
}

TEST(Simulate, DetectsMissingTransmission) {
  auto codewords = example_codewords();
  codewords.pop_back();
  const auto store = FileStore::random(6, 6, 1, 3);
  const auto report = simulate_end_to_end(codewords, build_cache_layout({6, 6, 4}),
                                          DemandVector::identity(6), store);
  EXPECT_FALSE(report.success);
}

TEST(Simulate, RandomDemandsSmallSystems) {
  for (int k = 2; k <= 9; ++k) {
    for (int i = 0; i <= k; ++i) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const SystemParams p{k + 2, k, i};
        const auto d = DemandVector::random(k, k + 2, seed);
        const auto report = simulate_end_to_end(p, d, seed, 3);
        EXPECT_TRUE(report.success) << k << " " << i << " " << seed;
        EXPECT_LE(report.decode_passes, 1);
      }
    }
  }
}

TEST(BruteForcePairs, SmallInstances) {
  EXPECT_EQ(brute_force_min_pair_schedule({4, 4, 2}, DemandVector::identity(4)), 4);
  EXPECT_EQ(brute_force_min_pair_schedule({5, 5, 2}, DemandVector::identity(5)), 8);
  EXPECT_EQ(brute_force_min_pair_schedule({6, 6, 3}, DemandVector::identity(6)), 9);
}

TEST(BruteForcePairs, AgreesWithClosedForm) {
  for (int k = 4; k <= 8; ++k) {
    for (int i = 2; 2 * i <= k; ++i) {
      const auto pairs = closed_form_pairs({k, k, i}, DemandVector::identity(k));
      EXPECT_EQ(brute_force_min_pair_schedule({k, k, i}, DemandVector::identity(k)),
                static_cast<std::int64_t>(pairs.codewords.size()))
          << k << " " << i;
    }
  }
}

TEST(BruteForcePairs, Limits) {
  EXPECT_THROW(brute_force_min_pair_schedule({9, 9, 2}, DemandVector::identity(9)),
               SizeLimitExceeded);
  EXPECT_THROW(brute_force_min_pair_schedule({6, 6, 4}, DemandVector::identity(6)), RegimeError);
}
