#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cachecode/core_model.hpp"
#include "cachecode/delivery.hpp"
#include "cachecode/rational.hpp"

namespace cachecode {

// (N, K, L) multi-access network: K users, K caches of M = i N / K files,
// user k reads caches k .. k + L - 1 cyclically.
struct CcdnParams {
  int n_files = 1;
  int n_users = 1;      // also the number of caches
  int access_degree = 1;
  int cache_units = 0;

  void validate() const;
  Rational memory() const;
};

// Number of subfiles per file in the multi-access placement:
// binomial(K - iL + i - 1, i - 1) K / i. Throws InstanceError on a
// non-integral value.
std::int64_t f_subfiles(int n_users, int cache_units, int access_degree);

// What each user can read once the multi-access placement is mapped onto
// the dedicated-cache placement.
struct CcdnView {
  // Run length of consecutive subpackets visible to each user, capped at K.
  int effective_units = 0;
  // slot_of_user[k - 1]: the dedicated-cache user whose cache equals user
  // k's view. Cache j stores subpackets (j - 1) i + 1 .. j i.
  std::vector<int> slot_of_user;
  CacheLayout layout;
};

// Throws UnsupportedMemoryPoint where the placement needs more than K
// subfiles.
CcdnView ccdn_user_view(const CcdnParams& params);

Rational ccdn_rate_at_supported_points(const CcdnParams& params);

// Dedicated schedule relabelled to multi-access users; verify it against
// ccdn_user_view(params).layout.
TransmissionSchedule ccdn_schedule(const CcdnParams& params, const DemandVector& demand,
                                   const GenerateOptions& options = {});

// Piecewise-linear curve through breakpoints, constant after the last one.
struct RateBoundCurve {
  std::vector<std::pair<Rational, Rational>> breakpoints;  // (memory, rate)

  Rational evaluate(const Rational& memory) const;
};

// Upper bound for L >= K / 2: through (0, K), (N/K, R1), (2N/K, 0) with
// R1 = rate(K, L). Throws RegimeError for L < K / 2.
Rational ccdn_upper_bound(const Rational& memory, const CcdnParams& params);
RateBoundCurve ccdn_upper_bound_curve(const CcdnParams& params);

enum class OptimalityRowKind { kMinusOne, kMinusTwo, kMinusThree, kDivisor };

struct OptimalityRow {
  OptimalityRowKind kind;
  int access_degree = 0;  // L
  int divisor = 0;        // s, for kDivisor rows
  Rational optimal_rate;   // R*(N/K)
  Rational new_rate;       // rate(K, L)
  Rational tabulated_new_rate;  // closed-form entry for the new scheme

  bool matches_optimal() const { return new_rate == optimal_rate; }
  bool matches_tabulated() const { return new_rate == tabulated_new_rate; }
};

std::string to_string(OptimalityRowKind kind);

// Rows L = K-1, K-2, K-3 and L = K - K/s + 1 for every divisor s >= 2 of K.
std::vector<OptimalityRow> optimality_table(int n_users);

}  // namespace cachecode
