#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cachecode/core_model.hpp"
#include "cachecode/rational.hpp"

namespace cachecode {

struct SchemeConstants {
  int gamma = 0;           // K - i + 1
  int arity = 0;           // t = 2 + floor(i / gamma) + floor((i - 1) / gamma)
  std::int64_t lambda = 0; // ceil(K (K - i) / t) transmissions

  friend bool operator==(const SchemeConstants&, const SchemeConstants&) = default;
};

// One broadcast transmission: the XOR of its terms.
struct Codeword {
  std::vector<SubpacketId> terms;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

// Counters describing how a schedule was produced. They never affect the
// schedule's validity; the verifier decides that.
struct ScheduleDiagnostics {
  // Codewords emitted by the shift-and-replace generator before any repair.
  std::int64_t generator_codewords = 0;
  // Delivered terms for which no replacement rule passed check().
  int exhausted_replacements = 0;
  // Paired-rule replacements that failed check() and fell back to a rule
  // search.
  int paired_rule_fallbacks = 0;
  int subroutine_calls = 0;
  // Terms proposed by the tail subroutine that were dropped because they
  // were already delivered or clashed with an earlier term.
  int subroutine_dropped_terms = 0;
  // The generator overshot lambda (or left terms undelivered) and its output
  // was replaced by rank_stream_schedule().
  bool rank_stream_fallback = false;
  // closed_form_pairs(): terms skipped because an earlier index already
  // delivered them.
  int skipped_duplicate_terms = 0;

  friend bool operator==(const ScheduleDiagnostics&, const ScheduleDiagnostics&) = default;
};

struct TransmissionSchedule {
  SystemParams params;
  SchemeConstants constants;
  std::vector<Codeword> codewords;
  Rational rate;  // |codewords| / K
  ScheduleDiagnostics diagnostics;

  std::int64_t total_terms() const;
  // |codewords| == lambda, term count == K (K - i), arity within [1, t].
  bool meets_length_invariants() const;
};

// Throws InstanceError unless 1 <= i <= K - 1.
SchemeConstants scheme_constants(const SystemParams& params);

// ceil(K (K - i) / t) / K, with rate = K at i = 0 and 0 at i = K.
Rational rate(const SystemParams& params);
Rational rate(int n_users, int cache_units);

// Uncoded-placement baseline: (K - i) / (1 + i) and binomial(K, i).
Rational mn_rate(const SystemParams& params);
std::int64_t mn_subpacketization(const SystemParams& params);

// Terms of the first codeword, including the odd-arity adjustment of the
// last term.
std::vector<SubpacketId> initial_codeword_terms(const SystemParams& params);

// Replacement candidates for a delivered term.
enum class ReplacementFlag : int {
  kUnset = 0,
  kNextPacket = 1,   // (u, p + 1)
  kNextUser = 2,     // (u + 1, p)
  kPrevUser = 3,     // (u - 1, p)
  kPrevPacket = 4,   // (u, p - 1)
};

ReplacementFlag replacement_flag_from_int(int value);

SubpacketId rule(SubpacketId s, ReplacementFlag flag, int n_users);

// True when s is still undelivered and every term already in `partial`
// knows s's packet while s's user knows theirs.
bool check(SubpacketId s, const CacheLayout& layout,
           const SubpacketSet& remaining, const std::vector<SubpacketId>& partial);

struct UpdateResult {
  std::optional<SubpacketId> term;
  ReplacementFlag flag = ReplacementFlag::kUnset;
};

// Replacement for a delivered term. With an unset flag the four rules are
// tried in order and the first candidate passing check() wins. A set flag
// applies its partner rule (1 <-> 2, 3 <-> 4) without checking. Throws
// ReplacementExhausted when no rule passes.
UpdateResult update(SubpacketId s, const SubpacketSet& remaining,
                    const CacheLayout& layout,
                    const std::vector<SubpacketId>& partial,
                    ReplacementFlag flag);

// Seed (1, k) for the smallest remaining k, then t - 1 terms offset by
// floor(j K / t) in both coordinates. Throws NoSeedTerm when user 1 has
// nothing left.
std::vector<SubpacketId> tail_subroutine(const SubpacketSet& remaining,
                                         const SystemParams& params);

struct GenerateOptions {
  // Fall back to rank_stream_schedule() when the generator overshoots lambda.
  bool rank_stream_fallback = true;
};

// Rank-stream construction. Each demanded subpacket (u, u + i + r) is tagged
// with its rank r in [0, K - i). Ranks r and K - i - 1 - r pair up at user
// offset r + 1; the pairs (and the middle rank, for odd K - i) are laid out
// along user progressions that visit every user once, and the resulting
// stream is cut into codewords of at most t terms. Always yields exactly
// lambda decodable codewords.
TransmissionSchedule rank_stream_schedule(const SystemParams& params,
                                          const DemandVector& demand);

// Shift-and-replace codeword generator. Throws InstanceError on invalid
// parameters (including N < K). With the fallback disabled the raw generator
// output is returned, which may exceed lambda codewords; check
// meets_length_invariants().
TransmissionSchedule generate_schedule(const SystemParams& params,
                                       const DemandVector& demand,
                                       const GenerateOptions& options = {});

// Explicit pair code for 1 < i <= K / 2. Throws RegimeError outside it.
TransmissionSchedule closed_form_pairs(const SystemParams& params,
                                       const DemandVector& demand);

}  // namespace cachecode
