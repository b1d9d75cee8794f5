#include "cachecode/delivery.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cachecode/errors.hpp"

namespace cachecode {

std::int64_t TransmissionSchedule::total_terms() const {
  std::int64_t total = 0;
  for (const auto& c : codewords) total += static_cast<std::int64_t>(c.terms.size());
  return total;
}

bool TransmissionSchedule::meets_length_invariants() const {
  const std::int64_t k = params.n_users;
  const std::int64_t i = params.cache_units;
  if (static_cast<std::int64_t>(codewords.size()) != constants.lambda) return false;
  if (total_terms() != k * (k - i)) return false;
  return std::all_of(codewords.begin(), codewords.end(), [&](const Codeword& c) {
    return !c.terms.empty() && static_cast<int>(c.terms.size()) <= constants.arity;
  });
}

SchemeConstants scheme_constants(const SystemParams& params) {
  params.validate();
  const int k = params.n_users;
  const int i = params.cache_units;
  if (i < 1 || i > k - 1) {
    throw InstanceError("coded delivery needs 1 <= i <= K-1, got i=" + std::to_string(i) +
                        " with K=" + std::to_string(k));
  }
  SchemeConstants c;
  c.gamma = k - i + 1;
  c.arity = 2 + i / c.gamma + (i - 1) / c.gamma;
  c.lambda = ceil_div(static_cast<std::int64_t>(k) * (k - i), c.arity);
  return c;
}

Rational rate(const SystemParams& params) {
  params.validate();
  const int k = params.n_users;
  const int i = params.cache_units;
  if (i == 0) return Rational(k);
  if (i == k) return Rational(0);
  return Rational(scheme_constants(params).lambda, k);
}

Rational rate(int n_users, int cache_units) {
  return rate(SystemParams{n_users, n_users, cache_units});
}

Rational mn_rate(const SystemParams& params) {
  params.validate();
  return Rational(params.n_users - params.cache_units, 1 + params.cache_units);
}

std::int64_t mn_subpacketization(const SystemParams& params) {
  params.validate();
  return binomial(params.n_users, params.cache_units);
}

std::vector<SubpacketId> initial_codeword_terms(const SystemParams& params) {
  const auto c = scheme_constants(params);
  const int k = params.n_users;
  const int i = params.cache_units;
  const int first_count = i / c.gamma + 1;
  const int second_count = (i - 1) / c.gamma + 1;

  std::vector<SubpacketId> terms;
  terms.reserve(c.arity);
  for (int beta = 0; beta < first_count; ++beta) {
    const int shift = beta * c.gamma;
    terms.push_back({wrap(1 + shift, k), wrap(i + 1 + shift, k)});
    if (beta < second_count) terms.push_back({wrap(2 + shift, k), wrap(1 + shift, k)});
  }
  if (c.arity % 2 == 1 && i < k - 2) {
    auto& last = terms[c.arity - 1];
    last.packet = wrap(last.packet + 1, k);
  }
  return terms;
}

ReplacementFlag replacement_flag_from_int(int value) {
  if (value < 0 || value > 4) {
    throw InstanceError("replacement flag must lie in [0, 4], got " + std::to_string(value));
  }
  return static_cast<ReplacementFlag>(value);
}

SubpacketId rule(SubpacketId s, ReplacementFlag flag, int n_users) {
  switch (flag) {
    case ReplacementFlag::kNextPacket:
      return {s.user, wrap(s.packet + 1, n_users)};
    case ReplacementFlag::kNextUser:
      return {wrap(s.user + 1, n_users), s.packet};
    case ReplacementFlag::kPrevUser:
      return {wrap(s.user - 1, n_users), s.packet};
    case ReplacementFlag::kPrevPacket:
      return {s.user, wrap(s.packet - 1, n_users)};
    case ReplacementFlag::kUnset:
      break;
  }
  throw InstanceError("rule() needs a flag in [1, 4]");
}

bool check(SubpacketId s, const CacheLayout& layout, const SubpacketSet& remaining,
           const std::vector<SubpacketId>& partial) {
  if (!remaining.contains(s)) return false;
  for (const auto& other : partial) {
    if (!layout.caches(other.user, s.packet) || !layout.caches(s.user, other.packet)) {
      return false;
    }
  }
  return true;
}

UpdateResult update(SubpacketId s, const SubpacketSet& remaining, const CacheLayout& layout,
                    const std::vector<SubpacketId>& partial, ReplacementFlag flag) {
  const int k = layout.n_users();
  switch (flag) {
    case ReplacementFlag::kUnset:
      for (int candidate = 1; candidate <= 4; ++candidate) {
        const auto f = static_cast<ReplacementFlag>(candidate);
        const auto x = rule(s, f, k);
        if (check(x, layout, remaining, partial)) return {x, f};
      }
      throw ReplacementExhausted("no replacement rule applies to W(" +
                                 std::to_string(s.user) + "," + std::to_string(s.packet) + ")");
    case ReplacementFlag::kNextPacket:
    case ReplacementFlag::kPrevUser: {
      const auto f = static_cast<ReplacementFlag>(static_cast<int>(flag) + 1);
      return {rule(s, f, k), f};
    }
    case ReplacementFlag::kNextUser:
    case ReplacementFlag::kPrevPacket: {
      const auto f = static_cast<ReplacementFlag>(static_cast<int>(flag) - 1);
      return {rule(s, f, k), f};
    }
  }
  throw InstanceError("invalid replacement flag");
}

std::vector<SubpacketId> tail_subroutine(const SubpacketSet& remaining,
                                         const SystemParams& params) {
  const auto c = scheme_constants(params);
  const int k = params.n_users;
  int seed = 0;
  for (int p = 1; p <= k; ++p) {
    if (remaining.contains({1, p})) {
      seed = p;
      break;
    }
  }
  if (seed == 0) throw NoSeedTerm("user 1 has no remaining demand");

  std::vector<SubpacketId> terms{{1, seed}};
  for (int j = 1; j < c.arity; ++j) {
    const int offset = j * k / c.arity;
    terms.push_back({wrap(1 + offset, k), wrap(seed + offset, k)});
  }
  return terms;
}

namespace {

SchemeConstants degenerate_constants(const SystemParams& params) {
  // i = 0 sends every subpacket alone; i = K sends nothing.
  const int k = params.n_users;
  const int i = params.cache_units;
  return {k - i + 1, 1, static_cast<std::int64_t>(k) * (k - i)};
}

// One pass of the shift-and-replace generator.
class Generator {
 public:
  Generator(const SystemParams& params, const DemandVector& demand)
      : params_(params),
        layout_(build_cache_layout(params)),
        remaining_(params.n_users),
        constants_(scheme_constants(params)) {
    const auto demanded = build_demand_list(params, demand);
    for (const auto& s : demanded) remaining_.insert(s);
  }

  std::vector<Codeword> run(ScheduleDiagnostics& diag) {
    std::vector<Codeword> out;
    auto seeds = initial_codeword_terms(params_);
    // Every productive pass delivers at least one term.
    const std::int64_t max_passes =
        static_cast<std::int64_t>(params_.n_users) * params_.n_users + 1;
    while (!remaining_.empty() && static_cast<std::int64_t>(out.size()) < max_passes) {
      auto terms = next_codeword(seeds, diag);
      if (terms.empty()) break;
      for (const auto& s : terms) remaining_.erase(s);
      seeds.clear();
      for (const auto& s : terms) {
        seeds.push_back({wrap(s.user + 1, params_.n_users), wrap(s.packet + 1, params_.n_users)});
      }
      out.push_back({std::move(terms)});
    }
    return out;
  }

  const SubpacketSet& remaining() const { return remaining_; }
  const CacheLayout& layout() const { return layout_; }

 private:
  // Terms still undelivered keep their slot; delivered ones are replaced in
  // slot order, each replacement checked against every term admitted so far.
  std::vector<SubpacketId> next_codeword(const std::vector<SubpacketId>& seeds,
                                         ScheduleDiagnostics& diag) {
    std::vector<std::optional<SubpacketId>> slots(seeds.size());
    std::vector<SubpacketId> admitted;
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      if (check(seeds[j], layout_, remaining_, admitted)) {
        slots[j] = seeds[j];
        admitted.push_back(seeds[j]);
      }
    }

    auto flag = ReplacementFlag::kUnset;
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      if (slots[j]) continue;
      if (admitted.empty() &&
          remaining_.size() == static_cast<std::size_t>(params_.n_users)) {
        return subroutine_codeword(diag);
      }
      try {
        auto r = update(seeds[j], remaining_, layout_, admitted, flag);
        if (r.term && !check(*r.term, layout_, remaining_, admitted)) {
          ++diag.paired_rule_fallbacks;
          r = update(seeds[j], remaining_, layout_, admitted, ReplacementFlag::kUnset);
        }
        flag = r.flag;
        slots[j] = r.term;
        admitted.push_back(*r.term);
      } catch (const ReplacementExhausted&) {
        ++diag.exhausted_replacements;
      }
    }

    std::vector<SubpacketId> terms;
    for (const auto& s : slots) {
      if (s) terms.push_back(*s);
    }
    return terms;
  }

  std::vector<SubpacketId> subroutine_codeword(ScheduleDiagnostics& diag) {
    ++diag.subroutine_calls;
    std::vector<SubpacketId> terms;
    for (const auto& s : tail_subroutine(remaining_, params_)) {
      if (check(s, layout_, remaining_, terms)) {
        terms.push_back(s);
      } else {
        ++diag.subroutine_dropped_terms;
      }
    }
    return terms;
  }

  SystemParams params_;
  CacheLayout layout_;
  SubpacketSet remaining_;
  SchemeConstants constants_;
};

// Visits every user once: start, start + step, ... with a +1 nudge after
// each full cycle of the subgroup generated by step.
std::vector<int> user_progression(int n_users, int step, int start) {
  const std::int64_t g = std::gcd(step, n_users);
  std::vector<int> users;
  users.reserve(static_cast<std::size_t>(n_users));
  for (std::int64_t l = 0; l < n_users; ++l) {
    users.push_back(static_cast<int>((start + l * step + l * g / n_users) % n_users));
  }
  return users;
}

// Rank r of user u (0-based) is packet u + i + r.
SubpacketId ranked_term(int user, int rank, const SystemParams& params) {
  const int k = params.n_users;
  return {user % k + 1, (user + params.cache_units + rank) % k + 1};
}

bool fits(const std::vector<SubpacketId>& terms, const std::vector<SubpacketId>& extra,
          const CacheLayout& layout) {
  for (const auto& a : extra) {
    for (const auto& b : terms) {
      if (!layout.caches(a.user, b.packet) || !layout.caches(b.user, a.packet)) return false;
    }
    for (const auto& b : extra) {
      if (&a != &b && !layout.caches(a.user, b.packet)) return false;
    }
  }
  return true;
}

// Odd t: each rank class alternates r, D - 1 - r at the tightest gaps, the
// classes are chained, and the stream is cut every t terms.
std::vector<Codeword> odd_arity_stream(const SystemParams& params, int arity) {
  const int k = params.n_users;
  const int d = k - params.cache_units;
  std::vector<SubpacketId> stream;
  std::int64_t pos = 0;
  int prev = -1;
  auto put = [&](int rank) {
    if (prev >= 0) pos += std::max(prev + 1, d - rank);
    stream.push_back(ranked_term(static_cast<int>(pos % k), rank, params));
    prev = rank;
  };
  for (int r = 0; r < d / 2; ++r) {
    for (int n = 0; n < k; ++n) {
      put(r);
      put(d - 1 - r);
    }
  }
  if (d % 2 == 1) {
    for (int n = 0; n < k; ++n) put(d / 2);
  }

  std::vector<Codeword> out;
  for (std::size_t j = 0; j < stream.size(); j += static_cast<std::size_t>(arity)) {
    const auto end = std::min(stream.size(), j + static_cast<std::size_t>(arity));
    out.push_back({{stream.begin() + static_cast<std::ptrdiff_t>(j),
                    stream.begin() + static_cast<std::ptrdiff_t>(end)}});
  }
  return out;
}

// Even t: pairs of one class start along a progression of step K - i + 1;
// the next class continues where the last one stopped. Units are packed
// greedily in stream order.
std::vector<Codeword> even_arity_stream(const SystemParams& params, int arity,
                                        const CacheLayout& layout) {
  const int k = params.n_users;
  const int d = k - params.cache_units;
  const int gamma = d + 1;
  std::vector<std::vector<SubpacketId>> units;
  int start = 0;
  for (int r = 0; r < d / 2; ++r) {
    const auto users = user_progression(k, gamma, start);
    for (int u : users) {
      units.push_back({ranked_term(u, r, params), ranked_term(u + r + 1, d - 1 - r, params)});
    }
    start = (users.back() + gamma) % k;
  }
  if (d % 2 == 1) {
    for (int u : user_progression(k, gamma / 2, start)) {
      units.push_back({ranked_term(u, d / 2, params)});
    }
  }

  std::vector<Codeword> out;
  std::vector<SubpacketId> current;
  for (const auto& unit : units) {
    if (current.size() + unit.size() > static_cast<std::size_t>(arity) ||
        !fits(current, unit, layout)) {
      out.push_back({std::move(current)});
      current.clear();
    }
    current.insert(current.end(), unit.begin(), unit.end());
  }
  if (!current.empty()) out.push_back({std::move(current)});
  return out;
}

}  // namespace

TransmissionSchedule generate_schedule(const SystemParams& params, const DemandVector& demand,
                                       const GenerateOptions& options) {
  params.validate_for_delivery();
  demand.validate(params);

  TransmissionSchedule schedule;
  schedule.params = params;
  const int k = params.n_users;
  const int i = params.cache_units;

  if (i == 0 || i == k) {
    schedule.constants = degenerate_constants(params);
    for (const auto& s : build_demand_list(params, demand)) schedule.codewords.push_back({{s}});
    schedule.diagnostics.generator_codewords =
        static_cast<std::int64_t>(schedule.codewords.size());
    schedule.rate = Rational(static_cast<std::int64_t>(schedule.codewords.size()), k);
    return schedule;
  }

  schedule.constants = scheme_constants(params);
  Generator generator(params, demand);
  schedule.codewords = generator.run(schedule.diagnostics);
  schedule.diagnostics.generator_codewords =
      static_cast<std::int64_t>(schedule.codewords.size());

  const bool overshoot =
      static_cast<std::int64_t>(schedule.codewords.size()) > schedule.constants.lambda;
  if ((overshoot || !generator.remaining().empty()) && options.rank_stream_fallback) {
    auto diagnostics = schedule.diagnostics;
    schedule = rank_stream_schedule(params, demand);
    diagnostics.rank_stream_fallback = true;
    schedule.diagnostics = diagnostics;
    return schedule;
  }
  // Anything still undelivered goes out uncoded so the schedule stays complete.
  for (const auto& s : generator.remaining().items()) schedule.codewords.push_back({{s}});

  schedule.rate = Rational(static_cast<std::int64_t>(schedule.codewords.size()), k);
  return schedule;
}

TransmissionSchedule rank_stream_schedule(const SystemParams& params,
                                          const DemandVector& demand) {
  params.validate_for_delivery();
  demand.validate(params);
  const int k = params.n_users;
  const int i = params.cache_units;

  TransmissionSchedule schedule;
  schedule.params = params;
  if (i == 0 || i == k) {
    schedule.constants = degenerate_constants(params);
    for (const auto& s : build_demand_list(params, demand)) schedule.codewords.push_back({{s}});
  } else {
    schedule.constants = scheme_constants(params);
    const int t = schedule.constants.arity;
    schedule.codewords = t % 2 == 1
                             ? odd_arity_stream(params, t)
                             : even_arity_stream(params, t, build_cache_layout(params));
  }
  schedule.rate = Rational(static_cast<std::int64_t>(schedule.codewords.size()), k);
  return schedule;
}

TransmissionSchedule closed_form_pairs(const SystemParams& params, const DemandVector& demand) {
  params.validate_for_delivery();
  demand.validate(params);
  const int k = params.n_users;
  const int i = params.cache_units;
  if (i <= 1 || 2 * i > k) {
    throw RegimeError("closed-form pair code needs 1 < i <= K/2, got i=" +
                      std::to_string(i) + " with K=" + std::to_string(k));
  }

  TransmissionSchedule schedule;
  schedule.params = params;
  schedule.constants = scheme_constants(params);
  SubpacketSet sent(k);
  auto emit = [&](std::initializer_list<SubpacketId> proposed) {
    Codeword c;
    for (const auto& s : proposed) {
      if (sent.insert(s)) {
        c.terms.push_back(s);
      } else {
        ++schedule.diagnostics.skipped_duplicate_terms;
      }
    }
    if (!c.terms.empty()) schedule.codewords.push_back(std::move(c));
  };

  const int demanded = k - i;
  for (int a = 0; a < k; ++a) {
    for (int step = 1; step <= demanded / 2; ++step) {
      emit({{wrap(1 + a, k), wrap(i + a + step, k)}, {wrap(1 + step + a, k), wrap(1 + a, k)}});
    }
  }
  if (demanded % 2 == 1) {
    const int half_up = (demanded + 1) / 2;
    for (int a = 0; a <= (k + 1) / 2; ++a) {
      emit({{wrap(1 + a, k), wrap(i + half_up + a, k)},
            {wrap(k / 2 + 1 + a, k), wrap((i + 1) / 2 + a, k)}});
    }
  }
  schedule.rate = Rational(static_cast<std::int64_t>(schedule.codewords.size()), k);
  return schedule;
}

}  // namespace cachecode
