#include "cachecode/multiaccess.hpp"

#include <algorithm>
#include <string>

#include "cachecode/errors.hpp"

namespace cachecode {

void CcdnParams::validate() const {
  if (n_users < 1) throw InstanceError("K must be at least 1, got " + std::to_string(n_users));
  if (n_files < 1) throw InstanceError("N must be at least 1, got " + std::to_string(n_files));
  if (access_degree < 1 || access_degree > n_users) {
    throw InstanceError("L must lie in [1, K], got L=" + std::to_string(access_degree));
  }
  const auto max_units = ceil_div(n_users, access_degree);
  if (cache_units < 0 || cache_units > max_units) {
    throw InstanceError("i must lie in [0, ceil(K/L)] = [0, " + std::to_string(max_units) +
                        "], got i=" + std::to_string(cache_units));
  }
}

Rational CcdnParams::memory() const {
  return Rational(static_cast<std::int64_t>(cache_units) * n_files, n_users);
}

std::int64_t f_subfiles(int n_users, int cache_units, int access_degree) {
  if (cache_units < 1) throw InstanceError("F(i, L) needs i >= 1");
  const std::int64_t numerator =
      binomial(n_users - static_cast<std::int64_t>(cache_units) * access_degree + cache_units - 1,
               cache_units - 1) *
      n_users;
  if (numerator % cache_units != 0) {
    throw InstanceError("F(" + std::to_string(cache_units) + ", " +
                        std::to_string(access_degree) + ") = " + std::to_string(numerator) +
                        "/" + std::to_string(cache_units) + " is not an integer");
  }
  return numerator / cache_units;
}

CcdnView ccdn_user_view(const CcdnParams& params) {
  params.validate();
  const int k = params.n_users;
  const int i = params.cache_units;
  const int l = params.access_degree;

  CcdnView view;
  view.slot_of_user.resize(static_cast<std::size_t>(k));
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(k));

  if (i == 0 || static_cast<std::int64_t>(i) * l >= k) {
    view.effective_units = i == 0 ? 0 : k;
    for (int u = 1; u <= k; ++u) {
      view.slot_of_user[static_cast<std::size_t>(u - 1)] = u;
      for (int p = 1; p <= view.effective_units; ++p) sets[static_cast<std::size_t>(u - 1)].push_back(p);
    }
    view.layout = CacheLayout(k, std::move(sets));
    return view;
  }

  const auto f = f_subfiles(k, i, l);
  if (f != k) {
    throw UnsupportedMemoryPoint("F(" + std::to_string(i) + ", " + std::to_string(l) + ") = " +
                                 std::to_string(f) + " differs from K=" + std::to_string(k));
  }

  // Cache j holds subpackets (j - 1) i + 1 .. j i, so user k sees the run of
  // i L subpackets starting at (k - 1) i + 1.
  view.effective_units = i * l;
  std::vector<char> used(static_cast<std::size_t>(k), 0);
  for (int u = 1; u <= k; ++u) {
    const int start = wrap((u - 1) * i + 1, k);
    auto& slot_used = used[static_cast<std::size_t>(start - 1)];
    if (slot_used) {
      throw UnsupportedMemoryPoint("users share a view at i=" + std::to_string(i) +
                                   ", L=" + std::to_string(l));
    }
    slot_used = 1;
    view.slot_of_user[static_cast<std::size_t>(u - 1)] = start;
    auto& set = sets[static_cast<std::size_t>(u - 1)];
    for (int j = 0; j < view.effective_units; ++j) set.push_back(wrap(start + j, k));
    std::sort(set.begin(), set.end());
  }
  view.layout = CacheLayout(k, std::move(sets));
  return view;
}

Rational ccdn_rate_at_supported_points(const CcdnParams& params) {
  const auto view = ccdn_user_view(params);
  return rate(params.n_users, view.effective_units);
}

TransmissionSchedule ccdn_schedule(const CcdnParams& params, const DemandVector& demand,
                                   const GenerateOptions& options) {
  const auto view = ccdn_user_view(params);
  const int k = params.n_users;
  if (static_cast<int>(demand.files.size()) != k) {
    throw InstanceError("demand vector must have K entries");
  }

  // Dedicated user s stands in for the multi-access user whose view starts at s.
  std::vector<int> user_of_slot(static_cast<std::size_t>(k));
  DemandVector dedicated_demand;
  dedicated_demand.files.resize(static_cast<std::size_t>(k));
  for (int u = 1; u <= k; ++u) {
    const int slot = view.slot_of_user[static_cast<std::size_t>(u - 1)];
    user_of_slot[static_cast<std::size_t>(slot - 1)] = u;
    dedicated_demand.files[static_cast<std::size_t>(slot - 1)] = demand.demand_of(u);
  }

  const SystemParams dedicated{params.n_files, k, view.effective_units};
  auto schedule = generate_schedule(dedicated, dedicated_demand, options);
  for (auto& c : schedule.codewords) {
    for (auto& s : c.terms) s.user = user_of_slot[static_cast<std::size_t>(s.user - 1)];
  }
  return schedule;
}

Rational RateBoundCurve::evaluate(const Rational& memory) const {
  if (breakpoints.empty()) throw InstanceError("empty rate curve");
  if (memory < 0) throw InstanceError("memory must be non-negative");
  if (memory <= breakpoints.front().first) return breakpoints.front().second;
  for (std::size_t j = 1; j < breakpoints.size(); ++j) {
    const auto& [m1, r1] = breakpoints[j];
    if (memory <= m1) {
      const auto& [m0, r0] = breakpoints[j - 1];
      return r0 + (r1 - r0) * (memory - m0) / (m1 - m0);
    }
  }
  return breakpoints.back().second;
}

RateBoundCurve ccdn_upper_bound_curve(const CcdnParams& params) {
  params.validate();
  const int k = params.n_users;
  const int l = params.access_degree;
  if (2 * l < k) {
    throw RegimeError("the upper bound needs L >= K/2, got L=" + std::to_string(l) +
                      " with K=" + std::to_string(k));
  }
  const Rational unit(params.n_files, k);
  return {{{Rational(0), Rational(k)}, {unit, rate(k, l)}, {unit * 2, Rational(0)}}};
}

Rational ccdn_upper_bound(const Rational& memory, const CcdnParams& params) {
  return ccdn_upper_bound_curve(params).evaluate(memory);
}

std::string to_string(OptimalityRowKind kind) {
  switch (kind) {
    case OptimalityRowKind::kMinusOne: return "K-1";
    case OptimalityRowKind::kMinusTwo: return "K-2";
    case OptimalityRowKind::kMinusThree: return "K-3";
    case OptimalityRowKind::kDivisor: return "K-K/s+1";
  }
  return "unknown";
}

namespace {

Rational tabulated_minus_two(int k) {
  return Rational(k % 3 == 0 && k >= 6 ? 3 : 4, k);
}

Rational tabulated_minus_three(int k) {
  if (k == 6) return Rational(9, k);
  if (k == 5 || k == 10) return Rational(8, k);
  if (k % 4 == 0) return Rational(6, k);
  return Rational(7, k);
}

}  // namespace

std::vector<OptimalityRow> optimality_table(int n_users) {
  const int k = n_users;
  if (k < 4) throw InstanceError("optimality table needs K >= 4, got K=" + std::to_string(k));

  std::vector<OptimalityRow> rows;
  auto add = [&](OptimalityRowKind kind, int l, int s, Rational optimal, Rational tabulated) {
    rows.push_back({kind, l, s, optimal, rate(k, l), tabulated});
  };
  add(OptimalityRowKind::kMinusOne, k - 1, 0, Rational(1, k), Rational(1, k));
  add(OptimalityRowKind::kMinusTwo, k - 2, 0, Rational(3, k), tabulated_minus_two(k));
  add(OptimalityRowKind::kMinusThree, k - 3, 0, Rational(6, k), tabulated_minus_three(k));
  for (int s = 2; s <= k; ++s) {
    if (k % s != 0) continue;
    const Rational closed(k - s, 2 * static_cast<std::int64_t>(s) * s);
    add(OptimalityRowKind::kDivisor, k - k / s + 1, s, closed, closed);
  }
  return rows;
}

}  // namespace cachecode
