#include "cachecode/verifier.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "cachecode/errors.hpp"

namespace cachecode {

FileStore::FileStore(int n_users, std::vector<std::vector<std::uint8_t>> files)
    : n_users_(n_users), files_(std::move(files)) {
  if (n_users_ < 1) throw InstanceError("file store needs K >= 1");
  if (files_.empty()) throw InstanceError("file store needs at least one file");
  file_size_ = files_.front().size();
  for (const auto& f : files_) {
    if (f.size() != file_size_) throw InstanceError("files must have equal length");
  }
  if (file_size_ % static_cast<std::size_t>(n_users_) != 0) {
    throw InstanceError("file length " + std::to_string(file_size_) +
                        " is not divisible by K=" + std::to_string(n_users_));
  }
}

FileStore FileStore::random(int n_files, int n_users, std::size_t bytes_per_subpacket,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::uint8_t>> files(static_cast<std::size_t>(n_files));
  for (auto& f : files) {
    f.resize(bytes_per_subpacket * static_cast<std::size_t>(n_users));
    for (auto& b : f) b = static_cast<std::uint8_t>(rng() & 0xff);
  }
  return FileStore(n_users, std::move(files));
}

std::span<const std::uint8_t> FileStore::subpacket(int n, int p) const {
  const auto size = subpacket_size();
  return file(n).subspan(static_cast<std::size_t>(p - 1) * size, size);
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownTerm: return "unknown-term";
    case ViolationKind::kAlreadyCached: return "already-cached";
    case ViolationKind::kInvalidIndex: return "invalid-index";
    case ViolationKind::kMissing: return "missing";
    case ViolationKind::kDuplicate: return "duplicate";
  }
  return "unknown";
}

bool Violation::concerns_knowledge() const {
  return kind == ViolationKind::kUnknownTerm || kind == ViolationKind::kInvalidIndex;
}

VerificationReport verify_instantaneous_decodability(const std::vector<Codeword>& codewords,
                                                     const CacheLayout& layout) {
  VerificationReport report;
  const int k = layout.n_users();
  auto valid = [k](SubpacketId s) {
    return s.user >= 1 && s.user <= k && s.packet >= 1 && s.packet <= k;
  };
  auto flag = [&report](Violation v) {
    if (v.concerns_knowledge()) {
      report.decodable = false;
    } else {
      report.coverage_ok = false;
    }
    report.violations.push_back(v);
  };

  SubpacketSet seen(k);
  for (std::size_t c = 0; c < codewords.size(); ++c) {
    const auto& terms = codewords[c].terms;
    for (const auto& s : terms) {
      if (!valid(s)) {
        flag({c, s, ViolationKind::kInvalidIndex, std::nullopt});
        continue;
      }
      for (const auto& other : terms) {
        if (&other == &s || !valid(other)) continue;
        if (!layout.caches(s.user, other.packet)) {
          flag({c, s, ViolationKind::kUnknownTerm, other});
        }
      }
      if (layout.caches(s.user, s.packet)) {
        flag({c, s, ViolationKind::kAlreadyCached, std::nullopt});
      } else if (!seen.insert(s)) {
        flag({c, s, ViolationKind::kDuplicate, std::nullopt});
      }
    }
  }

  for (int u = 1; u <= k; ++u) {
    for (int p = 1; p <= k; ++p) {
      if (!layout.caches(u, p) && !seen.contains({u, p})) {
        flag({std::nullopt, {u, p}, ViolationKind::kMissing, std::nullopt});
      }
    }
  }
  return report;
}

VerificationReport verify_instantaneous_decodability(const TransmissionSchedule& schedule,
                                                     const CacheLayout& layout) {
  return verify_instantaneous_decodability(schedule.codewords, layout);
}

void SimulationReport::require_success() const {
  if (success) return;
  if (failures.empty()) throw SimulationMismatch("simulation failed");
  const auto& f = failures.front();
  throw SimulationMismatch("user " + std::to_string(f.user) + " packet " +
                           std::to_string(f.packet) + ": " + f.reason);
}

namespace {

using Bytes = std::vector<std::uint8_t>;

void xor_into(Bytes& acc, std::span<const std::uint8_t> data) {
  for (std::size_t b = 0; b < acc.size(); ++b) acc[b] ^= data[b];
}

}  // namespace

SimulationReport simulate_end_to_end(const std::vector<Codeword>& codewords,
                                     const CacheLayout& layout, const DemandVector& demand,
                                     const FileStore& store) {
  const int k = layout.n_users();
  if (store.n_users() != k) throw InstanceError("file store and layout disagree on K");
  if (static_cast<int>(demand.files.size()) != k) {
    throw InstanceError("demand vector must have K entries");
  }
  for (int f : demand.files) {
    if (f < 1 || f > store.n_files()) {
      throw InstanceError("demand refers to file " + std::to_string(f) + " outside the store");
    }
  }

  SimulationReport report;
  const std::size_t size = store.subpacket_size();

  // Server side: one XOR payload per codeword.
  std::vector<Bytes> payloads;
  payloads.reserve(codewords.size());
  for (const auto& c : codewords) {
    Bytes acc(size, 0);
    for (const auto& s : c.terms) {
      if (s.user < 1 || s.user > k || s.packet < 1 || s.packet > k) {
        report.failures.push_back({s.user, s.packet, "term index out of range"});
        return report;
      }
      xor_into(acc, store.subpacket(demand.demand_of(s.user), s.packet));
    }
    report.transmitted_bytes += size;
    payloads.push_back(std::move(acc));
  }

  // Each user holds (file, packet) -> bytes: its cache for every file plus
  // whatever it decodes.
  bool all_ok = true;
  for (int u = 1; u <= k; ++u) {
    std::map<std::pair<int, int>, Bytes> known;
    for (int p : layout.packets(u)) {
      for (int n = 1; n <= store.n_files(); ++n) {
        auto sp = store.subpacket(n, p);
        known[{n, p}] = Bytes(sp.begin(), sp.end());
      }
    }
    const int wanted = demand.demand_of(u);

    std::vector<std::size_t> pending;
    for (std::size_t c = 0; c < codewords.size(); ++c) {
      const auto& terms = codewords[c].terms;
      if (std::any_of(terms.begin(), terms.end(), [u](SubpacketId s) { return s.user == u; })) {
        pending.push_back(c);
      }
    }

    int passes = 0;
    bool progress = true;
    while (!pending.empty() && progress) {
      ++passes;
      progress = false;
      std::vector<std::size_t> still;
      for (std::size_t c : pending) {
        const auto& terms = codewords[c].terms;
        std::optional<SubpacketId> target;
        int unknown = 0;
        for (const auto& s : terms) {
          if (known.count({demand.demand_of(s.user), s.packet}) != 0) continue;
          ++unknown;
          if (s.user == u) target = s;
        }
        if (unknown == 0) {
          progress = true;
          continue;
        }
        if (unknown > 1 || !target) {
          still.push_back(c);
          continue;
        }
        Bytes value = payloads[c];
        for (const auto& s : terms) {
          if (s == *target) continue;
          xor_into(value, known.at({demand.demand_of(s.user), s.packet}));
        }
        known[{wanted, target->packet}] = std::move(value);
        progress = true;
      }
      pending = std::move(still);
    }
    report.decode_passes = std::max(report.decode_passes, passes);

    for (std::size_t c : pending) {
      for (const auto& s : codewords[c].terms) {
        if (s.user == u && known.count({wanted, s.packet}) == 0) {
          report.failures.push_back({u, s.packet, "codeword " + std::to_string(c) +
                                                      " has more than one unknown term"});
        }
      }
    }

    for (int p = 1; p <= k; ++p) {
      auto it = known.find({wanted, p});
      if (it == known.end()) {
        report.failures.push_back({u, p, "never received"});
        all_ok = false;
        continue;
      }
      auto expected = store.subpacket(wanted, p);
      if (!std::equal(it->second.begin(), it->second.end(), expected.begin(), expected.end())) {
        report.failures.push_back({u, p, "decoded bytes differ from the file"});
        all_ok = false;
      }
    }
  }
  report.success = all_ok && report.failures.empty();
  return report;
}

SimulationReport simulate_end_to_end(const SystemParams& params, const DemandVector& demand,
                                     std::uint64_t seed, std::size_t bytes_per_subpacket) {
  const auto schedule = generate_schedule(params, demand);
  const auto store =
      FileStore::random(params.n_files, params.n_users, bytes_per_subpacket, seed);
  auto report =
      simulate_end_to_end(schedule.codewords, build_cache_layout(params), demand, store);
  report.seed = seed;
  return report;
}

namespace {

// Branch and bound over partitions of the demand into singletons and
// decodable pairs; the lowest uncovered term is always placed next.
class PairSearch {
 public:
  PairSearch(const std::vector<SubpacketId>& terms, const CacheLayout& layout)
      : n_(static_cast<int>(terms.size())), compatible_(terms.size()) {
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        const auto& x = terms[static_cast<std::size_t>(a)];
        const auto& y = terms[static_cast<std::size_t>(b)];
        if (layout.caches(x.user, y.packet) && layout.caches(y.user, x.packet)) {
          compatible_[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
        }
      }
    }
  }

  std::int64_t minimum() {
    best_ = n_;
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    search(all, 0);
    return best_;
  }

 private:
  void search(std::uint64_t open, int used) {
    const int left = std::popcount(open);
    if (used + (left + 1) / 2 >= best_) return;
    if (left == 0) {
      best_ = used;
      return;
    }
    const int a = std::countr_zero(open);
    const std::uint64_t rest = open & ~(std::uint64_t{1} << a);
    std::uint64_t partners = compatible_[static_cast<std::size_t>(a)] & rest;
    while (partners != 0) {
      const int b = std::countr_zero(partners);
      partners &= partners - 1;
      search(rest & ~(std::uint64_t{1} << b), used + 1);
    }
    search(rest, used + 1);
  }

  int n_;
  std::vector<std::uint64_t> compatible_;
  std::int64_t best_ = 0;
};

}  // namespace

std::int64_t brute_force_min_pair_schedule(const SystemParams& params,
                                           const DemandVector& demand) {
  params.validate();
  demand.validate(params);
  const int k = params.n_users;
  const int i = params.cache_units;
  if (k > 8) throw SizeLimitExceeded("pair search is limited to K <= 8");
  if (i <= 1 || 2 * i > k) throw RegimeError("pair search needs 1 < i <= K/2");

  const auto layout = build_cache_layout(params);
  std::vector<SubpacketId> terms;
  for (int u = 1; u <= k; ++u) {
    for (int p = 1; p <= k; ++p) {
      if (!layout.caches(u, p)) terms.push_back({u, p});
    }
  }
  return PairSearch(terms, layout).minimum();
}

}  // namespace cachecode
