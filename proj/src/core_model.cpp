#include "cachecode/core_model.hpp"

#include <random>
#include <string>

#include "cachecode/errors.hpp"

namespace cachecode {

void SystemParams::validate() const {
  if (n_users < 1) throw InstanceError("K must be at least 1");
  if (n_files < 1) throw InstanceError("N must be at least 1");
  if (cache_units < 0 || cache_units > n_users) {
    throw InstanceError("i must lie in [0, K], got i=" + std::to_string(cache_units) +
                        " with K=" + std::to_string(n_users));
  }
}

void SystemParams::validate_for_delivery() const {
  validate();
  if (n_files < n_users) {
    throw InstanceError("schedules assume N >= K (worst-case demands), got N=" +
                        std::to_string(n_files) + " K=" + std::to_string(n_users));
  }
}

Rational SystemParams::memory() const {
  return Rational(static_cast<std::int64_t>(cache_units) * n_files, n_users);
}

Rational SystemParams::cache_fraction() const { return Rational(cache_units, n_users); }

CacheLayout::CacheLayout(int n_users, std::vector<std::vector<int>> sets)
    : n_users_(n_users),
      sets_(std::move(sets)),
      member_(static_cast<std::size_t>(n_users) * n_users, 0) {
  if (static_cast<int>(sets_.size()) != n_users) {
    throw InstanceError("cache layout needs one set per user");
  }
  for (int u = 1; u <= n_users_; ++u) {
    for (int p : sets_[u - 1]) {
      if (p < 1 || p > n_users_) throw InstanceError("cached packet index out of range");
      auto& bit = member_[index(u, p)];
      if (bit) throw InstanceError("packet cached twice by one user");
      bit = 1;
    }
  }
}

DemandVector DemandVector::identity(int n_users) {
  DemandVector d;
  d.files.resize(n_users);
  for (int u = 1; u <= n_users; ++u) d.files[u - 1] = u;
  return d;
}

DemandVector DemandVector::random(int n_users, int n_files, std::uint64_t seed) {
  // Plain modulo keeps the stream identical across standard libraries.
  std::mt19937_64 rng(seed);
  DemandVector d;
  d.files.resize(n_users);
  for (auto& f : d.files) f = static_cast<int>(rng() % static_cast<std::uint64_t>(n_files)) + 1;
  return d;
}

void DemandVector::validate(const SystemParams& params) const {
  if (static_cast<int>(files.size()) != params.n_users) {
    throw InstanceError("demand vector has " + std::to_string(files.size()) +
                        " entries, expected K=" + std::to_string(params.n_users));
  }
  for (int f : files) {
    if (f < 1 || f > params.n_files) {
      throw InstanceError("demanded file " + std::to_string(f) + " outside [1, N]");
    }
  }
}

SubpacketSet::SubpacketSet(int n_users)
    : n_users_(n_users), bits_(static_cast<std::size_t>(n_users) * n_users, 0) {}

SubpacketSet::SubpacketSet(int n_users, std::span<const SubpacketId> items)
    : SubpacketSet(n_users) {
  for (const auto& s : items) insert(s);
}

std::size_t SubpacketSet::index(SubpacketId s) const {
  return static_cast<std::size_t>(s.user - 1) * n_users_ + (s.packet - 1);
}

bool SubpacketSet::contains(SubpacketId s) const {
  if (s.user < 1 || s.user > n_users_ || s.packet < 1 || s.packet > n_users_) return false;
  return bits_[index(s)] != 0;
}

bool SubpacketSet::insert(SubpacketId s) {
  auto& bit = bits_[index(s)];
  if (bit) return false;
  bit = 1;
  ++size_;
  return true;
}

bool SubpacketSet::erase(SubpacketId s) {
  if (!contains(s)) return false;
  bits_[index(s)] = 0;
  --size_;
  return true;
}

std::vector<SubpacketId> SubpacketSet::items() const {
  std::vector<SubpacketId> out;
  out.reserve(size_);
  for (int u = 1; u <= n_users_; ++u) {
    for (int p = 1; p <= n_users_; ++p) {
      if (bits_[index({u, p})]) out.push_back({u, p});
    }
  }
  return out;
}

CacheLayout build_cache_layout(const SystemParams& params) {
  params.validate();
  const int k = params.n_users;
  std::vector<std::vector<int>> sets(k);
  for (int u = 1; u <= k; ++u) {
    sets[u - 1].reserve(params.cache_units);
    for (int j = 0; j < params.cache_units; ++j) sets[u - 1].push_back(wrap(u + j, k));
  }
  return CacheLayout(k, std::move(sets));
}

DemandList build_demand_list(const SystemParams& params, const DemandVector& demand) {
  params.validate();
  demand.validate(params);
  const int k = params.n_users;
  const int i = params.cache_units;
  DemandList out;
  out.reserve(static_cast<std::size_t>(k) * (k - i));
  for (int u = 1; u <= k; ++u) {
    for (int j = 0; j < k - i; ++j) out.push_back({u, wrap(u + i + j, k)});
  }
  return out;
}

}  // namespace cachecode
