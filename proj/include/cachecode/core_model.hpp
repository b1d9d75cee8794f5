#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "cachecode/rational.hpp"

namespace cachecode {

// An (N, K) caching instance with cache memory M = i N / K files per user.
struct SystemParams {
  int n_files = 1;      // N
  int n_users = 1;      // K
  int cache_units = 0;  // i

  // Throws InstanceError unless K >= 1, N >= 1 and 0 <= i <= K.
  void validate() const;
  // validate() plus N >= K, the worst-case regime schedules are built for.
  void validate_for_delivery() const;

  Rational memory() const;
  Rational cache_fraction() const;
};

// Demanded subpacket W_{d_user, packet}. Both indices are 1-based and
// cyclic modulo K. Keyed on the user, never the file, so repeated demands
// stay distinct.
struct SubpacketId {
  int user = 1;
  int packet = 1;

  friend auto operator<=>(const SubpacketId&, const SubpacketId&) = default;
};

// ((x - 1) mod K) + 1 with a non-negative modulus.
constexpr int wrap(int x, int k) {
  const int r = (x - 1) % k;
  return (r < 0 ? r + k : r) + 1;
}

// Subpacket indices each user holds, identical across files.
class CacheLayout {
 public:
  CacheLayout() = default;
  // sets[u - 1] lists the packet indices available to user u.
  CacheLayout(int n_users, std::vector<std::vector<int>> sets);

  int n_users() const { return n_users_; }
  bool caches(int user, int packet) const {
    return member_[index(user, packet)] != 0;
  }
  std::span<const int> packets(int user) const { return sets_[user - 1]; }
  int cache_size(int user) const {
    return static_cast<int>(sets_[user - 1].size());
  }

  friend bool operator==(const CacheLayout&, const CacheLayout&) = default;

 private:
  std::size_t index(int user, int packet) const {
    return static_cast<std::size_t>(user - 1) * n_users_ + (packet - 1);
  }

  int n_users_ = 0;
  std::vector<std::vector<int>> sets_;
  std::vector<std::uint8_t> member_;
};

// d_u for u = 1..K. Repeated files are allowed.
struct DemandVector {
  std::vector<int> files;

  static DemandVector identity(int n_users);
  // Uniform file indices from a std::mt19937_64 stream.
  static DemandVector random(int n_users, int n_files, std::uint64_t seed);

  int demand_of(int user) const { return files[user - 1]; }
  void validate(const SystemParams& params) const;
};

using DemandList = std::vector<SubpacketId>;

// Membership over the K x K grid of (user, packet) pairs.
class SubpacketSet {
 public:
  explicit SubpacketSet(int n_users = 0);
  SubpacketSet(int n_users, std::span<const SubpacketId> items);

  bool contains(SubpacketId s) const;
  bool insert(SubpacketId s);
  bool erase(SubpacketId s);
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int n_users() const { return n_users_; }
  // Members in (user, packet) lexicographic order.
  std::vector<SubpacketId> items() const;

 private:
  std::size_t index(SubpacketId s) const;

  int n_users_;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> bits_;
};

CacheLayout build_cache_layout(const SystemParams& params);

// Per user, the K - i packets just past the cached run, in cyclic order.
DemandList build_demand_list(const SystemParams& params, const DemandVector& demand);

}  // namespace cachecode
