#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cachecode/core_model.hpp"
#include "cachecode/delivery.hpp"

namespace cachecode {

// N equal-length files, each split into K equal subpackets.
class FileStore {
 public:
  FileStore(int n_users, std::vector<std::vector<std::uint8_t>> files);

  static FileStore random(int n_files, int n_users, std::size_t bytes_per_subpacket,
                          std::uint64_t seed);

  int n_files() const { return static_cast<int>(files_.size()); }
  int n_users() const { return n_users_; }
  std::size_t file_size() const { return file_size_; }
  std::size_t subpacket_size() const { return file_size_ / n_users_; }

  std::span<const std::uint8_t> file(int n) const { return files_[n - 1]; }
  std::span<const std::uint8_t> subpacket(int n, int p) const;

 private:
  int n_users_;
  std::size_t file_size_ = 0;
  std::vector<std::vector<std::uint8_t>> files_;
};

enum class ViolationKind {
  kUnknownTerm,      // another term's packet is not in this user's cache
  kAlreadyCached,    // the term's own packet is cached by its user
  kInvalidIndex,
  kMissing,          // demanded but never transmitted
  kDuplicate,        // transmitted more than once
};

const char* to_string(ViolationKind kind);

struct Violation {
  std::optional<std::size_t> codeword;  // absent for kMissing
  SubpacketId term;
  ViolationKind kind;
  std::optional<SubpacketId> other;     // the unknown term for kUnknownTerm

  bool concerns_knowledge() const;
};

struct VerificationReport {
  bool decodable = true;
  bool coverage_ok = true;
  std::vector<Violation> violations;
};

// Every term must be decodable from its user's cache alone, and the terms
// must cover each user's uncached packets exactly once. The expected demand
// is derived from the layout, not from the schedule's parameters.
VerificationReport verify_instantaneous_decodability(
    const std::vector<Codeword>& codewords, const CacheLayout& layout);
VerificationReport verify_instantaneous_decodability(
    const TransmissionSchedule& schedule, const CacheLayout& layout);

struct SimulationFailure {
  int user = 0;
  int packet = 0;
  std::string reason;
};

struct SimulationReport {
  bool success = false;
  std::uint64_t seed = 0;
  // Decoding passes used; more than one means a codeword needed something
  // decoded from another transmission.
  int decode_passes = 0;
  std::size_t transmitted_bytes = 0;
  std::vector<SimulationFailure> failures;

  // Throws SimulationMismatch naming the first failure.
  void require_success() const;
};

// Materializes caches, XORs real subpacket bytes per codeword, decodes at
// every user and compares the reassembled file with the demanded one.
SimulationReport simulate_end_to_end(const std::vector<Codeword>& codewords,
                                     const CacheLayout& layout,
                                     const DemandVector& demand,
                                     const FileStore& store);

// Generates the schedule for `params` and runs it over random files derived
// from `seed`, one byte per subpacket unless stated.
SimulationReport simulate_end_to_end(const SystemParams& params,
                                     const DemandVector& demand, std::uint64_t seed,
                                     std::size_t bytes_per_subpacket = 1);

// Minimum number of arity <= 2 decodable transmissions covering the
// demanded subpackets, by branch-and-bound exhaustive search. K <= 8 and
// 1 < i <= K / 2.
std::int64_t brute_force_min_pair_schedule(const SystemParams& params,
                                           const DemandVector& demand);

}  // namespace cachecode
