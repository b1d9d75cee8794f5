#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cachecode/core_model.hpp"
#include "cachecode/delivery.hpp"
#include "cachecode/multiaccess.hpp"
#include "cachecode/verifier.hpp"

namespace cachecode {

inline constexpr const char* kSchemaVersion = "cachecode/1";

using Json = nlohmann::ordered_json;

// "identity", "random:<seed>" or a comma-separated list of file indices.
struct DemandSpec {
  enum class Kind { kIdentity, kRandom, kExplicit } kind = Kind::kIdentity;
  std::uint64_t seed = 0;
  std::vector<int> files;

  static DemandSpec parse(const std::string& text);
  DemandVector resolve(int n_users, int n_files) const;
  std::string describe() const;
};

Json rational_to_json(const Rational& r);
Json schedule_to_json(const TransmissionSchedule& schedule);
Json verification_to_json(const VerificationReport& report);
Json simulation_to_json(const SimulationReport& report);

struct RateCurveRow {
  int cache_units = 0;
  Rational memory_fraction;  // M / N
  Rational new_rate;
  Rational mn_rate;
  std::int64_t new_subpacketization = 0;
  std::int64_t mn_subpacketization = 0;
};

std::vector<RateCurveRow> rate_curve(int n_users);

struct BoundRow {
  Rational memory;
  Rational rate;
  bool breakpoint = false;
  std::string series;
};

// Breakpoints 0, N/K, 2N/K plus `grid` evenly spaced points on [0, 3N/K].
std::vector<BoundRow> ccdn_bound_rows(const CcdnParams& params, int grid);

// Reads "M,R" rows (header required, extra columns ignored) into an overlay
// series.
std::vector<BoundRow> read_overlay_csv(const std::string& path, const std::string& series);

// RFC 4180 CSV with LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  std::string str() const;

 private:
  std::string out_;
  std::size_t columns_;
};

std::string rate_curve_csv(const std::vector<RateCurveRow>& rows);
Json rate_curve_json(int n_users, const std::vector<RateCurveRow>& rows);
std::string bound_csv(const std::vector<BoundRow>& rows);
Json bound_json(const CcdnParams& params, const std::vector<BoundRow>& rows);
std::string optimality_csv(const std::vector<OptimalityRow>& rows);
Json optimality_json(int n_users, const std::vector<OptimalityRow>& rows);
std::string optimality_text(int n_users, const std::vector<OptimalityRow>& rows);

}  // namespace cachecode
