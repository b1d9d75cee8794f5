#include "cachecode/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cachecode/errors.hpp"

namespace cachecode {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::logic_error&) {
    throw InstanceError(std::string("cannot parse ") + what + " '" + text + "'");
  }
}

Json term_to_json(SubpacketId s) { return Json{{"user", s.user}, {"packet", s.packet}}; }

}  // namespace

DemandSpec DemandSpec::parse(const std::string& text) {
  DemandSpec spec;
  const auto t = trim(text);
  if (t == "identity") return spec;
  if (t.rfind("random", 0) == 0) {
    spec.kind = Kind::kRandom;
    if (t.size() > 6) {
      if (t[6] != ':') throw InstanceError("demand must look like random:<seed>, got '" + t + "'");
      try {
        std::size_t used = 0;
        spec.seed = std::stoull(t.substr(7), &used);
        if (used != t.size() - 7) throw std::invalid_argument(t);
      } catch (const std::logic_error&) {
        throw InstanceError("cannot parse demand seed in '" + t + "'");
      }
    }
    return spec;
  }
  spec.kind = Kind::kExplicit;
  for (const auto& part : split(t, ',')) spec.files.push_back(parse_int(trim(part), "demand entry"));
  return spec;
}

DemandVector DemandSpec::resolve(int n_users, int n_files) const {
  DemandVector d;
  switch (kind) {
    case Kind::kIdentity:
      if (n_files < n_users) {
        throw InstanceError("identity demand needs N >= K, got N=" + std::to_string(n_files) +
                            " K=" + std::to_string(n_users));
      }
      d = DemandVector::identity(n_users);
      break;
    case Kind::kRandom:
      d = DemandVector::random(n_users, n_files, seed);
      break;
    case Kind::kExplicit:
      if (static_cast<int>(files.size()) != n_users) {
        throw InstanceError("explicit demand has " + std::to_string(files.size()) +
                            " entries, expected K=" + std::to_string(n_users));
      }
      d.files = files;
      break;
  }
  for (int f : d.files) {
    if (f < 1 || f > n_files) {
      throw InstanceError("demanded file " + std::to_string(f) + " is outside [1, N]");
    }
  }
  return d;
}

std::string DemandSpec::describe() const {
  switch (kind) {
    case Kind::kIdentity: return "identity";
    case Kind::kRandom: return "random:" + std::to_string(seed);
    case Kind::kExplicit: {
      std::string out;
      for (std::size_t j = 0; j < files.size(); ++j) {
        if (j != 0) out += ',';
        out += std::to_string(files[j]);
      }
      return out;
    }
  }
  return "";
}

Json rational_to_json(const Rational& r) {
  return Json{{"exact", to_exact_string(r)}, {"value", to_double(r)}};
}

Json schedule_to_json(const TransmissionSchedule& schedule) {
  Json codewords = Json::array();
  for (const auto& c : schedule.codewords) {
    Json terms = Json::array();
    for (const auto& s : c.terms) terms.push_back(term_to_json(s));
    codewords.push_back(std::move(terms));
  }
  const auto& d = schedule.diagnostics;
  Json out;
  out["schema"] = kSchemaVersion;
  out["K"] = schedule.params.n_users;
  out["N"] = schedule.params.n_files;
  out["i"] = schedule.params.cache_units;
  out["gamma"] = schedule.constants.gamma;
  out["t"] = schedule.constants.arity;
  out["lambda"] = schedule.constants.lambda;
  out["rate"] = to_exact_string(schedule.rate);
  out["rate_value"] = to_double(schedule.rate);
  out["codeword_count"] = schedule.codewords.size();
  out["meets_length_invariants"] = schedule.meets_length_invariants();
  out["codewords"] = std::move(codewords);
  out["diagnostics"] = Json{{"generator_codewords", d.generator_codewords},
                            {"exhausted_replacements", d.exhausted_replacements},
                            {"paired_rule_fallbacks", d.paired_rule_fallbacks},
                            {"subroutine_calls", d.subroutine_calls},
                            {"subroutine_dropped_terms", d.subroutine_dropped_terms},
                            {"rank_stream_fallback", d.rank_stream_fallback}};
  return out;
}

Json verification_to_json(const VerificationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item;
    item["codeword"] = v.codeword ? Json(*v.codeword) : Json(nullptr);
    item["term"] = term_to_json(v.term);
    item["kind"] = to_string(v.kind);
    item["other"] = v.other ? term_to_json(*v.other) : Json(nullptr);
    violations.push_back(std::move(item));
  }
  return Json{{"decodable", report.decodable},
              {"coverage_ok", report.coverage_ok},
              {"violations", std::move(violations)}};
}

Json simulation_to_json(const SimulationReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back(Json{{"user", f.user}, {"packet", f.packet}, {"reason", f.reason}});
  }
  return Json{{"success", report.success},
              {"seed", report.seed},
              {"decode_passes", report.decode_passes},
              {"transmitted_bytes", report.transmitted_bytes},
              {"failures", std::move(failures)}};
}

std::vector<RateCurveRow> rate_curve(int n_users) {
  if (n_users < 1) throw InstanceError("K must be at least 1");
  std::vector<RateCurveRow> rows;
  for (int i = 0; i <= n_users; ++i) {
    const SystemParams p{n_users, n_users, i};
    rows.push_back({i, Rational(i, n_users), rate(p), mn_rate(p), n_users, mn_subpacketization(p)});
  }
  return rows;
}

std::vector<BoundRow> ccdn_bound_rows(const CcdnParams& params, int grid) {
  if (grid < 0) throw InstanceError("grid must be non-negative");
  const auto curve = ccdn_upper_bound_curve(params);
  std::vector<BoundRow> rows;
  for (const auto& [m, r] : curve.breakpoints) rows.push_back({m, r, true, "upper_bound"});
  const Rational span(3 * static_cast<std::int64_t>(params.n_files), params.n_users);
  for (int j = 0; j < grid; ++j) {
    const Rational m = grid == 1 ? Rational(0) : span * j / (grid - 1);
    const bool known = std::any_of(rows.begin(), rows.end(),
                                   [&m](const BoundRow& row) { return row.memory == m; });
    if (!known) rows.push_back({m, curve.evaluate(m), false, "upper_bound"});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BoundRow& a, const BoundRow& b) { return a.memory < b.memory; });
  return rows;
}

std::vector<BoundRow> read_overlay_csv(const std::string& path, const std::string& series) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open overlay file '" + path + "'");
  std::vector<BoundRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() < 2) throw InstanceError("overlay row needs M and R: '" + line + "'");
    rows.push_back({parse_rational(trim(cells[0])), parse_rational(trim(cells[1])), false, series});
  }
  return rows;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  add_row(std::move(header));
}

void CsvWriter::add_row(std::vector<std::string> row) {
  if (row.size() != columns_) throw InstanceError("CSV row has the wrong number of fields");
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j != 0) out_ += ',';
    const auto& cell = row[j];
    if (cell.find_first_of(",\"\r\n") == std::string::npos) {
      out_ += cell;
      continue;
    }
    out_ += '"';
    for (char c : cell) {
      if (c == '"') out_ += '"';
      out_ += c;
    }
    out_ += '"';
  }
  out_ += '\n';
}

std::string CsvWriter::str() const { return out_; }

std::string rate_curve_csv(const std::vector<RateCurveRow>& rows) {
  CsvWriter csv({"i", "M_over_N", "M_over_N_exact", "R_new", "R_new_exact", "R_MN", "R_MN_exact",
                 "subpacketization_new", "subpacketization_MN"});
  for (const auto& r : rows) {
    csv.add_row({std::to_string(r.cache_units), to_decimal_string(r.memory_fraction),
                 to_exact_string(r.memory_fraction), to_decimal_string(r.new_rate),
                 to_exact_string(r.new_rate), to_decimal_string(r.mn_rate),
                 to_exact_string(r.mn_rate), std::to_string(r.new_subpacketization),
                 std::to_string(r.mn_subpacketization)});
  }
  return csv.str();
}

Json rate_curve_json(int n_users, const std::vector<RateCurveRow>& rows) {
  Json items = Json::array();
  for (const auto& r : rows) {
    items.push_back(Json{{"i", r.cache_units},
                         {"M_over_N", rational_to_json(r.memory_fraction)},
                         {"R_new", rational_to_json(r.new_rate)},
                         {"R_MN", rational_to_json(r.mn_rate)},
                         {"subpacketization_new", r.new_subpacketization},
                         {"subpacketization_MN", r.mn_subpacketization}});
  }
  return Json{{"schema", kSchemaVersion}, {"K", n_users}, {"rows", std::move(items)}};
}

std::string bound_csv(const std::vector<BoundRow>& rows) {
  CsvWriter csv({"M", "M_exact", "R", "R_exact", "breakpoint", "series"});
  for (const auto& r : rows) {
    csv.add_row({to_decimal_string(r.memory), to_exact_string(r.memory),
                 to_decimal_string(r.rate), to_exact_string(r.rate),
                 r.breakpoint ? "true" : "false", r.series});
  }
  return csv.str();
}

Json bound_json(const CcdnParams& params, const std::vector<BoundRow>& rows) {
  Json items = Json::array();
  for (const auto& r : rows) {
    items.push_back(Json{{"M", rational_to_json(r.memory)},
                         {"R", rational_to_json(r.rate)},
                         {"breakpoint", r.breakpoint},
                         {"series", r.series}});
  }
  Json breakpoints = Json::array();
  for (const auto& [m, r] : ccdn_upper_bound_curve(params).breakpoints) {
    breakpoints.push_back(Json{{"M", rational_to_json(m)}, {"R", rational_to_json(r)}});
  }
  return Json{{"schema", kSchemaVersion},
              {"K", params.n_users},
              {"N", params.n_files},
              {"L", params.access_degree},
              {"breakpoints", std::move(breakpoints)},
              {"rows", std::move(items)}};
}

std::string optimality_csv(const std::vector<OptimalityRow>& rows) {
  CsvWriter csv({"L", "row", "s", "R_opt", "R_opt_exact", "R_new", "R_new_exact",
                 "R_new_tabulated_exact", "match", "matches_table"});
  for (const auto& r : rows) {
    csv.add_row({std::to_string(r.access_degree), to_string(r.kind),
                 r.divisor == 0 ? "" : std::to_string(r.divisor),
                 to_decimal_string(r.optimal_rate), to_exact_string(r.optimal_rate),
                 to_decimal_string(r.new_rate), to_exact_string(r.new_rate),
                 to_exact_string(r.tabulated_new_rate), r.matches_optimal() ? "true" : "false",
                 r.matches_tabulated() ? "true" : "false"});
  }
  return csv.str();
}

Json optimality_json(int n_users, const std::vector<OptimalityRow>& rows) {
  Json items = Json::array();
  for (const auto& r : rows) {
    Json item;
    item["L"] = r.access_degree;
    item["row"] = to_string(r.kind);
    item["s"] = r.divisor == 0 ? Json(nullptr) : Json(r.divisor);
    item["R_opt"] = rational_to_json(r.optimal_rate);
    item["R_new"] = rational_to_json(r.new_rate);
    item["R_new_tabulated"] = rational_to_json(r.tabulated_new_rate);
    item["match"] = r.matches_optimal();
    item["matches_table"] = r.matches_tabulated();
    items.push_back(std::move(item));
  }
  return Json{{"schema", kSchemaVersion}, {"K", n_users}, {"rows", std::move(items)}};
}

std::string optimality_text(int n_users, const std::vector<OptimalityRow>& rows) {
  std::ostringstream out;
  out << "K = " << n_users << "\n";
  char line[128];
  std::snprintf(line, sizeof line, "%-10s %4s %10s %10s  %s\n", "row", "L", "R*", "R_new",
                "match?");
  out << line;
  for (const auto& r : rows) {
    std::string label = to_string(r.kind);
    if (r.kind == OptimalityRowKind::kDivisor) label = "s=" + std::to_string(r.divisor);
    std::snprintf(line, sizeof line, "%-10s %4d %10s %10s  %s\n", label.c_str(), r.access_degree,
                  to_exact_string(r.optimal_rate).c_str(), to_exact_string(r.new_rate).c_str(),
                  r.matches_optimal() ? "match" : "gap");
    out << line;
  }
  return out.str();
}

}  // namespace cachecode
