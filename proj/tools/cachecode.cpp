#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cachecode/core_model.hpp"
#include "cachecode/delivery.hpp"
#include "cachecode/errors.hpp"
#include "cachecode/multiaccess.hpp"
#include "cachecode/report.hpp"
#include "cachecode/verifier.hpp"

using namespace cachecode;

namespace {

constexpr int kExitInstance = 2;
constexpr int kExitSchedule = 3;
constexpr int kExitVerification = 4;

struct Options {
  int k = 0;
  std::optional<int> n;
  int i = 0;
  std::optional<int> l;
  std::string demand = "identity";
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  bool verify = false;
  int grid = 100;
  std::size_t bytes = 1;
  std::vector<std::string> overlays;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) throw InstanceError("cannot write '" + opt.out + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string resolved_format(const Options& opt, const char* fallback) {
  return opt.format.empty() ? fallback : opt.format;
}

DemandSpec demand_spec(const Options& opt) {
  auto spec = DemandSpec::parse(opt.demand == "random" ? "random:" + std::to_string(opt.seed)
                                                       : opt.demand);
  return spec;
}

// The schedule plus the layout it must be checked against, in either the
// dedicated or the multi-access setting.
struct Instance {
  TransmissionSchedule schedule;
  CacheLayout layout;
  DemandSpec spec;
  DemandVector demand;
  std::optional<CcdnParams> ccdn;
  int effective_units = 0;
};

Instance build_instance(const Options& opt) {
  Instance inst;
  const int n = opt.n.value_or(opt.k);
  inst.spec = demand_spec(opt);
  if (opt.l) {
    CcdnParams p{n, opt.k, *opt.l, opt.i};
    p.validate();
    inst.demand = inst.spec.resolve(opt.k, n);
    const auto view = ccdn_user_view(p);
    inst.schedule = ccdn_schedule(p, inst.demand);
    inst.layout = view.layout;
    inst.ccdn = p;
    inst.effective_units = view.effective_units;
  } else {
    SystemParams p{n, opt.k, opt.i};
    p.validate_for_delivery();
    inst.demand = inst.spec.resolve(opt.k, n);
    inst.schedule = generate_schedule(p, inst.demand);
    inst.layout = build_cache_layout(p);
    inst.effective_units = opt.i;
  }
  return inst;
}

Json instance_json(const Instance& inst) {
  auto j = schedule_to_json(inst.schedule);
  if (inst.ccdn) {
    j["i"] = inst.ccdn->cache_units;
    j["L"] = inst.ccdn->access_degree;
    j["i_eff"] = inst.effective_units;
  }
  j["demand"] = inst.spec.describe();
  j["demand_vector"] = inst.demand.files;
  if (inst.spec.kind == DemandSpec::Kind::kRandom) j["seed"] = inst.spec.seed;
  return j;
}

void warn_length(const TransmissionSchedule& s) {
  std::cerr << "schedule has " << s.codewords.size() << " codewords and " << s.total_terms()
            << " terms; expected lambda=" << s.constants.lambda << "\n";
}

int run_schedule(const Options& opt) {
  const auto inst = build_instance(opt);
  auto j = instance_json(inst);
  bool verified = true;
  std::optional<VerificationReport> report;
  if (opt.verify) {
    report = verify_instantaneous_decodability(inst.schedule, inst.layout);
    verified = report->decodable && report->coverage_ok;
    j["verification"] = verification_to_json(*report);
  }

  if (resolved_format(opt, "json") == "csv") {
    CsvWriter csv({"codeword", "user", "packet"});
    for (std::size_t c = 0; c < inst.schedule.codewords.size(); ++c) {
      for (const auto& s : inst.schedule.codewords[c].terms) {
        csv.add_row({std::to_string(c + 1), std::to_string(s.user), std::to_string(s.packet)});
      }
    }
    emit(opt, csv.str());
  } else {
    emit(opt, dump(j));
  }

  if (!inst.schedule.meets_length_invariants()) {
    warn_length(inst.schedule);
    return kExitSchedule;
  }
  if (!verified) {
    std::cerr << "verification failed with " << report->violations.size() << " violations\n";
    return kExitVerification;
  }
  return 0;
}

int run_verify(const Options& opt) {
  const auto inst = build_instance(opt);
  const auto report = verify_instantaneous_decodability(inst.schedule, inst.layout);
  Json j;
  j["schema"] = kSchemaVersion;
  j["K"] = opt.k;
  j["N"] = opt.n.value_or(opt.k);
  j["i"] = opt.i;
  if (inst.ccdn) j["L"] = inst.ccdn->access_degree;
  j["demand"] = inst.spec.describe();
  if (inst.spec.kind == DemandSpec::Kind::kRandom) j["seed"] = inst.spec.seed;
  j["codeword_count"] = inst.schedule.codewords.size();
  j["lambda"] = inst.schedule.constants.lambda;
  j["meets_length_invariants"] = inst.schedule.meets_length_invariants();
  j["verification"] = verification_to_json(report);

  if (resolved_format(opt, "json") == "csv") {
    CsvWriter csv({"codeword", "user", "packet", "kind", "other_user", "other_packet"});
    for (const auto& v : report.violations) {
      csv.add_row({v.codeword ? std::to_string(*v.codeword + 1) : "", std::to_string(v.term.user),
                   std::to_string(v.term.packet), to_string(v.kind),
                   v.other ? std::to_string(v.other->user) : "",
                   v.other ? std::to_string(v.other->packet) : ""});
    }
    emit(opt, csv.str());
  } else {
    emit(opt, dump(j));
  }

  if (!inst.schedule.meets_length_invariants()) {
    warn_length(inst.schedule);
    return kExitSchedule;
  }
  if (!report.decodable || !report.coverage_ok) {
    std::cerr << "verification failed with " << report.violations.size() << " violations\n";
    return kExitVerification;
  }
  return 0;
}

int run_simulate(const Options& opt) {
  const auto inst = build_instance(opt);
  const int n = opt.n.value_or(opt.k);
  const auto store = FileStore::random(n, opt.k, opt.bytes, opt.seed);
  auto report = simulate_end_to_end(inst.schedule.codewords, inst.layout, inst.demand, store);
  report.seed = opt.seed;

  Json j;
  j["schema"] = kSchemaVersion;
  j["K"] = opt.k;
  j["N"] = n;
  j["i"] = opt.i;
  if (inst.ccdn) j["L"] = inst.ccdn->access_degree;
  j["demand"] = inst.spec.describe();
  j["demand_vector"] = inst.demand.files;
  j["bytes_per_subpacket"] = opt.bytes;
  j["codeword_count"] = inst.schedule.codewords.size();
  j["rate"] = to_exact_string(inst.schedule.rate);
  j["simulation"] = simulation_to_json(report);

  if (resolved_format(opt, "json") == "csv") {
    CsvWriter csv({"user", "packet", "reason"});
    for (const auto& f : report.failures) {
      csv.add_row({std::to_string(f.user), std::to_string(f.packet), f.reason});
    }
    emit(opt, csv.str());
  } else {
    emit(opt, dump(j));
  }

  if (!report.success) {
    std::cerr << "simulation failed for " << report.failures.size() << " subpackets\n";
    return kExitVerification;
  }
  return 0;
}

int run_rate_curve(const Options& opt) {
  const auto rows = rate_curve(opt.k);
  if (resolved_format(opt, "json") == "csv") {
    emit(opt, rate_curve_csv(rows));
  } else {
    emit(opt, dump(rate_curve_json(opt.k, rows)));
  }
  return 0;
}

int run_ccdn_bound(const Options& opt) {
  if (!opt.l) throw InstanceError("ccdn-bound needs --L");
  const CcdnParams p{opt.n.value_or(opt.k), opt.k, *opt.l, 1};
  auto rows = ccdn_bound_rows(p, opt.grid);
  for (const auto& path : opt.overlays) {
    const auto slash = path.find_last_of('/');
    auto name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto extra = read_overlay_csv(path, "overlay:" + name);
    rows.insert(rows.end(), extra.begin(), extra.end());
  }
  if (resolved_format(opt, "json") == "csv") {
    emit(opt, bound_csv(rows));
  } else {
    emit(opt, dump(bound_json(p, rows)));
  }
  return 0;
}

int run_optimality_table(const Options& opt) {
  const auto rows = optimality_table(opt.k);
  const auto format = resolved_format(opt, "text");
  if (format == "csv") {
    emit(opt, optimality_csv(rows));
  } else if (format == "json") {
    emit(opt, dump(optimality_json(opt.k, rows)));
  } else {
    emit(opt, optimality_text(opt.k, rows));
  }
  return 0;
}

void add_instance_flags(CLI::App* cmd, Options& opt, bool with_access) {
  cmd->add_option("--K", opt.k, "number of users")->required();
  cmd->add_option("--N", opt.n, "number of files (default K)");
  cmd->add_option("--i", opt.i, "cache size in units of N/K files")->required();
  if (with_access) cmd->add_option("--L", opt.l, "caches each user can read (multi-access)");
  cmd->add_option("--demand", opt.demand, "identity, random, random:<seed> or a file list");
  cmd->add_option("--seed", opt.seed, "seed for random demands and file contents");
  cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded caching schedules with linear subpacketization"};
  app.require_subcommand(1);
  Options opt;

  auto* schedule = app.add_subcommand("schedule", "generate a delivery schedule");
  add_instance_flags(schedule, opt, true);
  schedule->add_flag("--verify", opt.verify, "run the decodability verifier");

  auto* verify = app.add_subcommand("verify", "generate and verify a schedule");
  add_instance_flags(verify, opt, true);

  auto* simulate = app.add_subcommand("simulate", "XOR round trip over random files");
  add_instance_flags(simulate, opt, true);
  simulate->add_option("--bytes", opt.bytes, "bytes per subpacket")->check(CLI::PositiveNumber);

  auto* curve = app.add_subcommand("rate-curve", "rate against memory for every i");
  curve->add_option("--K", opt.k, "number of users")->required();
  curve->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  curve->add_option("--out", opt.out, "output path (default stdout)");

  auto* bound = app.add_subcommand("ccdn-bound", "multi-access rate upper bound");
  bound->add_option("--K", opt.k, "number of users and caches")->required();
  bound->add_option("--N", opt.n, "number of files (default K)");
  bound->add_option("--L", opt.l, "caches each user can read")->required();
  bound->add_option("--grid", opt.grid, "evenly spaced samples on [0, 3N/K]")
      ->check(CLI::NonNegativeNumber);
  bound->add_option("--overlay", opt.overlays, "CSV of M,R points to include as a series");
  bound->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  bound->add_option("--out", opt.out, "output path (default stdout)");

  auto* table = app.add_subcommand("optimality-table", "compare against known optimal rates");
  table->add_option("--K", opt.k, "number of users")->required();
  table->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  table->add_option("--out", opt.out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (schedule->parsed()) return run_schedule(opt);
    if (verify->parsed()) return run_verify(opt);
    if (simulate->parsed()) return run_simulate(opt);
    if (curve->parsed()) return run_rate_curve(opt);
    if (bound->parsed()) return run_ccdn_bound(opt);
    if (table->parsed()) return run_optimality_table(opt);
  } catch (const ReplacementExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchedule;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInstance;
  }
  return 0;
}
