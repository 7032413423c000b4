// Command-line front end: run protocol sessions, analyze pulse logs, and
// emit correlation matrices and benchmark reports as plot-ready CSV/JSON.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <span>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sixstate/config_table.hpp"
#include "sixstate/errors.hpp"
#include "sixstate/output.hpp"
#include "sixstate/protocol.hpp"
#include "sixstate/pulse_log.hpp"
#include "sixstate/stats.hpp"

namespace fs = std::filesystem;
using namespace sixstate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::uint64_t pulses = 2363;
  std::uint64_t seed = 0;
  std::string protocol = "six-state";
  std::string eve = "none";
  double flip_prob = 0.0;
  double misalign_deg = 0.0;
  std::string format = "json";
  std::string out_dir;
  std::string config_table_path;
  double z_max = 4.0;
};

ProtocolKind parse_protocol(const std::string& s) {
  return s == "bb84" ? ProtocolKind::BB84 : ProtocolKind::SixState;
}

AttackModel parse_attack(const std::string& s) {
  return s == "intercept-resend" ? AttackModel::InterceptResend
                                 : AttackModel::None;
}

SessionConfig session_config(const CommonFlags& flags) {
  SessionConfig config;
  config.n_pulses = flags.pulses;
  config.seed = flags.seed;
  config.protocol = parse_protocol(flags.protocol);
  config.attack = parse_attack(flags.eve);
  config.noise.flip_prob = flags.flip_prob;
  config.noise.misalign_deg = flags.misalign_deg;
  return config;
}

std::vector<ConfigEntry> active_table(const CommonFlags& flags) {
  if (!flags.config_table_path.empty()) {
    return load_config_table_csv(flags.config_table_path);
  }
  const auto& table = embedded_config_table();
  return {table.begin(), table.end()};
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError(DataError::Kind::MissingFile,
                    "cannot write " + path.string());
  }
  out << contents;
}

fs::path ensure_out_dir(const CommonFlags& flags) {
  const fs::path dir = flags.out_dir.empty() ? fs::path("out")
                                             : fs::path(flags.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::string csv_string(const auto& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

int cmd_simulate(const CommonFlags& flags) {
  const SessionConfig config = session_config(flags);
  const auto records = run_session(config);
  const SiftSummary summary = sift(records);
  const CorrelationMatrix matrix = correlation_matrix(records);
  const auto interpretation = interpret_table(active_table(flags));

  const fs::path dir = ensure_out_dir(flags);
  write_file(dir / "pulses.csv", csv_string([&](std::ostream& os) {
               write_pulse_log(os, records, interpretation);
             }));

  if (flags.format == "csv") {
    write_file(dir / "summary.csv", csv_string([&](std::ostream& os) {
                 write_summary_csv(os, summary);
               }));
    write_file(dir / "matrix.csv", csv_string([&](std::ostream& os) {
                 write_matrix_csv(os, matrix);
               }));
  } else {
    nlohmann::json doc{{"config", config_to_json(config)},
                       {"summary", summary_to_json(summary)},
                       {"matrix", matrix_to_json(matrix)}};
    write_file(dir / "summary.json", doc.dump(2) + "\n");
  }

  std::cout << "simulated " << records.size() << " pulses ("
            << to_string(config.protocol) << ", eve "
            << to_string(config.attack) << ") -> " << dir.string() << "\n";
  return kExitOk;
}

int cmd_analyze(const CommonFlags& flags, const std::string& log_path) {
  const IngestResult ingest = ingest_pulse_log(log_path);
  const auto interpretation = interpret_table(active_table(flags));

  const AttackModel attack = parse_attack(flags.eve);
  const ReplayResult result =
      attack == AttackModel::InterceptResend
          ? replay_with_eve(ingest.rows, interpretation,
                            parse_protocol(flags.protocol), flags.seed)
          : replay(ingest.rows, interpretation);

  const fs::path dir = ensure_out_dir(flags);
  if (flags.format == "csv") {
    write_file(dir / "summary.csv", csv_string([&](std::ostream& os) {
                 write_summary_csv(os, result.summary);
               }));
    write_file(dir / "matrix.csv", csv_string([&](std::ostream& os) {
                 write_matrix_csv(os, result.matrix);
               }));
    write_file(dir / "diagnostics.csv", csv_string([&](std::ostream& os) {
                 write_diagnostics_csv(os, ingest.diagnostics);
               }));
  } else {
    nlohmann::json doc{{"summary", summary_to_json(result.summary)},
                       {"matrix", matrix_to_json(result.matrix)},
                       {"diagnostics", diagnostics_to_json(ingest.diagnostics)}};
    write_file(dir / "analysis.json", doc.dump(2) + "\n");
  }

  std::cout << "analyzed " << result.records.size() << " pulses ("
            << ingest.diagnostics.n_dropped << " dropped) -> " << dir.string()
            << "\n";
  return kExitOk;
}

int cmd_benchmark(const CommonFlags& flags) {
  SessionConfig config = session_config(flags);

  BenchmarkReport reports[2];
  const AttackModel attacks[2] = {AttackModel::None,
                                  AttackModel::InterceptResend};
  bool all_pass = true;
  nlohmann::json docs = nlohmann::json::array();

  for (int i = 0; i < 2; ++i) {
    config.attack = attacks[i];
    const auto records = run_session(config);
    const SiftSummary summary = sift(records);
    const CorrelationMatrix matrix = correlation_matrix(records);
    reports[i] = compare_to_benchmarks(summary, matrix, config.protocol,
                                       config.attack, flags.z_max);
    all_pass = all_pass && reports[i].pass;

    std::cout << "# " << to_string(config.protocol) << " / eve "
              << to_string(config.attack) << "\n";
    for (const BenchmarkEntry& e : reports[i].entries) {
      std::cout << (e.pass ? "pass" : "FAIL") << "  " << e.name
                << "  measured=" << format_double(e.measured)
                << " expected=" << format_double(e.expected)
                << " z=" << format_double(e.z) << "\n";
    }
    docs.push_back({{"config", config_to_json(config)},
                    {"benchmark", benchmark_to_json(reports[i])}});
  }

  if (!flags.out_dir.empty()) {
    const fs::path dir = ensure_out_dir(flags);
    if (flags.format == "csv") {
      write_file(dir / "benchmark_no_attack.csv",
                 csv_string([&](std::ostream& os) {
                   write_benchmark_csv(os, reports[0]);
                 }));
      write_file(dir / "benchmark_intercept_resend.csv",
                 csv_string([&](std::ostream& os) {
                   write_benchmark_csv(os, reports[1]);
                 }));
    } else {
      write_file(dir / "benchmark.json",
                 nlohmann::json{{"runs", docs}}.dump(2) + "\n");
    }
  }

  std::cout << (all_pass ? "OVERALL pass" : "OVERALL FAIL") << "\n";
  return all_pass ? kExitOk : kExitError;
}

int cmd_table(const CommonFlags& flags) {
  const auto table = active_table(flags);
  const ConfigTableReport report =
      verify_config_table(std::span<const ConfigEntry>(table));

  if (flags.format == "json") {
    nlohmann::json doc{{"entries", config_table_to_json(table)},
                       {"verification", verification_to_json(report)}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }
  if (flags.format == "csv") {
    const fs::path dir = ensure_out_dir(flags);
    write_file(dir / "config_table.csv", csv_string([&](std::ostream& os) {
                 write_config_table_csv(os, table);
               }));
    write_file(dir / "verification.csv", csv_string([&](std::ostream& os) {
                 write_verification_csv(os, report);
               }));
    std::cout << "wrote config_table.csv and verification.csv -> "
              << dir.string() << "\n";
    return kExitOk;
  }

  std::cout << "label aH1 aH2 aQ bH1 bH2 bQ bit aAngle bAngle | state basis "
               "bit_ok\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const ConfigEntry& e = table[i];
    const ConfigVerification& v = report.rows[i];
    std::cout << e.label << "     " << e.alice_hwp1 << "   " << e.alice_hwp2
              << "   " << e.alice_qwp << "  " << e.bob_hwp1 << "   "
              << e.bob_hwp2 << "   " << e.bob_qwp << "  " << e.alice_bit
              << "   " << format_double(e.alice_angle_deg) << "\t"
              << format_double(e.bob_angle_deg) << "\t| ";
    if (v.resolved) {
      std::cout << to_string(*v.alice_state) << "     "
                << to_string(*v.bob_basis) << "    "
                << (v.bit_consistent ? "yes" : "no");
    } else {
      std::cout << "unresolved";
    }
    std::cout << "\n";
  }
  std::cout << report.rows.size() << " rows, " << report.n_unresolved
            << " unresolved, " << report.n_bit_mismatches
            << " bit mismatches\n";
  return kExitOk;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_session,
                      bool with_zmax) {
  if (with_session) {
    cmd->add_option("--pulses", flags.pulses, "Number of pulses")
        ->check(CLI::Range(std::uint64_t{1},
                           std::numeric_limits<std::uint64_t>::max()));
    cmd->add_option("--flip-prob", flags.flip_prob,
                    "Channel flip probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--misalign-deg", flags.misalign_deg,
                    "Channel misalignment (HWP-equivalent degrees)");
  }
  cmd->add_option("--seed", flags.seed, "Random seed (default 0)");
  cmd->add_option("--protocol", flags.protocol, "Protocol")
      ->check(CLI::IsMember({"six-state", "bb84"}));
  cmd->add_option("--eve", flags.eve, "Eavesdropper model")
      ->check(CLI::IsMember({"none", "intercept-resend"}));
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--config-table", flags.config_table_path,
                  "Override configuration table (CSV)");
  if (with_zmax) {
    cmd->add_option("--z-max", flags.z_max, "Benchmark z threshold")
        ->check(CLI::PositiveNumber);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Six-state QKD protocol simulator and pulse-log analyzer"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string log_path;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run a session and write a pulse log plus summary");
  add_common_flags(simulate, flags, true, false);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Replay a pulse log into summary and correlation matrix");
  analyze->add_option("log", log_path, "Pulse log CSV")->required();
  add_common_flags(analyze, flags, false, false);

  CLI::App* benchmark = app.add_subcommand(
      "benchmark", "Run paired no-attack / intercept-resend sessions and "
                   "compare against theory");
  add_common_flags(benchmark, flags, true, true);

  CLI::App* table = app.add_subcommand(
      "table", "Print the wave-plate configuration table and its "
               "verification report");
  add_common_flags(table, flags, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(flags);
    if (analyze->parsed()) return cmd_analyze(flags, log_path);
    if (benchmark->parsed()) return cmd_benchmark(flags);
    if (table->parsed()) {
      // Without an explicit format the table prints as readable text.
      if (table->count("--format") == 0) flags.format = "text";
      return cmd_table(flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
