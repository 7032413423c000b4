#include "sixstate/output.hpp"

#include <cstdio>
#include <cstdlib>

namespace sixstate {

namespace {

const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_double(double value) {
  char buf[64];
  // max_digits10 round-trips; trim to the shortest form that still does.
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

nlohmann::json config_to_json(const SessionConfig& config) {
  return {
      {"pulses", config.n_pulses},
      {"seed", config.seed},
      {"protocol", std::string(to_string(config.protocol))},
      {"eve", std::string(to_string(config.attack))},
      {"flip_prob", config.noise.flip_prob},
      {"misalign_deg", config.noise.misalign_deg},
  };
}

nlohmann::json summary_to_json(const SiftSummary& summary) {
  nlohmann::json j{
      {"n_total", summary.n_total},
      {"n_sifted", summary.n_sifted},
      {"n_errors_sifted", summary.n_errors_sifted},
      {"n_undisturbed", summary.n_undisturbed},
      {"n_compromised", summary.n_compromised},
      {"sift_fraction", summary.sift_fraction},
      {"undisturbed_fraction", summary.undisturbed_fraction},
      {"compromised_fraction", summary.compromised_fraction},
  };
  if (summary.qber) {
    j["qber"] = *summary.qber;
  } else {
    j["qber"] = nullptr;  // undefined, not 0: no sifted bits
  }
  return j;
}

nlohmann::json matrix_to_json(const CorrelationMatrix& matrix) {
  nlohmann::json cells = nlohmann::json::array();
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 3; ++c) cells.push_back(matrix.cells[r][c]);
  }
  return cells;
}

nlohmann::json benchmark_to_json(const BenchmarkReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const BenchmarkEntry& e : report.entries) {
    entries.push_back({
        {"name", e.name},
        {"measured", e.measured},
        {"expected", e.expected},
        {"stderr", e.std_error},
        {"z", e.z},
        {"pass", e.pass},
    });
  }
  return {{"z_max", report.z_max}, {"pass", report.pass},
          {"entries", entries}};
}

nlohmann::json diagnostics_to_json(const IngestDiagnostics& diagnostics) {
  return {{"rows_read", diagnostics.n_rows_read},
          {"dropped", diagnostics.n_dropped}};
}

nlohmann::json config_table_to_json(std::span<const ConfigEntry> table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const ConfigEntry& e : table) {
    entries.push_back({
        {"label", std::string(1, e.label)},
        {"a_hwp1", e.alice_hwp1},
        {"a_hwp2", e.alice_hwp2},
        {"a_qwp", e.alice_qwp},
        {"b_hwp1", e.bob_hwp1},
        {"b_hwp2", e.bob_hwp2},
        {"b_qwp", e.bob_qwp},
        {"alice_bit", e.alice_bit},
        {"alice_angle", e.alice_angle_deg},
        {"bob_angle", e.bob_angle_deg},
    });
  }
  return entries;
}

nlohmann::json verification_to_json(const ConfigTableReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ConfigVerification& row : report.rows) {
    nlohmann::json j{{"label", std::string(1, row.label)},
                     {"resolved", row.resolved}};
    if (row.resolved) {
      j["alice_state"] = std::string(to_string(*row.alice_state));
      j["bob_basis"] = std::string(to_string(*row.bob_basis));
      j["bit_consistent"] = row.bit_consistent;
    }
    rows.push_back(j);
  }
  return {{"rows", rows},
          {"n_unresolved", report.n_unresolved},
          {"n_bit_mismatches", report.n_bit_mismatches}};
}

void write_summary_csv(std::ostream& out, const SiftSummary& summary) {
  out << "metric,value\n";
  out << "n_total," << summary.n_total << '\n';
  out << "n_sifted," << summary.n_sifted << '\n';
  out << "n_errors_sifted," << summary.n_errors_sifted << '\n';
  out << "n_undisturbed," << summary.n_undisturbed << '\n';
  out << "n_compromised," << summary.n_compromised << '\n';
  out << "sift_fraction," << format_double(summary.sift_fraction) << '\n';
  out << "qber,"
      << (summary.qber ? format_double(*summary.qber) : std::string("undefined"))
      << '\n';
  out << "undisturbed_fraction," << format_double(summary.undisturbed_fraction)
      << '\n';
  out << "compromised_fraction," << format_double(summary.compromised_fraction)
      << '\n';
}

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& matrix) {
  out << "state,HV,DA,RL\n";
  for (PolState s : kAllStates) {
    const int r = static_cast<int>(s);
    out << to_string(s);
    for (int c = 0; c < 3; ++c) {
      out << ',' << format_double(matrix.cells[r][c]);
    }
    out << '\n';
  }
}

void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "name,measured,expected,stderr,z,pass\n";
  for (const BenchmarkEntry& e : report.entries) {
    out << e.name << ',' << format_double(e.measured) << ','
        << format_double(e.expected) << ',' << format_double(e.std_error)
        << ',' << format_double(e.z) << ',' << bool_str(e.pass) << '\n';
  }
}

void write_diagnostics_csv(std::ostream& out,
                           const IngestDiagnostics& diagnostics) {
  out << "metric,value\n";
  out << "rows_read," << diagnostics.n_rows_read << '\n';
  out << "dropped," << diagnostics.n_dropped << '\n';
}

void write_config_table_csv(std::ostream& out,
                            std::span<const ConfigEntry> table) {
  out << "label,a_hwp1,a_hwp2,a_qwp,b_hwp1,b_hwp2,b_qwp,alice_bit,"
         "alice_angle,bob_angle\n";
  for (const ConfigEntry& e : table) {
    out << e.label << ',' << e.alice_hwp1 << ',' << e.alice_hwp2 << ','
        << e.alice_qwp << ',' << e.bob_hwp1 << ',' << e.bob_hwp2 << ','
        << e.bob_qwp << ',' << e.alice_bit << ','
        << format_double(e.alice_angle_deg) << ','
        << format_double(e.bob_angle_deg) << '\n';
  }
}

void write_verification_csv(std::ostream& out,
                            const ConfigTableReport& report) {
  out << "label,resolved,alice_state,bob_basis,bit_consistent\n";
  for (const ConfigVerification& row : report.rows) {
    out << row.label << ',' << bool_str(row.resolved) << ',';
    if (row.resolved) {
      out << to_string(*row.alice_state) << ',' << to_string(*row.bob_basis)
          << ',' << bool_str(row.bit_consistent);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace sixstate
