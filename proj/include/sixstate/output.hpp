#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "sixstate/config_table.hpp"
#include "sixstate/protocol.hpp"
#include "sixstate/pulse_log.hpp"
#include "sixstate/stats.hpp"

// Serialization of the library's result types into the CLI's JSON and CSV
// formats. All output is deterministic: no timestamps, sorted JSON keys,
// fixed float formatting.

namespace sixstate {

// Shortest round-trippable decimal representation of a double.
std::string format_double(double value);

nlohmann::json config_to_json(const SessionConfig& config);
nlohmann::json summary_to_json(const SiftSummary& summary);
// 18 cell values, row-major (rows H,V,D,A,R,L x columns HV,DA,RL).
nlohmann::json matrix_to_json(const CorrelationMatrix& matrix);
nlohmann::json benchmark_to_json(const BenchmarkReport& report);
nlohmann::json diagnostics_to_json(const IngestDiagnostics& diagnostics);
nlohmann::json config_table_to_json(std::span<const ConfigEntry> table);
nlohmann::json verification_to_json(const ConfigTableReport& report);

void write_summary_csv(std::ostream& out, const SiftSummary& summary);
void write_matrix_csv(std::ostream& out, const CorrelationMatrix& matrix);
void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report);
void write_diagnostics_csv(std::ostream& out,
                           const IngestDiagnostics& diagnostics);
void write_config_table_csv(std::ostream& out,
                            std::span<const ConfigEntry> table);
void write_verification_csv(std::ostream& out,
                            const ConfigTableReport& report);

}  // namespace sixstate
