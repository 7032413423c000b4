#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sixstate/polarization.hpp"

// The embedded wave-plate configuration table (18 labelled rows covering
// every state-basis combination), its interpretation into (Alice state,
// Bob basis) assignments, and the verification report over it.

namespace sixstate {

struct ConfigEntry {
  char label = '?';  // 'A'..'R'
  int alice_hwp1 = 0;
  int alice_hwp2 = 0;
  int alice_qwp = 0;
  int bob_hwp1 = 0;
  int bob_hwp2 = 0;
  int bob_qwp = 0;
  int alice_bit = 0;
  double alice_angle_deg = 0.0;
  double bob_angle_deg = 0.0;

  bool operator==(const ConfigEntry&) const = default;
};

// The 18 rows, verbatim.
const std::array<ConfigEntry, 18>& embedded_config_table();

struct ConfigInterpretation {
  char label = '?';
  bool unresolved = false;
  PolState alice_state = PolState::H;  // valid only when !unresolved
  Basis bob_basis = Basis::HV;         // valid only when !unresolved
};

// Interpretation rule. The angle columns are authoritative for rotation;
// the QWP flags toggle fixed-axis quarter-wave elements:
//   Alice: state = classify( [qwp_matrix(45) if alice_qwp] *
//                            hwp_matrix(alice_angle / 2) * |H> )
//   Bob:   qwp flag set -> RL; otherwise angle 0 -> HV, angle 45 -> DA.
// Anything that classifies to no named state (or no basis) comes back with
// unresolved = true rather than an error.
ConfigInterpretation interpret_config(const ConfigEntry& entry);

std::vector<ConfigInterpretation> interpret_table(
    std::span<const ConfigEntry> table);

// Canonical analyzer train realizing a measurement basis in front of an
// H/V beam splitter: the basis's bit-0 state maps to the PD0 port with
// probability 1. HV uses hwp(0); DA uses hwp(22.5); RL uses
// hwp(-22.5) * qwp(0), the quarter-wave plate sitting first in the path.
JonesMatrix analyzer_train(Basis b);

struct ConfigVerification {
  char label = '?';
  bool resolved = false;
  std::optional<PolState> alice_state;
  std::optional<Basis> bob_basis;
  // Derived bit_of(alice_state) equals the printed alice_bit column.
  bool bit_consistent = false;
};

struct ConfigTableReport {
  std::vector<ConfigVerification> rows;
  int n_unresolved = 0;
  int n_bit_mismatches = 0;
};

// Runs interpret_config over every row and reports mismatches and
// unresolved rows without failing.
ConfigTableReport verify_config_table(std::span<const ConfigEntry> table);
ConfigTableReport verify_config_table();  // over the embedded table

// Reads an external override table. Schema (exact header):
//   label,a_hwp1,a_hwp2,a_qwp,b_hwp1,b_hwp2,b_qwp,alice_bit,alice_angle,bob_angle
// Throws DataError on missing file, malformed header/rows, labels outside
// A..R, or duplicate labels.
std::vector<ConfigEntry> load_config_table_csv(
    const std::filesystem::path& path);

}  // namespace sixstate
