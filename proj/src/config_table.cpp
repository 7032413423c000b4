#include "sixstate/config_table.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "sixstate/errors.hpp"

namespace sixstate {

namespace {

constexpr double kAngleTol = 1e-9;

// clang-format off
constexpr std::array<ConfigEntry, 18> kConfigTable{{
    //      aH1 aH2 aQ  bH1 bH2 bQ  bit  aAngle bAngle
    {'A',   0,  1,  0,  0,  0,  1,  0,  -45.0,  0.0},
    {'B',   1,  1,  0,  0,  0,  0,  1,   45.0,  0.0},
    {'C',   0,  0,  1,  0,  1,  0,  0,    0.0, 45.0},
    {'D',   1,  0,  0,  0,  1,  0,  1,   90.0, 45.0},
    {'E',   1,  0,  1,  0,  1,  0,  1,   90.0, 45.0},
    {'F',   0,  0,  0,  0,  0,  0,  0,    0.0,  0.0},
    {'G',   1,  0,  1,  0,  0,  1,  1,   90.0,  0.0},
    {'H',   1,  0,  1,  0,  0,  0,  1,   90.0,  0.0},
    {'I',   0,  0,  0,  0,  0,  1,  0,    0.0,  0.0},
    {'J',   1,  0,  0,  0,  0,  0,  1,   90.0,  0.0},
    {'K',   1,  1,  0,  0,  1,  0,  1,   45.0, 45.0},
    {'L',   0,  0,  0,  0,  1,  0,  0,    0.0, 45.0},
    {'M',   0,  1,  0,  0,  1,  0,  0,  -45.0, 45.0},
    {'N',   1,  1,  0,  0,  0,  1,  1,   45.0,  0.0},
    {'O',   1,  0,  0,  0,  0,  1,  1,   90.0,  0.0},
    {'P',   0,  1,  0,  0,  0,  0,  0,  -45.0,  0.0},
    {'Q',   0,  0,  1,  0,  0,  0,  0,    0.0,  0.0},
    {'R',   0,  0,  1,  0,  0,  1,  0,    0.0,  0.0},
}};
// clang-format on

bool near(double a, double b) { return std::abs(a - b) <= kAngleTol; }

[[noreturn]] void fail(DataError::Kind kind, const std::string& msg) {
  throw DataError(kind, msg);
}

int parse_binary_field(const std::string& field, const std::string& context) {
  if (field == "0") return 0;
  if (field == "1") return 1;
  fail(DataError::Kind::MalformedRow,
       "config table: field '" + field + "' in " + context +
           " is not 0 or 1");
}

double parse_angle_field(const std::string& field,
                         const std::string& context) {
  double value = 0.0;
  const auto* begin = field.data();
  const auto* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail(DataError::Kind::MalformedRow,
         "config table: angle '" + field + "' in " + context +
             " is not a number");
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

const std::array<ConfigEntry, 18>& embedded_config_table() {
  return kConfigTable;
}

ConfigInterpretation interpret_config(const ConfigEntry& entry) {
  ConfigInterpretation out;
  out.label = entry.label;

  JonesVector prepared =
      apply(hwp_matrix(entry.alice_angle_deg / 2.0), state_of(PolState::H));
  if (entry.alice_qwp != 0) {
    prepared = apply(qwp_matrix(45.0), prepared);
  }
  const std::optional<PolState> alice = classify_state(prepared);

  std::optional<Basis> bob;
  if (entry.bob_qwp != 0) {
    bob = Basis::RL;
  } else if (near(entry.bob_angle_deg, 0.0)) {
    bob = Basis::HV;
  } else if (near(entry.bob_angle_deg, 45.0)) {
    bob = Basis::DA;
  }

  if (!alice || !bob) {
    out.unresolved = true;
    return out;
  }
  out.alice_state = *alice;
  out.bob_basis = *bob;
  return out;
}

std::vector<ConfigInterpretation> interpret_table(
    std::span<const ConfigEntry> table) {
  std::vector<ConfigInterpretation> out;
  out.reserve(table.size());
  for (const ConfigEntry& entry : table) {
    out.push_back(interpret_config(entry));
  }
  return out;
}

JonesMatrix analyzer_train(Basis b) {
  switch (b) {
    case Basis::HV: return hwp_matrix(0.0);
    case Basis::DA: return hwp_matrix(22.5);
    case Basis::RL: return hwp_matrix(-22.5) * qwp_matrix(0.0);
  }
  return identity_matrix();
}

ConfigTableReport verify_config_table(std::span<const ConfigEntry> table) {
  ConfigTableReport report;
  report.rows.reserve(table.size());
  for (const ConfigEntry& entry : table) {
    const ConfigInterpretation interp = interpret_config(entry);
    ConfigVerification row;
    row.label = entry.label;
    row.resolved = !interp.unresolved;
    if (row.resolved) {
      row.alice_state = interp.alice_state;
      row.bob_basis = interp.bob_basis;
      row.bit_consistent = bit_of(interp.alice_state) == entry.alice_bit;
      if (!row.bit_consistent) ++report.n_bit_mismatches;
    } else {
      ++report.n_unresolved;
    }
    report.rows.push_back(row);
  }
  return report;
}

ConfigTableReport verify_config_table() {
  const auto& table = embedded_config_table();
  return verify_config_table(std::span<const ConfigEntry>(table));
}

std::vector<ConfigEntry> load_config_table_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(DataError::Kind::MissingFile,
         "config table: cannot open " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    fail(DataError::Kind::MalformedHeader,
         "config table: empty file " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line !=
      "label,a_hwp1,a_hwp2,a_qwp,b_hwp1,b_hwp2,b_qwp,alice_bit,alice_angle,"
      "bob_angle") {
    fail(DataError::Kind::MalformedHeader,
         "config table: unexpected header '" + line + "'");
  }

  std::vector<ConfigEntry> table;
  bool seen[26] = {};
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string context = "line " + std::to_string(line_no);
    const auto fields = split_csv_line(line);
    if (fields.size() != 10) {
      fail(DataError::Kind::MalformedRow,
           "config table: " + context + " has " +
               std::to_string(fields.size()) + " fields, expected 10");
    }
    if (fields[0].size() != 1 || fields[0][0] < 'A' || fields[0][0] > 'R') {
      fail(DataError::Kind::UnknownLabel,
           "config table: " + context + " label '" + fields[0] +
               "' is outside A..R");
    }
    ConfigEntry entry;
    entry.label = fields[0][0];
    if (seen[entry.label - 'A']) {
      fail(DataError::Kind::DuplicateLabel,
           std::string("config table: duplicate label '") + entry.label +
               "'");
    }
    seen[entry.label - 'A'] = true;
    entry.alice_hwp1 = parse_binary_field(fields[1], context);
    entry.alice_hwp2 = parse_binary_field(fields[2], context);
    entry.alice_qwp = parse_binary_field(fields[3], context);
    entry.bob_hwp1 = parse_binary_field(fields[4], context);
    entry.bob_hwp2 = parse_binary_field(fields[5], context);
    entry.bob_qwp = parse_binary_field(fields[6], context);
    entry.alice_bit = parse_binary_field(fields[7], context);
    entry.alice_angle_deg = parse_angle_field(fields[8], context);
    entry.bob_angle_deg = parse_angle_field(fields[9], context);
    table.push_back(entry);
  }
  if (table.empty()) {
    fail(DataError::Kind::NoData, "config table: no rows in " + path.string());
  }
  return table;
}

}  // namespace sixstate
