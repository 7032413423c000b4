#include "sixstate/pulse_log.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <string>

#include "sixstate/errors.hpp"
#include "sixstate/rng.hpp"

namespace sixstate {

namespace {

constexpr std::string_view kHeader = "pulse_index,config_label,pd0,pd1";

[[noreturn]] void fail(DataError::Kind kind, const std::string& msg) {
  throw DataError(kind, msg);
}

// Per-label lookup; empty slots stay unresolved.
std::array<std::optional<ConfigInterpretation>, 26> label_index(
    std::span<const ConfigInterpretation> interpretation) {
  std::array<std::optional<ConfigInterpretation>, 26> index;
  for (const ConfigInterpretation& interp : interpretation) {
    if (interp.label >= 'A' && interp.label <= 'R') {
      index[interp.label - 'A'] = interp;
    }
  }
  return index;
}

const ConfigInterpretation& resolve_label(
    const std::array<std::optional<ConfigInterpretation>, 26>& index,
    char label) {
  const auto& slot = index[label - 'A'];
  if (!slot || slot->unresolved) {
    fail(DataError::Kind::UnresolvedLabel,
         std::string("replay: config label '") + label +
             "' has no resolved interpretation");
  }
  return *slot;
}

PulseRecord row_to_record(const PulseLogRow& row,
                          const ConfigInterpretation& interp) {
  PulseRecord rec;
  rec.index = row.pulse_index;
  rec.alice_state = interp.alice_state;
  rec.alice_basis = basis_of(interp.alice_state);
  rec.alice_bit = bit_of(interp.alice_state);
  rec.bob_basis = interp.bob_basis;
  rec.bob_bit = row.detector_pd1 == 1 ? 1 : 0;
  rec.detector = rec.bob_bit == 0 ? Detector::PD0 : Detector::PD1;
  return rec;
}

ReplayResult finalize(std::vector<PulseRecord> records) {
  ReplayResult out;
  out.records = std::move(records);
  out.summary = sift(out.records);
  out.matrix = correlation_matrix(out.records);
  return out;
}

}  // namespace

IngestResult ingest_pulse_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(DataError::Kind::MissingFile,
         "pulse log: cannot open " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    fail(DataError::Kind::MalformedHeader,
         "pulse log: empty file " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    fail(DataError::Kind::MalformedHeader,
         "pulse log: unexpected header '" + line + "'");
  }

  IngestResult result;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string context = "line " + std::to_string(line_no);

    std::array<std::string, 4> fields;
    std::size_t field = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (field >= 4) {
          fail(DataError::Kind::MalformedRow,
               "pulse log: " + context + " has more than 4 fields");
        }
        fields[field++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (field != 4) {
      fail(DataError::Kind::MalformedRow,
           "pulse log: " + context + " has " + std::to_string(field) +
               " fields, expected 4");
    }

    PulseLogRow row;
    {
      const auto* begin = fields[0].data();
      const auto* end = begin + fields[0].size();
      const auto [ptr, ec] = std::from_chars(begin, end, row.pulse_index);
      if (ec != std::errc{} || ptr != end) {
        fail(DataError::Kind::MalformedRow,
             "pulse log: " + context + " pulse_index '" + fields[0] +
                 "' is not a non-negative integer");
      }
    }
    if (fields[1].size() != 1 || fields[1][0] < 'A' || fields[1][0] > 'R') {
      fail(DataError::Kind::UnknownLabel,
           "pulse log: " + context + " config_label '" + fields[1] +
               "' is outside A..R");
    }
    row.config_label = fields[1][0];
    for (int d = 0; d < 2; ++d) {
      const std::string& f = fields[2 + d];
      if (f != "0" && f != "1") {
        fail(DataError::Kind::NonBinaryDetector,
             "pulse log: " + context + " detector field '" + f +
                 "' is not 0 or 1");
      }
      (d == 0 ? row.detector_pd0 : row.detector_pd1) = f == "1" ? 1 : 0;
    }

    ++result.diagnostics.n_rows_read;
    if (row.detector_pd0 + row.detector_pd1 != 1) {
      ++result.diagnostics.n_dropped;
      continue;
    }
    result.rows.push_back(row);
  }
  return result;
}

void write_pulse_log(std::ostream& out, std::span<const PulseRecord> records,
                     std::span<const ConfigInterpretation> interpretation) {
  // Invert the interpretation: (state, basis) -> label.
  char label_of[6][3];
  for (auto& row : label_of) {
    for (char& c : row) c = 0;
  }
  for (const ConfigInterpretation& interp : interpretation) {
    if (interp.unresolved) continue;
    label_of[static_cast<int>(interp.alice_state)]
            [static_cast<int>(interp.bob_basis)] = interp.label;
  }

  out << kHeader << '\n';
  for (const PulseRecord& rec : records) {
    const char label = label_of[static_cast<int>(rec.alice_state)]
                               [static_cast<int>(rec.bob_basis)];
    if (label == 0) {
      fail(DataError::Kind::UnresolvedLabel,
           std::string("pulse log: no label covers state ") +
               std::string(to_string(rec.alice_state)) + " with basis " +
               std::string(to_string(rec.bob_basis)));
    }
    out << rec.index << ',' << label << ',' << (rec.bob_bit == 0 ? "1,0" : "0,1")
        << '\n';
  }
}

ReplayResult replay(std::span<const PulseLogRow> rows,
                    std::span<const ConfigInterpretation> interpretation) {
  if (rows.empty()) {
    fail(DataError::Kind::NoData, "replay: empty row list");
  }
  const auto index = label_index(interpretation);

  std::vector<PulseRecord> records;
  records.reserve(rows.size());
  for (const PulseLogRow& row : rows) {
    records.push_back(row_to_record(row, resolve_label(index, row.config_label)));
  }
  return finalize(std::move(records));
}

ReplayResult replay_with_eve(std::span<const PulseLogRow> rows,
                             std::span<const ConfigInterpretation> interp,
                             ProtocolKind protocol, std::uint64_t seed) {
  if (rows.empty()) {
    fail(DataError::Kind::NoData, "replay: empty row list");
  }
  const auto index = label_index(interp);
  const auto bases = protocol_bases(protocol);

  std::vector<PulseRecord> records;
  records.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    PulseRecord rec = row_to_record(rows[i], resolve_label(index, rows[i].config_label));
    RandomStream rng(seed, i);

    const Basis eve_basis =
        bases[rng.pick(static_cast<std::uint32_t>(bases.size()))];
    rec.eve_basis = eve_basis;
    if (eve_basis == rec.alice_basis) {
      // Eve's result is perfectly correlated and her resend is the original
      // state, so the logged outcome remains valid.
      rec.eve_bit = rec.alice_bit;
    } else {
      const MeasureResult eve =
          measure_in_basis(state_of(rec.alice_state), eve_basis, rng);
      rec.eve_bit = eve.bit;
      const MeasureResult bob =
          measure_in_basis(eve.post_state, rec.bob_basis, rng);
      rec.bob_bit = bob.bit;
      rec.detector = bob.bit == 0 ? Detector::PD0 : Detector::PD1;
    }
    records.push_back(rec);
  }
  return finalize(std::move(records));
}

}  // namespace sixstate
