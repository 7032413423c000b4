#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

#include "sixstate/config_table.hpp"
#include "sixstate/protocol.hpp"
#include "sixstate/stats.hpp"

// Pulse-log CSV ingestion, export, and replay back into records, summaries
// and correlation matrices. Schema (exact):
//   pulse_index,config_label,pd0,pd1
// one row per pulse, config_label in A..R, pd0/pd1 in {0,1}, UTF-8, LF line
// endings, no quoting.

namespace sixstate {

struct PulseLogRow {
  std::uint64_t pulse_index = 0;
  char config_label = '?';
  int detector_pd0 = 0;
  int detector_pd1 = 0;

  bool operator==(const PulseLogRow&) const = default;
};

struct IngestDiagnostics {
  std::uint64_t n_rows_read = 0;
  // Rows with zero or two detector clicks, excluded from the result.
  std::uint64_t n_dropped = 0;
};

struct IngestResult {
  std::vector<PulseLogRow> rows;
  IngestDiagnostics diagnostics;
};

// Throws DataError with a distinct kind for a missing file, a malformed
// header, a malformed row, non-binary detector fields, or an unknown label.
IngestResult ingest_pulse_log(const std::filesystem::path& path);

// Writes records in the pulse-log schema. Each record's (alice_state,
// bob_basis) pair is mapped back to its config label through the given
// interpretation, which must cover every pair that occurs.
void write_pulse_log(std::ostream& out, std::span<const PulseRecord> records,
                     std::span<const ConfigInterpretation> interpretation);

struct ReplayResult {
  std::vector<PulseRecord> records;
  SiftSummary summary;
  CorrelationMatrix matrix;
};

// Turns rows back into pulse records (alice state and bob basis from the
// label, bob bit from the detectors) and delegates to sift and
// correlation_matrix. Throws DataError(UnresolvedLabel) naming the first
// label that is unresolved or missing from the interpretation, and
// DataError(NoData) on an empty row list. Replayed records carry no
// eavesdropper fields, so n_compromised is zero here.
ReplayResult replay(std::span<const PulseLogRow> rows,
                    std::span<const ConfigInterpretation> interpretation);

// Replay with an intercept-resend eavesdropper injected in post-processing:
// each row gains a random Eve basis; when it matches Alice's the logged
// outcome stands, otherwise Eve's collapse and Bob's outcome are resampled
// from the exact conditional distribution. Statistically equivalent to
// running Eve in the loop, assuming the log came from an ideal channel.
ReplayResult replay_with_eve(std::span<const PulseLogRow> rows,
                             std::span<const ConfigInterpretation> interp,
                             ProtocolKind protocol, std::uint64_t seed);

}  // namespace sixstate
