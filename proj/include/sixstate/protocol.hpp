#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sixstate/polarization.hpp"
#include "sixstate/rng.hpp"

// Session engine for the six-state protocol and its two-basis (BB84)
// comparison mode: preparation, channel, optional intercept-resend
// eavesdropper, measurement, pulse logging, and sifting.

namespace sixstate {

enum class ProtocolKind : std::uint8_t { SixState, BB84 };
enum class AttackModel : std::uint8_t { None, InterceptResend };
enum class Detector : std::uint8_t { PD0 = 0, PD1 = 1 };

// SixState draws from {HV, DA, RL}; BB84 from {HV, DA}.
std::span<const Basis> protocol_bases(ProtocolKind protocol);

std::string_view to_string(ProtocolKind protocol);
std::string_view to_string(AttackModel attack);

struct NoiseModel {
  // Probability a pulse's state is replaced by a uniformly random one of
  // the six named states.
  double flip_prob = 0.0;
  // Deterministic extra HWP-equivalent rotation applied in the channel.
  double misalign_deg = 0.0;

  bool ideal() const { return flip_prob == 0.0 && misalign_deg == 0.0; }
};

struct SessionConfig {
  std::uint64_t n_pulses = 2363;
  std::uint64_t seed = 0;
  ProtocolKind protocol = ProtocolKind::SixState;
  AttackModel attack = AttackModel::None;
  NoiseModel noise{};
  // Worker threads for run_session. The per-pulse substream rule makes the
  // output independent of this value.
  unsigned n_threads = 1;
};

struct PulseRecord {
  std::uint64_t index = 0;
  int alice_bit = 0;
  Basis alice_basis = Basis::HV;
  PolState alice_state = PolState::H;  // state_name(alice_basis, alice_bit)
  std::optional<Basis> eve_basis;      // present iff intercept-resend
  std::optional<int> eve_bit;
  Basis bob_basis = Basis::HV;
  int bob_bit = 0;
  Detector detector = Detector::PD0;  // PD0 iff bob_bit == 0

  bool operator==(const PulseRecord&) const = default;
};

struct SiftSummary {
  std::uint64_t n_total = 0;
  std::uint64_t n_sifted = 0;         // alice_basis == bob_basis
  std::uint64_t n_errors_sifted = 0;  // sifted and bob_bit != alice_bit
  std::uint64_t n_undisturbed = 0;    // sifted and bob_bit == alice_bit
  std::uint64_t n_compromised = 0;    // sifted and eve_basis == alice_basis
  double sift_fraction = 0.0;
  std::optional<double> qber;  // empty when n_sifted == 0 (no data, not 0)
  double undisturbed_fraction = 0.0;
  double compromised_fraction = 0.0;

  bool operator==(const SiftSummary&) const = default;
};

struct AlicePreparation {
  int bit;
  Basis basis;
  PolState state_name;
  JonesVector state;
};

// Draw order: bit, then basis.
AlicePreparation alice_prepare(ProtocolKind protocol, RandomStream& rng);

// With probability flip_prob the state is replaced by a uniformly random
// named state; otherwise the misalignment rotation (identity at 0) applies.
JonesVector channel_apply(const JonesVector& state, const NoiseModel& noise,
                          RandomStream& rng);

struct EveResult {
  Basis basis;
  int bit;
  JonesVector resent;  // the collapsed eigenstate Eve observed
};

// Eve measures in a basis drawn uniformly from the protocol's basis set and
// resends her measurement outcome.
EveResult eve_intercept_resend(const JonesVector& state, ProtocolKind protocol,
                               RandomStream& rng);

struct BobResult {
  Basis basis;
  int bit;
  Detector detector;
};

BobResult bob_measure(const JonesVector& state, ProtocolKind protocol,
                      RandomStream& rng);

// Runs the full pipeline per pulse: prepare -> channel -> (eve) -> measure.
// Channel noise is applied once, before Eve; the Eve->Bob segment is
// noiseless. Pulse i draws from RandomStream(seed, i) in a fixed order, so
// identical configs give bit-identical records for any thread count.
// Throws std::invalid_argument when n_pulses == 0.
std::vector<PulseRecord> run_session(const SessionConfig& config);

// Basis comparison. Throws DataError(NoData) on an empty record list.
SiftSummary sift(std::span<const PulseRecord> records);

struct TheoreticalBenchmarks {
  double sift_fraction;
  double undisturbed_fraction;
  double compromised_fraction;
  double qber;
};

// Exact expected fractions for the ideal channel:
//   SixState/None -> {1/3, 1/3, 0, 0}     SixState/IR -> {1/3, 2/9, 1/9, 1/3}
//   BB84/None     -> {1/2, 1/2, 0, 0}     BB84/IR     -> {1/2, 3/8, 1/4, 1/4}
TheoreticalBenchmarks theoretical_benchmarks(ProtocolKind protocol,
                                             AttackModel attack);

}  // namespace sixstate
