#include "sixstate/protocol.hpp"

#include <stdexcept>
#include <thread>

#include "sixstate/errors.hpp"

namespace sixstate {

namespace {

constexpr std::array<Basis, 2> kBB84Bases{Basis::HV, Basis::DA};

PulseRecord simulate_pulse(std::uint64_t index, const SessionConfig& config) {
  RandomStream rng(config.seed, index);

  PulseRecord rec;
  rec.index = index;

  const AlicePreparation prep = alice_prepare(config.protocol, rng);
  rec.alice_bit = prep.bit;
  rec.alice_basis = prep.basis;
  rec.alice_state = prep.state_name;

  JonesVector in_flight = channel_apply(prep.state, config.noise, rng);

  if (config.attack == AttackModel::InterceptResend) {
    const EveResult eve = eve_intercept_resend(in_flight, config.protocol, rng);
    rec.eve_basis = eve.basis;
    rec.eve_bit = eve.bit;
    in_flight = eve.resent;
  }

  const BobResult bob = bob_measure(in_flight, config.protocol, rng);
  rec.bob_basis = bob.basis;
  rec.bob_bit = bob.bit;
  rec.detector = bob.detector;
  return rec;
}

}  // namespace

std::span<const Basis> protocol_bases(ProtocolKind protocol) {
  if (protocol == ProtocolKind::BB84) {
    return {kBB84Bases.data(), kBB84Bases.size()};
  }
  return {kAllBases.data(), kAllBases.size()};
}

std::string_view to_string(ProtocolKind protocol) {
  return protocol == ProtocolKind::BB84 ? "bb84" : "six-state";
}

std::string_view to_string(AttackModel attack) {
  return attack == AttackModel::InterceptResend ? "intercept-resend" : "none";
}

AlicePreparation alice_prepare(ProtocolKind protocol, RandomStream& rng) {
  const auto bases = protocol_bases(protocol);
  const int bit = static_cast<int>(rng.pick(2));
  const Basis basis = bases[rng.pick(static_cast<std::uint32_t>(bases.size()))];
  const PolState name = state_name(basis, bit);
  return {bit, basis, name, state_of(name)};
}

JonesVector channel_apply(const JonesVector& state, const NoiseModel& noise,
                          RandomStream& rng) {
  if (noise.flip_prob > 0.0 && rng.bernoulli(noise.flip_prob)) {
    return state_of(kAllStates[rng.pick(6)]);
  }
  if (noise.misalign_deg != 0.0) {
    return apply(hwp_matrix(noise.misalign_deg), state);
  }
  return state;
}

EveResult eve_intercept_resend(const JonesVector& state, ProtocolKind protocol,
                               RandomStream& rng) {
  const auto bases = protocol_bases(protocol);
  const Basis basis = bases[rng.pick(static_cast<std::uint32_t>(bases.size()))];
  const MeasureResult m = measure_in_basis(state, basis, rng);
  return {basis, m.bit, m.post_state};
}

BobResult bob_measure(const JonesVector& state, ProtocolKind protocol,
                      RandomStream& rng) {
  const auto bases = protocol_bases(protocol);
  const Basis basis = bases[rng.pick(static_cast<std::uint32_t>(bases.size()))];
  const MeasureResult m = measure_in_basis(state, basis, rng);
  return {basis, m.bit, m.bit == 0 ? Detector::PD0 : Detector::PD1};
}

std::vector<PulseRecord> run_session(const SessionConfig& config) {
  if (config.n_pulses == 0) {
    throw std::invalid_argument("run_session: n_pulses must be >= 1");
  }

  std::vector<PulseRecord> records(config.n_pulses);

  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.n_threads,
                                      static_cast<unsigned>(config.n_pulses)));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < config.n_pulses; ++i) {
      records[i] = simulate_pulse(i, config);
    }
    return records;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (config.n_pulses + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(config.n_pulses, lo + chunk);
    pool.emplace_back([&records, &config, lo, hi] {
      for (std::uint64_t i = lo; i < hi; ++i) {
        records[i] = simulate_pulse(i, config);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return records;
}

SiftSummary sift(std::span<const PulseRecord> records) {
  if (records.empty()) {
    throw DataError(DataError::Kind::NoData, "sift: empty record list");
  }

  SiftSummary s;
  s.n_total = records.size();
  for (const PulseRecord& rec : records) {
    if (rec.alice_basis != rec.bob_basis) continue;
    ++s.n_sifted;
    if (rec.bob_bit == rec.alice_bit) {
      ++s.n_undisturbed;
    } else {
      ++s.n_errors_sifted;
    }
    if (rec.eve_basis && *rec.eve_basis == rec.alice_basis) {
      ++s.n_compromised;
    }
  }

  const double n = static_cast<double>(s.n_total);
  s.sift_fraction = static_cast<double>(s.n_sifted) / n;
  s.undisturbed_fraction = static_cast<double>(s.n_undisturbed) / n;
  s.compromised_fraction = static_cast<double>(s.n_compromised) / n;
  if (s.n_sifted > 0) {
    s.qber = static_cast<double>(s.n_errors_sifted) /
             static_cast<double>(s.n_sifted);
  }
  return s;
}

TheoreticalBenchmarks theoretical_benchmarks(ProtocolKind protocol,
                                             AttackModel attack) {
  const bool ir = attack == AttackModel::InterceptResend;
  if (protocol == ProtocolKind::BB84) {
    return ir ? TheoreticalBenchmarks{1.0 / 2.0, 3.0 / 8.0, 1.0 / 4.0,
                                      1.0 / 4.0}
              : TheoreticalBenchmarks{1.0 / 2.0, 1.0 / 2.0, 0.0, 0.0};
  }
  return ir ? TheoreticalBenchmarks{1.0 / 3.0, 2.0 / 9.0, 1.0 / 9.0, 1.0 / 3.0}
            : TheoreticalBenchmarks{1.0 / 3.0, 1.0 / 3.0, 0.0, 0.0};
}

}  // namespace sixstate
