// Acceptance suite: runs every benchmark the simulator must satisfy and
// prints one pass/fail line per criterion. Exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sixstate/config_table.hpp"
#include "sixstate/polarization.hpp"
#include "sixstate/protocol.hpp"
#include "sixstate/pulse_log.hpp"
#include "sixstate/stats.hpp"

using namespace sixstate;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("%s  %2d. %s  [%s]\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

void criterion(int number, const std::string& name,
               const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(number, name, pass, detail);
  } catch (const std::exception& e) {
    report(number, name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

SiftSummary run_and_sift(std::uint64_t n, std::uint64_t seed,
                         ProtocolKind protocol, AttackModel attack) {
  SessionConfig config;
  config.n_pulses = n;
  config.seed = seed;
  config.protocol = protocol;
  config.attack = attack;
  return sift(run_session(config));
}

std::vector<ConfigInterpretation> embedded_interpretation() {
  const auto& table = embedded_config_table();
  return interpret_table(std::span<const ConfigEntry>(table));
}

// 1. Sifted fraction: six-state, no attack, n = 1e5, within
//    4*sqrt((1/3)(2/3)/1e5) of 1/3, in under 5 seconds.
std::pair<bool, std::string> sifted_fraction_benchmark() {
  constexpr std::uint64_t kN = 100000;
  const auto start = std::chrono::steady_clock::now();
  const SiftSummary s =
      run_and_sift(kN, 20250, ProtocolKind::SixState, AttackModel::None);
  const double secs = elapsed_seconds(start);
  const double tol = 4.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / kN);
  const bool pass =
      std::abs(s.sift_fraction - 1.0 / 3.0) <= tol && secs < 5.0;
  return {pass, "sift=" + fmt(s.sift_fraction) + " tol=" + fmt(tol) +
                    " t=" + fmt(secs) + "s"};
}

// 2. Compromised fraction: six-state, intercept-resend, n = 1e5, within
//    0.005 of 1/9, in under 5 seconds.
std::pair<bool, std::string> compromised_fraction_benchmark() {
  constexpr std::uint64_t kN = 100000;
  const auto start = std::chrono::steady_clock::now();
  const SiftSummary s = run_and_sift(kN, 20251, ProtocolKind::SixState,
                                     AttackModel::InterceptResend);
  const double secs = elapsed_seconds(start);
  const bool pass =
      std::abs(s.compromised_fraction - 1.0 / 9.0) <= 0.005 && secs < 5.0;
  return {pass, "compromised=" + fmt(s.compromised_fraction) +
                    " t=" + fmt(secs) + "s"};
}

// 3. Sifted-key error rate under intercept-resend: within 0.01 of 1/3.
std::pair<bool, std::string> ir_qber_benchmark() {
  const SiftSummary s = run_and_sift(100000, 20252, ProtocolKind::SixState,
                                     AttackModel::InterceptResend);
  const bool pass = s.qber && std::abs(*s.qber - 1.0 / 3.0) <= 0.01;
  return {pass, "qber=" + (s.qber ? fmt(*s.qber) : std::string("undefined"))};
}

// 4. BB84 comparison: qber within 0.01 of 1/4 under intercept-resend.
std::pair<bool, std::string> bb84_qber_benchmark() {
  const SiftSummary s = run_and_sift(100000, 20253, ProtocolKind::BB84,
                                     AttackModel::InterceptResend);
  const bool pass = s.qber && std::abs(*s.qber - 0.25) <= 0.01;
  return {pass, "qber=" + (s.qber ? fmt(*s.qber) : std::string("undefined"))};
}

// 5. Correlation-matrix cells: matched 100/18 (no attack) and 100/54
//    (intercept-resend), mismatched 0, all within 0.35 percentage points.
std::pair<bool, std::string> matrix_cells_benchmark() {
  constexpr std::uint64_t kN = 100000;
  bool pass = true;
  double worst = 0.0;
  for (AttackModel attack :
       {AttackModel::None, AttackModel::InterceptResend}) {
    SessionConfig config;
    config.n_pulses = kN;
    config.seed = 20254;
    config.attack = attack;
    const CorrelationMatrix m = correlation_matrix(run_session(config));
    const double matched_value =
        attack == AttackModel::None ? 100.0 / 18.0 : 100.0 / 54.0;
    for (PolState s : kAllStates) {
      const int r = static_cast<int>(s);
      for (int c = 0; c < 3; ++c) {
        const bool matched = static_cast<int>(basis_of(s)) == c;
        const double expected = matched ? matched_value : 0.0;
        const double dev = std::abs(m.cells[r][c] - expected);
        worst = std::max(worst, dev);
        pass = pass && dev <= 0.35;
      }
    }
  }
  return {pass, "max cell deviation=" + fmt(worst) + " pp (limit 0.35)"};
}

// 6. At the reference scale (n = 2363, 200 seeds) the empirical central 99%
//    ranges contain 31.3% (sifted) and 10.4% (compromised).
std::pair<bool, std::string> reference_scale_benchmark() {
  constexpr int kSeeds = 200;
  std::vector<double> sift_fracs, comp_fracs;
  sift_fracs.reserve(kSeeds);
  comp_fracs.reserve(kSeeds);
  for (int seed = 0; seed < kSeeds; ++seed) {
    sift_fracs.push_back(run_and_sift(2363, 40000 + seed,
                                      ProtocolKind::SixState,
                                      AttackModel::None)
                             .sift_fraction);
    comp_fracs.push_back(run_and_sift(2363, 50000 + seed,
                                      ProtocolKind::SixState,
                                      AttackModel::InterceptResend)
                             .compromised_fraction);
  }
  std::sort(sift_fracs.begin(), sift_fracs.end());
  std::sort(comp_fracs.begin(), comp_fracs.end());
  // Central 99% of 200 points: drop one from each tail.
  const bool sift_ok =
      sift_fracs[1] <= 0.313 && 0.313 <= sift_fracs[kSeeds - 2];
  const bool comp_ok =
      comp_fracs[1] <= 0.104 && 0.104 <= comp_fracs[kSeeds - 2];
  return {sift_ok && comp_ok,
          "sift 99% range=[" + fmt(sift_fracs[1]) + "," +
              fmt(sift_fracs[kSeeds - 2]) + "] ni 0.313; comp range=[" +
              fmt(comp_fracs[1]) + "," + fmt(comp_fracs[kSeeds - 2]) +
              "] ni 0.104"};
}

// 7. theoretical_benchmarks equals the exact rational enumeration.
std::pair<bool, std::string> oracle_equivalence() {
  struct Case {
    ProtocolKind protocol;
    AttackModel attack;
    int n_bases;
  };
  const Case cases[] = {
      {ProtocolKind::SixState, AttackModel::None, 3},
      {ProtocolKind::SixState, AttackModel::InterceptResend, 3},
      {ProtocolKind::BB84, AttackModel::None, 2},
      {ProtocolKind::BB84, AttackModel::InterceptResend, 2},
  };
  bool pass = true;
  for (const Case& c : cases) {
    const TheoreticalBenchmarks th =
        theoretical_benchmarks(c.protocol, c.attack);
    const oracle::ExactFractions exact = oracle::enumerate_fractions(
        c.n_bases, c.attack == AttackModel::InterceptResend);
    pass = pass && th.sift_fraction == exact.sift.to_double() &&
           th.undisturbed_fraction == exact.undisturbed.to_double() &&
           th.compromised_fraction == exact.compromised.to_double() &&
           th.qber == exact.qber.to_double();
  }
  const auto six_ir = oracle::enumerate_fractions(3, true);
  pass = pass && six_ir.undisturbed == oracle::Rational(2, 9) &&
         six_ir.compromised == oracle::Rational(1, 9) &&
         six_ir.qber == oracle::Rational(1, 3);
  return {pass, "4 protocol/attack cases, exact equality"};
}

// 8. Algebraic property suite at 1e-12 over randomized inputs.
std::pair<bool, std::string> algebraic_properties() {
  bool pass = true;
  RandomStream rng(777, 0);

  // Unitarity, 100 random angles each.
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.uniform() * 360.0 - 180.0;
    pass = pass && hwp_matrix(theta).is_unitary() &&
           qwp_matrix(theta).is_unitary();
  }

  // MUB overlaps = 1/2 and intra-basis orthogonality.
  for (PolState s : kAllStates) {
    for (PolState t : kAllStates) {
      const double f = fidelity(state_of(s), state_of(t));
      if (s == t) {
        pass = pass && std::abs(f - 1.0) <= kAlgebraTol;
      } else if (basis_of(s) == basis_of(t)) {
        pass = pass && std::abs(f) <= kAlgebraTol;
      } else {
        pass = pass && std::abs(f - 0.5) <= kAlgebraTol;
      }
    }
  }

  // Born normalization over 100 random states.
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform() * 3.14159265358979323846;
    const double p = rng.uniform() * 6.28318530717958647692;
    const JonesVector psi{Complex(std::cos(t), 0.0),
                          Complex(std::cos(p), std::sin(p)) * std::sin(t)};
    for (Basis b : kAllBases) {
      const auto [s0, s1] = states(b);
      const double sum =
          born_probability(psi, s0) + born_probability(psi, s1);
      pass = pass && std::abs(sum - 1.0) <= kAlgebraTol;
    }
  }
  return {pass, "unitarity + MUB + orthogonality + Born, 100+ cases each"};
}

// 9. simulate -> export -> ingest -> replay reproduces the summary
//    field-for-field for 10 seeds.
std::pair<bool, std::string> round_trip() {
  const fs::path dir = fs::temp_directory_path() / "sixstate_acceptance";
  fs::create_directories(dir);
  bool pass = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SessionConfig config;
    config.n_pulses = 4000;
    config.seed = seed;
    const auto records = run_session(config);
    const SiftSummary direct = sift(records);

    const fs::path path = dir / ("roundtrip_" + std::to_string(seed) + ".csv");
    {
      std::ofstream out(path, std::ios::binary);
      write_pulse_log(out, records, embedded_interpretation());
    }
    const IngestResult ingest = ingest_pulse_log(path);
    const ReplayResult replayed =
        replay(ingest.rows, embedded_interpretation());
    pass = pass && replayed.summary == direct;
    fs::remove(path);
  }
  return {pass, "10 seeds, SiftSummary equal field-for-field"};
}

// 10. Identical configs give byte-identical pulse logs, across reruns and
//     across 1-thread vs 8-thread execution.
std::pair<bool, std::string> determinism() {
  SessionConfig config;
  config.n_pulses = 20000;
  config.seed = 31337;
  config.attack = AttackModel::InterceptResend;

  const auto interp = embedded_interpretation();
  const auto log_bytes = [&](unsigned threads) {
    SessionConfig c = config;
    c.n_threads = threads;
    std::ostringstream os;
    write_pulse_log(os, run_session(c), interp);
    return os.str();
  };

  const std::string run1 = log_bytes(1);
  const std::string run1_again = log_bytes(1);
  const std::string run8 = log_bytes(8);
  const bool pass = run1 == run1_again && run1 == run8;
  return {pass, "two reruns and 1 vs 8 threads, " +
                    std::to_string(run1.size()) + " bytes each"};
}

// 11. Embedded table fidelity and a stable verification report.
std::pair<bool, std::string> table_fidelity() {
  static const char* kReferenceRows[18] = {
      "A,0,1,0,0,0,1,0,-45,0", "B,1,1,0,0,0,0,1,45,0",
      "C,0,0,1,0,1,0,0,0,45",  "D,1,0,0,0,1,0,1,90,45",
      "E,1,0,1,0,1,0,1,90,45", "F,0,0,0,0,0,0,0,0,0",
      "G,1,0,1,0,0,1,1,90,0",  "H,1,0,1,0,0,0,1,90,0",
      "I,0,0,0,0,0,1,0,0,0",   "J,1,0,0,0,0,0,1,90,0",
      "K,1,1,0,0,1,0,1,45,45", "L,0,0,0,0,1,0,0,0,45",
      "M,0,1,0,0,1,0,0,-45,45", "N,1,1,0,0,0,1,1,45,0",
      "O,1,0,0,0,0,1,1,90,0",  "P,0,1,0,0,0,0,0,-45,0",
      "Q,0,0,1,0,0,0,0,0,0",   "R,0,0,1,0,0,1,0,0,0",
  };
  const auto& table = embedded_config_table();
  bool pass = table.size() == 18;
  for (int i = 0; i < 18 && pass; ++i) {
    const ConfigEntry& e = table[i];
    std::ostringstream os;
    os << e.label << ',' << e.alice_hwp1 << ',' << e.alice_hwp2 << ','
       << e.alice_qwp << ',' << e.bob_hwp1 << ',' << e.bob_hwp2 << ','
       << e.bob_qwp << ',' << e.alice_bit << ',' << e.alice_angle_deg << ','
       << e.bob_angle_deg;
    pass = os.str() == kReferenceRows[i];
  }

  const ConfigTableReport report = verify_config_table();
  const ConfigTableReport again = verify_config_table();
  pass = pass && report.rows.size() == 18 && report.n_unresolved == 0 &&
         report.n_bit_mismatches == 12 &&
         again.n_bit_mismatches == report.n_bit_mismatches &&
         again.n_unresolved == report.n_unresolved;
  std::set<char> mismatches;
  for (const ConfigVerification& row : report.rows) {
    if (!row.bit_consistent) mismatches.insert(row.label);
  }
  pass = pass && mismatches == std::set<char>{'A', 'B', 'C', 'E', 'G', 'H',
                                              'K', 'M', 'N', 'P', 'Q', 'R'};
  return {pass, "18 literal rows; 0 unresolved, stable 12-row mismatch set"};
}

}  // namespace

int main() {
  criterion(1, "sifted-fraction benchmark (six-state, no attack, n=1e5)",
            sifted_fraction_benchmark);
  criterion(2, "compromised-fraction benchmark (intercept-resend, n=1e5)",
            compromised_fraction_benchmark);
  criterion(3, "intercept-resend qber benchmark (1/3)", ir_qber_benchmark);
  criterion(4, "bb84 comparison qber benchmark (1/4)", bb84_qber_benchmark);
  criterion(5, "correlation-matrix cell values (5.56% / 1.85% / 0)",
            matrix_cells_benchmark);
  criterion(6, "reference-scale plausibility (n=2363, 200 seeds)",
            reference_scale_benchmark);
  criterion(7, "exact oracle equivalence of theoretical benchmarks",
            oracle_equivalence);
  criterion(8, "algebraic property suite at 1e-12", algebraic_properties);
  criterion(9, "simulate/export/ingest/replay round trip (10 seeds)",
            round_trip);
  criterion(10, "byte-identical determinism across runs and thread counts",
            determinism);
  criterion(11, "embedded table fidelity and stable verification",
            table_fidelity);

  if (g_failures == 0) {
    std::printf("all 11 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
