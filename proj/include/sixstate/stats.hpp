#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sixstate/protocol.hpp"

// Statistics over pulse records: the 6x3 state-basis correlation matrix,
// aggregate kept/rest fractions, and z-score comparison against the
// protocol's theoretical benchmarks.

namespace sixstate {

// Signed-agreement map over (Alice state x Bob basis) cells. Rows are
// ordered H, V, D, A, R, L and columns HV, DA, RL. A cell's value is
//   100 * (n_agree - n_disagree) / n_total   [percent of all pulses]
// where agreement means bob_bit == alice_bit. Raw occupancy is flat by
// construction; the signed excess is what separates matched cells from
// mismatched ones.
struct CorrelationMatrix {
  std::array<std::array<double, 3>, 6> cells{};
  std::array<std::array<std::int64_t, 3>, 6> n_agree{};
  std::array<std::array<std::int64_t, 3>, 6> n_disagree{};
  std::uint64_t n_total = 0;

  // Sum of (n_agree - n_disagree) over the six matched cells; divided by
  // n_total this equals undisturbed_fraction - sifted-error fraction.
  std::int64_t matched_signed_count() const;
};

// Throws DataError(NoData) on empty input.
CorrelationMatrix correlation_matrix(std::span<const PulseRecord> records);

struct AggregateFractions {
  double kept;
  double rest;  // 1 - kept, exactly
  std::string_view kept_label;
  std::string_view rest_label;
};

// No attack: kept = undisturbed (sifted) fraction. Intercept-resend:
// kept = undisturbed-and-compromised fraction.
AggregateFractions aggregate_fractions(const SiftSummary& summary,
                                       AttackModel attack);

// sqrt(p * (1 - p) / n); n must be >= 1.
double binomial_stderr(double p, std::uint64_t n);

struct BenchmarkEntry {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

struct BenchmarkReport {
  std::vector<BenchmarkEntry> entries;
  double z_max = 4.0;
  bool pass = false;  // all entries pass
};

// One entry per summary metric plus the 18 matrix cells. Expected values
// come from theoretical_benchmarks and the per-cell occupancy/agreement
// probabilities of the ideal protocol; stderr is the per-metric binomial
// standard error, and pass means |z| <= z_max.
BenchmarkReport compare_to_benchmarks(const SiftSummary& summary,
                                      const CorrelationMatrix& matrix,
                                      ProtocolKind protocol,
                                      AttackModel attack, double z_max = 4.0);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  // Set when any expected count falls below 5 (normal approximation caveat).
  bool low_expected_count = false;
};

// Pearson statistic sum (O - E)^2 / E against the given cell probabilities.
// Throws std::invalid_argument on mismatched lengths, fewer than two cells,
// or probabilities that do not sum to 1 within 1e-9.
ChiSquareResult chi_square_uniformity(std::span<const std::int64_t> counts,
                                      std::span<const double> expected_probs);

// Upper 0.001-level critical values for the degrees of freedom used here.
inline constexpr double kChiSqCrit999Dof5 = 20.515005652432873;
inline constexpr double kChiSqCrit999Dof8 = 26.12448155837614;

}  // namespace sixstate
