#include "sixstate/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sixstate/errors.hpp"

namespace sixstate {

namespace {

bool in_protocol(Basis b, ProtocolKind protocol) {
  for (Basis pb : protocol_bases(protocol)) {
    if (pb == b) return true;
  }
  return false;
}

BenchmarkEntry make_entry(std::string name, double measured, double expected,
                          double std_error, double z_max) {
  BenchmarkEntry e;
  e.name = std::move(name);
  e.measured = measured;
  e.expected = expected;
  e.std_error = std_error;
  if (std_error > 0.0) {
    e.z = (measured - expected) / std_error;
  } else {
    e.z = measured == expected ? 0.0
                               : std::numeric_limits<double>::infinity();
  }
  e.pass = std::abs(e.z) <= z_max;
  return e;
}

}  // namespace

std::int64_t CorrelationMatrix::matched_signed_count() const {
  std::int64_t sum = 0;
  for (PolState s : kAllStates) {
    const int row = static_cast<int>(s);
    const int col = static_cast<int>(basis_of(s));
    sum += n_agree[row][col] - n_disagree[row][col];
  }
  return sum;
}

CorrelationMatrix correlation_matrix(std::span<const PulseRecord> records) {
  if (records.empty()) {
    throw DataError(DataError::Kind::NoData,
                    "correlation_matrix: empty record list");
  }

  CorrelationMatrix m;
  m.n_total = records.size();
  for (const PulseRecord& rec : records) {
    const int row = static_cast<int>(rec.alice_state);
    const int col = static_cast<int>(rec.bob_basis);
    if (rec.bob_bit == rec.alice_bit) {
      ++m.n_agree[row][col];
    } else {
      ++m.n_disagree[row][col];
    }
  }
  const double n = static_cast<double>(m.n_total);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 3; ++c) {
      m.cells[r][c] =
          100.0 * static_cast<double>(m.n_agree[r][c] - m.n_disagree[r][c]) /
          n;
    }
  }
  return m;
}

AggregateFractions aggregate_fractions(const SiftSummary& summary,
                                       AttackModel attack) {
  if (attack == AttackModel::InterceptResend) {
    const double kept = summary.compromised_fraction;
    return {kept, 1.0 - kept, "undisturbed-and-compromised", "disturbed"};
  }
  const double kept = summary.undisturbed_fraction;
  return {kept, 1.0 - kept, "undisturbed/sifted", "disturbed"};
}

double binomial_stderr(double p, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("binomial_stderr: n must be >= 1");
  }
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

BenchmarkReport compare_to_benchmarks(const SiftSummary& summary,
                                      const CorrelationMatrix& matrix,
                                      ProtocolKind protocol,
                                      AttackModel attack, double z_max) {
  if (summary.n_total != matrix.n_total) {
    throw std::invalid_argument(
        "compare_to_benchmarks: summary and matrix disagree on n_total");
  }

  const TheoreticalBenchmarks th = theoretical_benchmarks(protocol, attack);
  const std::uint64_t n = summary.n_total;
  const auto n_bases = static_cast<double>(protocol_bases(protocol).size());

  BenchmarkReport report;
  report.z_max = z_max;

  report.entries.push_back(make_entry(
      "sift_fraction", summary.sift_fraction, th.sift_fraction,
      binomial_stderr(th.sift_fraction, n), z_max));
  report.entries.push_back(make_entry(
      "undisturbed_fraction", summary.undisturbed_fraction,
      th.undisturbed_fraction, binomial_stderr(th.undisturbed_fraction, n),
      z_max));
  report.entries.push_back(make_entry(
      "compromised_fraction", summary.compromised_fraction,
      th.compromised_fraction, binomial_stderr(th.compromised_fraction, n),
      z_max));
  report.entries.push_back(make_entry(
      "qber", summary.qber.value_or(0.0), th.qber,
      summary.n_sifted > 0 ? binomial_stderr(th.qber, summary.n_sifted) : 0.0,
      z_max));

  // Per-cell expectations for the ideal protocol: every usable cell has
  // occupancy 1/(2 * n_bases^2); a matched cell agrees with probability 1
  // (no attack) or (n_bases + 1) / (2 n_bases) (intercept-resend), while a
  // mismatched cell agrees with probability 1/2. Cells outside the
  // protocol's basis set stay empty.
  const double occupancy = 1.0 / (2.0 * n_bases * n_bases);
  const double matched_excess =
      attack == AttackModel::InterceptResend ? 1.0 / n_bases : 1.0;
  for (PolState s : kAllStates) {
    const int row = static_cast<int>(s);
    for (Basis col : kAllBases) {
      const int c = static_cast<int>(col);
      const bool usable =
          in_protocol(basis_of(s), protocol) && in_protocol(col, protocol);
      const bool matched = basis_of(s) == col;

      double expected = 0.0;
      double p_occ = 0.0;
      if (usable) {
        p_occ = occupancy;
        if (matched) expected = 100.0 * occupancy * matched_excess;
      }
      const double mean = expected / 100.0;
      const double std_error =
          p_occ > 0.0
              ? 100.0 * std::sqrt((p_occ - mean * mean) /
                                  static_cast<double>(n))
              : 0.0;

      std::string name = "cell_";
      name += to_string(s);
      name += '_';
      name += to_string(col);
      report.entries.push_back(make_entry(std::move(name),
                                          matrix.cells[row][c], expected,
                                          std_error, z_max));
    }
  }

  report.pass = true;
  for (const BenchmarkEntry& e : report.entries) {
    report.pass = report.pass && e.pass;
  }
  return report;
}

ChiSquareResult chi_square_uniformity(std::span<const std::int64_t> counts,
                                      std::span<const double> expected_probs) {
  if (counts.size() != expected_probs.size() || counts.size() < 2) {
    throw std::invalid_argument(
        "chi_square_uniformity: need matching lengths >= 2");
  }
  double prob_sum = 0.0;
  std::int64_t n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    prob_sum += expected_probs[i];
    n += counts[i];
  }
  if (std::abs(prob_sum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "chi_square_uniformity: probabilities must sum to 1");
  }

  ChiSquareResult r;
  r.dof = static_cast<int>(counts.size()) - 1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = static_cast<double>(n) * expected_probs[i];
    if (expected < 5.0) r.low_expected_count = true;
    if (expected > 0.0) {
      const double diff = static_cast<double>(counts[i]) - expected;
      r.statistic += diff * diff / expected;
    }
  }
  return r;
}

}  // namespace sixstate
