#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "sixstate/rng.hpp"

// Jones-vector algebra for the six polarization states and the wave-plate
// operators that prepare and analyze them.
//
// Conventions (all equality checks elsewhere go through fidelity, so only
// relative phases matter):
//   - Basis order is H then V in every vector and matrix.
//   - Named states carry a real, non-negative |H> amplitude:
//       H=(1,0)  V=(0,1)  D=(1,1)/sqrt2  A=(1,-1)/sqrt2
//       R=(1,i)/sqrt2  L=(1,-i)/sqrt2
//   - hwp_matrix(t) = [[cos2t, sin2t], [sin2t, -cos2t]]   (fast axis at t)
//   - qwp_matrix(t) = [[cos^2 t + i sin^2 t, (1-i) sin t cos t],
//                      [(1-i) sin t cos t,   sin^2 t + i cos^2 t]]
//     The global phase is fixed so that qwp_matrix(t)^2 == hwp_matrix(t)
//     with no residual factor. Under this convention
//     qwp_matrix(45)|H> = |L> and qwp_matrix(45)|V> = |R>.
//   - Angles are degrees at every interface, radians internally.

namespace sixstate {

using Complex = std::complex<double>;

// Tolerance for algebraic identities (normalization, unitarity, overlaps).
inline constexpr double kAlgebraTol = 1e-12;

enum class Basis : std::uint8_t { HV = 0, DA = 1, RL = 2 };
enum class PolState : std::uint8_t { H = 0, V = 1, D = 2, A = 3, R = 4, L = 5 };

inline constexpr std::array<Basis, 3> kAllBases{Basis::HV, Basis::DA,
                                                Basis::RL};
inline constexpr std::array<PolState, 6> kAllStates{
    PolState::H, PolState::V, PolState::D,
    PolState::A, PolState::R, PolState::L};

constexpr Basis basis_of(PolState s) {
  return static_cast<Basis>(static_cast<int>(s) / 2);
}

// Bit convention: H, D, R -> 0; V, A, L -> 1.
constexpr int bit_of(PolState s) { return static_cast<int>(s) % 2; }

constexpr PolState state_name(Basis b, int bit) {
  return static_cast<PolState>(2 * static_cast<int>(b) + (bit ? 1 : 0));
}

std::string_view to_string(Basis b);
std::string_view to_string(PolState s);
std::optional<Basis> basis_from_string(std::string_view name);
std::optional<PolState> pol_state_from_string(std::string_view name);

struct JonesVector {
  Complex a_h{};  // amplitude on |H>
  Complex a_v{};  // amplitude on |V>

  double norm_sq() const { return std::norm(a_h) + std::norm(a_v); }
  bool is_finite() const;
};

// 2x2 complex operator, row-major, basis order H then V.
struct JonesMatrix {
  std::array<Complex, 4> m{};

  JonesMatrix dagger() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
             std::conj(m[3])}};
  }
  bool is_finite() const;
  bool is_unitary(double tol = kAlgebraTol) const;
};

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b);

JonesMatrix identity_matrix();
JonesMatrix hwp_matrix(double theta_deg);
JonesMatrix qwp_matrix(double theta_deg);

JonesVector state_of(PolState s);

// Ordered orthonormal pair of a basis: first = bit 0, second = bit 1.
std::pair<JonesVector, JonesVector> states(Basis b);

// Matrix-vector product. Throws std::invalid_argument on non-finite input.
JonesVector apply(const JonesMatrix& m, const JonesVector& v);

// |<u|v>|^2, phase-invariant. Inputs assumed normalized.
double fidelity(const JonesVector& u, const JonesVector& v);

// Probability of projecting psi onto the given outcome state.
double born_probability(const JonesVector& psi, const JonesVector& outcome);

struct MeasureResult {
  int bit;                 // 0 or 1
  JonesVector post_state;  // the basis eigenstate observed
};

// Projective measurement in basis b; consumes exactly one uniform draw.
MeasureResult measure_in_basis(const JonesVector& psi, Basis b,
                               RandomStream& rng);

// Name the state v represents, if its fidelity to one of the six named
// states reaches min_fidelity. Mutual unbiasedness caps the fidelity to any
// other candidate at 1/2, so the classification is unambiguous.
std::optional<PolState> classify_state(const JonesVector& v,
                                       double min_fidelity = 1.0 - 1e-9);

}  // namespace sixstate
