#include "sixstate/polarization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sixstate {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool finite(const Complex& c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

}  // namespace

std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::HV: return "HV";
    case Basis::DA: return "DA";
    case Basis::RL: return "RL";
  }
  return "?";
}

std::string_view to_string(PolState s) {
  switch (s) {
    case PolState::H: return "H";
    case PolState::V: return "V";
    case PolState::D: return "D";
    case PolState::A: return "A";
    case PolState::R: return "R";
    case PolState::L: return "L";
  }
  return "?";
}

std::optional<Basis> basis_from_string(std::string_view name) {
  for (Basis b : kAllBases) {
    if (name == to_string(b)) return b;
  }
  return std::nullopt;
}

std::optional<PolState> pol_state_from_string(std::string_view name) {
  for (PolState s : kAllStates) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

bool JonesVector::is_finite() const { return finite(a_h) && finite(a_v); }

bool JonesMatrix::is_finite() const {
  for (const Complex& c : m) {
    if (!finite(c)) return false;
  }
  return true;
}

bool JonesMatrix::is_unitary(double tol) const {
  const JonesMatrix p = dagger() * (*this);
  return std::abs(p.m[0] - 1.0) <= tol && std::abs(p.m[1]) <= tol &&
         std::abs(p.m[2]) <= tol && std::abs(p.m[3] - 1.0) <= tol;
}

JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b) {
  return {{a.m[0] * b.m[0] + a.m[1] * b.m[2],
           a.m[0] * b.m[1] + a.m[1] * b.m[3],
           a.m[2] * b.m[0] + a.m[3] * b.m[2],
           a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

JonesMatrix identity_matrix() { return {{1.0, 0.0, 0.0, 1.0}}; }

JonesMatrix hwp_matrix(double theta_deg) {
  const double t = theta_deg * kDegToRad;
  const double c = std::cos(2.0 * t);
  const double s = std::sin(2.0 * t);
  return {{c, s, s, -c}};
}

JonesMatrix qwp_matrix(double theta_deg) {
  const double t = theta_deg * kDegToRad;
  const double c = std::cos(t);
  const double s = std::sin(t);
  const Complex off = Complex(1.0, -1.0) * s * c;
  return {{Complex(c * c, s * s), off, off, Complex(s * s, c * c)}};
}

JonesVector state_of(PolState s) {
  constexpr double r = 0.70710678118654752440;  // 1/sqrt(2)
  switch (s) {
    case PolState::H: return {{1.0, 0.0}, {0.0, 0.0}};
    case PolState::V: return {{0.0, 0.0}, {1.0, 0.0}};
    case PolState::D: return {{r, 0.0}, {r, 0.0}};
    case PolState::A: return {{r, 0.0}, {-r, 0.0}};
    case PolState::R: return {{r, 0.0}, {0.0, r}};
    case PolState::L: return {{r, 0.0}, {0.0, -r}};
  }
  return {};
}

std::pair<JonesVector, JonesVector> states(Basis b) {
  return {state_of(state_name(b, 0)), state_of(state_name(b, 1))};
}

JonesVector apply(const JonesMatrix& m, const JonesVector& v) {
  if (!m.is_finite() || !v.is_finite()) {
    throw std::invalid_argument("apply: non-finite Jones matrix or vector");
  }
  return {m.m[0] * v.a_h + m.m[1] * v.a_v, m.m[2] * v.a_h + m.m[3] * v.a_v};
}

double fidelity(const JonesVector& u, const JonesVector& v) {
  const Complex ip = std::conj(u.a_h) * v.a_h + std::conj(u.a_v) * v.a_v;
  return std::norm(ip);
}

double born_probability(const JonesVector& psi, const JonesVector& outcome) {
  return fidelity(psi, outcome);
}

MeasureResult measure_in_basis(const JonesVector& psi, Basis b,
                               RandomStream& rng) {
  const auto [s0, s1] = states(b);
  const double p0 = born_probability(psi, s0);
  // uniform() < p0 is exact at both extremes: p0 = 1 always collapses to
  // bit 0 and p0 = 0 never does, since uniform() lies in [0, 1).
  const int bit = rng.uniform() < p0 ? 0 : 1;
  return {bit, bit == 0 ? s0 : s1};
}

std::optional<PolState> classify_state(const JonesVector& v,
                                       double min_fidelity) {
  for (PolState s : kAllStates) {
    if (fidelity(state_of(s), v) >= min_fidelity) return s;
  }
  return std::nullopt;
}

}  // namespace sixstate
