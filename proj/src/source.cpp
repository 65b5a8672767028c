#include "glt/source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glt/errors.hpp"

namespace glt {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kConsistencyTol = 1e-9;
}  // namespace

const char* to_string(StateLabel s) {
  switch (s) {
    case StateLabel::k0Z: return "0Z";
    case StateLabel::k1Z: return "1Z";
    case StateLabel::k0X: return "0X";
    case StateLabel::k0Y: return "0Y";
  }
  return "?";
}

const char* to_string(Basis b) {
  switch (b) {
    case Basis::Z: return "Z";
    case Basis::X: return "X";
    case Basis::Y: return "Y";
  }
  return "?";
}

void SourceSpec::validate() const {
  for (double a : {delta_im1, delta_im2, delta_bs1, delta_bs2, delta_pm1,
                   delta_pm2, theta_mode.value}) {
    if (!std::isfinite(a)) throw ParameterError("source angles must be finite");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ParameterError("source gamma must be finite and >= 0");
}

std::array<PureQubitState, 4> build_flawed_states(const SourceSpec& spec) {
  // sin(pi/4 + b/2)|0> + cos(pi/4 + b/2) e^{ip}|1>  ==  angles (pi/4 - b/2, p)
  return {
      state_from_angles(spec.delta_im1 / 2.0, 0.0),
      state_from_angles(kPi / 2.0 - spec.delta_im2 / 2.0, 0.0),
      state_from_angles(kPi / 4.0 - spec.delta_bs1 / 2.0, spec.delta_pm1),
      state_from_angles(kPi / 4.0 - spec.delta_bs2 / 2.0,
                        kPi / 2.0 + spec.delta_pm2),
  };
}

TrojanAmplitudes trojan_amplitudes(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("trojan_amplitudes: gamma < 0");
  return {std::exp(-gamma / 2.0), std::sqrt(-std::expm1(-gamma))};
}

std::array<double, 4> theta_assignment(const SourceSpec& spec) {
  const double t = spec.theta_mode.value;
  if (spec.theta_mode.kind == ThetaMode::Kind::independent) return {t, t, t, t};
  return {
      (spec.delta_im1 / 2.0 + kPi) * t,
      (spec.delta_im2 / 2.0 + kPi) * t,
      spec.delta_pm1 * t,
      (spec.delta_pm2 + kPi / 2.0) * t,
  };
}

std::array<EmittedState, 4> emitted_states(const SourceSpec& spec) {
  const auto qubits = build_flawed_states(spec);
  const auto thetas = theta_assignment(spec);
  std::array<EmittedState, 4> out{};
  for (StateLabel s : kAllStates) {
    const auto i = index(s);
    out[i] = {s, qubits[i], bloch_of(qubits[i]), thetas[i]};
  }
  return out;
}

PracticalCoefficients practical_coefficients(const EmittedState& state,
                                             const TrojanAmplitudes& trojan) {
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  const double ti2 = trojan.t_i * trojan.t_i;
  const double td2 = trojan.t_d * trojan.t_d;
  PracticalCoefficients k;
  k.M = c * c * ti2;
  k.L = s * s * (ti2 + td2);
  k.N = c * s * ti2;
  k.P = c * c * td2;
  const auto ev = eig2(Herm2{k.L, k.P, k.N, 0.0});
  k.lambda_min = ev.lambda_min;
  k.lambda_max = ev.lambda_max;
  return k;
}

VirtualCoefficients virtual_coefficients(const SourceSpec& spec,
                                         const TrojanAmplitudes& trojan,
                                         Basis alice_basis, int j) {
  if (alice_basis == Basis::Z)
    throw DomainError("virtual_coefficients: Alice basis must be X or Y");
  if (j != 0 && j != 1) throw DomainError("virtual_coefficients: j must be 0 or 1");

  const auto thetas = theta_assignment(spec);
  const double c0 = std::cos(thetas[0]), s0 = std::sin(thetas[0]);
  const double c1 = std::cos(thetas[1]), s1 = std::sin(thetas[1]);
  const double ti2 = trojan.t_i * trojan.t_i;
  const double td2 = trojan.t_d * trojan.t_d;

  // Relative phase (-1)^j e^{i phi} between the two Z-basis branches.
  const double sign = j == 0 ? 1.0 : -1.0;
  const std::complex<double> z = alice_basis == Basis::X
                                     ? std::complex<double>(sign, 0.0)
                                     : std::complex<double>(0.0, sign);

  // <phi_0Z|phi_1Z> = sin((d_im1 + d_im2)/2); real for the Z-basis pair.
  const double overlap = std::sin((spec.delta_im1 + spec.delta_im2) / 2.0);
  const double coherence = 2.0 * z.real() * overlap;

  VirtualCoefficients v;
  v.F = ti2 * (c0 * c0 + c1 * c1 + coherence * c0 * c1);
  v.H = ti2 * (s0 * s0 + s1 * s1 + coherence * s0 * s1) + 2.0 * td2;
  // Rounding can push a vanishing norm marginally negative.
  v.F = std::max(v.F, 0.0);
  v.H = std::max(v.H, 0.0);
  v.G = std::sqrt(v.F * v.H);
  const auto ev = eig2(Herm2{v.H, 0.0, v.G, 0.0});
  v.lambda_min = ev.lambda_min;
  v.lambda_max = ev.lambda_max;

  // Full-state overlap <Phi_0Z|Phi_1Z> = <phi_0Z|phi_1Z> cos(theta_0Z - theta_1Z)
  // T_I^2, since the state-dependent Trojan parts are mutually orthogonal.
  const double full_overlap = overlap * (c0 * c1 + s0 * s1) * ti2;
  v.probability = 0.25 * (2.0 + 2.0 * z.real() * full_overlap);
  if (std::abs(4.0 * v.probability - (v.F + v.H)) > kConsistencyTol)
    throw ConsistencyError("virtual_coefficients: branch weights do not add up");
  if (v.F == 0.0 && v.H == 0.0 && v.probability > kConsistencyTol)
    throw ConsistencyError("virtual_coefficients: empty branch with nonzero probability");

  // The superposition depends on the relative phase of the two Z states, so
  // use their amplitudes as written, not the phase-normalised forms.
  const Eigen::Vector2cd raw0(std::cos(spec.delta_im1 / 2.0), std::sin(spec.delta_im1 / 2.0));
  const Eigen::Vector2cd raw1(std::sin(spec.delta_im2 / 2.0), std::cos(spec.delta_im2 / 2.0));
  const Eigen::Vector2cd ket = c0 * raw0 + z * c1 * raw1;
  if (ket.squaredNorm() > 1e-300) v.bloch = bloch_of<double>(ket);
  return v;
}

const VirtualCoefficients& CoefficientSet::virtual_branch(Basis alice_basis,
                                                          int j) const {
  if (alice_basis == Basis::Z || (j != 0 && j != 1))
    throw DomainError("virtual_branch: expects Alice basis X/Y and j in {0,1}");
  return virtual_branches[alice_basis == Basis::X ? 0 : 1][static_cast<std::size_t>(j)];
}

CoefficientSet build_coefficients(const SourceSpec& spec) {
  spec.validate();
  const auto trojan = trojan_amplitudes(spec.gamma);
  CoefficientSet set;
  set.states = emitted_states(spec);
  for (std::size_t i = 0; i < 4; ++i)
    set.practical[i] = practical_coefficients(set.states[i], trojan);
  for (int b = 0; b < 2; ++b)
    for (int j = 0; j < 2; ++j)
      set.virtual_branches[b][j] = virtual_coefficients(
          spec, trojan, b == 0 ? Basis::X : Basis::Y, j);
  return set;
}

}  // namespace glt
