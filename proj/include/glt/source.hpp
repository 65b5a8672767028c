#pragma once
// Alice's flawed four-state source: encoding-angle errors, the leaked optical
// mode (weight sin(theta)) and Trojan back-reflection (intensity gamma), and the
// coefficients the bound engine derives from them.

#include <array>
#include <cstddef>

#include "glt/qubit_math.hpp"

namespace glt {

/// The four prepared states, in the order used by every per-state array.
enum class StateLabel : int { k0Z = 0, k1Z = 1, k0X = 2, k0Y = 3 };
inline constexpr std::array<StateLabel, 4> kAllStates{
    StateLabel::k0Z, StateLabel::k1Z, StateLabel::k0X, StateLabel::k0Y};
inline constexpr std::size_t index(StateLabel s) {
  return static_cast<std::size_t>(s);
}
const char* to_string(StateLabel s);

enum class Basis : int { Z = 0, X = 1, Y = 2 };
inline constexpr std::size_t index(Basis b) { return static_cast<std::size_t>(b); }
const char* to_string(Basis b);

/// Relation between the leaked-mode angle and the prepared state.
struct ThetaMode {
  enum class Kind { independent, dependent };
  Kind kind = Kind::independent;
  /// theta itself (independent) or the scale theta_hat (dependent).
  double value = 0.0;

  static ThetaMode independent(double theta) { return {Kind::independent, theta}; }
  static ThetaMode dependent(double theta_hat) { return {Kind::dependent, theta_hat}; }
};

struct SourceSpec {
  double delta_im1 = 0.0;
  double delta_im2 = 0.0;
  double delta_bs1 = 0.0;
  double delta_bs2 = 0.0;
  double delta_pm1 = 0.0;
  double delta_pm2 = 0.0;
  ThetaMode theta_mode{};
  /// Mean photon number of back-reflected Trojan light.
  double gamma = 0.0;

  /// Throws ParameterError on non-finite angles or negative gamma.
  void validate() const;
};

struct TrojanAmplitudes {
  double t_i = 1.0;  ///< weight of the state-independent (vacuum) part
  double t_d = 0.0;  ///< weight of the state-dependent part
};

struct EmittedState {
  StateLabel label;
  PureQubitState qubit_part;
  BlochVector bloch;
  double theta;
};

/// |phi_0Z>, |phi_1Z>, |phi_0X>, |phi_0Y> including modulator and splitter errors.
std::array<PureQubitState, 4> build_flawed_states(const SourceSpec& spec);

TrojanAmplitudes trojan_amplitudes(double gamma);

/// Leaked-mode angle for each state.
std::array<double, 4> theta_assignment(const SourceSpec& spec);

std::array<EmittedState, 4> emitted_states(const SourceSpec& spec);

/// Coefficients splitting the yield of a practical state into a qubit term
/// M (V . q) plus a slack term bounded by the spectrum of [[L, N], [N, P]].
struct PracticalCoefficients {
  double M = 0, L = 0, N = 0, P = 0;
  double lambda_min = 0, lambda_max = 0;
};

PracticalCoefficients practical_coefficients(const EmittedState& state,
                                             const TrojanAmplitudes& trojan);

/// Coefficients of the virtual state Alice steers Bob into when she measures
/// her half of the Z-basis entangled state with outcome j in basis X or Y.
///
/// The unnormalised conditional state is (1/2)(|Phi_0Z> + (-1)^j e^{i phi}
/// |Phi_1Z>), with phi = 0 for X and pi/2 for Y. It splits into a qubit part of
/// squared norm F and a remainder of squared norm H; G = sqrt(F H) is their
/// worst-case coherence. `probability` is the squared norm of the conditional
/// state, i.e. the chance that Alice obtains j, and always equals (F + H)/4.
struct VirtualCoefficients {
  double F = 0, G = 0, H = 0;
  double lambda_min = 0, lambda_max = 0;  ///< spectrum of [[H, G], [G, 0]]
  double probability = 0;
  BlochVector bloch = BlochVector(1, 0, 0, 0);  ///< of the normalised qubit part
};

VirtualCoefficients virtual_coefficients(const SourceSpec& spec,
                                         const TrojanAmplitudes& trojan,
                                         Basis alice_basis, int j);

struct CoefficientSet {
  std::array<EmittedState, 4> states;
  std::array<PracticalCoefficients, 4> practical;
  /// Indexed [alice basis: 0 = X, 1 = Y][j].
  std::array<std::array<VirtualCoefficients, 2>, 2> virtual_branches;

  const VirtualCoefficients& virtual_branch(Basis alice_basis, int j) const;
};

CoefficientSet build_coefficients(const SourceSpec& spec);

}  // namespace glt
