#pragma once
// Analytic detection model: fibre loss, threshold detectors with efficiency and
// dark counts, double clicks assigned at random (in expectation), and a Z-axis
// rotation omega of Bob's X/Y frame. Only the qubit part of each emitted state
// reaches the detectors.

#include <array>
#include <cstddef>

#include "glt/source.hpp"

namespace glt {

struct ChannelParams {
  double distance_km = 0.0;
  double alpha_db_per_km = 0.21;
  double eta_det = 0.2;
  double p_dark = 1e-6;  ///< per detector per gate
  double omega = 0.0;    ///< reference-frame rotation of Bob's X/Y axes

  void validate() const;
};

/// Overall single-photon detection probability: detector efficiency times fibre loss.
double transmittance(const ChannelParams& ch);

/// Bloch form (1, +-n) of Bob's projector (I + (-1)^s n.sigma)/2 for basis beta,
/// with n expressed in Alice's frame.
BlochVector bob_measurement_bloch(Basis beta, int s, double omega);

/// Probability of reporting outcome 0 and 1 when `silent0`, `silent1` and
/// `silent_both` are the probabilities that detector 0, detector 1, or both
/// stay silent. Double clicks are split evenly between the outcomes.
std::array<double, 2> outcome_probabilities(double silent0, double silent1,
                                            double silent_both);

/// Outcome probabilities for exactly n photons in a state whose Bob-side
/// projection probabilities are (p0, p1 = 1 - p0).
std::array<double, 2> n_photon_yields(int n, double p0, double eta, double p_dark);

/// Same for a phase-randomised coherent pulse of mean photon number mu.
std::array<double, 2> poisson_gains(double mu, double p0, double eta, double p_dark);

/// Per-category observations, indexed [state][Bob basis][outcome]. All entries
/// are conditional on Alice sending that state and Bob choosing that basis.
using CategoryTable = std::array<std::array<std::array<double, 2>, 3>, 4>;

enum class Intensity : int { signal = 0, decoy = 1, vacuum = 2 };
inline constexpr std::size_t index(Intensity k) { return static_cast<std::size_t>(k); }

struct Intensities {
  double mu = 0.5;
  double nu = 0.05;
  /// Throws ParameterError unless mu > nu >= 0.
  void validate() const;
  double value(Intensity k) const;
};

struct StatsTable {
  Intensities intensities;
  double transmittance = 0.0;
  /// Exact single-photon yields; used only by oracles and tests.
  CategoryTable single_photon{};
  /// Gains per intensity, indexed by Intensity.
  std::array<CategoryTable, 3> gains{};

  double single_photon_yield(StateLabel a, Basis b, int s) const;
  double gain(StateLabel a, Basis b, int s, Intensity k) const;
  /// Sifted-basis gain: Alice's states of `alice` measured by Bob in `bob`,
  /// averaged over Alice's states in that basis and summed over outcomes.
  double basis_gain(Basis alice, Basis bob, Intensity k) const;
  /// Probability mass of outcomes disagreeing with Alice's bit, same averaging.
  double basis_error_gain(Basis alice, Basis bob, Intensity k) const;
  double error_rate(Basis alice, Basis bob, Intensity k) const;
};

/// Single-photon yields of the four qubit parts for every Bob basis and outcome.
CategoryTable single_photon_yields(const std::array<EmittedState, 4>& states,
                                   const ChannelParams& ch);

/// Poisson-mixed statistics for the signal, weak decoy and vacuum intensities.
StatsTable wcs_statistics(const std::array<EmittedState, 4>& states,
                          const ChannelParams& ch, const Intensities& intensities);

}  // namespace glt
