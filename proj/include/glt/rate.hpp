#pragma once
// Decoy-state estimation, finite-size corrections, the secret key rate, the
// intensity search and distance sweeps.

#include <functional>
#include <optional>
#include <vector>

#include "glt/channel.hpp"
#include "glt/interval.hpp"
#include "glt/security.hpp"
#include "glt/source.hpp"

namespace glt {

enum class Mode { asymptotic, finite };
const char* to_string(Mode m);

struct ProtocolParams {
  double mu = 0.5;  ///< signal intensity
  double nu = 0.05;  ///< weak decoy intensity
  double n_pulses = 1e10;
  double epsilon = 1e-10;
  double f_ec = 1.22;
  /// Probabilities of sending the signal, decoy and vacuum intensities.
  double p_signal = 0.7;
  double p_decoy = 0.2;
  double p_vacuum = 0.1;

  /// Throws ParameterError; `check_mu` is false while mu is being searched.
  void validate(bool check_mu = true) const;
  Intensities intensities() const { return {mu, nu}; }
  double intensity_probability(Intensity k) const;
};

/// Alice sends each of her four states with probability 1/4.
inline constexpr double kAliceStateProbability = 0.25;
/// Bob measures Z, X, Y with probabilities 1/2, 1/4, 1/4.
double bob_basis_probability(Basis b);

enum class Direction { lower, upper };

/// value -/+ sqrt(ln(1/epsilon) / (2 n)), clamped to [0, 1].
double finite_key_adjust(double value, double n_samples, double epsilon, Direction dir);

/// Bounds on the gains of one category at the three intensities.
struct GainBounds {
  Interval signal;
  Interval decoy;
  Interval vacuum;
};

/// Gain bounds for one category. In finite mode the share of the category's
/// detections attributed to each intensity is widened by finite_key_adjust,
/// with the detection count as sample size.
GainBounds category_gain_bounds(const std::array<double, 3>& gains, double category_pulses,
                                const ProtocolParams& params, Mode mode);

/// Vacuum + weak decoy single-photon yield bounds:
///   Y1 >= mu / (mu nu - nu^2) (Q_nu e^nu - Q_mu e^mu nu^2/mu^2 - (mu^2 - nu^2)/mu^2 Y0)
///   Y1 <= (Q_nu e^nu - Y0) / nu
/// Throws ParameterError unless mu > nu > 0.
Interval decoy_single_photon_yield(const GainBounds& g, double mu, double nu);

/// Upper bound on the single-photon error rate from the decoy error gains:
///   e1 <= (E_nu Q_nu e^nu - Y0_err) / (nu Y1_lo), clamped to [0, 1].
double decoy_single_photon_error(const GainBounds& error_gains, double nu, double y1_lower);

struct DecoyEstimate {
  double y1_zz_lower = 0.0;
  double q1_zz_lower = 0.0;  ///< Y1_lo mu e^{-mu}
  double e1_zz_upper = 1.0;
  YieldIntervals yields{};   ///< X/Y-basis single-photon yield bounds
  int deviation_terms = 0;   ///< number of finite-size corrections applied
};

DecoyEstimate decoy_single_photon_bounds(const StatsTable& stats, const ProtocolParams& params,
                                         Mode mode);

struct KeyRatePoint {
  double distance_km = 0.0;
  double rate = 0.0;  ///< secret bits per pulse, clamped at 0
  double mu_opt = 0.0;
  double q1_zz_lower = 0.0;
  double gain_zz = 0.0;
  double e_zz_observed = 0.0;
  /// Summed failure probability of the finite-size corrections.
  double failure_budget = 0.0;
  SecuritySummary summary;
};

/// Mu reported when no intensity yields a positive rate.
inline constexpr double kNoIntensity = 0.0;

/// R = Q1_lo (1 - I_E) - Q_mu f_ec h(E_mu), zero when the summary aborted.
KeyRatePoint secret_key_rate(const StatsTable& stats, const SecuritySummary& summary,
                             const DecoyEstimate& decoy, const ProtocolParams& params);

/// Full pipeline at the fixed intensity params.mu.
KeyRatePoint evaluate_key_rate(const CoefficientSet& coeffs, const ChannelParams& ch,
                               const ProtocolParams& params, Mode mode);

struct IntensitySearch {
  int grid_points = 200;
  int refine_points = 20;
  double upper = 1.0;
};

struct IntensityMaximum {
  double mu = kNoIntensity;
  double rate = 0.0;
};

/// Grid search over (floor, upper] followed by a refinement pass around the
/// best grid point; ties resolve to the smaller intensity. Returns kNoIntensity
/// when no rate is positive.
IntensityMaximum maximize_over_intensity(const std::function<double(double)>& rate,
                                         double floor, const IntensitySearch& search = {});

/// Key rate at the best signal intensity; params.mu is ignored.
KeyRatePoint optimize_intensity(const CoefficientSet& coeffs, const ChannelParams& ch,
                                const ProtocolParams& params, Mode mode,
                                const IntensitySearch& search = {});

struct DistanceGrid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

struct Scenario {
  SourceSpec source;
  ChannelParams channel;  ///< distance is overwritten per point
  ProtocolParams protocol;
  Mode mode = Mode::asymptotic;
  /// Fixed signal intensity; the intensity is optimised when empty.
  std::optional<double> fixed_mu;
};

KeyRatePoint evaluate_scenario(const CoefficientSet& coeffs, const Scenario& scenario,
                               double distance_km);

std::vector<KeyRatePoint> sweep_distance(const Scenario& scenario, const DistanceGrid& grid);

}  // namespace glt
