#include "glt/rate.hpp"

#include <algorithm>
#include <cmath>

#include "glt/errors.hpp"
#include "glt/qubit_math.hpp"

namespace glt {

const char* to_string(Mode m) {
  return m == Mode::asymptotic ? "asymptotic" : "finite";
}

void ProtocolParams::validate(bool check_mu) const {
  if (check_mu) intensities().validate();
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw ParameterError("decoy intensity nu must be positive");
  if (!(n_pulses > 0.0)) throw ParameterError("n_pulses must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (!(f_ec >= 1.0) || !std::isfinite(f_ec)) throw ParameterError("f_ec must be >= 1");
  for (double p : {p_signal, p_decoy, p_vacuum})
    if (!(p > 0.0 && p <= 1.0))
      throw ParameterError("intensity probabilities must lie in (0, 1]");
  if (std::abs(p_signal + p_decoy + p_vacuum - 1.0) > 1e-9)
    throw ParameterError("intensity probabilities must sum to 1");
}

double ProtocolParams::intensity_probability(Intensity k) const {
  switch (k) {
    case Intensity::signal: return p_signal;
    case Intensity::decoy: return p_decoy;
    case Intensity::vacuum: return p_vacuum;
  }
  return 0.0;
}

double bob_basis_probability(Basis b) { return b == Basis::Z ? 0.5 : 0.25; }

double finite_key_adjust(double value, double n_samples, double epsilon, Direction dir) {
  if (!(n_samples > 0.0)) throw DomainError("finite_key_adjust: n_samples must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("finite_key_adjust: epsilon outside (0, 1)");
  const double dev = std::isinf(n_samples)
                         ? 0.0
                         : std::sqrt(std::log(1.0 / epsilon) / (2.0 * n_samples));
  const double shifted = dir == Direction::upper ? value + dev : value - dev;
  return std::clamp(shifted, 0.0, 1.0);
}

GainBounds category_gain_bounds(const std::array<double, 3>& gains, double category_pulses,
                                const ProtocolParams& params, Mode mode) {
  const std::array<Intensity, 3> ks{Intensity::signal, Intensity::decoy, Intensity::vacuum};
  std::array<Interval, 3> out{};
  double mixed = 0.0;
  for (Intensity k : ks) mixed += params.intensity_probability(k) * gains[index(k)];
  const double detections = category_pulses * mixed;

  for (Intensity k : ks) {
    const double q = gains[index(k)];
    const double pk = params.intensity_probability(k);
    if (mode == Mode::asymptotic) {
      out[index(k)] = Interval::point(q);
    } else if (!(detections > 0.0)) {
      out[index(k)] = {0.0, 1.0};
    } else {
      const double share = pk * q / mixed;
      const double lo = finite_key_adjust(share, detections, params.epsilon, Direction::lower);
      const double hi = finite_key_adjust(share, detections, params.epsilon, Direction::upper);
      out[index(k)] = Interval{lo * mixed / pk, hi * mixed / pk}.clamped(0.0, 1.0);
    }
  }
  return {out[0], out[1], out[2]};
}

Interval decoy_single_photon_yield(const GainBounds& g, double mu, double nu) {
  if (!(mu > nu) || !(nu > 0.0) || !(mu * nu - nu * nu > 0.0))
    throw ParameterError("decoy bounds need mu > nu > 0");
  const double mu2 = mu * mu, nu2 = nu * nu;
  const double lower = mu / (mu * nu - nu2) *
                       (g.decoy.lo * std::exp(nu) - g.signal.hi * std::exp(mu) * nu2 / mu2 -
                        (mu2 - nu2) / mu2 * g.vacuum.hi);
  const double upper = (g.decoy.hi * std::exp(nu) - g.vacuum.lo) / nu;
  return {std::clamp(lower, 0.0, 1.0), std::clamp(upper, 0.0, 1.0)};
}

double decoy_single_photon_error(const GainBounds& error_gains, double nu, double y1_lower) {
  if (!(y1_lower > 0.0)) return 1.0;
  const double num = error_gains.decoy.hi * std::exp(nu) - error_gains.vacuum.lo;
  return std::clamp(num / (nu * y1_lower), 0.0, 1.0);
}

DecoyEstimate decoy_single_photon_bounds(const StatsTable& stats, const ProtocolParams& params,
                                         Mode mode) {
  params.validate();
  const double mu = params.mu, nu = params.nu;
  DecoyEstimate est;
  const int per_category = mode == Mode::finite ? 6 : 0;

  auto gains_of = [&](auto&& fn) {
    return std::array<double, 3>{fn(Intensity::signal), fn(Intensity::decoy),
                                 fn(Intensity::vacuum)};
  };

  // Sifted Z basis: Alice picks Z with 1/2, Bob with 1/2.
  const double zz_pulses = params.n_pulses * 0.5 * bob_basis_probability(Basis::Z);
  const auto zz = category_gain_bounds(
      gains_of([&](Intensity k) { return stats.basis_gain(Basis::Z, Basis::Z, k); }),
      zz_pulses, params, mode);
  const auto zz_err = category_gain_bounds(
      gains_of([&](Intensity k) { return stats.basis_error_gain(Basis::Z, Basis::Z, k); }),
      zz_pulses, params, mode);
  est.deviation_terms += 2 * per_category;

  est.y1_zz_lower = decoy_single_photon_yield(zz, mu, nu).lo;
  est.q1_zz_lower = est.y1_zz_lower * mu * std::exp(-mu);
  est.e1_zz_upper = decoy_single_photon_error(zz_err, nu, est.y1_zz_lower);

  for (StateLabel a : kAllStates)
    for (Basis b : {Basis::X, Basis::Y}) {
      const double pulses = params.n_pulses * kAliceStateProbability * bob_basis_probability(b);
      for (int s = 0; s < 2; ++s) {
        const auto g = category_gain_bounds(
            gains_of([&](Intensity k) { return stats.gain(a, b, s, k); }), pulses, params, mode);
        est.yields[index(a)][index(b)][static_cast<std::size_t>(s)] =
            decoy_single_photon_yield(g, mu, nu);
        est.deviation_terms += per_category;
      }
    }
  return est;
}

KeyRatePoint secret_key_rate(const StatsTable& stats, const SecuritySummary& summary,
                             const DecoyEstimate& decoy, const ProtocolParams& params) {
  KeyRatePoint p;
  p.mu_opt = params.mu;
  p.summary = summary;
  p.q1_zz_lower = decoy.q1_zz_lower;
  p.gain_zz = stats.basis_gain(Basis::Z, Basis::Z, Intensity::signal);
  p.e_zz_observed = p.gain_zz > 0.0 ? stats.error_rate(Basis::Z, Basis::Z, Intensity::signal) : 0.0;
  p.failure_budget = decoy.deviation_terms * params.epsilon;
  if (summary.aborted()) return p;
  const double r = decoy.q1_zz_lower * (1.0 - summary.i_eve_upper) -
                   p.gain_zz * params.f_ec * binary_entropy(std::clamp(p.e_zz_observed, 0.0, 1.0));
  p.rate = std::max(r, 0.0);
  return p;
}

KeyRatePoint evaluate_key_rate(const CoefficientSet& coeffs, const ChannelParams& ch,
                               const ProtocolParams& params, Mode mode) {
  const StatsTable stats = wcs_statistics(coeffs.states, ch, params.intensities());
  const DecoyEstimate decoy = decoy_single_photon_bounds(stats, params, mode);
  SecuritySummary summary;
  summary.e_zz_upper = decoy.e1_zz_upper;
  if (decoy.e1_zz_upper >= kMaxBitError) {
    summary.abort = AbortReason::bit_error;
  } else {
    summary = evaluate_security(coeffs, decoy.yields, decoy.e1_zz_upper);
  }
  KeyRatePoint p = secret_key_rate(stats, summary, decoy, params);
  p.distance_km = ch.distance_km;
  return p;
}

IntensityMaximum maximize_over_intensity(const std::function<double(double)>& rate,
                                         double floor, const IntensitySearch& search) {
  IntensityMaximum best;
  auto consider = [&](double mu) {
    if (!(mu > floor) || mu > search.upper) return;
    const double r = rate(mu);
    if (r > best.rate || (r == best.rate && r > 0.0 && mu < best.mu)) best = {mu, r};
  };
  const double h = search.upper / search.grid_points;
  for (int i = 1; i <= search.grid_points; ++i) consider(h * i);
  if (best.rate > 0.0 && search.refine_points > 0) {
    const double centre = best.mu;
    const int half = search.refine_points / 2;
    for (int k = -half; k <= half; ++k)
      if (k != 0) consider(centre + h * k / (half + 1));
  }
  if (!(best.rate > 0.0)) return {};
  return best;
}

KeyRatePoint optimize_intensity(const CoefficientSet& coeffs, const ChannelParams& ch,
                                const ProtocolParams& params, Mode mode,
                                const IntensitySearch& search) {
  params.validate(false);
  std::optional<KeyRatePoint> first;
  KeyRatePoint best_point;
  const auto best = maximize_over_intensity(
      [&](double mu) {
        ProtocolParams p = params;
        p.mu = mu;
        KeyRatePoint kp = evaluate_key_rate(coeffs, ch, p, mode);
        if (!first) first = kp;
        if (kp.rate > best_point.rate || (kp.rate == best_point.rate && kp.rate > 0.0 &&
                                          mu < best_point.mu_opt))
          best_point = kp;
        return kp.rate;
      },
      params.nu, search);
  if (best.mu == kNoIntensity) {
    KeyRatePoint none = first.value_or(KeyRatePoint{});
    none.rate = 0.0;
    none.mu_opt = kNoIntensity;
    none.distance_km = ch.distance_km;
    return none;
  }
  return best_point;
}

std::vector<double> DistanceGrid::points() const {
  if (!(step > 0.0)) throw ParameterError("distance step must be positive");
  std::vector<double> out;
  if (stop < start) return out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

KeyRatePoint evaluate_scenario(const CoefficientSet& coeffs, const Scenario& scenario,
                               double distance_km) {
  ChannelParams ch = scenario.channel;
  ch.distance_km = distance_km;
  ch.validate();
  if (scenario.fixed_mu) {
    ProtocolParams p = scenario.protocol;
    p.mu = *scenario.fixed_mu;
    return evaluate_key_rate(coeffs, ch, p, scenario.mode);
  }
  return optimize_intensity(coeffs, ch, scenario.protocol, scenario.mode);
}

std::vector<KeyRatePoint> sweep_distance(const Scenario& scenario, const DistanceGrid& grid) {
  const CoefficientSet coeffs = build_coefficients(scenario.source);
  std::vector<KeyRatePoint> out;
  for (double d : grid.points()) out.push_back(evaluate_scenario(coeffs, scenario, d));
  return out;
}

}  // namespace glt
