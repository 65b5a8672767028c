#include "glt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "glt/errors.hpp"

namespace glt {

void ChannelParams::validate() const {
  if (!(distance_km >= 0.0) || !std::isfinite(distance_km))
    throw ParameterError("channel distance must be finite and >= 0");
  if (!(alpha_db_per_km >= 0.0) || !std::isfinite(alpha_db_per_km))
    throw ParameterError("channel alpha must be finite and >= 0");
  if (!(eta_det >= 0.0 && eta_det <= 1.0))
    throw ParameterError("detector efficiency must lie in [0, 1]");
  if (!(p_dark >= 0.0 && p_dark <= 1.0))
    throw ParameterError("dark-count probability must lie in [0, 1]");
  if (!std::isfinite(omega)) throw ParameterError("omega must be finite");
}

double transmittance(const ChannelParams& ch) {
  return ch.eta_det * std::pow(10.0, -ch.alpha_db_per_km * ch.distance_km / 10.0);
}

BlochVector bob_measurement_bloch(Basis beta, int s, double omega) {
  const double sign = s == 0 ? 1.0 : -1.0;
  const double c = std::cos(omega), sn = std::sin(omega);
  switch (beta) {
    case Basis::Z: return {1.0, 0.0, 0.0, sign};
    case Basis::X: return {1.0, sign * c, sign * sn, 0.0};
    case Basis::Y: return {1.0, -sign * sn, sign * c, 0.0};
  }
  throw DomainError("bob_measurement_bloch: unknown basis");
}

std::array<double, 2> outcome_probabilities(double silent0, double silent1,
                                            double silent_both) {
  // P(s only) + P(both)/2 = (1 + P(other silent) - P(s silent) - P(both silent))/2
  const double base = 1.0 - silent_both;
  return {0.5 * (base + silent1 - silent0), 0.5 * (base + silent0 - silent1)};
}

std::array<double, 2> n_photon_yields(int n, double p0, double eta, double p_dark) {
  const double dark_silent = 1.0 - p_dark;
  const double p1 = 1.0 - p0;
  return outcome_probabilities(
      dark_silent * std::pow(1.0 - eta * p0, n),
      dark_silent * std::pow(1.0 - eta * p1, n),
      dark_silent * dark_silent * std::pow(1.0 - eta, n));
}

std::array<double, 2> poisson_gains(double mu, double p0, double eta, double p_dark) {
  const double dark_silent = 1.0 - p_dark;
  const double p1 = 1.0 - p0;
  return outcome_probabilities(dark_silent * std::exp(-mu * eta * p0),
                               dark_silent * std::exp(-mu * eta * p1),
                               dark_silent * dark_silent * std::exp(-mu * eta));
}

void Intensities::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(nu) || !(nu >= 0.0) || !(mu > nu))
    throw ParameterError("intensities must satisfy mu > nu >= 0");
}

double Intensities::value(Intensity k) const {
  switch (k) {
    case Intensity::signal: return mu;
    case Intensity::decoy: return nu;
    case Intensity::vacuum: return 0.0;
  }
  return 0.0;
}

namespace {

/// Probability that the qubit part of `state` projects onto outcome 0.
double projection_probability(const EmittedState& state, Basis beta, double omega) {
  const BlochVector n = bob_measurement_bloch(beta, 0, omega);
  const double p = 0.5 * state.bloch.dot(n);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

CategoryTable single_photon_yields(const std::array<EmittedState, 4>& states,
                                   const ChannelParams& ch) {
  ch.validate();
  const double eta = transmittance(ch);
  CategoryTable table{};
  for (const auto& st : states)
    for (Basis b : {Basis::Z, Basis::X, Basis::Y})
      table[index(st.label)][index(b)] =
          n_photon_yields(1, projection_probability(st, b, ch.omega), eta, ch.p_dark);
  return table;
}

StatsTable wcs_statistics(const std::array<EmittedState, 4>& states,
                          const ChannelParams& ch, const Intensities& intensities) {
  intensities.validate();
  StatsTable out;
  out.intensities = intensities;
  out.transmittance = transmittance(ch);
  out.single_photon = single_photon_yields(states, ch);
  for (Intensity k : {Intensity::signal, Intensity::decoy, Intensity::vacuum})
    for (const auto& st : states)
      for (Basis b : {Basis::Z, Basis::X, Basis::Y})
        out.gains[index(k)][index(st.label)][index(b)] =
            poisson_gains(intensities.value(k), projection_probability(st, b, ch.omega),
                          out.transmittance, ch.p_dark);
  return out;
}

double StatsTable::single_photon_yield(StateLabel a, Basis b, int s) const {
  return single_photon[index(a)][index(b)][static_cast<std::size_t>(s)];
}

double StatsTable::gain(StateLabel a, Basis b, int s, Intensity k) const {
  return gains[index(k)][index(a)][index(b)][static_cast<std::size_t>(s)];
}

namespace {

/// Alice's states in a basis together with the bit each one encodes.
struct BasisMember {
  StateLabel label;
  int bit;
};

std::span<const BasisMember> members(Basis alice) {
  static constexpr BasisMember kZ[] = {{StateLabel::k0Z, 0}, {StateLabel::k1Z, 1}};
  static constexpr BasisMember kX[] = {{StateLabel::k0X, 0}};
  static constexpr BasisMember kY[] = {{StateLabel::k0Y, 0}};
  switch (alice) {
    case Basis::Z: return kZ;
    case Basis::X: return kX;
    case Basis::Y: return kY;
  }
  throw DomainError("unknown basis");
}

}  // namespace

double StatsTable::basis_gain(Basis alice, Basis bob, Intensity k) const {
  const auto list = members(alice);
  double sum = 0.0;
  for (const auto& m : list) sum += gain(m.label, bob, 0, k) + gain(m.label, bob, 1, k);
  return sum / static_cast<double>(list.size());
}

double StatsTable::basis_error_gain(Basis alice, Basis bob, Intensity k) const {
  const auto list = members(alice);
  double sum = 0.0;
  for (const auto& m : list) sum += gain(m.label, bob, 1 - m.bit, k);
  return sum / static_cast<double>(list.size());
}

double StatsTable::error_rate(Basis alice, Basis bob, Intensity k) const {
  const double q = basis_gain(alice, bob, k);
  if (!(q > 0.0)) throw UndefinedStatistics("error_rate: zero gain");
  return basis_error_gain(alice, bob, k) / q;
}

}  // namespace glt
