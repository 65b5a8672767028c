#include "glt/security.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "glt/errors.hpp"
#include "glt/qubit_math.hpp"

namespace glt {

namespace {
constexpr double kYieldTol = 1e-12;
constexpr double kRankTol = 1e-9;
}  // namespace

YieldIntervals exact_yield_intervals(const CategoryTable& yields) {
  YieldIntervals out{};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t s = 0; s < 2; ++s) out[a][b][s] = Interval::point(yields[a][b][s]);
  return out;
}

std::vector<LinearRow> build_inequality_system(const CoefficientSet& coeffs,
                                               const YieldIntervals& yields,
                                               Basis bob, int s) {
  if (s != 0 && s != 1) throw DomainError("build_inequality_system: outcome must be 0 or 1");
  std::vector<LinearRow> rows;
  rows.reserve(11);

  Eigen::Matrix4d q_matrix;
  for (StateLabel label : kAllStates) {
    const auto i = index(label);
    const Interval y = yields[i][index(bob)][static_cast<std::size_t>(s)];
    if (!(y.lo >= -kYieldTol && y.hi <= 1.0 + kYieldTol && y.lo <= y.hi + kYieldTol))
      throw InputError("build_inequality_system: yield interval outside [0, 1]");
    const auto& k = coeffs.practical[i];
    LinearRow row;
    row.normal = k.M * coeffs.states[i].bloch;
    row.lo = y.lo - k.lambda_max;
    row.hi = y.hi - k.lambda_min;
    q_matrix.row(static_cast<Eigen::Index>(i)) = row.normal.transpose();
    rows.push_back(row);
  }
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4d>(q_matrix).singularValues();
  if (!(sv(0) > 0.0) || sv(3) < kRankTol * sv(0))
    throw DegenerateSystem("build_inequality_system: prepared states do not span the Bloch space");

  // 0 <= q_I <= 1 and |q_t| <= min(q_I, 1 - q_I).
  rows.push_back({Eigen::Vector4d(1, 0, 0, 0), 0.0, 1.0});
  for (int t = kX; t <= kZ; ++t) {
    Eigen::Vector4d minus = Eigen::Vector4d::Zero();
    minus(kI) = -1.0;
    minus(t) = 1.0;
    Eigen::Vector4d plus = Eigen::Vector4d::Zero();
    plus(kI) = 1.0;
    plus(t) = 1.0;
    rows.push_back({minus, -1.0, 0.0});
    rows.push_back({plus, 0.0, 1.0});
  }
  return rows;
}

TransmissionRates transmission_rates(const CoefficientSet& coeffs,
                                     const YieldIntervals& yields, Basis bob, int s) {
  TransmissionRates out{bob, s, Polytope(build_inequality_system(coeffs, yields, bob, s)), {}};
  if (out.region.empty())
    throw InfeasibleRegion("transmission rates: statistics inconsistent with the source model");
  for (int t = 0; t < 4; ++t)
    out.q[static_cast<std::size_t>(t)] = out.region.extrema(Eigen::Vector4d::Unit(t));
  return out;
}

Interval bound_virtual_yield(const VirtualCoefficients& virt, const Polytope& region,
                             double bob_basis_probability) {
  const Interval linear = region.extrema(virt.bloch);
  const double scale = bob_basis_probability / 4.0;
  const double ceiling = bob_basis_probability * virt.probability;
  Interval y{scale * (virt.F * linear.lo + virt.lambda_min),
             scale * (virt.F * linear.hi + virt.lambda_max)};
  return y.clamped(0.0, ceiling);
}

Interval phase_error(const VirtualYieldGrid& y) {
  // y[s][j]: Bob outcome s, Alice virtual outcome j.
  const double err_hi = y[1][0].hi + y[0][1].hi;
  const double err_lo = y[1][0].lo + y[0][1].lo;
  const double ok_hi = y[0][0].hi + y[1][1].hi;
  const double ok_lo = y[0][0].lo + y[1][1].lo;
  const double den_upper = err_hi + ok_lo;
  const double den_lower = err_lo + ok_hi;
  if (!(den_upper > 0.0) || !(den_lower > 0.0))
    throw UndefinedStatistics("phase_error: vanishing virtual yields");
  return Interval{err_lo / den_lower, err_hi / den_upper}.clamped(0.0, 1.0);
}

double c_lower(std::span<const Interval, 4> phase_errors) {
  double c = 0.0;
  for (const auto& e : phase_errors) {
    if (e.lo <= 0.5 && e.hi >= 0.5) continue;
    const double nearest = e.hi < 0.5 ? e.hi : e.lo;
    const double corr = 1.0 - 2.0 * nearest;
    c += corr * corr;
  }
  return c;
}

double c_lower(std::span<const double, 4> phase_errors) {
  std::array<Interval, 4> iv{};
  for (std::size_t i = 0; i < 4; ++i) iv[i] = Interval::point(phase_errors[i]);
  return c_lower(std::span<const Interval, 4>(iv));
}

std::optional<EveInformation> eve_information(double c_lower, double e_zz_upper) {
  if (!(c_lower >= 0.0) || !(e_zz_upper >= 0.0) || e_zz_upper > 1.0)
    throw DomainError("eve_information: arguments out of range");
  if (e_zz_upper >= kMaxBitError) return std::nullopt;

  const double half_c = c_lower / 2.0;
  const double keep = 1.0 - e_zz_upper;
  EveInformation out;
  out.v_max = std::min(std::sqrt(half_c) / keep, 1.0);
  double second = 0.0;
  if (e_zz_upper > 0.0) {
    const double rest = std::max(half_c - keep * keep * out.v_max * out.v_max, 0.0);
    out.f_v_max = std::min(std::sqrt(rest) / e_zz_upper, 1.0);
    second = e_zz_upper * binary_entropy((1.0 + out.f_v_max) / 2.0);
  }
  out.i_eve = std::clamp(keep * binary_entropy((1.0 + out.v_max) / 2.0) + second, 0.0, 1.0);
  return out;
}

const char* to_string(AbortReason r) {
  switch (r) {
    case AbortReason::none: return "none";
    case AbortReason::bit_error: return "bit_error";
    case AbortReason::infeasible: return "infeasible";
    case AbortReason::undefined_statistics: return "undefined_statistics";
  }
  return "?";
}

double SecuritySummary::phase_error_upper(Basis alice, Basis bob) const {
  if (alice == Basis::Z || bob == Basis::Z)
    throw DomainError("phase_error_upper: phase errors exist for X/Y pairs only");
  return phase_error[alice == Basis::X ? 0 : 1][bob == Basis::X ? 0 : 1].hi;
}

SecuritySummary evaluate_security(const CoefficientSet& coeffs,
                                  const YieldIntervals& yields, double e_zz_upper) {
  SecuritySummary out;
  out.e_zz_upper = e_zz_upper;
  try {
    std::array<Interval, 4> flat{};
    for (int b = 0; b < 2; ++b) {
      const Basis bob = b == 0 ? Basis::X : Basis::Y;
      const std::array<TransmissionRates, 2> rates{
          transmission_rates(coeffs, yields, bob, 0),
          transmission_rates(coeffs, yields, bob, 1)};
      for (int a = 0; a < 2; ++a) {
        const Basis alice = a == 0 ? Basis::X : Basis::Y;
        VirtualYieldGrid grid{};
        for (int s = 0; s < 2; ++s)
          for (int j = 0; j < 2; ++j)
            grid[s][j] = bound_virtual_yield(coeffs.virtual_branch(alice, j), rates[s].region);
        out.phase_error[a][b] = phase_error(grid);
        flat[static_cast<std::size_t>(2 * a + b)] = out.phase_error[a][b];
      }
    }
    out.c_lower = c_lower(std::span<const Interval, 4>(flat));
  } catch (const InfeasibleRegion&) {
    out.abort = AbortReason::infeasible;
    return out;
  } catch (const UndefinedStatistics&) {
    out.abort = AbortReason::undefined_statistics;
    return out;
  }

  const auto eve = eve_information(std::min(out.c_lower, 4.0), std::clamp(e_zz_upper, 0.0, 1.0));
  if (!eve) {
    out.abort = AbortReason::bit_error;
    return out;
  }
  out.v_max = eve->v_max;
  out.i_eve_upper = eve->i_eve;
  return out;
}

}  // namespace glt
