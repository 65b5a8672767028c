#pragma once
// Phase-error bounds for the four-state protocol with non-qubit sources.
//
// Bob's (unknown) effective operator for outcome s in basis beta enters only
// through its transmission rates q = (q_I, q_X, q_Y, q_Z), q_t = Tr(D sigma_t)/2,
// restricted to the qubit subspace. Each of Alice's four practical states
// contributes two linear inequalities on q; the remainder of the emitted state
// is absorbed into the eigenvalue slack of its coefficient matrix. The virtual
// yields, and from them the phase errors, C and Eve's information, are then
// bounded over the resulting polytope.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "glt/channel.hpp"
#include "glt/interval.hpp"
#include "glt/polytope.hpp"
#include "glt/source.hpp"

namespace glt {

/// Largest single-photon Z bit error for which the Eve-information bound holds.
inline constexpr double kMaxBitError = 0.159;

/// Probability that Bob measures in X (equally, in Y).
inline constexpr double kBobPhaseBasisProbability = 0.25;

/// Single-photon yield intervals, indexed [state][Bob basis][outcome] and
/// conditional on Alice's state and Bob's basis choice.
using YieldIntervals = std::array<std::array<std::array<Interval, 2>, 3>, 4>;

/// Zero-width intervals around exactly known yields.
YieldIntervals exact_yield_intervals(const CategoryTable& yields);

/// Two-sided rows on q for Bob's outcome s in basis beta: one per practical
/// state, y_lo - lambda_max <= M (V . q) <= y_hi - lambda_min, followed by the
/// linear relaxation |q_t| <= min(q_I, 1 - q_I) of 0 <= D <= 1.
/// Throws InputError for yields outside [0, 1] and DegenerateSystem when the
/// state rows are not linearly independent.
std::vector<LinearRow> build_inequality_system(const CoefficientSet& coeffs,
                                               const YieldIntervals& yields,
                                               Basis bob, int s);

struct TransmissionRates {
  Basis bob = Basis::X;
  int outcome = 0;
  Polytope region;
  /// Per-component ranges of (q_I, q_X, q_Y, q_Z) over the region.
  std::array<Interval, 4> q{};
};

/// Builds the region and its component ranges; throws InfeasibleRegion if empty.
TransmissionRates transmission_rates(const CoefficientSet& coeffs,
                                     const YieldIntervals& yields, Basis bob, int s);

/// Interval for the joint probability that Alice's virtual outcome is j and
/// Bob reports s in the basis whose rates span `region`:
///   p_bob * [F (V_vir . q) + lambda] / 4,
/// with lambda at its smallest (largest) eigenvalue for the lower (upper) end.
/// Dividing F and lambda by F + H = 4 P_j rewrites this as
/// p_bob P_j [F' (V_vir . q) + lambda'], the normalised-state form.
Interval bound_virtual_yield(const VirtualCoefficients& virt, const Polytope& region,
                             double bob_basis_probability = kBobPhaseBasisProbability);

/// Virtual-yield intervals indexed [s][j].
using VirtualYieldGrid = std::array<std::array<Interval, 2>, 2>;

/// Phase-error interval: the upper end maximises the error yields and
/// minimises the correct ones independently, the lower end does the reverse.
/// Throws UndefinedStatistics when a denominator is not positive.
Interval phase_error(const VirtualYieldGrid& y);

/// Sum over the four X/Y basis pairs of min over each interval of (1 - 2E)^2.
double c_lower(std::span<const Interval, 4> phase_errors);
/// Point-valued convenience form.
double c_lower(std::span<const double, 4> phase_errors);

struct EveInformation {
  double v_max = 0.0;
  double f_v_max = 0.0;
  double i_eve = 1.0;
};

/// Upper bound on Eve's information per sifted bit from C^L and the single-photon
/// Z bit error bound. Returns nullopt (abort) when e_zz_upper >= kMaxBitError.
std::optional<EveInformation> eve_information(double c_lower, double e_zz_upper);

enum class AbortReason { none, bit_error, infeasible, undefined_statistics };
const char* to_string(AbortReason r);

struct SecuritySummary {
  /// Phase-error intervals indexed [Alice basis X/Y][Bob basis X/Y].
  std::array<std::array<Interval, 2>, 2> phase_error{};
  double c_lower = 0.0;
  double e_zz_upper = 0.0;
  double v_max = 0.0;
  double i_eve_upper = 1.0;
  AbortReason abort = AbortReason::none;

  bool aborted() const { return abort != AbortReason::none; }
  double phase_error_upper(Basis alice, Basis bob) const;
};

/// Runs the whole bound chain. Infeasible regions and undefined ratios are
/// reported through `abort` instead of being thrown.
SecuritySummary evaluate_security(const CoefficientSet& coeffs,
                                  const YieldIntervals& yields, double e_zz_upper);

}  // namespace glt
