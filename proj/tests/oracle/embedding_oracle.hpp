#pragma once
// Brute-force reference model: every emitted single-photon state is written out
// as an explicit vector on qubit (2) x polarisation mode H/V (2) x Eve's
// back-reflection space (vacuum plus one orthogonal state per prepared state, 5),
// and every yield is a plain inner product <psi|D|psi>. Nothing here calls the
// closed-form coefficient code.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "glt/source.hpp"

namespace oracle {

using cd = std::complex<double>;
using Vec = Eigen::Matrix<cd, 20, 1>;
using Op = Eigen::Matrix<cd, 20, 20>;
using Qubit = Eigen::Vector2cd;
using QubitOp = Eigen::Matrix2cd;

constexpr int kModeH = 0, kModeV = 1;
constexpr int kVacuum = 0;

inline int slot(int qubit, int mode, int eve) { return qubit * 10 + mode * 5 + eve; }

inline Vec embed(const Qubit& q, int mode, int eve) {
  Vec v = Vec::Zero();
  v(slot(0, mode, eve)) = q(0);
  v(slot(1, mode, eve)) = q(1);
  return v;
}

/// Flawed qubit states written directly from the encoder model.
inline std::array<Qubit, 4> flawed_qubits(const glt::SourceSpec& s) {
  constexpr double pi = std::numbers::pi;
  const cd i(0.0, 1.0);
  std::array<Qubit, 4> out;
  out[0] << std::cos(s.delta_im1 / 2), std::sin(s.delta_im1 / 2);
  out[1] << std::sin(s.delta_im2 / 2), std::cos(s.delta_im2 / 2);
  out[2] << std::sin(pi / 4 + s.delta_bs1 / 2),
      std::cos(pi / 4 + s.delta_bs1 / 2) * std::exp(i * s.delta_pm1);
  out[3] << std::sin(pi / 4 + s.delta_bs2 / 2),
      std::cos(pi / 4 + s.delta_bs2 / 2) * std::exp(i * (pi / 2 + s.delta_pm2));
  return out;
}

inline std::array<double, 4> thetas(const glt::SourceSpec& s) {
  constexpr double pi = std::numbers::pi;
  const double t = s.theta_mode.value;
  if (s.theta_mode.kind == glt::ThetaMode::Kind::independent) return {t, t, t, t};
  return {(s.delta_im1 / 2 + pi) * t, (s.delta_im2 / 2 + pi) * t, s.delta_pm1 * t,
          (s.delta_pm2 + pi / 2) * t};
}

struct Emission {
  Vec gamma;       ///< robust part: H mode, Eve in vacuum
  Vec gamma_perp;  ///< everything else
  Vec full() const { return gamma + gamma_perp; }
};

class Embedding {
 public:
  explicit Embedding(const glt::SourceSpec& spec) : spec_(spec) {
    const auto q = flawed_qubits(spec);
    const auto th = thetas(spec);
    const double ti = std::exp(-spec.gamma / 2);
    const double td = std::sqrt(1.0 - std::exp(-spec.gamma));
    for (int a = 0; a < 4; ++a) {
      const double c = std::cos(th[a]), s = std::sin(th[a]);
      const int e = a + 1;
      qubits_[a] = q[a];
      em_[a].gamma = c * ti * embed(q[a], kModeH, kVacuum);
      em_[a].gamma_perp = c * td * embed(q[a], kModeH, e) +
                          s * ti * embed(q[a], kModeV, kVacuum) +
                          s * td * embed(q[a], kModeV, e);
    }
  }

  const Qubit& qubit(int a) const { return qubits_[a]; }
  const Emission& emission(int a) const { return em_[a]; }

  /// Unnormalised state Bob receives when Alice's half of the Z-basis
  /// entangled state gives outcome j in basis X or Y: (Phi_0Z + z Phi_1Z)/2.
  Emission virtual_state(glt::Basis alice, int j) const {
    const double sign = j == 0 ? 1.0 : -1.0;
    const cd z = alice == glt::Basis::X ? cd(sign, 0) : cd(0, sign);
    return {0.5 * (em_[0].gamma + z * em_[1].gamma),
            0.5 * (em_[0].gamma_perp + z * em_[1].gamma_perp)};
  }

 private:
  glt::SourceSpec spec_;
  std::array<Qubit, 4> qubits_;
  std::array<Emission, 4> em_;
};

inline double expect(const Op& d, const Vec& v) { return (v.adjoint() * d * v)(0, 0).real(); }

/// D_q acting on the qubit, identity on mode and Eve.
inline Op lift(const QubitOp& dq) {
  Op d = Op::Zero();
  for (int m = 0; m < 2; ++m)
    for (int e = 0; e < 5; ++e)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) d(slot(r, m, e), slot(c, m, e)) = dq(r, c);
  return d;
}

/// Compression of D onto the robust subspace (qubit, H, vacuum).
inline QubitOp compress(const Op& d) {
  QubitOp out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = d(slot(r, kModeH, kVacuum), slot(c, kModeH, kVacuum));
  return out;
}

/// (Tr D, Tr D X, Tr D Y, Tr D Z) / 2.
inline Eigen::Vector4d transmission_rates(const QubitOp& d) {
  return {0.5 * (d(0, 0) + d(1, 1)).real(), d(0, 1).real(), -d(0, 1).imag(),
          0.5 * (d(0, 0) - d(1, 1)).real()};
}

inline double expect(const QubitOp& d, const Qubit& v) { return (v.adjoint() * d * v)(0, 0).real(); }

/// Random operator with spectrum in [0, 1].
template <int N, typename Rng>
Eigen::Matrix<cd, N, N> random_effect(Rng& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Matrix<cd, N, N> a;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) a(r, c) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::Matrix<cd, N, N>> qr(a);
  const Eigen::Matrix<cd, N, N> unitary = qr.householderQ();
  Eigen::Matrix<cd, N, N> diag = Eigen::Matrix<cd, N, N>::Zero();
  for (int i = 0; i < N; ++i) {
    const double x = u(rng);
    // Push some eigenvalues onto the spectrum edges.
    diag(i, i) = x < 0.15 ? 0.0 : x > 0.85 ? 1.0 : x;
  }
  return unitary * diag * unitary.adjoint();
}

/// Single-photon effective operator of Bob's detection for outcome s.
inline QubitOp detection_operator(glt::Basis beta, int s, double omega, double eta,
                                  double p_dark) {
  const cd i(0.0, 1.0);
  QubitOp sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  const double sign = s == 0 ? 1.0 : -1.0;
  QubitOp n;
  switch (beta) {
    case glt::Basis::Z: n = sz; break;
    case glt::Basis::X: n = std::cos(omega) * sx + std::sin(omega) * sy; break;
    case glt::Basis::Y: n = -std::sin(omega) * sx + std::cos(omega) * sy; break;
  }
  const QubitOp proj = 0.5 * (QubitOp::Identity() + sign * n);
  // Outcome s: click on s alone, or both click and the tie goes to s.
  const double background = 0.5 * eta * p_dark + (1 - eta) * (p_dark - 0.5 * p_dark * p_dark);
  return eta * (1 - p_dark) * proj + background * QubitOp::Identity();
}

}  // namespace oracle
