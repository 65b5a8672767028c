#pragma once
// Two-level algebra used by the bound engine: pure states on {|0_Z>, |1_Z>},
// their Bloch decomposition, closed-form 2x2 Hermitian spectra and the binary
// entropy. Everything is templated on the real scalar so that tests can run the
// same code in long double as an independent high-precision reference.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <utility>

#include "glt/errors.hpp"

namespace glt {

/// Component order of a Bloch vector: identity, then the three Paulis.
enum BlochIndex : int { kI = 0, kX = 1, kY = 2, kZ = 3 };

template <typename Scalar>
using Bloch = Eigen::Matrix<Scalar, 4, 1>;
using BlochVector = Bloch<double>;

/// Pure qubit state with the global phase fixed so that amplitude0 >= 0.
template <typename Scalar>
struct PureQubit {
  Scalar amplitude0{1};
  Scalar amplitude1_re{0};
  Scalar amplitude1_im{0};

  std::complex<Scalar> a0() const { return {amplitude0, Scalar(0)}; }
  std::complex<Scalar> a1() const { return {amplitude1_re, amplitude1_im}; }
  Eigen::Matrix<std::complex<Scalar>, 2, 1> ket() const {
    return {a0(), a1()};
  }
};
using PureQubitState = PureQubit<double>;

/// Normalises (a0, a1) and rotates the global phase so that a0 is real and
/// non-negative. When a0 vanishes the phase of a1 is removed instead.
template <typename Scalar>
PureQubit<Scalar> qubit_from_amplitudes(std::complex<Scalar> a0,
                                        std::complex<Scalar> a1) {
  using std::abs;
  using std::sqrt;
  const Scalar norm = sqrt(std::norm(a0) + std::norm(a1));
  if (!(norm > Scalar(0))) throw DomainError("qubit_from_amplitudes: zero vector");
  a0 /= norm;
  a1 /= norm;
  const Scalar m0 = abs(a0);
  if (m0 > Scalar(0)) {
    const std::complex<Scalar> phase = std::conj(a0) / m0;
    return {m0, (a1 * phase).real(), (a1 * phase).imag()};
  }
  return {Scalar(0), abs(a1), Scalar(0)};
}

/// cos(amp_angle)|0_Z> + sin(amp_angle) e^{i phase} |1_Z>.
template <typename Scalar>
PureQubit<Scalar> state_from_angles(Scalar amp_angle, Scalar phase) {
  using std::cos;
  using std::sin;
  return qubit_from_amplitudes<Scalar>(
      {cos(amp_angle), Scalar(0)},
      std::polar(sin(amp_angle), phase));
}

template <typename Scalar>
Bloch<Scalar> bloch_of(const PureQubit<Scalar>& s) {
  const std::complex<Scalar> cross = std::conj(s.a0()) * s.a1();
  return {Scalar(1), Scalar(2) * cross.real(), Scalar(2) * cross.imag(),
          std::norm(s.a0()) - std::norm(s.a1())};
}

/// Bloch vector of an arbitrary (unnormalised) two-component ket.
template <typename Scalar>
Bloch<Scalar> bloch_of(const Eigen::Matrix<std::complex<Scalar>, 2, 1>& ket) {
  return bloch_of(qubit_from_amplitudes(ket(0), ket(1)));
}

/// Real-diagonal 2x2 Hermitian matrix [[a11, a12], [conj(a12), a22]].
template <typename Scalar>
struct Herm2T {
  Scalar a11{0};
  Scalar a22{0};
  Scalar a12_re{0};
  Scalar a12_im{0};

  Scalar trace() const { return a11 + a22; }
  Scalar det() const {
    return a11 * a22 - (a12_re * a12_re + a12_im * a12_im);
  }
};
using Herm2 = Herm2T<double>;

template <typename Scalar>
struct EigenPair {
  Scalar lambda_min;
  Scalar lambda_max;
};

/// Both eigenvalues in closed form. The discriminant is evaluated as
/// (a11-a22)^2 + 4|a12|^2, which equals tr^2 - 4 det without the cancellation.
template <typename Scalar>
EigenPair<Scalar> eig2(const Herm2T<Scalar>& m) {
  using std::sqrt;
  const Scalar half_gap = (m.a11 - m.a22) / Scalar(2);
  const Scalar radius =
      sqrt(half_gap * half_gap + m.a12_re * m.a12_re + m.a12_im * m.a12_im);
  const Scalar centre = m.trace() / Scalar(2);
  return {centre - radius, centre + radius};
}

/// h(x) = -x log2 x - (1-x) log2(1-x) with 0 log 0 = 0.
template <typename Scalar>
Scalar binary_entropy(Scalar x) {
  using std::log2;
  if (!(x >= Scalar(0) && x <= Scalar(1)))
    throw DomainError("binary_entropy: argument outside [0, 1]");
  Scalar h = 0;
  if (x > Scalar(0)) h -= x * log2(x);
  if (x < Scalar(1)) h -= (Scalar(1) - x) * log2(Scalar(1) - x);
  return h;
}

}  // namespace glt
