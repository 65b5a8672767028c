// Worked examples for each operation, with frozen reference values.
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "glt/rate.hpp"

using namespace glt;

namespace {
constexpr double pi = std::numbers::pi;

ChannelParams ideal_channel() {
  ChannelParams ch;
  ch.eta_det = 1.0;
  ch.alpha_db_per_km = 0.0;
  ch.p_dark = 0.0;
  ch.omega = 0.0;
  return ch;
}

Polytope rates_region(Basis bob, int s) {
  const auto set = build_coefficients({});
  const auto y = exact_yield_intervals(single_photon_yields(set.states, ideal_channel()));
  return transmission_rates(set, y, bob, s).region;
}
}  // namespace

TEST_CASE("state_from_angles") {
  const auto a = state_from_angles(0.0, 0.0);
  CHECK(a.amplitude0 == 1.0);
  const auto b = state_from_angles(pi / 2, 0.0);
  CHECK(std::abs(b.amplitude0) < 1e-16);
  CHECK(b.amplitude1_re == doctest::Approx(1.0));
  const auto c = state_from_angles(pi / 4, pi / 2);
  CHECK(c.amplitude0 == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(c.amplitude1_re) < 1e-16);
  CHECK(c.amplitude1_im == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("Bloch vector of the flawed 0X state") {
  for (double bs : {0.0, 0.07, -0.2})
    for (double pm : {0.0, 0.3, pi / 4}) {
      SourceSpec s;
      s.delta_bs1 = bs;
      s.delta_pm1 = pm;
      const auto v = bloch_of(build_flawed_states(s)[2]);
      CHECK(v(kX) == doctest::Approx(std::cos(bs) * std::cos(pm)));
      CHECK(v(kY) == doctest::Approx(std::cos(bs) * std::sin(pm)));
      CHECK(v(kZ) == doctest::Approx(std::sin(bs)));
    }
  SourceSpec im;
  im.delta_im1 = 0.2;
  const auto z0 = build_flawed_states(im)[0];
  CHECK(z0.amplitude0 == doctest::Approx(std::cos(0.1)));
  CHECK(z0.amplitude1_re == doctest::Approx(std::sin(0.1)));
}

TEST_CASE("eig2 examples") {
  const auto id = eig2(Herm2{1.0, 1.0, 0.0, 0.0});
  CHECK(id.lambda_min == 1.0);
  CHECK(id.lambda_max == 1.0);
  const auto k = eig2(Herm2{2.0, 0.0, 1.0, 0.0});
  CHECK(k.lambda_min == doctest::Approx(-0.41421356237).epsilon(1e-10));
  CHECK(k.lambda_max == doctest::Approx(2.41421356237).epsilon(1e-10));
}

TEST_CASE("trojan amplitude values") {
  const auto t = trojan_amplitudes(0.01);
  CHECK(t.t_i == doctest::Approx(0.995012479).epsilon(1e-9));
  CHECK(t.t_d == doctest::Approx(0.099750).epsilon(1e-5));
  const auto big = trojan_amplitudes(50.0);
  CHECK(big.t_i < 1e-10);
  CHECK(big.t_d == doctest::Approx(1.0));
}

TEST_CASE("theta assignment examples") {
  SourceSpec s;
  s.theta_mode = ThetaMode::dependent(0.0);
  for (double t : theta_assignment(s)) CHECK(t == 0.0);
  s.theta_mode = ThetaMode::dependent(1e-3);
  const auto t = theta_assignment(s);
  CHECK(t[2] == 0.0);
  CHECK(t[3] == doctest::Approx(pi / 2 * 1e-3));
}

TEST_CASE("practical coefficient examples") {
  EmittedState st{StateLabel::k0Z, {}, BlochVector(1, 0, 0, 1), 0.0};
  const auto tr = trojan_amplitudes(0.2);
  const auto a = practical_coefficients(st, tr);
  CHECK(a.M == doctest::Approx(tr.t_i * tr.t_i));
  CHECK(a.L == 0.0);
  CHECK(a.N == 0.0);
  CHECK(a.P == doctest::Approx(tr.t_d * tr.t_d));
  CHECK(a.lambda_min == doctest::Approx(0.0));
  CHECK(a.lambda_max == doctest::Approx(tr.t_d * tr.t_d));
  st.theta = pi / 2;
  const auto b = practical_coefficients(st, trojan_amplitudes(0.0));
  CHECK(std::abs(b.M) < 1e-30);
  CHECK(b.L == doctest::Approx(1.0));
  CHECK(b.lambda_min == doctest::Approx(0.0));
  CHECK(b.lambda_max == doctest::Approx(1.0));
}

TEST_CASE("virtual coefficient examples") {
  SourceSpec s;
  s.gamma = 0.05;
  const auto tr = trojan_amplitudes(s.gamma);
  for (int j = 0; j < 2; ++j) {
    const auto v = virtual_coefficients(s, tr, Basis::X, j);
    CHECK(v.F == doctest::Approx(2 * tr.t_i * tr.t_i));
    CHECK(v.H == doctest::Approx(2 * tr.t_d * tr.t_d));
    CHECK(v.G == doctest::Approx(2 * tr.t_i * tr.t_d));
  }
  SourceSpec flawed;
  flawed.delta_im1 = 0.1;
  flawed.delta_im2 = -0.1;
  flawed.theta_mode = ThetaMode::independent(0.01);
  const auto t0 = trojan_amplitudes(0.0);
  CHECK(virtual_coefficients(flawed, t0, Basis::X, 0).F ==
        doctest::Approx(virtual_coefficients(flawed, t0, Basis::X, 1).F));
}

TEST_CASE("channel examples") {
  ChannelParams ch;
  CHECK(transmittance(ch) == doctest::Approx(0.2));
  ch.distance_km = 50.0;
  CHECK(transmittance(ch) == doctest::Approx(0.017825).epsilon(1e-4));
  ch.distance_km = 100.0;
  CHECK(transmittance(ch) == doctest::Approx(0.0015886).epsilon(1e-4));
  CHECK(bob_measurement_bloch(Basis::Z, 0, 1.3)(kZ) == 1.0);
  CHECK(bob_measurement_bloch(Basis::X, 0, 0.0)(kX) == 1.0);

  const auto y = single_photon_yields(emitted_states({}), ideal_channel());
  CHECK(y[0][index(Basis::Z)][0] == 1.0);
  CHECK(y[0][index(Basis::Z)][1] == 0.0);
  CHECK(y[0][index(Basis::X)][0] == doctest::Approx(0.5));
  CHECK(y[0][index(Basis::X)][1] == doctest::Approx(0.5));

  ChannelParams dark;
  dark.eta_det = 0.0;
  const double pd = dark.p_dark;
  const auto d = single_photon_yields(emitted_states({}), dark);
  CHECK(d[2][index(Basis::Y)][1] == doctest::Approx(pd * (1 - pd) + pd * pd / 2));

  const auto g = wcs_statistics(emitted_states({}), ideal_channel(), {0.5, 0.1});
  CHECK(g.basis_gain(Basis::Z, Basis::Z, Intensity::signal) == doctest::Approx(0.39346934));
  CHECK(g.basis_gain(Basis::Z, Basis::Z, Intensity::vacuum) == 0.0);
  const auto tiny = wcs_statistics(emitted_states({}), ch, {1e-9, 0.0});
  CHECK(tiny.basis_gain(Basis::X, Basis::X, Intensity::signal) ==
        doctest::Approx(tiny.basis_gain(Basis::X, Basis::X, Intensity::vacuum)).epsilon(1e-6));
}

TEST_CASE("transmission rates of an ideal X measurement") {
  const auto q = rates_region(Basis::X, 0).vertices();
  REQUIRE(!q.empty());
  for (const auto& v : q) {
    CHECK(v(kI) == doctest::Approx(0.5));
    CHECK(v(kX) == doctest::Approx(0.5));
    CHECK(std::abs(v(kY)) < 1e-9);
    CHECK(std::abs(v(kZ)) < 1e-9);
  }

  YieldIntervals zero{};
  const auto set = build_coefficients({});
  const auto r = transmission_rates(set, zero, Basis::X, 0);
  CHECK(r.region.contains(Eigen::Vector4d::Zero(), 1e-15));
}

TEST_CASE("bound_q_extrema examples") {
  std::vector<LinearRow> box;
  for (int t = 0; t < 4; ++t) box.push_back({Eigen::Vector4d::Unit(t), 0.0, 1.0});
  const auto e = bound_q_extrema(box, Eigen::Vector4d::Unit(kI));
  CHECK(e.lo == 0.0);
  CHECK(e.hi == 1.0);
  const auto pinned = rates_region(Basis::X, 1).extrema(Eigen::Vector4d::Unit(kX));
  CHECK(pinned.lo == doctest::Approx(pinned.hi));
}

TEST_CASE("virtual yield examples") {
  const auto set = build_coefficients({});
  const auto& v = set.virtual_branch(Basis::X, 0);
  const auto y0 = bound_virtual_yield(v, rates_region(Basis::X, 0));
  // Bob picks X with probability 1/4 and the virtual branch has norm 1/2.
  CHECK(y0.lo == doctest::Approx(0.125));
  CHECK(y0.hi == doctest::Approx(0.125));
  const auto y1 = bound_virtual_yield(v, rates_region(Basis::X, 1));
  CHECK(std::abs(y1.hi) < 1e-15);

  // Empty qubit part: only the slack remains.
  VirtualCoefficients empty;
  empty.F = 0.0;
  empty.H = 0.8;
  empty.lambda_min = 0.0;
  empty.lambda_max = 0.8;
  empty.probability = 0.2;
  const auto s = bound_virtual_yield(empty, rates_region(Basis::X, 0));
  CHECK(s.lo == 0.0);
  CHECK(s.hi == doctest::Approx(0.25 / 4 * 0.8));
}

TEST_CASE("phase error and C examples") {
  const auto set = build_coefficients({});
  for (Basis alice : {Basis::X, Basis::Y}) {
    VirtualYieldGrid g{};
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < 2; ++j)
        g[s][j] = bound_virtual_yield(set.virtual_branch(alice, j), rates_region(Basis::X, s));
    const auto e = phase_error(g);
    if (alice == Basis::X) {
      CHECK(std::abs(e.hi) < 1e-12);
    } else {
      CHECK(e.hi == doctest::Approx(0.5));
    }
  }
  VirtualYieldGrid same{};
  for (auto& row : same)
    for (auto& iv : row) iv = Interval::point(0.3);
  CHECK(phase_error(same).hi == doctest::Approx(0.5));

  const std::array<double, 4> half{0.5, 0.5, 0.5, 0.5};
  CHECK(c_lower(std::span<const double, 4>(half)) == 0.0);
  const std::array<double, 4> ideal{0.0, 0.5, 0.5, 0.0};
  CHECK(c_lower(std::span<const double, 4>(ideal)) == 2.0);
  const auto blind = eve_information(0.0, 0.0);
  REQUIRE(blind);
  CHECK(blind->v_max == 0.0);
  CHECK(blind->i_eve == doctest::Approx(1.0));
}
