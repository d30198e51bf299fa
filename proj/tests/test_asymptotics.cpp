#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sfqm/asymptotics.hpp"
#include "sfqm/barrier.hpp"
#include "sfqm/lattice.hpp"
#include "sfqm/oracle.hpp"

using namespace sfqm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
ModelParams make(double alpha, double E = 3.0, double b = 1.0, double L = 0.2, int n = 1) {
  ModelParams p;
  p.alpha = alpha;
  p.v_height = 5.0;
  p.energy = E;
  p.b = b;
  p.l_gap = L;
  p.n_barriers = n;
  return p;
}
}  // namespace

TEST_CASE("w_alpha vanishes at alpha=2 and is negative below") {
  CHECK(std::abs(w_alpha(make(2.0))) < 1e-14);
  CHECK(w_alpha(make(1.995)) < 0.0);
  for (double alpha : {1.2, 1.5, 1.9, 1.999})
    for (double E : {0.5, 3.0, 4.5}) CHECK(w_alpha(make(alpha, E)) < 0.0);
  // frozen high-precision value of 1/(2 sqrt 3) - 1/(1.5 * 3^{1/3})
  CHECK_THAT(w_alpha(make(1.5)), WithinRel(-0.17356571497227692, 1e-14));
}

TEST_CASE("gamma_limit") {
  const double tau_lim = 0.409;
  CHECK(gamma_limit(make(1.9, 3.0, 1.0, 0.2, 1), tau_lim) == tau_lim);
  for (int n : {2, 3, 4})
    CHECK_THAT(gamma_limit(make(2.0, 3.0, 1.0, 0.2, n), tau_lim),
               WithinAbs(tau_lim, 1e-13));
  // alpha=1.995, N=3, b=30: matches the composed lattice
  const ModelParams p = make(1.995, 3.0, 30.0, 0.2, 3);
  const double tau30 = unit_cell(p).tau_alpha;
  const double gamma3 = compose(p, unit_cell(p)).gamma_n;
  CHECK_THAT(gamma3 - tau30, WithinRel(gamma_limit(p, tau30) - tau30, 1e-3));
}

TEST_CASE("f coefficients: frozen values and measured limits") {
  const FCoefficients fc = f_coefficients(make(1.9));
  CHECK_THAT(fc.f1, WithinRel(0.93389778746561224, 1e-13));
  CHECK_THAT(fc.f2, WithinRel(0.041995788592071096, 1e-13));
  CHECK_THAT(fc.f3, WithinRel(-0.22896821520451343, 1e-13));

  // documented coefficient mismatch: the measured v_alpha e^{-2 xi} limit is
  // f1 with the leading 4 eps_+ cos(beta) replaced by eps_+ cos(beta)/4
  const FracQuantities f = wavenumbers(make(1.9));
  const double f1_corrected = fc.f1 - 3.75 * f.eps_plus * std::cos(f.beta);
  CHECK_THAT(fc.v_limit_measured, WithinRel(f1_corrected, 1e-10));
  CHECK_THAT(fc.v_limit_measured, WithinRel(0.30309434584073462, 1e-12));

  // f2, f3 agree with the measured v' limit as published
  CHECK_THAT(fc.vp_limit_measured, WithinRel(fc.f2 + fc.b_probe * fc.f3, 1e-10));

  // sign of f3 is fixed by q' < 0 against a positive bracket
  CHECK(fc.f3 < 0.0);

  // eps_minus = 0 at E = V/2 (k_alpha = q_alpha)
  const FracQuantities half = wavenumbers(make(1.7, 2.5));
  CHECK(std::abs(half.eps_minus) < 1e-14);
  CHECK_THAT(half.eps_alpha, WithinAbs(1.0, 1e-15));
}

TEST_CASE("standard-QM tau: closed form against its FD oracle") {
  CHECK_THAT(std_qm_tau(make(2.0, 3.0, 1e-14)), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std_qm_tau(make(2.0, 3.0, 30.0)), WithinAbs(1.0 / std::sqrt(6.0), 1e-10));
  CHECK_THAT(std_qm_tau_limit(make(2.0)), WithinRel(0.40824829046386302, 1e-15));

  // FD of the arctan phase itself
  const double V = 5.0, b = 2.0;
  const auto phase = [&](double E) {
    const double k2 = E, q2 = V - E;
    return std::atan((k2 - q2) / (2.0 * std::sqrt(k2 * q2)) * std::tanh(std::sqrt(q2) * b));
  };
  CHECK_THAT(std_qm_tau(make(2.0, 3.0, b)), WithinRel(fd_derivative(phase, 3.0), 1e-8));

  // equals the fractional cell at alpha = 2 over a width sweep
  for (double bb : {0.1, 0.7, 2.0, 5.0, 10.0})
    CHECK_THAT(std_qm_tau(make(2.0, 3.0, bb)),
               WithinRel(unit_cell(make(2.0, 3.0, bb)).tau_alpha, 1e-8));
}

TEST_CASE("alpha=2 Hartman saturation") {
  // |tau(2 b1) - tau(b1)| < 1e-8 once q b1 >= 30
  const double b1 = 22.0;  // q b1 = 22 sqrt(2) ~ 31
  const double t1 = unit_cell(make(2.0, 3.0, b1)).tau_alpha;
  const double t2 = unit_cell(make(2.0, 3.0, 2.0 * b1)).tau_alpha;
  CHECK(std::abs(t2 - t1) < 1e-8);
}

TEST_CASE("wide-barrier difference law across alpha and N") {
  for (double alpha : {1.9, 1.95, 1.995})
    for (int n : {2, 3, 4}) {
      const ModelParams p = make(alpha, 3.0, 20.0, 0.2, n);  // xi >= 25 for all three
      const double tau = unit_cell(p).tau_alpha;
      const double gamma = compose(p, unit_cell(p)).gamma_n;
      const double gap = (n - 1) * p.s() * w_alpha(p);
      CHECK(std::abs((gamma - tau) - gap) < 1e-3 * std::abs(gap));
    }
}

TEST_CASE("prediction record") {
  const AsymptoticPrediction a = predict(make(1.995, 3.0, 1.0, 0.2, 3));
  CHECK(a.w_alpha < 0.0);
  CHECK_THAT(a.predicted_gap, WithinRel(2.0 * 1.2 * a.w_alpha, 1e-14));
  CHECK_THAT(a.tau_qm_limit, WithinRel(1.0 / std::sqrt(6.0), 1e-14));
}
