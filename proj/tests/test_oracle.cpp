#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "sfqm/barrier.hpp"
#include "sfqm/oracle.hpp"
#include "sfqm/params.hpp"

using namespace sfqm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("fd_derivative on analytic functions") {
  CHECK_THAT(fd_derivative([](double x) { return x * x; }, 3.0), WithinAbs(6.0, 1e-9));
  CHECK_THAT(fd_derivative([](double x) { return std::exp(x); }, 1.0),
             WithinRel(std::numbers::e, 1e-8));
  CHECK_THAT(fd_derivative([](double x) { return std::sin(x); }, 0.7),
             WithinRel(std::cos(0.7), 1e-8));
  CHECK_THROWS(fd_derivative([](double) { return std::nan(""); }, 1.0));
}

TEST_CASE("fd matches the analytic fractional wavenumber derivative") {
  ModelParams p;
  p.alpha = 1.995;
  p.v_height = 5.0;
  p.energy = 3.0;
  const double analytic = derivatives(p).dk_alpha;
  const double fd = fd_derivative(
      [&](double e) { return wavenumbers(p.with_energy(e)).k_alpha; }, p.energy);
  CHECK_THAT(analytic, WithinRel(fd, 1e-6));
}

TEST_CASE("fd_phase_derivative crosses branch cuts") {
  // phase stored mod 2pi with true derivative 5, sampled where atan2 wraps
  const auto ph = [](double x) { return std::remainder(5.0 * x, 2.0 * std::numbers::pi); };
  const double x0 = std::numbers::pi / 5.0;  // wrap point
  CHECK_THAT(fd_phase_derivative(ph, x0), WithinRel(5.0, 1e-9));
  CHECK_THAT(fd_phase_derivative(ph, 0.3), WithinRel(5.0, 1e-9));
}

TEST_CASE("unwrap") {
  const std::vector<double> flat{0.1, 0.2};
  CHECK(unwrap(flat) == flat);

  const auto one_jump = unwrap({3.1, -3.1});
  REQUIRE(one_jump.size() == 2);
  CHECK(one_jump[0] == 3.1);
  CHECK_THAT(one_jump[1], WithinRel(3.1 + (2.0 * std::numbers::pi - 6.2), 1e-12));

  // dense wrapped ramp unwraps to a straight line
  std::vector<double> ramp;
  for (int i = 0; i <= 200; ++i)
    ramp.push_back(std::remainder(0.11 * i, 2.0 * std::numbers::pi));
  bool coarse = true;
  const auto un = unwrap(ramp, &coarse);
  CHECK_FALSE(coarse);
  for (int i = 0; i <= 200; ++i) CHECK_THAT(un[i], WithinAbs(0.11 * i, 1e-10));

  // adjacent true step of ~pi trips the coarse-grid warning
  unwrap({0.0, std::numbers::pi}, &coarse);
  CHECK(coarse);
}

namespace {
ModelParams qm(double E, double b, double L, int n) {
  ModelParams p;
  p.alpha = 2.0;
  p.v_height = 5.0;
  p.energy = E;
  p.b = b;
  p.l_gap = L;
  p.n_barriers = n;
  return p;
}
}  // namespace

TEST_CASE("slab-matrix oracle: single barrier") {
  const ModelParams p = qm(3.0, 2.0, 0.2, 1);
  const OracleTransmission t = std_qm_multibarrier(p);
  const UnitCell c = unit_cell(p);
  CHECK_THAT(t.trans_prob, WithinRel(1.0 / c.v_alpha, 1e-10));
  CHECK_THAT(t.trans_prob + t.refl_prob, WithinAbs(1.0, 1e-12));
}

TEST_CASE("slab-matrix oracle: no barrier") {
  const OracleTransmission t = std_qm_multibarrier(qm(3.0, 0.0, 0.0, 2));
  CHECK_THAT(t.t.real(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(t.t.imag(), WithinAbs(0.0, 1e-12));
  CHECK_THAT(t.trans_prob, WithinAbs(1.0, 1e-12));
}

TEST_CASE("slab-matrix oracle: unitarity across the grid") {
  for (double E : {0.5, 3.0, 4.5})
    for (double b : {0.5, 2.0, 8.0})
      for (int n : {1, 2, 3, 5}) {
        const OracleTransmission t = std_qm_multibarrier(qm(E, b, 0.2, n));
        CHECK_THAT(t.trans_prob + t.refl_prob, WithinAbs(1.0, 1e-12));
      }
}

TEST_CASE("slab-matrix oracle: double-barrier time saturates and ignores the gap") {
  const double g1 = std_qm_multibarrier(qm(3.0, 14.0, 0.3, 2)).phase_time;
  const double g2 = std_qm_multibarrier(qm(3.0, 18.0, 0.3, 2)).phase_time;
  const double g3 = std_qm_multibarrier(qm(3.0, 18.0, 0.9, 2)).phase_time;
  CHECK_THAT(g1, WithinAbs(g2, 1e-6));
  CHECK_THAT(g2, WithinAbs(g3, 1e-6));
  CHECK_THAT(g2, WithinAbs(1.0 / std::sqrt(6.0), 1e-6));
}
