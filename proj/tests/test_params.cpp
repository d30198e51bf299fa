#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sfqm/params.hpp"

using namespace sfqm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ModelParams base(double alpha, double E = 3.0, double b = 1.0) {
  ModelParams p;
  p.alpha = alpha;
  p.d_alpha = 1.0;
  p.v_height = 5.0;
  p.energy = E;
  p.b = b;
  p.l_gap = 0.2;
  p.n_barriers = 1;
  return p;
}

// plain central difference at h = 1e-6 E, the step the invariants are stated at
template <typename F>
double fd_plain(F&& f, double E) {
  const double h = 1e-6 * E;
  return (f(E + h) - f(E - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("alpha=2 closed forms") {
  const auto f = wavenumbers(base(2.0));
  CHECK_THAT(f.k, WithinRel(std::sqrt(3.0), 1e-15));
  CHECK_THAT(f.k_alpha, WithinRel(std::sqrt(3.0), 1e-14));
  CHECK_THAT(f.q_alpha, WithinRel(std::sqrt(2.0), 1e-14));
  CHECK_THAT(f.eps_alpha, WithinRel(std::sqrt(1.5), 1e-14));
  CHECK_THAT(f.beta, WithinRel(std::numbers::pi / 2, 1e-15));
  CHECK_THAT(f.gamma_ang, WithinRel(std::numbers::pi / 2, 1e-15));
  CHECK(std::abs(f.eta) < 1e-14 * f.q_alpha * 1.0);
  CHECK_THAT(f.xi, WithinRel(std::sqrt(2.0), 1e-14));
}

TEST_CASE("zero width gives eta = xi = 0") {
  for (double alpha : {1.3, 1.995, 2.0}) {
    const auto f = wavenumbers(base(alpha, 3.0, 0.0));
    CHECK(f.eta == 0.0);
    CHECK(f.xi == 0.0);
  }
}

TEST_CASE("alpha=1.995 wavenumbers against high-precision evaluation") {
  // reference values from a 50-digit evaluation of the defining power laws
  const auto f = wavenumbers(base(1.995));
  CHECK_THAT(f.k_alpha, WithinRel(1.7344369764138026, 1e-14));
  CHECK_THAT(f.q_alpha, WithinRel(1.4154424896858281, 1e-14));
  CHECK_THAT(f.eps_alpha, WithinRel(1.2241227345825433, 1e-14));
  CHECK_THAT(f.eps_plus, WithinRel(2.0410342841756690, 1e-14));
  CHECK_THAT(f.eps_minus, WithinRel(0.40721118498941755, 1e-13));
  CHECK_THAT(f.beta, WithinRel(1.5668594938956613, 1e-14));
  CHECK_THAT(f.gamma_ang, WithinRel(1.5747331596941319, 1e-14));
  CHECK_THAT(f.eta, WithinRel(-0.0055723461663678439, 1e-12));
  CHECK_THAT(f.xi, WithinRel(1.4154315209738046, 1e-14));

  // independent long-double route for the two power laws
  const long double ka_l = powl(3.0L, 1.0L / 1.995L);
  const long double qa_l = powl(2.0L, 1.0L / 1.995L);
  CHECK_THAT(f.k_alpha, WithinRel(static_cast<double>(ka_l), 1e-14));
  CHECK_THAT(f.q_alpha, WithinRel(static_cast<double>(qa_l), 1e-14));
}

TEST_CASE("alpha=2 derivative closed forms") {
  const auto d = derivatives(base(2.0));
  CHECK_THAT(d.dk_alpha, WithinRel(1.0 / (2.0 * std::sqrt(3.0)), 1e-14));
  CHECK_THAT(d.dq_alpha, WithinRel(-1.0 / (2.0 * std::sqrt(2.0)), 1e-14));
}

TEST_CASE("alpha=1.995 derivatives against high-precision evaluation") {
  const auto d = derivatives(base(1.995));
  CHECK_THAT(d.dk_alpha, WithinRel(0.28979732270907312, 1e-14));
  CHECK_THAT(d.dq_alpha, WithinRel(-0.35474749114933036, 1e-14));
  CHECK_THAT(d.deps_plus, WithinRel(0.16924608565767354, 1e-13));
  CHECK_THAT(d.deps_minus, WithinRel(0.84829954584577722, 1e-13));
}

TEST_CASE("analytic derivatives match central finite differences") {
  for (double alpha : {1.2, 1.5, 1.9, 1.995, 2.0}) {
    for (double E : {0.5, 3.0, 4.5}) {
      const ModelParams p = base(alpha, E);
      const auto d = derivatives(p);
      const auto fk = [&](double e) { return wavenumbers(p.with_energy(e)).k_alpha; };
      const auto fq = [&](double e) { return wavenumbers(p.with_energy(e)).q_alpha; };
      const auto fep = [&](double e) { return wavenumbers(p.with_energy(e)).eps_plus; };
      const auto fem = [&](double e) { return wavenumbers(p.with_energy(e)).eps_minus; };
      CHECK_THAT(d.dk_alpha, WithinRel(fd_plain(fk, E), 1e-6));
      CHECK_THAT(d.dq_alpha, WithinRel(fd_plain(fq, E), 1e-6));
      CHECK_THAT(d.deps_plus, WithinRel(fd_plain(fep, E), 1e-6));
      CHECK_THAT(d.deps_minus, WithinRel(fd_plain(fem, E), 1e-6));
    }
  }
}

TEST_CASE("eps identity and monotonicity") {
  for (double alpha : {1.2, 1.5, 1.9, 1.995, 2.0}) {
    double prev_k = 0.0, prev_q = 1e300;
    for (double E : {0.5, 1.5, 3.0, 4.5}) {
      const auto f = wavenumbers(base(alpha, E));
      CHECK(std::abs(f.eps_plus * f.eps_plus - f.eps_minus * f.eps_minus - 4.0) < 1e-12);
      CHECK(f.eps_plus >= 2.0 - 1e-15);
      CHECK(f.xi >= 0.0);
      CHECK(f.k_alpha > prev_k);
      CHECK(f.q_alpha < prev_q);
      prev_k = f.k_alpha;
      prev_q = f.q_alpha;
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(wavenumbers(base(2.0, 5.0)), std::domain_error);   // E = V
  CHECK_THROWS_AS(wavenumbers(base(2.0, 6.0)), std::domain_error);   // E > V
  CHECK_THROWS_AS(wavenumbers(base(2.0, 0.0)), std::domain_error);   // E = 0
  CHECK_THROWS_AS(wavenumbers(base(2.0, -1.0)), std::domain_error);  // E < 0
  CHECK_THROWS_AS(wavenumbers(base(1.0)), std::domain_error);        // alpha = 1
  CHECK_THROWS_AS(wavenumbers(base(2.5)), std::domain_error);        // alpha > 2
  CHECK_THROWS_AS(wavenumbers(base(0.9)), std::domain_error);
  ModelParams p = base(2.0);
  p.b = -0.1;
  CHECK_THROWS_AS(wavenumbers(p), std::domain_error);
  p = base(2.0);
  p.n_barriers = 0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = base(2.0);
  p.d_alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);

  // E arbitrarily close to V is allowed
  p = base(2.0, 5.0 - 1e-12);
  CHECK_NOTHROW(wavenumbers(p));
}

TEST_CASE("s is exactly b + L") {
  ModelParams p = base(1.7, 2.0, 3.25);
  p.l_gap = 0.375;
  CHECK(p.s() == 3.25 + 0.375);
}
