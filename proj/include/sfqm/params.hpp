#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sfqm {

// Problem specification: a train of n_barriers rectangular barriers of height
// v_height and width b, separated by gaps of width l_gap, probed at energy
// `energy` in the classically forbidden regime 0 < E < V.
//
// Units: 2m = 1, hbar = 1, c = 1, so the free wavenumber is k = sqrt(E) and
// the group velocity is 2k. The kinetic term is D_alpha |p|^alpha with Levy
// index 1 < alpha <= 2; alpha = 2 with d_alpha = 1 is ordinary quantum
// mechanics.
struct ModelParams {
  double alpha = 2.0;
  double d_alpha = 1.0;
  double v_height = 5.0;
  double energy = 3.0;
  double b = 1.0;
  double l_gap = 0.2;
  int n_barriers = 1;

  // unit-cell period s = b + L
  double s() const noexcept { return b + l_gap; }

  void validate() const {
    if (!(std::isfinite(alpha) && std::isfinite(d_alpha) && std::isfinite(v_height) &&
          std::isfinite(energy) && std::isfinite(b) && std::isfinite(l_gap)))
      throw std::domain_error("ModelParams: non-finite parameter");
    if (!(alpha > 1.0 && alpha <= 2.0))
      throw std::domain_error("ModelParams: alpha must lie in (1, 2], got " + std::to_string(alpha));
    if (!(d_alpha > 0.0))
      throw std::domain_error("ModelParams: d_alpha must be positive");
    if (!(v_height > 0.0))
      throw std::domain_error("ModelParams: v_height must be positive");
    if (!(energy > 0.0 && energy < v_height))
      throw std::domain_error("ModelParams: need 0 < E < V (classically forbidden regime)");
    if (b < 0.0) throw std::domain_error("ModelParams: b must be >= 0");
    if (l_gap < 0.0) throw std::domain_error("ModelParams: l_gap must be >= 0");
    if (n_barriers < 1) throw std::domain_error("ModelParams: n_barriers must be >= 1");
  }

  ModelParams with_energy(double e) const {
    ModelParams q = *this;
    q.energy = e;
    return q;
  }
  ModelParams with_b(double bb) const {
    ModelParams q = *this;
    q.b = bb;
    return q;
  }
  ModelParams with_l_gap(double ll) const {
    ModelParams q = *this;
    q.l_gap = ll;
    return q;
  }
  ModelParams with_n(int n) const {
    ModelParams q = *this;
    q.n_barriers = n;
    return q;
  }
};

// Wavenumber-derived scalars of the fractional scattering problem.
struct FracQuantities {
  double k;          // sqrt(E)
  double k_alpha;    // (E / D_alpha)^{1/alpha}, free fractional wavenumber
  double q_alpha;    // ((V - E) / D_alpha)^{1/alpha}, barrier fractional wavenumber
  double eps_alpha;  // (k_alpha / q_alpha)^{alpha - 1}
  double eps_plus;   // eps_alpha + 1/eps_alpha  (>= 2)
  double eps_minus;  // eps_alpha - 1/eps_alpha
  double beta;       // (alpha - 1) pi / alpha
  double gamma_ang;  // pi / alpha
  double eta;        // q_alpha b cos(pi/alpha); oscillatory part of the barrier phase
  double xi;         // q_alpha b sin(pi/alpha); evanescent decay exponent, >= 0
};

inline FracQuantities wavenumbers(const ModelParams& p) {
  p.validate();
  FracQuantities f{};
  f.k = std::sqrt(p.energy);
  f.k_alpha = std::pow(p.energy / p.d_alpha, 1.0 / p.alpha);
  f.q_alpha = std::pow((p.v_height - p.energy) / p.d_alpha, 1.0 / p.alpha);
  f.eps_alpha = std::pow(f.k_alpha / f.q_alpha, p.alpha - 1.0);
  f.eps_plus = f.eps_alpha + 1.0 / f.eps_alpha;
  f.eps_minus = f.eps_alpha - 1.0 / f.eps_alpha;
  f.beta = (p.alpha - 1.0) * std::numbers::pi / p.alpha;
  f.gamma_ang = std::numbers::pi / p.alpha;
  f.eta = f.q_alpha * p.b * std::cos(f.gamma_ang);
  f.xi = f.q_alpha * p.b * std::sin(f.gamma_ang);
  return f;
}

// Analytic energy derivatives of the quantities above.
struct FracDerivatives {
  double dk_alpha;   // k_alpha^{1-alpha} / (alpha D_alpha)
  double dq_alpha;   // -q_alpha^{1-alpha} / (alpha D_alpha)
  double deps_plus;
  double deps_minus;
};

inline FracDerivatives derivatives(const ModelParams& p) {
  const FracQuantities f = wavenumbers(p);
  FracDerivatives d{};
  d.dk_alpha = std::pow(f.k_alpha, 1.0 - p.alpha) / (p.alpha * p.d_alpha);
  d.dq_alpha = -std::pow(f.q_alpha, 1.0 - p.alpha) / (p.alpha * p.d_alpha);
  // d/dE of eps_alpha +- 1/eps_alpha, written through eps_alpha^{1/(1-alpha)}
  // = (E/(V-E))^{-1/alpha}.
  const double pref = (p.alpha - 1.0) / p.alpha * p.v_height /
                      ((p.v_height - p.energy) * (p.v_height - p.energy)) *
                      std::pow(f.eps_alpha, 1.0 / (1.0 - p.alpha));
  const double inv2 = 1.0 / (f.eps_alpha * f.eps_alpha);
  d.deps_plus = pref * (1.0 - inv2);
  d.deps_minus = pref * (1.0 + inv2);
  return d;
}

}  // namespace sfqm
