#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sfqm/params.hpp"

namespace sfqm {

// Finite-difference configuration: relative step and optional single-level
// Richardson extrapolation.
struct FdConfig {
  double step_rel = 1e-6;
  bool richardson = true;
};

namespace detail {

template <typename F>
double central_diff(F&& f, double x, double h) {
  const double xp = x + h, xm = x - h;  // divide by the realized step
  const double up = f(xp);
  const double dn = f(xm);
  if (!std::isfinite(up) || !std::isfinite(dn))
    throw std::runtime_error("fd_derivative: function returned non-finite value");
  return (up - dn) / (xp - xm);
}

// Central difference of a phase-valued function: the increment is reduced to
// the nearest representative mod 2 pi, so branch jumps of atan2 do not
// corrupt the quotient.  Valid while the true change over 2h stays below pi.
template <typename F>
double central_phase_diff(F&& f, double x, double h) {
  const double xp = x + h, xm = x - h;
  const double up = f(xp);
  const double dn = f(xm);
  if (!std::isfinite(up) || !std::isfinite(dn))
    throw std::runtime_error("fd_phase_derivative: function returned non-finite value");
  const double d = std::remainder(up - dn, 2.0 * std::numbers::pi);
  return d / (xp - xm);
}

}  // namespace detail

// Central finite difference with relative step, one Richardson level by
// default: (4 D(h/2) - D(h)) / 3 cancels the O(h^2) truncation term.
template <typename F>
double fd_derivative(F&& f, double x, FdConfig cfg = {}) {
  const double h = cfg.step_rel * std::max(std::abs(x), 1.0);
  const double d1 = detail::central_diff(f, x, h);
  if (!cfg.richardson) return d1;
  const double d2 = detail::central_diff(f, x, 0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

// Same, for functions returned as angles (phases mod 2 pi).
template <typename F>
double fd_phase_derivative(F&& f, double x, FdConfig cfg = {}) {
  const double h = cfg.step_rel * std::max(std::abs(x), 1.0);
  const double d1 = detail::central_phase_diff(f, x, h);
  if (!cfg.richardson) return d1;
  const double d2 = detail::central_phase_diff(f, x, 0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

// Phase derivative with automatic step refinement: sharp resonances swing
// the phase by a sizeable fraction of a radian across the default step, so
// the step is shrunk until the sampled phase change per step is small.
template <typename F>
double fd_phase_derivative_adaptive(F&& f, double x, FdConfig cfg = {}) {
  double d = fd_phase_derivative(f, x, cfg);
  for (int it = 0; it < 4; ++it) {
    const double h = cfg.step_rel * std::max(std::abs(x), 1.0);
    const double swing = std::abs(d) * h;
    if (swing <= 1e-3) break;
    cfg.step_rel *= 1e-4 / swing;
    d = fd_phase_derivative(f, x, cfg);
  }
  return d;
}

// Removes 2 pi jumps from a sampled phase curve.  The first element is kept;
// each subsequent point is shifted by the multiple of 2 pi that makes the
// adjacent difference smallest.  If `coarse_grid` is non-null it is set when
// some adjacent difference still reaches pi after unwrapping (grid too
// coarse to trust).
inline std::vector<double> unwrap(const std::vector<double>& phases,
                                  bool* coarse_grid = nullptr) {
  if (coarse_grid) *coarse_grid = false;
  std::vector<double> out;
  out.reserve(phases.size());
  if (phases.empty()) return out;
  out.push_back(phases.front());
  for (std::size_t i = 1; i < phases.size(); ++i) {
    const double step = std::remainder(phases[i] - phases[i - 1], 2.0 * std::numbers::pi);
    if (coarse_grid && std::abs(step) >= std::numbers::pi - 1e-12) *coarse_grid = true;
    out.push_back(out.back() + step);
  }
  return out;
}

// Independent standard-QM (alpha = 2, D = 1) ground truth for a train of N
// rectangular barriers, built from (psi, psi') slab matrices rather than the
// Chebyshev composition.  Used to validate the fractional machinery in its
// alpha = 2 limit.
struct OracleTransmission {
  std::complex<double> t;   // transmission amplitude (coefficient of e^{ikx})
  double trans_prob;        // |t|^2, computed in log form (no overflow)
  double refl_prob;         // |r|^2
  double phase_time;        // FD of unwrapped transmission phase + free passage
};

inline OracleTransmission std_qm_multibarrier(const ModelParams& p) {
  p.validate();
  const double V = p.v_height, b = p.b, L = p.l_gap;
  const int N = p.n_barriers;

  // Backward cell matrix in the (psi, psi') basis with e^{qb} factored out:
  // values at the left cell edge in terms of values at the right edge.
  // One cell = barrier [0,b] then gap [b, b+L].
  struct M2 {
    double a, bb, c, d;  // [[a, bb], [c, d]]
  };
  const auto mul = [](const M2& x, const M2& y) {
    return M2{x.a * y.a + x.bb * y.c, x.a * y.bb + x.bb * y.d,
              x.c * y.a + x.d * y.c, x.c * y.bb + x.d * y.d};
  };

  const auto amplitude = [&](double E) {
    const double k = std::sqrt(E);
    const double q = std::sqrt(V - E);
    const double qb = q * b;
    const double e2 = std::exp(-2.0 * qb);
    const double ch = 0.5 * (1.0 + e2);  // cosh(qb) e^{-qb}
    const double sh = 0.5 * (1.0 - e2);  // sinh(qb) e^{-qb}
    // slab(-b) scaled by e^{-qb}; handles q -> 0 via sinh(qb)/q limit b
    const double sh_over_q = (qb > 0.0) ? sh / q : 0.5 * b;
    const M2 slab{ch, -sh_over_q, -q * sh, ch};
    const double ckl = std::cos(k * L), skl = std::sin(k * L);
    const M2 gap{ckl, -skl / k, k * skl, ckl};
    M2 cell = mul(slab, gap);
    M2 r{1.0, 0.0, 0.0, 1.0};
    for (int i = 0; i < N; ++i) r = mul(r, cell);
    // M_total = Phi(0)^{-1} (cell)^N Phi(Ns); entry 11 carries 1/t.
    const double kns = k * N * (b + L);
    const std::complex<double> i1(0.0, 1.0);
    const std::complex<double> m11_hat =
        std::exp(i1 * kns) *
        std::complex<double>(0.5 * (r.a + r.d), 0.5 * (k * r.bb - r.c / k));
    const std::complex<double> m21_hat =
        std::exp(i1 * kns) *
        std::complex<double>(0.5 * (r.a - r.d), 0.5 * (k * r.bb + r.c / k));
    return std::array<std::complex<double>, 2>{m11_hat, m21_hat};  // scaled by e^{-N qb}
  };

  const auto m = amplitude(p.energy);
  const double log_grow = N * std::sqrt(V - p.energy) * b;

  OracleTransmission out{};
  out.t = std::exp(-log_grow) / m[0];
  out.trans_prob = std::exp(-2.0 * (log_grow + std::log(std::abs(m[0]))));
  out.refl_prob = std::norm(m[1] / m[0]);
  // Gamma = d(arg t)/dE + ((N-1)s + b)/(2k); the e^{-N q b} factor is real,
  // so arg t = -arg m11_hat.
  const double k = std::sqrt(p.energy);
  out.phase_time =
      fd_phase_derivative([&](double E) { return -std::arg(amplitude(E)[0]); }, p.energy) +
      ((N - 1) * p.s() + b) / (2.0 * k);
  return out;
}

}  // namespace sfqm
