#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "sfqm/params.hpp"

namespace sfqm {

// Single-cell (one rectangular barrier) amplitude data.  The inverse
// transmission amplitude of one barrier is M1 = sqrt(v_alpha) e^{-i delta}
// with delta = theta - k_alpha b.
//
// Every quantity that grows like e^{2 xi} (v_alpha, d_alpha, v_alpha_prime
// and friends) is also stored as a mantissa with the factor e^{2 xi}
// removed, so that ratios such as delta_prime = d_alpha / v_alpha stay
// finite for arbitrarily wide barriers (xi up to ~1e4 and beyond).  The
// plain fields overflow to +-inf once 2 xi exceeds ~709; callers that need
// the opaque regime should use the *_mant fields together with log_scale.
struct UnitCell {
  double v_alpha;        // |M1|^2, >= 1
  double theta;          // transmission phase before the free-passage shift
  double delta;          // theta - k_alpha b
  std::complex<double> m1;
  double d_alpha;        // numerator aggregate in delta'
  double v1_alpha;       // v' piece independent of q'
  double v2_alpha;       // v' piece multiplying b q'
  double v_alpha_prime;  // d v_alpha / dE = v1 + b q' v2
  double delta_prime;    // d delta / dE = d_alpha / v_alpha - b k_alpha^{1-alpha}/(alpha D)
  double tau_alpha;      // single-barrier phase time, delta' + b/(2k)

  // scaled representation: X = X_mant * exp(log_scale), log_scale = 2 xi
  double log_scale;
  double v_mant;
  double d_mant;
  double v1_mant;
  double v2_mant;
  double vp_mant;
};

namespace detail {

// Hyperbolic factors with e^{2 xi} divided out (xi >= 0):
//   ch2 = cosh(2 xi) e^{-2 xi},  sh2 = sinh(2 xi) e^{-2 xi},
//   mix = (cosh^2 xi sin^2 eta + sinh^2 xi cos^2 eta) e^{-2 xi},
//   e2  = e^{-2 xi} itself (recurrence correction / trig damping).
struct ScaledHyp {
  double e2, ch2, sh2;
  double chs, shs;  // cosh(xi) e^{-xi}, sinh(xi) e^{-xi}
};

inline ScaledHyp scaled_hyp(double xi) {
  ScaledHyp h{};
  h.e2 = std::exp(-2.0 * xi);
  const double e4 = h.e2 * h.e2;
  h.ch2 = 0.5 * (1.0 + e4);
  h.sh2 = 0.5 * (1.0 - e4);
  h.chs = 0.5 * (1.0 + h.e2);
  h.shs = 0.5 * (1.0 - h.e2);
  return h;
}

}  // namespace detail

inline UnitCell unit_cell(const ModelParams& p) {
  const FracQuantities f = wavenumbers(p);
  const FracDerivatives fd = derivatives(p);

  const double cb = std::cos(f.beta), sb = std::sin(f.beta);
  const double cg = std::cos(f.gamma_ang), sg = std::sin(f.gamma_ang);
  const double c2e = std::cos(2.0 * f.eta), s2e = std::sin(2.0 * f.eta);
  const double se = std::sin(f.eta), ce = std::cos(f.eta);
  const double ep = f.eps_plus, em = f.eps_minus;
  const double ep2 = ep * ep, em2 = em * em;
  const double c2b = std::cos(2.0 * f.beta), s2b = std::sin(2.0 * f.beta);
  const double qp = fd.dq_alpha, epp = fd.deps_plus, emp = fd.deps_minus;
  const detail::ScaledHyp h = detail::scaled_hyp(f.xi);

  UnitCell c{};
  c.log_scale = 2.0 * f.xi;

  // v_alpha: 16-term bracket, evaluated with e^{2 xi} hoisted out.
  const double c_cos = 8.0 - em2 - ep2 - (ep2 - em2) * c2b;
  const double c_cosh = 8.0 + em2 + ep2 + (ep2 - em2) * c2b;
  c.v_mant = (c_cos * c2e * h.e2 + c_cosh * h.ch2 - 8.0 * em * sb * s2e * h.e2 +
              8.0 * ep * cb * h.sh2) / 16.0;

  // theta via the full-quadrant arctangent; numerator and denominator share
  // the growth e^{xi}, which cancels inside atan2.
  const double e2 = f.eps_alpha * f.eps_alpha;
  const double num = 2.0 * f.eps_alpha * se * h.shs + (e2 + 1.0) * se * h.chs * cb +
                     (e2 - 1.0) * ce * h.shs * sb;
  const double den = 2.0 * f.eps_alpha * ce * h.chs + (e2 + 1.0) * ce * h.shs * cb -
                     (e2 - 1.0) * se * h.chs * sb;
  c.theta = std::atan2(num, den);
  c.delta = c.theta - f.k_alpha * p.b;

  // d_alpha: the seven-term numerator of delta' (scaled by e^{-2 xi}).
  // mix = (cosh^2 xi sin^2 eta + sinh^2 xi cos^2 eta) e^{-2 xi}
  const double mix = se * se * h.chs * h.chs + ce * ce * h.shs * h.shs;
  const double msq = ep2 * cb * cb + em2 * sb * sb;
  c.d_mant = 0.5 * p.b * ep * qp * cb * cg * h.ch2
           + 0.5 * p.b * em * qp * sb * sg * c2e * h.e2
           + 0.25 * epp * cb * s2e * h.e2
           + 0.5 * p.b * qp * (cg * h.sh2 + sg * s2e * h.e2)
           + 0.125 * p.b * qp * (h.sh2 * cg - s2e * sg * h.e2) * msq
           + 0.125 * s2b * mix * (ep * emp - em * epp)
           + 0.25 * emp * sb * h.sh2;

  // v_alpha' = v1 + b q' v2
  c.v1_mant = 0.25 * (h.ch2 - c2e * h.e2) * (ep * epp * cb * cb + em * emp * sb * sb)
            - 0.5 * emp * sb * s2e * h.e2
            + 0.5 * epp * cb * h.sh2;
  c.v2_mant = 0.25 * (s2e * h.e2 * cg + h.sh2 * sg) * msq
            + (ep * cb * h.ch2 * sg - em * sb * c2e * h.e2 * cg)
            + (sg * h.sh2 - cg * s2e * h.e2);
  c.vp_mant = c.v1_mant + p.b * qp * c.v2_mant;

  c.delta_prime = c.d_mant / c.v_mant - p.b * fd.dk_alpha;
  c.tau_alpha = c.delta_prime + p.b / (2.0 * f.k);

  // unscaled views (overflow to inf for very wide barriers)
  const double scale = std::exp(c.log_scale);
  c.v_alpha = c.v_mant * scale;
  c.d_alpha = c.d_mant * scale;
  c.v1_alpha = c.v1_mant * scale;
  c.v2_alpha = c.v2_mant * scale;
  c.v_alpha_prime = c.vp_mant * scale;
  c.m1 = std::polar(std::sqrt(c.v_mant) * std::exp(f.xi), -c.delta);
  return c;
}

// tau_alpha sampled over a monotone grid of barrier widths; helper for the
// wide-barrier limit studies.
inline std::vector<std::pair<double, double>> tau_single_limit_check(
    const ModelParams& p, const std::vector<double>& b_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(b_grid.size());
  for (double b : b_grid) out.emplace_back(b, unit_cell(p.with_b(b)).tau_alpha);
  return out;
}

}  // namespace sfqm
