#pragma once

#include <cmath>

#include "sfqm/barrier.hpp"
#include "sfqm/oracle.hpp"
#include "sfqm/params.hpp"

namespace sfqm {

// Per-unit-cell-length coefficient governing the wide-barrier dependence of
// the N-cell time on the period s:
//   w_alpha = 1/(2k) - 1/(alpha D_alpha k_alpha^{alpha-1}).
// Vanishes identically at alpha = 2 with D = 1 and is negative for
// 1 < alpha < 2.
inline double w_alpha(const ModelParams& p) {
  const FracQuantities f = wavenumbers(p);
  return 1.0 / (2.0 * f.k) -
         1.0 / (p.alpha * p.d_alpha * std::pow(f.k_alpha, p.alpha - 1.0));
}

// Wide-barrier prediction Gamma^N -> tau_limit + (N-1) s w_alpha, with
// tau_limit supplied by the caller (measured from the single-cell curve).
inline double gamma_limit(const ModelParams& p, double tau_limit) {
  return tau_limit + (p.n_barriers - 1) * p.s() * w_alpha(p);
}

// Wide-barrier prefactors of v_alpha ~ e^{2 xi} f1 and
// v_alpha' ~ e^{2 xi} (f2 + b f3), evaluated verbatim, together with the
// numerically extracted limits at a probe width.  The measured v-limit
// equals f1 - (15/4) eps_plus cos(beta): the first term of the verbatim f1
// carries coefficient 4 where the hyperbolic expansion of v_alpha gives 1/4.
// f2 and f3 agree with the measured v' limit.  Nothing downstream consumes
// f1; the coefficients cancel in the final time limit.
struct FCoefficients {
  double f1, f2, f3;
  double v_limit_measured;   // v_alpha e^{-2 xi} at b = b_probe
  double vp_limit_measured;  // v_alpha' e^{-2 xi} at b = b_probe
  double b_probe;
};

inline FCoefficients f_coefficients(const ModelParams& p, double b_probe = 50.0) {
  const FracQuantities f = wavenumbers(p);
  const FracDerivatives fd = derivatives(p);
  const double cb = std::cos(f.beta), sb = std::sin(f.beta);
  const double ep = f.eps_plus, em = f.eps_minus;
  FCoefficients out{};
  out.f1 = 4.0 * ep * cb +
           (8.0 + ep * ep + em * em + (ep * ep - em * em) * std::cos(2.0 * f.beta)) / 32.0;
  out.f2 = (2.0 * fd.deps_plus * cb + em * fd.deps_minus * sb * sb +
            ep * fd.deps_plus * cb * cb) / 8.0;
  out.f3 = fd.dq_alpha * std::sin(f.gamma_ang) *
           (4.0 * ep * cb + ep * ep * cb * cb + em * em * sb * sb + 4.0) / 8.0;
  const UnitCell c = unit_cell(p.with_b(b_probe));
  out.v_limit_measured = c.v_mant;
  out.vp_limit_measured = c.vp_mant;
  out.b_probe = b_probe;
  return out;
}

// Standard-QM (alpha = 2, D = 1) single-barrier phase time
//   tau = d/dE atan( (k^2 - q^2) / (2 k q) * tanh(q b) ),
// differentiated in closed form.  p.alpha is ignored.
inline double std_qm_tau(const ModelParams& p) {
  p.validate();
  const double E = p.energy, V = p.v_height, b = p.b;
  const double q = std::sqrt(V - E);
  const double g = E * (V - E);       // k^2 q^2
  const double u = 2.0 * E - V;       // k^2 - q^2
  const double th = std::tanh(q * b);
  const double sech = 1.0 / std::cosh(q * b);
  const double da = V * V / (4.0 * std::pow(g, 1.5)) * th -
                    u * b / (4.0 * q * std::sqrt(g)) * sech * sech;
  const double one_plus_a2 = (4.0 * g + u * u * th * th) / (4.0 * g);
  return da / one_plus_a2;
}

// Opaque limit of the expression above: 1/(q k), independent of b.
inline double std_qm_tau_limit(const ModelParams& p) {
  p.validate();
  return 1.0 / std::sqrt(p.energy * (p.v_height - p.energy));
}

// Assembled wide-barrier prediction record.
struct AsymptoticPrediction {
  double w_alpha;
  double predicted_gap;  // (N-1) s w_alpha = limit of Gamma^N - tau_alpha
  double f1, f2, f3;
  double tau_qm_limit;   // 1/(qk); the alpha = 2 saturation value
};

inline AsymptoticPrediction predict(const ModelParams& p) {
  const FCoefficients fc = f_coefficients(p);
  AsymptoticPrediction a{};
  a.w_alpha = w_alpha(p);
  a.predicted_gap = (p.n_barriers - 1) * p.s() * a.w_alpha;
  a.f1 = fc.f1;
  a.f2 = fc.f2;
  a.f3 = fc.f3;
  a.tau_qm_limit = std_qm_tau_limit(p);
  return a;
}

}  // namespace sfqm
