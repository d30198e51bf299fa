#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "sfqm/barrier.hpp"
#include "sfqm/oracle.hpp"
#include "sfqm/params.hpp"

namespace sfqm {

struct ComposeOptions {
  // Evaluate Q_N and the phase-derivative numerator with the unsigned
  // principal root sqrt(v_alpha - chi^2) instead of the sign-resolved
  // sqrt(v_alpha) sin(delta + k_alpha s).  The unsigned form makes the
  // reported phase discontinuous in E wherever sin(delta + k_alpha s)
  // changes sign; it is kept for comparison only.
  bool paper_verbatim = false;

  enum class FreePassage { standard, fractional };
  // standard: ((N-1)s + b) / (2k).  fractional: the same distance divided by
  // the fractional group velocity alpha D_alpha k_alpha^{alpha-1}.
  FreePassage free_passage = FreePassage::standard;
};

// N-cell composition output.  M_N = P_N - i Q_N with
//   P_N = chi U_{N-1}(chi) - U_{N-2}(chi) = T_N(chi),
//   Q_N = sqrt(v_alpha) sin(delta + k_alpha s) U_{N-1}(chi),
// and t_N = e^{-i k_alpha N s} / M_N.
//
// chi and the Chebyshev values grow like e^{xi} per unit-cell power; the
// composition below keeps them as mantissas with e^{k xi} factored out so
// phi, dphi_de, gamma_n and trans_prob stay finite at any barrier width.
// The diagnostic fields (chi, u_nm*, m_n, p_n, q_n) are unscaled views and
// overflow to +-inf in the extreme opaque regime.
struct LatticeResult {
  double chi;
  double chi_prime;
  double u_nm1, u_nm2, u_nm3;  // U_{N-1}, U_{N-2}, U_{N-3} at chi
  double t_n_first_kind;       // T_N(chi)
  std::complex<double> m_n;
  std::complex<double> t_n;
  double trans_prob;           // |t_N|^2 in (0, 1]
  double p_n, q_n;
  double phi;                  // full-quadrant phase of (P_N, Q_N)
  double dphi_de;              // closed-form A1 / A2 (FD fallback at band edges)
  double gamma_n;              // tunneling time
  bool band_edge = false;      // |chi^2 - 1| < 1e-9: dphi_de came from the FD fallback
};

namespace detail {

struct CellScaled {
  // mantissas at scale e^{xi}: chi = chi_m e^{xi}, sigma = sigma_m e^{xi}, ...
  double chi_m, sigma_m, chip_m, sigp_m;
  double v_m;      // v_alpha e^{-2 xi}
  double xi;
  double phase;    // delta + k_alpha s
  double dphase;   // delta' + k_alpha' s
};

inline CellScaled cell_scaled(const ModelParams& p, const UnitCell& c,
                              const FracQuantities& f, const FracDerivatives& fd) {
  CellScaled s{};
  s.xi = f.xi;
  s.v_m = c.v_mant;
  s.phase = c.delta + f.k_alpha * p.s();
  s.dphase = c.delta_prime + fd.dk_alpha * p.s();
  const double sv = std::sqrt(c.v_mant);
  const double cph = std::cos(s.phase), sph = std::sin(s.phase);
  s.chi_m = sv * cph;
  s.sigma_m = sv * sph;
  // chi' = v'/(2 sqrt v) cos - sqrt v (delta' + k' s) sin; vp_mant already
  // carries the full derivative of v (growth of e^{2 xi} included), so the
  // mantissa of chi' is obtained by scaling each factor, nothing extra.
  s.chip_m = c.vp_mant * cph / (2.0 * sv) - sv * s.dphase * sph;
  s.sigp_m = c.vp_mant * sph / (2.0 * sv) + sv * s.dphase * cph;
  return s;
}

// phi as a function of energy alone (used by the band-edge FD fallback).
inline double phi_of_energy(const ModelParams& p, bool unsigned_root) {
  const FracQuantities f = wavenumbers(p);
  const UnitCell c = unit_cell(p);
  const double sv = std::sqrt(c.v_mant);
  const double phase = c.delta + f.k_alpha * p.s();
  const double chi_m = sv * std::cos(phase);
  double sigma_m = sv * std::sin(phase);
  if (unsigned_root) sigma_m = std::abs(sigma_m);
  const double e2 = std::exp(-2.0 * f.xi);
  double um1 = 0.0, u = 1.0, u2 = 0.0;  // U_{k-1}, U_k scaled; u2 = U_{N-2}
  for (int k = 0; k + 1 < p.n_barriers; ++k) {
    const double next = 2.0 * chi_m * u - e2 * um1;
    um1 = u;
    u = next;
  }
  u2 = um1;
  const double t_hat = chi_m * u - e2 * u2;
  return std::atan2(sigma_m * u, t_hat);
}

}  // namespace detail

inline LatticeResult compose(const ModelParams& p, const UnitCell& cell,
                             const ComposeOptions& opt = {}) {
  const FracQuantities f = wavenumbers(p);
  const FracDerivatives fd = derivatives(p);
  const detail::CellScaled sc = detail::cell_scaled(p, cell, f, fd);
  const int n = p.n_barriers;
  const double e2 = std::exp(-2.0 * f.xi);

  // Scaled recurrence: with chi = chi_m e^{xi}, the values
  // Uhat_k = U_k(chi) e^{-k xi} obey Uhat_{k+1} = 2 chi_m Uhat_k - e^{-2 xi} Uhat_{k-1}.
  double u_prev = 0.0;   // Uhat_{k-1}, seeded with Uhat_{-1} = 0
  double u_cur = 1.0;    // Uhat_0
  double u_prev2 = 0.0;  // Uhat_{k-2} (only meaningful once k >= 2)
  for (int k = 0; k + 1 < n; ++k) {
    const double next = 2.0 * sc.chi_m * u_cur - e2 * u_prev;
    u_prev2 = u_prev;
    u_prev = u_cur;
    u_cur = next;
  }
  const double uh1 = u_cur;                      // Uhat_{N-1}
  const double uh2 = u_prev;                     // Uhat_{N-2}
  const double uh3 = (n >= 2) ? u_prev2 : 0.0;   // Uhat_{N-3}, n=1 handled below
  const double th = sc.chi_m * uh1 - e2 * uh2;   // That_N = T_N(chi) e^{-N xi}

  const double sign_fix = (opt.paper_verbatim && sc.sigma_m < 0.0) ? -1.0 : 1.0;
  const double sig_used = sign_fix * sc.sigma_m;

  LatticeResult r{};
  r.phi = std::atan2(sig_used * uh1, th);

  // A2 = |M_N|^2 scaled by e^{-2 N xi}
  const double a2 = sc.v_m * uh1 * uh1 + e2 * e2 * uh2 * uh2 - 2.0 * e2 * sc.chi_m * uh1 * uh2;

  // band edge |chi^2 - 1| < 1e-9, tested in log form to survive huge xi
  const double tol_edge = 1e-9;
  bool edge = false;
  if (sc.chi_m != 0.0) {
    const double lc = 2.0 * f.xi + 2.0 * std::log(std::abs(sc.chi_m));
    if (std::abs(lc) < 1e-3) edge = std::abs(std::expm1(lc)) < tol_edge;
  }
  r.band_edge = (n >= 2) && edge;  // the singular a2 term is absent for n = 1

  if (!r.band_edge) {
    const double a1_hat = sc.sigp_m * uh1 * th - sc.sigma_m * sc.chip_m * uh1 * uh1;
    double a2_hat = 0.0;
    if (n >= 2) {
      const double bracket =
          n * e2 * uh2 * uh2 - sc.chi_m * uh1 * uh2 - (n - 1) * e2 * uh1 * uh3;
      a2_hat = sc.sigma_m * sc.chip_m * e2 * bracket / (sc.chi_m * sc.chi_m - e2);
    }
    r.dphi_de = sign_fix * (a1_hat + a2_hat) / a2;
  } else {
    // FD fallback with adaptive step shrinking: the closed form divides by
    // chi^2 - 1 here.  Halve the step until two successive Richardson
    // estimates stabilize.
    const auto phi_fn = [&](double E) {
      return detail::phi_of_energy(p.with_energy(E), opt.paper_verbatim);
    };
    double step = 1e-6;
    double best = fd_phase_derivative(phi_fn, p.energy, {step, true});
    for (int it = 0; it < 8; ++it) {
      step *= 0.5;
      const double next = fd_phase_derivative(phi_fn, p.energy, {step, true});
      if (std::abs(next - best) <= 1e-7 * std::max(1.0, std::abs(best))) {
        best = next;
        break;
      }
      best = next;
    }
    r.dphi_de = best;
  }

  const double free_time = (opt.free_passage == ComposeOptions::FreePassage::standard)
                               ? ((n - 1) * p.s() + p.b) / (2.0 * f.k)
                               : ((n - 1) * p.s() + p.b) * fd.dk_alpha;
  r.gamma_n = r.dphi_de - n * p.s() * fd.dk_alpha + free_time;

  // unscaled views
  const double ex = std::exp(f.xi);
  r.chi = sc.chi_m * ex;
  r.chi_prime = sc.chip_m * ex;
  if (n == 1) {
    r.u_nm1 = 1.0;
    r.u_nm2 = 0.0;
    r.u_nm3 = -1.0;  // U_{-2} = -1 identically
  } else {
    r.u_nm1 = uh1 * std::exp((n - 1) * f.xi);
    r.u_nm2 = uh2 * std::exp((n - 2) * f.xi);
    r.u_nm3 = uh3 * std::exp((n - 3) * f.xi);
  }
  r.t_n_first_kind = th * std::exp(n * f.xi);
  r.p_n = r.t_n_first_kind;
  r.q_n = sig_used * uh1 * std::exp(n * f.xi);
  r.m_n = std::complex<double>(r.p_n, -sc.sigma_m * uh1 * std::exp(n * f.xi));
  r.trans_prob = std::exp(-2.0 * n * f.xi - std::log(a2));
  const std::complex<double> i1(0.0, 1.0);
  r.t_n = std::exp(-i1 * (f.k_alpha * n * p.s())) *
          std::complex<double>(th, sig_used * uh1) / a2 * std::exp(-n * f.xi);
  return r;
}

// Transmission amplitude and probability for the full parameter set.
inline std::pair<std::complex<double>, double> transmission(const ModelParams& p,
                                                            const ComposeOptions& opt = {}) {
  const LatticeResult r = compose(p, unit_cell(p), opt);
  return {r.t_n, r.trans_prob};
}

struct GammaPoint {
  double b;
  double gamma_n;
  double tau_alpha;
  double trans_prob;
  bool band_edge;
};

// Gamma, tau and |t_N|^2 sampled over a grid of barrier widths.
inline std::vector<GammaPoint> gamma_curve(const ModelParams& p,
                                           const std::vector<double>& b_grid,
                                           const ComposeOptions& opt = {}) {
  std::vector<GammaPoint> out;
  out.reserve(b_grid.size());
  for (double b : b_grid) {
    const ModelParams q = p.with_b(b);
    const UnitCell c = unit_cell(q);
    const LatticeResult r = compose(q, c, opt);
    out.push_back({b, r.gamma_n, c.tau_alpha, r.trans_prob, r.band_edge});
  }
  return out;
}

}  // namespace sfqm
