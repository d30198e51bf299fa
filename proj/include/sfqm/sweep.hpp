#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sfqm/asymptotics.hpp"
#include "sfqm/lattice.hpp"
#include "sfqm/params.hpp"
#include "sfqm/version.hpp"

namespace sfqm {

// One output row of the CLI.  Column set and order are fixed; band-edge
// fallbacks still produce numbers and are marked by the flag.
struct RecordRow {
  double swept;
  double gamma_n;
  double tau_alpha;
  double trans_prob;
  double phi;
  double dphi_de;
  double w_alpha;
  bool band_edge;
};

enum class SweepParam { b, energy, alpha, l_gap, n_barriers };

inline const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::b: return "b";
    case SweepParam::energy: return "E";
    case SweepParam::alpha: return "alpha";
    case SweepParam::l_gap: return "L";
    case SweepParam::n_barriers: return "N";
  }
  return "?";
}

inline SweepParam sweep_param_from_string(const std::string& s) {
  if (s == "b") return SweepParam::b;
  if (s == "E" || s == "energy") return SweepParam::energy;
  if (s == "alpha") return SweepParam::alpha;
  if (s == "L" || s == "l") return SweepParam::l_gap;
  if (s == "N" || s == "n") return SweepParam::n_barriers;
  throw std::invalid_argument("unknown sweep parameter '" + s + "' (expected b, E, alpha, L or N)");
}

struct SweepSpec {
  SweepParam param = SweepParam::b;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;              // number of samples, >= 2
  std::vector<int> n_list;    // explicit list for N sweeps
  ModelParams base;

  std::vector<double> values() const {
    std::vector<double> v;
    if (param == SweepParam::n_barriers) {
      if (n_list.empty())
        throw std::invalid_argument("sweep over N requires an explicit n-list");
      for (int n : n_list) v.push_back(static_cast<double>(n));
      return v;
    }
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    if (!(from < to)) throw std::invalid_argument("sweep needs from < to");
    v.reserve(static_cast<std::size_t>(steps));
    const double h = (to - from) / (steps - 1);
    for (int i = 0; i < steps; ++i) v.push_back(from + i * h);
    return v;
  }

  ModelParams apply(double value) const {
    ModelParams p = base;
    switch (param) {
      case SweepParam::b: p.b = value; break;
      case SweepParam::energy: p.energy = value; break;
      case SweepParam::alpha: p.alpha = value; break;
      case SweepParam::l_gap: p.l_gap = value; break;
      case SweepParam::n_barriers: p.n_barriers = static_cast<int>(value); break;
    }
    return p;
  }
};

inline RecordRow compute_row(const ModelParams& p, const ComposeOptions& opt = {}) {
  const UnitCell cell = unit_cell(p);
  const LatticeResult lat = compose(p, cell, opt);
  RecordRow r{};
  r.swept = 0.0;
  r.gamma_n = lat.gamma_n;
  r.tau_alpha = cell.tau_alpha;
  r.trans_prob = lat.trans_prob;
  r.phi = lat.phi;
  r.dphi_de = lat.dphi_de;
  r.w_alpha = w_alpha(p);
  r.band_edge = lat.band_edge;
  return r;
}

// Thread cap: SFQM_TUNNEL_THREADS env var, else hardware concurrency.
inline int resolve_threads() {
  if (const char* env = std::getenv("SFQM_TUNNEL_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Evaluates the sweep in input order.  Points are computed in parallel and
// written by index, so the output is deterministic regardless of the thread
// count.
inline std::vector<RecordRow> run_sweep(const SweepSpec& spec, const ComposeOptions& opt = {},
                                        int threads = resolve_threads()) {
  const std::vector<double> vals = spec.values();
  for (double v : vals) spec.apply(v).validate();  // fail fast before spawning work

  std::vector<RecordRow> rows(vals.size());
  const auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      rows[i] = compute_row(spec.apply(vals[i]), opt);
      rows[i].swept = vals[i];
    }
  };
  const std::size_t nthreads =
      std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(vals.size(), 1));
  if (nthreads <= 1) {
    work(0, vals.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (vals.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(vals.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

namespace detail {

// fixed float formatting: 17 significant digits, '.' decimal point
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

// Ordered key/value manifest recorded in '#' comment lines of CSV output and
// in the side file of figure datasets.
using Manifest = std::vector<std::pair<std::string, std::string>>;

inline Manifest base_manifest(const ModelParams& p, const ComposeOptions& opt) {
  Manifest m;
  m.emplace_back("alpha", detail::fmt17(p.alpha));
  m.emplace_back("d_alpha", detail::fmt17(p.d_alpha));
  m.emplace_back("V", detail::fmt17(p.v_height));
  m.emplace_back("E", detail::fmt17(p.energy));
  m.emplace_back("b", detail::fmt17(p.b));
  m.emplace_back("L", detail::fmt17(p.l_gap));
  m.emplace_back("N", std::to_string(p.n_barriers));
  m.emplace_back("paper_verbatim", opt.paper_verbatim ? "true" : "false");
  m.emplace_back("free_passage",
                 opt.free_passage == ComposeOptions::FreePassage::standard ? "standard"
                                                                           : "fractional");
  return m;
}

inline void write_csv(std::ostream& os, const std::vector<RecordRow>& rows,
                      const Manifest& manifest, const std::string& swept_name) {
  os << "# schema=sfqm.record.v1\n";
  for (const auto& [k, v] : manifest) os << "# " << k << '=' << v << '\n';
  os << "# swept=" << swept_name << '\n';
  os << "swept,gamma_n,tau_alpha,trans_prob,phi,dphi_de,w_alpha,band_edge\n";
  for (const RecordRow& r : rows) {
    os << detail::fmt17(r.swept) << ',' << detail::fmt17(r.gamma_n) << ','
       << detail::fmt17(r.tau_alpha) << ',' << detail::fmt17(r.trans_prob) << ','
       << detail::fmt17(r.phi) << ',' << detail::fmt17(r.dphi_de) << ','
       << detail::fmt17(r.w_alpha) << ',' << (r.band_edge ? 1 : 0) << '\n';
  }
}

inline void write_json(std::ostream& os, const std::vector<RecordRow>& rows,
                       const Manifest& manifest, const std::string& swept_name) {
  nlohmann::json meta;
  meta["schema"] = "sfqm.record.v1";
  for (const auto& [k, v] : manifest) meta[k] = v;
  meta["swept"] = swept_name;
  nlohmann::json arr = nlohmann::json::array();
  for (const RecordRow& r : rows) {
    arr.push_back({{"swept", r.swept},
                   {"gamma_n", r.gamma_n},
                   {"tau_alpha", r.tau_alpha},
                   {"trans_prob", r.trans_prob},
                   {"phi", r.phi},
                   {"dphi_de", r.dphi_de},
                   {"w_alpha", r.w_alpha},
                   {"band_edge", r.band_edge}});
  }
  nlohmann::json doc{{"manifest", meta}, {"rows", arr}};
  os << doc.dump(2) << '\n';
}

// Figure presets: tunneling-time-vs-width datasets for the two reference
// parameter sets (V = 5, E = 3, L = 0.2, D = 1; N in {1,2,3,4};
// b in [0, 20] at 0.05 resolution).  fig1a is the alpha = 2 family (Hartman
// saturation), fig1b the alpha = 1.995 family.
struct FigurePreset {
  std::string name;
  double alpha;
  double d_alpha = 1.0;
  double v_height = 5.0;
  double energy = 3.0;
  double l_gap = 0.2;
  std::vector<int> cell_counts = {1, 2, 3, 4};
  double b_from = 0.0;
  double b_to = 20.0;
  double b_step = 0.05;
};

inline FigurePreset figure_preset(const std::string& name) {
  if (name == "fig1a") return {"fig1a", 2.0};
  if (name == "fig1b") return {"fig1b", 1.995};
  throw std::invalid_argument("unknown figure '" + name + "' (valid names: fig1a, fig1b)");
}

// One dataset row per (N, b); schema sfqm.figure.v1.
inline void write_figure_dataset(std::ostream& os, const FigurePreset& fig,
                                 const ComposeOptions& opt = {},
                                 int threads = resolve_threads()) {
  os << "# schema=sfqm.figure.v1\n";
  os << "# figure=" << fig.name << '\n';
  os << "n_barriers,b,gamma_n,tau_alpha,trans_prob,phi,dphi_de,w_alpha,band_edge\n";
  const int nb = static_cast<int>(std::lround((fig.b_to - fig.b_from) / fig.b_step)) + 1;
  for (int n : fig.cell_counts) {
    SweepSpec spec;
    spec.param = SweepParam::b;
    spec.from = fig.b_from;
    spec.to = fig.b_to;
    spec.steps = nb;
    spec.base.alpha = fig.alpha;
    spec.base.d_alpha = fig.d_alpha;
    spec.base.v_height = fig.v_height;
    spec.base.energy = fig.energy;
    spec.base.l_gap = fig.l_gap;
    spec.base.n_barriers = n;
    const std::vector<RecordRow> rows = run_sweep(spec, opt, threads);
    for (const RecordRow& r : rows) {
      os << n << ',' << detail::fmt17(r.swept) << ',' << detail::fmt17(r.gamma_n) << ','
         << detail::fmt17(r.tau_alpha) << ',' << detail::fmt17(r.trans_prob) << ','
         << detail::fmt17(r.phi) << ',' << detail::fmt17(r.dphi_de) << ','
         << detail::fmt17(r.w_alpha) << ',' << (r.band_edge ? 1 : 0) << '\n';
    }
  }
}

inline void write_figure_manifest(std::ostream& os, const FigurePreset& fig,
                                  const ComposeOptions& opt = {}) {
  os << "figure=" << fig.name << '\n';
  os << "schema=sfqm.figure.v1\n";
  os << "code_version=" << version_string << '\n';
  os << "alpha=" << detail::fmt17(fig.alpha) << '\n';
  os << "d_alpha=" << detail::fmt17(fig.d_alpha) << '\n';
  os << "V=" << detail::fmt17(fig.v_height) << '\n';
  os << "E=" << detail::fmt17(fig.energy) << '\n';
  os << "L=" << detail::fmt17(fig.l_gap) << '\n';
  os << "N=1,2,3,4\n";
  os << "b_from=" << detail::fmt17(fig.b_from) << '\n';
  os << "b_to=" << detail::fmt17(fig.b_to) << '\n';
  os << "b_step=" << detail::fmt17(fig.b_step) << '\n';
  os << "paper_verbatim=" << (opt.paper_verbatim ? "true" : "false") << '\n';
  os << "free_passage="
     << (opt.free_passage == ComposeOptions::FreePassage::standard ? "standard" : "fractional")
     << '\n';
  os << "note=the source dataset quotes an additional parameter \"v=1e-4\" with no "
        "counterpart among the model inputs; it is left unresolved and d_alpha=1 is used\n";
}

}  // namespace sfqm
