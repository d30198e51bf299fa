// Command-line frontend: single-point computation, parameter sweeps,
// figure-dataset reproduction and validation runs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfqm/sfqm.hpp"

namespace {

// stream to --out path, or stdout when none given
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sfqm-tunnel: transmission and stationary-phase tunneling times for "
      "locally periodic rectangular barriers in space-fractional quantum "
      "mechanics (Levy index 1 < alpha <= 2)"};
  app.set_config("--config", "", "flat key=value config file (flags take precedence)");

  sfqm::ModelParams params;
  app.add_option("--alpha", params.alpha, "Levy index in (1, 2]")->capture_default_str();
  app.add_option("--d-alpha", params.d_alpha, "kinetic scale constant D_alpha")
      ->capture_default_str();
  app.add_option("--V", params.v_height, "barrier height")->capture_default_str();
  app.add_option("--E", params.energy, "particle energy, 0 < E < V")->capture_default_str();
  app.add_option("--b", params.b, "barrier width")->capture_default_str();
  app.add_option("--L", params.l_gap, "gap between barriers")->capture_default_str();
  app.add_option("--N", params.n_barriers, "number of barriers")->capture_default_str();

  std::string sweep_name;
  double from = 0.0, to = 1.0;
  int steps = 2;
  std::vector<int> n_list;
  app.add_option("--sweep", sweep_name, "sweep parameter: b, E, alpha, L or N");
  app.add_option("--from", from, "sweep start");
  app.add_option("--to", to, "sweep end");
  app.add_option("--steps", steps, "number of sweep samples (>= 2)");
  app.add_option("--n-list", n_list, "explicit N values for --sweep N")->delimiter(',');

  std::string format = "csv";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  std::string out_path;
  app.add_option("--out", out_path,
                 "output file (figure mode: output directory; default stdout/cwd)");

  std::string figure_name;
  app.add_option("--figure", figure_name, "write a preset figure dataset + manifest")
      ->check(CLI::IsMember({"fig1a", "fig1b"}));

  bool paper_verbatim = false;
  app.add_flag("--paper-verbatim", paper_verbatim,
               "use the unsigned root sqrt(v_alpha - chi^2) in Q_N and the phase "
               "derivative (single-argument arctangent convention)");
  std::string free_passage = "standard";
  app.add_option("--free-passage", free_passage,
                 "free-passage convention: group velocity 2k (standard) or the "
                 "fractional alpha D k_alpha^{alpha-1}")
      ->check(CLI::IsMember({"standard", "fractional"}))
      ->capture_default_str();

  bool do_validate = false;
  app.add_flag("--validate", do_validate, "run the cross-module validation suite");
  std::string grid = "default";
  app.add_option("--grid", grid, "validation grid size")
      ->check(CLI::IsMember({"default", "fine"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  sfqm::ComposeOptions opt;
  opt.paper_verbatim = paper_verbatim;
  opt.free_passage = (free_passage == "fractional")
                         ? sfqm::ComposeOptions::FreePassage::fractional
                         : sfqm::ComposeOptions::FreePassage::standard;

  try {
    if (!figure_name.empty()) {
      const sfqm::FigurePreset fig = sfqm::figure_preset(figure_name);
      const std::filesystem::path dir = out_path.empty() ? "." : out_path;
      std::filesystem::create_directories(dir);
      const std::filesystem::path data_path = dir / (figure_name + ".csv");
      const std::filesystem::path man_path = dir / (figure_name + "_manifest.txt");
      {
        std::ofstream data(data_path, std::ios::binary);
        if (!data) throw std::runtime_error("cannot write " + data_path.string());
        sfqm::write_figure_dataset(data, fig, opt);
      }
      {
        std::ofstream man(man_path, std::ios::binary);
        if (!man) throw std::runtime_error("cannot write " + man_path.string());
        sfqm::write_figure_manifest(man, fig, opt);
      }
      std::cout << data_path.string() << '\n' << man_path.string() << '\n';
      return 0;
    }

    if (do_validate) {
      const sfqm::GridSpec gs = (grid == "fine") ? sfqm::GridSpec::fine() : sfqm::GridSpec{};
      const sfqm::ValidationReport rep = sfqm::validate(gs);
      OutputTarget out(out_path);
      if (format == "json")
        out.stream() << rep.to_json().dump(2) << '\n';
      else
        out.stream() << rep.to_text();
      return rep.hard_failures() == 0 ? 0 : 1;
    }

    if (!sweep_name.empty()) {
      sfqm::SweepSpec spec;
      spec.param = sfqm::sweep_param_from_string(sweep_name);
      spec.from = from;
      spec.to = to;
      spec.steps = steps;
      spec.n_list = n_list;
      spec.base = params;
      const std::vector<sfqm::RecordRow> rows = sfqm::run_sweep(spec, opt);
      OutputTarget out(out_path);
      const sfqm::Manifest manifest = sfqm::base_manifest(params, opt);
      if (format == "json")
        sfqm::write_json(out.stream(), rows, manifest, sfqm::to_string(spec.param));
      else
        sfqm::write_csv(out.stream(), rows, manifest, sfqm::to_string(spec.param));
      return 0;
    }

    // single-point computation
    sfqm::RecordRow row = sfqm::compute_row(params, opt);
    row.swept = params.b;
    OutputTarget out(out_path);
    const sfqm::Manifest manifest = sfqm::base_manifest(params, opt);
    if (format == "json")
      sfqm::write_json(out.stream(), {row}, manifest, "b");
    else
      sfqm::write_csv(out.stream(), {row}, manifest, "b");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
