// gaborfin: command-line front end for finite Gabor frame diagnostics.
//
// Exit codes: 0 ran and all verdicts consistent, 2 ran but the frame
// characterization was violated, 1 configuration or runtime error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gabor/analysis.hpp"
#include "gabor/diagnostics.hpp"
#include "gabor/gallery.hpp"
#include "gabor/window_io.hpp"

namespace {

using gabor::AnalysisConfig;
using gabor::index_t;

std::pair<index_t, index_t> parse_lattice(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw gabor::ParameterError("lattice", "expected a,b but got '" + text + "'");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string sa = text.substr(0, comma);
    const std::string sb = text.substr(comma + 1);
    const index_t a = std::stoll(sa, &used_a);
    if (used_a != sa.size()) throw gabor::ParameterError("a", "not an integer: '" + sa + "'");
    const index_t b = std::stoll(sb, &used_b);
    if (used_b != sb.size()) throw gabor::ParameterError("b", "not an integer: '" + sb + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw gabor::ParameterError("lattice", "expected a,b but got '" + text + "'");
  }
}

std::vector<std::string> split_tasks(const std::string& text) {
  std::vector<std::string> tasks;
  std::stringstream in(text);
  std::string t;
  while (std::getline(in, t, ','))
    if (!t.empty()) tasks.push_back(t);
  return tasks;
}

// Options shared by the single-lattice subcommands.
struct CommonOptions {
  std::string config_path;
  index_t length = 0;
  std::string lattice;
  std::string window;
  std::string tasks;
  double tol_scale = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string spectra;
  bool timing = false;

  void attach(CLI::App* cmd, bool with_tasks) {
    cmd->add_option("--config", config_path, "JSON configuration file (flags override it)");
    cmd->add_option("--length", length, "signal length L");
    cmd->add_option("--lattice", lattice, "lattice steps a,b (both must divide L)");
    cmd->add_option("--window", window, "window recipe or path to a window file");
    if (with_tasks) cmd->add_option("--tasks", tasks, "comma-separated task list");
    cmd->add_option("--tol-scale", tol_scale, "tolerance scale factor (default 1e3)");
    cmd->add_option("--seed", seed, "seed for randomized checks");
    cmd->add_option("--out", out, "output path");
    cmd->add_option("--spectra", spectra, "CSV path for spectra");
    cmd->add_flag("--timing", timing, "include wall-clock timings (reports become non-reproducible)");
  }

  AnalysisConfig build() const {
    AnalysisConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw gabor::ParameterError("config", "cannot read '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw gabor::ParameterError("config", e.what());
      }
      c = AnalysisConfig::from_json(j);
    }
    if (length != 0) c.length = length;
    if (!lattice.empty()) std::tie(c.a, c.b) = parse_lattice(lattice);
    if (!window.empty()) {
      // A bare path is accepted as a window file.
      c.window = window;
      std::ifstream probe(window);
      if (probe.good() && window.find(':') == std::string::npos) c.window = "file:" + window;
    }
    if (!tasks.empty()) c.tasks = split_tasks(tasks);
    if (tol_scale != 0.0) c.tol_scale = tol_scale;
    if (seed != 0) c.seed = seed;
    if (!out.empty()) c.out = out;
    if (!spectra.empty()) c.spectra = spectra;
    if (timing) c.timing = true;
    return c;
  }
};

void emit(const nlohmann::json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw gabor::ParameterError("out", "cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
}

int cmd_analyze(const CommonOptions& opts) {
  const auto config = opts.build();
  const auto report = gabor::run(config);
  if (config.out.empty()) std::cout << report.document.dump(2) << '\n';
  return report.exit_code();
}

int cmd_sweep(const CommonOptions& opts, const std::vector<std::string>& lattices) {
  AnalysisConfig config = opts.build();
  if (config.length < 2) throw gabor::ParameterError("L", "--length is required");
  std::vector<std::pair<index_t, index_t>> grid;
  if (lattices.empty() && opts.lattice.empty()) {
    grid = gabor::full_grid(config.length);
  } else {
    if (!opts.lattice.empty()) grid.push_back(parse_lattice(opts.lattice));
    for (const auto& l : lattices) grid.push_back(parse_lattice(l));
  }
  // validate() needs some lattice; the grid points are checked individually.
  config.a = config.b = 1;
  config.validate();
  const auto rows = gabor::sweep(config, grid);
  if (config.out.empty()) {
    gabor::write_sweep_csv(std::cout, rows);
  } else {
    std::ofstream out(config.out);
    if (!out) throw gabor::ParameterError("out", "cannot open '" + config.out + "' for writing");
    gabor::write_sweep_csv(out, rows);
  }
  for (const auto& r : rows)
    if (!r.marginal && (!r.consistent || !r.duality_agree)) return 2;
  return 0;
}

int cmd_gallery(index_t length, double tol_scale, const std::string& out) {
  std::vector<index_t> lengths = {16, 36, 64, 100};
  if (length != 0) lengths = {length};
  const auto doc = gabor::gallery_report(lengths, tol_scale == 0.0 ? gabor::kDefaultTolScale : tol_scale);
  emit({{"schema_version", gabor::kReportSchema}, {"gallery", doc}}, out);
  return 0;
}

int cmd_dual(const CommonOptions& opts, const std::string& report_path) {
  AnalysisConfig config = opts.build();
  config.tasks = {"dual_window"};
  config.validate();
  const gabor::SeparableLattice lat(config.length, config.a, config.b);
  const auto window = gabor::make_window(gabor::WindowRecipe::parse(config.window), lat.model());
  const auto dual = gabor::wexler_raz_dual(window.samples(), lat, config.tol_scale);
  if (!config.out.empty()) gabor::write_window_file(config.out, dual.samples);
  nlohmann::json doc = {{"schema_version", gabor::kReportSchema},
                        {"window", window.label()},
                        {"lattice", {{"L", lat.length()}, {"a", lat.a()}, {"b", lat.b()}}},
                        {"wexler_raz_constant", dual.wexler_raz_constant},
                        {"biorthogonality_residual", dual.biorthogonality_residual},
                        {"frame_lower", dual.frame_lower},
                        {"frame_upper", dual.frame_upper},
                        {"dual_path", config.out}};
  if (config.out.empty()) {
    nlohmann::json samples = nlohmann::json::array();
    for (Eigen::Index i = 0; i < dual.samples.size(); ++i)
      samples.push_back({dual.samples[i].real(), dual.samples[i].imag()});
    doc["samples"] = samples;
  }
  emit(doc, report_path);
  return 0;
}

int cmd_kernel(const CommonOptions& opts) {
  AnalysisConfig config = opts.build();
  config.tasks = {"kernel", "index"};
  const auto report = gabor::run(config);
  if (config.out.empty()) std::cout << report.document.dump(2) << '\n';
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Gabor frame diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GABOR_VERSION);

  CommonOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "bounds, frame conditions, duality and more for one lattice");
  analyze_opts.attach(analyze, true);

  CommonOptions sweep_opts;
  std::vector<std::string> sweep_lattices;
  auto* sweep = app.add_subcommand("sweep", "frame / no-frame table over a grid of lattices");
  sweep_opts.attach(sweep, false);
  sweep->add_option("--grid", sweep_lattices, "additional lattices a,b (default: all divisor pairs)");

  index_t gallery_length = 0;
  double gallery_tol = 0.0;
  std::string gallery_out;
  auto* gallery = app.add_subcommand("gallery", "alternating-sequence ladder and partition-of-unity kernels");
  gallery->add_option("--length", gallery_length, "probe a single perfect-square L");
  gallery->add_option("--tol-scale", gallery_tol, "tolerance scale factor");
  gallery->add_option("--out", gallery_out, "report path (default stdout)");

  CommonOptions dual_opts;
  std::string dual_report;
  auto* dual = app.add_subcommand("dual", "canonical dual window; --out writes it as a window file");
  dual_opts.attach(dual, false);
  dual->add_option("--report", dual_report, "summary path (default stdout)");

  CommonOptions kernel_opts;
  auto* kernel = app.add_subcommand("kernel", "kernel of the adjoint synthesis map and its index");
  kernel_opts.attach(kernel, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_opts);
    if (*sweep) return cmd_sweep(sweep_opts, sweep_lattices);
    if (*gallery) return cmd_gallery(gallery_length, gallery_tol, gallery_out);
    if (*dual) return cmd_dual(dual_opts, dual_report);
    if (*kernel) return cmd_kernel(kernel_opts);
  } catch (const gabor::ParameterError& e) {
    std::cerr << "gaborfin: invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "gaborfin: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
