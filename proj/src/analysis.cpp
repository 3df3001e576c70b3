#include "gabor/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <thread>

#include "gabor/diagnostics.hpp"
#include "gabor/gallery.hpp"
#include "gabor/twisted.hpp"

namespace gabor {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

json complex_array(const cvec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v[i].real(), v[i].imag()});
  return arr;
}

cvec random_signal(std::mt19937_64& rng, index_t L) {
  std::normal_distribution<double> normal;
  cvec f(L);
  for (index_t t = 0; t < L; ++t) {
    const double re = normal(rng);
    f[t] = complex_t(re, normal(rng));
  }
  return f;
}

bool has_task(const AnalysisConfig& c, std::string_view task) {
  return std::find(c.tasks.begin(), c.tasks.end(), task) != c.tasks.end();
}

json lattice_json(const SeparableLattice& lat) {
  return {{"L", lat.length()},
          {"a", lat.a()},
          {"b", lat.b()},
          {"size", lat.size()},
          {"covolume", lat.covolume()},
          {"redundancy", lat.redundancy()},
          {"commutative", lat.is_commutative()}};
}

using Spectra = SpectraTables;

json bounds_task(const cvec& g, const SeparableLattice& lat, const AnalysisConfig& cfg, Spectra& spectra) {
  const auto b = frame_bounds(g, lat, cfg.tol_scale);
  spectra.frame_operator = b.frame_spectrum;
  spectra.gramian = b.gramian_spectrum;
  const auto norms = operator_norms(g, lat);

  // Pointwise frame inequality on random signals.
  std::mt19937_64 rng(cfg.seed);
  constexpr int trials = 8;
  double violation = 0.0;
  for (int i = 0; i < trials; ++i) {
    const cvec f = random_signal(rng, lat.length());
    const double energy = coefficient_map(g, lat, f).values.squaredNorm() / f.squaredNorm();
    violation = std::max({violation, b.frame_lower - energy, energy - b.frame_upper});
  }

  return {{"frame_lower", b.frame_lower},
          {"frame_upper", b.frame_upper},
          {"condition_number", number(b.condition_number)},
          {"riesz_lower", b.riesz_lower},
          {"riesz_upper", b.riesz_upper},
          {"riesz_lower_squared", b.riesz_lower_sq},
          {"riesz_upper_squared", b.riesz_upper_sq},
          {"gramian_min_nonzero", b.gramian_min_nonzero},
          {"is_frame", b.is_frame},
          {"is_riesz", b.is_riesz},
          {"tolerance", {{"relative_spectral_threshold", b.threshold}, {"tol_scale", cfg.tol_scale}}},
          {"operator_norms",
           {{"coefficient", norms.coefficient},
            {"synthesis", norms.synthesis},
            {"frame_operator", norms.frame_operator},
            {"gramian", norms.gramian}}},
          {"autocorrelation_l1", autocorrelation_l1(g, lat)},
          {"frame_inequality_check",
           {{"seed", cfg.seed}, {"trials", trials}, {"max_violation", std::max(violation, 0.0)},
            {"tolerance", 1e-12 * std::max(1.0, b.frame_upper)}}}};
}

json conditions_task(const cvec& g, const SeparableLattice& lat, const AnalysisConfig& cfg, bool& consistent) {
  const auto v = check_all_conditions(g, lat, cfg.tol_scale);
  json conds = json::object();
  for (std::size_t i = 0; i < kConditionKeys.size(); ++i)
    conds[std::string(kConditionKeys[i])] = {{"holds", v.holds[i]}, {"witness", v.witness[i]}, {"route", v.route[i]}};
  // Marginal cases are reported but do not raise the alarm.
  if (!v.consistent && !v.marginal) consistent = false;
  json out = {{"conditions", conds},
              {"consistent", v.consistent},
              {"marginal", v.marginal},
              {"tolerance", {{"relative_spectral_threshold", v.threshold}, {"marginal_band", 10.0}}},
              {"collapsed_pairs",
               "in finite dimensions (ii)/(iii), (vi)/(vii), (ix)/(x) and (xi)/(xii) reduce to one check each, "
               "and injectivity, surjectivity and invertibility of S and G coincide"}};
  if (v.kernel_witness) {
    out["kernel_witness"] = {{"values", complex_array(v.kernel_witness->flat())},
                             {"residual", v.kernel_witness_residual},
                             {"tolerance", std::sqrt(v.threshold)}};
  }
  return out;
}

json duality_task(const cvec& g, const SeparableLattice& lat, const AnalysisConfig& cfg, Spectra& spectra,
                  bool& consistent) {
  const auto d = duality_check(g, lat, cfg.tol_scale);
  spectra.frame_operator = d.frame_spectrum;
  spectra.adjoint_gramian = d.adjoint_gramian_spectrum;
  if (!d.agree && !d.marginal) consistent = false;
  return {{"frame", d.frame},
          {"adjoint_riesz", d.adjoint_riesz},
          {"agree", d.agree},
          {"marginal", d.marginal},
          {"frame_spectrum_extremes", {d.frame_spectrum(0), d.frame_spectrum(d.frame_spectrum.size() - 1)}},
          {"adjoint_gramian_spectrum_extremes",
           {d.adjoint_gramian_spectrum(0), d.adjoint_gramian_spectrum(d.adjoint_gramian_spectrum.size() - 1)}}};
}

json janssen_task(const cvec& g, const SeparableLattice& lat) {
  const auto a = janssen_coefficients(g, lat);
  const cmat s = frame_operator_matrix(g, lat);
  const double residual = (s - represent(a)).norm() / s.norm();
  return {{"relative_residual", residual},
          {"tolerance", 1e-12},
          {"coefficients_l1", l1_norm(a)},
          {"adjoint_lattice", lattice_json(a.lattice)}};
}

json dual_task(const cvec& g, const SeparableLattice& lat, const AnalysisConfig& cfg) {
  try {
    const auto dual = wexler_raz_dual(g, lat, cfg.tol_scale);
    std::mt19937_64 rng(cfg.seed + 1);
    const cvec f = random_signal(rng, lat.length());
    const cvec rec = synthesis_map(g, coefficient_map(dual.samples, lat, f));
    return {{"status", "ok"},
            {"wexler_raz_constant", dual.wexler_raz_constant},
            {"biorthogonality_residual", dual.biorthogonality_residual},
            {"reconstruction_residual", (rec - f).norm() / f.norm()},
            {"reconstruction_seed", cfg.seed + 1},
            {"tolerance", 1e-10},
            {"dual_norm", dual.samples.norm()}};
  } catch (const NotAFrameError& e) {
    return {{"status", "not_a_frame"}, {"sigma_min", e.sigma_min()}, {"sigma_max", e.sigma_max()}};
  }
}

json kernel_task(const cvec& g, const SeparableLattice& lat, const AnalysisConfig& cfg) {
  const auto adj = adjoint_lattice(lat);
  const auto basis = kernel_basis(g, adj, cfg.tol_scale);
  const auto tol = RankTolerance::for_lattice(adj, cfg.tol_scale);
  json witnesses = json::array();
  constexpr std::size_t kMaxWitnesses = 4;
  for (std::size_t i = 0; i < std::min(basis.size(), kMaxWitnesses); ++i) {
    const double residual = synthesis_map(g, basis[i]).norm() / basis[i].values.norm();
    witnesses.push_back({{"values", complex_array(basis[i].flat())}, {"residual", residual}});
  }
  return {{"adjoint_lattice", lattice_json(adj)},
          {"dimension", basis.size()},
          {"witnesses", witnesses},
          {"tolerance", {{"relative_spectral_threshold", tol.threshold()}}}};
}

json index_task(const cvec& g, const SeparableLattice& lat, const AnalysisConfig& cfg) {
  const auto adj = adjoint_lattice(lat);
  const auto kdim = kernel_basis(g, adj, cfg.tol_scale).size();
  if (!adj.is_commutative())
    return {{"commutative", false}, {"kernel_dimension_upper_bound", kdim}};
  return {{"commutative", true}, {"index", index_commutative(g, adj, cfg.tol_scale)}, {"kernel_dimension", kdim}};
}

}  // namespace

void AnalysisConfig::validate() const {
  if (length < 2) throw ParameterError("L", "signal length must be at least 2");
  if (a < 1 || length % a != 0) throw ParameterError("a", "time step must be a positive divisor of L");
  if (b < 1 || length % b != 0) throw ParameterError("b", "frequency step must be a positive divisor of L");
  if (!(tol_scale > 0.0) || !std::isfinite(tol_scale))
    throw ParameterError("tol_scale", "tolerance scale must be positive and finite");
  if (tasks.empty()) throw ParameterError("tasks", "at least one task is required");
  for (const auto& t : tasks)
    if (std::find(kTaskNames.begin(), kTaskNames.end(), t) == kTaskNames.end())
      throw ParameterError("tasks", "unknown task '" + t + "'");
  const auto recipe = WindowRecipe::parse(window);
  if (recipe.kind == WindowKind::file && !std::filesystem::exists(recipe.path))
    throw ParameterError("window", "window file '" + recipe.path + "' does not exist");
}

nlohmann::json AnalysisConfig::to_json() const {
  return {{"L", length}, {"lattice", {{"a", a}, {"b", b}}}, {"window", window}, {"tol_scale", tol_scale},
          {"tasks", tasks}, {"seed", seed}, {"out", out}, {"spectra", spectra}, {"timing", timing}};
}

AnalysisConfig AnalysisConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("config", "configuration must be a JSON object");
  AnalysisConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "L") {
        c.length = value.get<index_t>();
      } else if (key == "lattice") {
        c.a = value.at("a").get<index_t>();
        c.b = value.at("b").get<index_t>();
      } else if (key == "window") {
        c.window = value.get<std::string>();
      } else if (key == "tol_scale") {
        c.tol_scale = value.get<double>();
      } else if (key == "tasks") {
        c.tasks = value.get<std::vector<std::string>>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        c.out = value.get<std::string>();
      } else if (key == "spectra") {
        c.spectra = value.get<std::string>();
      } else if (key == "timing") {
        c.timing = value.get<bool>();
      } else {
        throw ParameterError(key, "unknown configuration key");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(key, e.what());
    }
  }
  return c;
}

DiagnosticsReport analyze(const AnalysisConfig& config) {
  config.validate();
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();

  const SeparableLattice lat(config.length, config.a, config.b);
  const auto window = make_window(WindowRecipe::parse(config.window), lat.model());
  const cvec& g = window.samples();

  DiagnosticsReport report;
  json results = json::object();
  json timings = json::object();
  Spectra spectra;

  auto timed = [&](std::string_view task, auto&& fn) {
    if (!has_task(config, task)) return;
    const auto t0 = clock::now();
    results[std::string(task)] = fn();
    timings[std::string(task)] = std::chrono::duration<double>(clock::now() - t0).count();
  };

  timed("bounds", [&] { return bounds_task(g, lat, config, spectra); });
  timed("conditions", [&] { return conditions_task(g, lat, config, report.consistent); });
  timed("duality", [&] { return duality_task(g, lat, config, spectra, report.consistent); });
  timed("janssen", [&] { return janssen_task(g, lat); });
  timed("dual_window", [&] { return dual_task(g, lat, config); });
  timed("kernel", [&] { return kernel_task(g, lat, config); });
  timed("index", [&] { return index_task(g, lat, config); });
  timed("gallery", [&] {
    std::vector<index_t> lengths = {16, 36, 64, 100};
    const auto side = static_cast<index_t>(std::llround(std::sqrt(static_cast<double>(config.length))));
    if (side >= 2 && side * side == config.length) lengths = {config.length};
    return gallery_report(lengths, config.tol_scale);
  });

  report.document = {{"schema_version", kReportSchema},
                     {"tool", {{"name", "gaborfin"}, {"version", GABOR_VERSION}}},
                     {"config", config.to_json()},
                     {"lattice", lattice_json(lat)},
                     {"adjoint_lattice", lattice_json(adjoint_lattice(lat))},
                     {"window", {{"label", window.label()}, {"original_norm", window.original_norm()}}},
                     {"seeds", {{"base", config.seed}}},
                     {"results", results},
                     {"consistent", report.consistent}};
  if (config.timing) {
    timings["total"] = std::chrono::duration<double>(clock::now() - started).count();
    report.document["timing_seconds"] = timings;
  }
  if (!config.spectra.empty()) report.document["spectra_path"] = config.spectra;
  report.spectra = std::move(spectra);
  return report;
}

DiagnosticsReport run(const AnalysisConfig& config) {
  auto report = analyze(config);
  if (!config.out.empty()) write_report(report, config.out);
  if (!config.spectra.empty()) {
    std::ofstream out(config.spectra);
    if (!out) throw ParameterError("spectra", "cannot open '" + config.spectra + "' for writing");
    write_spectra_csv(out, report.spectra);
  }
  return report;
}

void write_report(const DiagnosticsReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("out", "cannot open '" + path + "' for writing");
  out << report.document.dump(2) << '\n';
}

std::vector<std::pair<index_t, index_t>> full_grid(index_t length) {
  std::vector<std::pair<index_t, index_t>> grid;
  for (const auto& lat : divisor_lattices(length)) grid.emplace_back(lat.a(), lat.b());
  return grid;
}

std::vector<SweepRow> sweep(const AnalysisConfig& base, const std::vector<std::pair<index_t, index_t>>& grid) {
  if (grid.empty()) return {};
  for (const auto& [a, b] : grid) {
    AnalysisConfig c = base;
    c.a = a;
    c.b = b;
    c.validate();
  }
  const auto window = make_window(WindowRecipe::parse(base.window), FiniteModel(base.length));
  const cvec& g = window.samples();

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      const SeparableLattice lat(base.length, grid[i].first, grid[i].second);
      const auto duality = duality_check(g, lat, base.tol_scale);
      const auto verdict = check_all_conditions(g, lat, base.tol_scale);
      SweepRow& r = rows[i];
      r.a = lat.a();
      r.b = lat.b();
      r.redundancy = lat.redundancy();
      r.frame_lower = std::max(duality.frame_spectrum(0), 0.0);
      r.frame_upper = duality.frame_spectrum(duality.frame_spectrum.size() - 1);
      r.frame = duality.frame;
      r.adjoint_riesz = duality.adjoint_riesz;
      r.duality_agree = duality.agree;
      r.consistent = verdict.consistent;
      r.marginal = verdict.marginal || duality.marginal;
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, grid.size());
  std::vector<std::future<void>> pending;
  for (std::size_t w = 1; w < workers; ++w) pending.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& p : pending) p.get();
  return rows;
}

void write_spectra_csv(std::ostream& out, const SpectraTables& spectra) {
  const auto old_precision = out.precision(17);
  out << "operator,index,value\n";
  auto dump = [&](const char* name, const rvec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << name << ',' << i << ',' << v[i] << '\n';
  };
  dump("frame_operator", spectra.frame_operator);
  dump("gramian", spectra.gramian);
  dump("adjoint_gramian", spectra.adjoint_gramian);
  out.precision(old_precision);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto old_precision = out.precision(17);
  out << "a,b,redundancy,frame_lower,frame_upper,frame,adjoint_riesz,duality_agree,consistent,marginal\n";
  for (const auto& r : rows) {
    out << r.a << ',' << r.b << ',' << r.redundancy << ',' << r.frame_lower << ',' << r.frame_upper << ','
        << r.frame << ',' << r.adjoint_riesz << ',' << r.duality_agree << ',' << r.consistent << ',' << r.marginal
        << '\n';
  }
  out.precision(old_precision);
}

nlohmann::json gallery_report(const std::vector<index_t>& probe_lengths, double tol_scale) {
  json ladder = json::array();
  for (index_t L : probe_lengths) {
    const auto gauss = gaussian_alternating_kernel_probe(L, tol_scale);
    cvec delta = cvec::Zero(L);
    delta[0] = 1.0;
    const auto control = alternating_kernel_probe(L, delta, tol_scale);
    ladder.push_back({{"L", L},
                      {"side", gauss.side},
                      {"gaussian_ratio", gauss.ratio},
                      {"gaussian_sigma_min", gauss.sigma_min},
                      {"gaussian_kernel_dimension", gauss.kernel_dimension},
                      {"delta_ratio", control.ratio},
                      {"delta_kernel_dimension", control.kernel_dimension}});
  }

  json partitions = json::array();
  struct Case {
    index_t length, order, width, n, alpha;
  };
  for (const Case& c : {Case{16, 1, 4, 2, 2}, Case{16, 1, 4, 4, 1}, Case{24, 2, 4, 2, 2}, Case{24, 1, 6, 3, 2}}) {
    WindowRecipe recipe;
    recipe.kind = WindowKind::bspline;
    recipe.order = c.order;
    recipe.widths = {c.width};
    const auto window = make_window(recipe, FiniteModel(c.length));
    const auto k = partition_of_unity_kernel(window.samples(), c.width, c.n, c.alpha);
    const auto verdict = check_all_conditions(window.samples(), k.lattice, tol_scale);
    json entry = {{"window", recipe.to_string()},
                  {"L", c.length},
                  {"N", c.n},
                  {"alpha", c.alpha},
                  {"lattice", lattice_json(k.lattice)},
                  {"residual", k.residual},
                  {"all_conditions_false", verdict.all_false()}};
    const auto adj = adjoint_lattice(k.lattice);
    if (adj.is_commutative()) entry["index"] = index_commutative(window.samples(), adj, tol_scale);
    partitions.push_back(entry);
  }
  return {{"alternating_probe", ladder}, {"partition_of_unity", partitions}};
}

}  // namespace gabor
