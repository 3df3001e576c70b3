#pragma once

// Configuration, report assembly and lattice sweeps behind the gaborfin CLI.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gabor/tolerance.hpp"

namespace gabor {

inline constexpr std::string_view kReportSchema = "gaborfin.report/1";
inline constexpr std::uint64_t kDefaultSeed = 20070815;

inline constexpr std::array<std::string_view, 8> kTaskNames = {
    "bounds", "conditions", "duality", "janssen", "dual_window", "kernel", "index", "gallery"};

struct AnalysisConfig {
  index_t length = 0;
  index_t a = 0;
  index_t b = 0;
  std::string window = "gaussian";
  double tol_scale = kDefaultTolScale;
  std::vector<std::string> tasks = {"bounds", "conditions"};
  std::uint64_t seed = kDefaultSeed;
  std::string out;      // report path; empty means stdout
  std::string spectra;  // CSV path for spectra; empty means none
  bool timing = false;  // wall-clock timings make reports non-reproducible

  /// Throws ParameterError naming the offending field.
  void validate() const;

  nlohmann::json to_json() const;
  /// Unknown keys are rejected.
  static AnalysisConfig from_json(const nlohmann::json& j);
};

/// Eigenvalues gathered while running tasks; empty when not computed.
struct SpectraTables {
  rvec frame_operator;
  rvec gramian;
  rvec adjoint_gramian;
};

struct DiagnosticsReport {
  nlohmann::json document;
  SpectraTables spectra;
  bool consistent = true;

  /// 0 when every verdict agreed, 2 when the frame characterization was
  /// violated somewhere in this run.
  int exit_code() const noexcept { return consistent ? 0 : 2; }
};

/// Runs the configured tasks in dependency order. Writes the report to
/// config.out and spectra to config.spectra when those are set.
DiagnosticsReport run(const AnalysisConfig& config);

/// Report without touching the filesystem.
DiagnosticsReport analyze(const AnalysisConfig& config);

void write_report(const DiagnosticsReport& report, const std::string& path);

/// Long-format CSV: operator,index,value.
void write_spectra_csv(std::ostream& out, const SpectraTables& spectra);

struct SweepRow {
  index_t a = 0;
  index_t b = 0;
  double redundancy = 0.0;
  double frame_lower = 0.0;
  double frame_upper = 0.0;
  bool frame = false;
  bool adjoint_riesz = false;
  bool duality_agree = false;
  bool consistent = false;
  bool marginal = false;
};

/// One row per (a, b). Rows are computed concurrently and returned in grid order.
std::vector<SweepRow> sweep(const AnalysisConfig& base, const std::vector<std::pair<index_t, index_t>>& grid);

/// All divisor pairs of L.
std::vector<std::pair<index_t, index_t>> full_grid(index_t length);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Alternating-sequence ladder and partition-of-unity kernels.
nlohmann::json gallery_report(const std::vector<index_t>& probe_lengths, double tol_scale = kDefaultTolScale);

}  // namespace gabor
