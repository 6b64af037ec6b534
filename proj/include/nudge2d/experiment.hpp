#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nudge2d/assimilation.hpp"
#include "nudge2d/bounds.hpp"
#include "nudge2d/config.hpp"

namespace nudge2d {

/// Raised for any file-system failure; aborts a sweep.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sweep cross product too large without --override-size.
class SweepTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSeriesHeader = "t,err_l2,err_h1,err_l2_u1,err_l2_u2,energy_ref,energy_da";
inline constexpr const char* kPlotHeader = "run_id,t,metric,value";
inline constexpr const char* kSummaryHeader =
    "run_id,mu,h_effective,observer,seed,rate,final_err_l2,satisfies_paper,status";

struct RunRecord {
  std::string run_id;
  AssimilationConfig config;  // with seeds, enough to replay the run
  std::filesystem::path series_path;
  RunStatus status = RunStatus::ok;
  std::string failure;
  DecayFit fit;
  bool satisfies_paper = false;
  std::array<bounds::BoundValue, 4> mu_min;
  double c0 = 1.0;
  double h_effective = 0.0;
  double final_err_l2 = 0.0;
  double wall_seconds = 0.0;
  ErrorSeries series;
};

/// Values are written with %.17g so the file round-trips exactly.
void write_series_csv(const std::filesystem::path& path, const ErrorSeries& series);
ErrorSeries read_series_csv(const std::filesystem::path& path);

/// "mu<mu>_h<h>_<observer>_s<seed>", stable for a given config.
std::string default_run_id(const AssimilationConfig& cfg);

/// Runs one config and writes <out_dir>/<run_id>/{series.csv,metadata.json}.
/// Solver failures end up in the record; only I/O errors throw.
RunRecord execute_run(const AssimilationConfig& cfg, const std::filesystem::path& out_dir,
                      const std::string& run_id);

/// execute_run plus a human summary on log.
RunRecord cmd_run(const AssimilationConfig& cfg, const std::filesystem::path& out_dir,
                  std::ostream& log);

/// Parallel sweep; workers <= 0 means one per hardware thread. Writes
/// <out_dir>/summary.csv with one row per run in expansion order.
std::vector<RunRecord> cmd_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                                 int workers, bool override_size, std::ostream& log);
void write_summary_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records);

std::string render_bounds_text(const bounds::BoundsReport& report);
std::string render_bounds_json(const bounds::BoundsReport& report);

/// Long-format CSV of every metric, rows grouped by run_id (sorted) then t.
/// Throws std::invalid_argument on empty input without touching the file.
void emit_plot_data(const std::vector<RunRecord>& records, const std::filesystem::path& path);

/// Loads every <dir>/<run_id>/series.csv below dir as a record.
std::vector<RunRecord> load_records(const std::filesystem::path& dir);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Taylor-Green, Poincare, phi-minimum, observer-constant and invariant suites.
VerifyReport cmd_verify(std::ostream& log);

}  // namespace nudge2d
