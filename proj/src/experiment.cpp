#include "nudge2d/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace nudge2d {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

json bound_json(const bounds::BoundValue& b) {
  json j;
  // +inf is not representable in JSON; log_value carries the magnitude.
  j["value"] = std::isfinite(b.value) ? json(b.value) : json(nullptr);
  j["log_value"] = std::isfinite(b.log_value) ? json(b.log_value) : json(nullptr);
  j["log_scale"] = b.log_scale;
  if (!b.warning.empty()) j["warning"] = b.warning;
  return j;
}

json config_json(const AssimilationConfig& c) {
  return json{{"N", c.n},
              {"L", c.length},
              {"nu", c.nu},
              {"forcing", to_string(c.forcing)},
              {"grashof", c.grashof},
              {"forcing_seed", c.forcing_seed},
              {"dt", c.dt},
              {"t_spin", c.t_spin},
              {"t_assim", c.t_assim},
              {"dealias", c.dealias},
              {"seed", c.seed},
              {"mu", c.mu},
              {"observer", to_string(c.observer)},
              {"h", c.h},
              {"observed_component", c.observed_component},
              {"U0", to_string(c.initial_guess)},
              {"perturbation", c.perturbation},
              {"perturbation_seed", c.perturbation_seed},
              {"record_every", c.record_every},
              {"c", c.c},
              {"c_tilde", c.c_tilde}};
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json metadata_json(const RunRecord& rec, const RunMetadata& meta) {
  json thresholds = json::object();
  for (std::size_t i = 0; i < bounds::kAllRegimes.size(); ++i) {
    json entry = bound_json(meta.mu_min[i]);
    entry["mu_exceeds"] = rec.config.mu > meta.mu_min[i].value;
    thresholds[bounds::to_string(bounds::kAllRegimes[i])] = entry;
  }
  json j;
  j["run_id"] = rec.run_id;
  j["status"] = to_string(rec.status);
  if (!rec.failure.empty()) j["failure"] = rec.failure;
  j["config"] = config_json(rec.config);
  j["config_text"] = to_config_string(rec.config);
  j["grashof"] = meta.grashof;
  j["lambda1"] = meta.lambda1;
  j["mu_min"] = thresholds;
  j["observer"] = {{"h_effective", meta.h_effective},
                   {"cells", meta.observer_cells},
                   {"cutoff_index", meta.cutoff_index},
                   {"c0_hat", meta.c0_hat},
                   {"c0", meta.c0}};
  j["satisfies_paper"] = meta.satisfies_paper;
  j["initial_data_small"] = meta.initial_data_small;
  j["fit"] = {{"defined", meta.fit.defined},
              {"rate", nullable(meta.fit.rate)},
              {"r_squared", nullable(meta.fit.r_squared)},
              {"samples", meta.fit.samples},
              {"t_a", meta.fit_t_a},
              {"t_b", meta.fit_t_b}};
  j["invariants"] = {{"max_divergence", meta.max_divergence},
                     {"max_hermitian_defect", meta.max_hermitian_defect},
                     {"max_abs_mean", meta.max_abs_mean},
                     {"spinup_max_grad", meta.spinup_max_grad},
                     {"cfl_warnings", meta.cfl_warnings}};
  j["final_err_l2"] = rec.final_err_l2;
  j["wall_seconds"] = rec.wall_seconds;
  j["series"] = rec.series_path.filename().string();
  return j;
}

std::vector<double> split_doubles(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(cell, &used));
    if (used != cell.size()) throw std::invalid_argument("bad number '" + cell + "'");
  }
  return out;
}

}  // namespace

void write_series_csv(const fs::path& path, const ErrorSeries& s) {
  auto out = open_out(path);
  out << kSeriesHeader << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << g17(s.t[i]) << ',' << g17(s.err_l2[i]) << ',' << g17(s.err_h1[i]) << ','
        << g17(s.err_l2_u1[i]) << ',' << g17(s.err_l2_u2[i]) << ',' << g17(s.energy_ref[i]) << ','
        << g17(s.energy_da[i]) << '\n';
  }
  finish(out, path);
}

ErrorSeries read_series_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) {
    throw std::invalid_argument(path.string() + ": unexpected series header");
  }
  ErrorSeries s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    try {
      v = split_doubles(line);
    } catch (const std::exception&) {
      v.clear();
    }
    if (v.size() != 7) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": malformed row");
    }
    s.push(ErrorRow{v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return s;
}

std::string default_run_id(const AssimilationConfig& cfg) {
  return "mu" + short_num(cfg.mu) + "_h" + short_num(cfg.h) + "_" + to_string(cfg.observer) +
         "_s" + std::to_string(cfg.seed);
}

RunRecord execute_run(const AssimilationConfig& cfg, const fs::path& out_dir,
                      const std::string& run_id) {
  RunRecord rec;
  rec.run_id = run_id;
  rec.config = cfg;
  const fs::path dir = out_dir / run_id;
  ensure_dir(dir);
  rec.series_path = dir / "series.csv";

  const auto start = std::chrono::steady_clock::now();
  AssimilationResult result;
  try {
    result = run_assimilation(cfg);
  } catch (const IntegrationFailure& e) {
    result.status = RunStatus::failed;
    result.failure = e.what();
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  rec.status = result.status;
  rec.failure = result.failure;
  rec.fit = result.meta.fit;
  rec.satisfies_paper = result.meta.satisfies_paper;
  rec.mu_min = result.meta.mu_min;
  rec.c0 = result.meta.c0;
  rec.h_effective = result.meta.h_effective;
  rec.final_err_l2 = result.series.empty() ? std::nan("") : result.series.err_l2.back();
  rec.series = std::move(result.series);

  write_series_csv(rec.series_path, rec.series);
  const fs::path meta_path = dir / "metadata.json";
  auto out = open_out(meta_path);
  out << metadata_json(rec, result.meta).dump(2) << '\n';
  finish(out, meta_path);
  return rec;
}

RunRecord cmd_run(const AssimilationConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  RunRecord rec = execute_run(cfg, out_dir, default_run_id(cfg));
  log << "run " << rec.run_id << ": status " << to_string(rec.status);
  if (!rec.failure.empty()) log << " (" << rec.failure << ")";
  log << "\n  series   " << rec.series_path.string() << "\n";
  if (rec.fit.defined) {
    log << "  rate     " << rec.fit.rate << " (r^2 " << rec.fit.r_squared << ", "
        << rec.fit.samples << " samples)\n";
  } else {
    log << "  rate     undefined\n";
  }
  log << "  final err_l2 " << rec.final_err_l2 << "\n";
  log << "  h_eff " << rec.h_effective << ", c0 " << rec.c0 << ", mu c0^2 h^2 <= nu: "
      << (rec.satisfies_paper ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < bounds::kAllRegimes.size(); ++i) {
    const auto& b = rec.mu_min[i];
    log << "  mu " << cfg.mu << (cfg.mu > b.value ? " > " : " <= ") << "mu_min("
        << bounds::to_string(bounds::kAllRegimes[i]) << ") = ";
    if (std::isfinite(b.value)) {
      log << b.value;
    } else {
      log << "exp(" << b.log_value << ")";
    }
    if (!b.warning.empty()) log << "  [" << b.warning << "]";
    log << "\n";
  }
  return rec;
}

std::vector<RunRecord> cmd_sweep(const SweepSpec& spec, const fs::path& out_dir, int workers,
                                 bool override_size, std::ostream& log) {
  const std::size_t total = spec.size();
  log << "sweep: " << total << " runs\n";
  if (total > kMaxSweepRuns && !override_size) {
    throw SweepTooLarge("sweep has " + std::to_string(total) + " runs (limit " +
                        std::to_string(kMaxSweepRuns) + "); pass --override-size to proceed");
  }
  const auto configs = spec.expand();
  std::vector<RunRecord> records(configs.size());
  std::vector<std::string> ids(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "r%05zu_", i);
    ids[i] = prefix + default_run_id(configs[i]);
  }
  ensure_dir(out_dir);

  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(1, configs.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr io_failure;
  std::mutex mutex;

  auto worker = [&] {
    while (!abort) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      RunRecord rec;
      try {
        rec = execute_run(configs[i], out_dir, ids[i]);
      } catch (const IoError&) {
        std::lock_guard lock(mutex);
        if (!io_failure) io_failure = std::current_exception();
        abort = true;
        return;
      } catch (const std::exception& e) {
        // anything else stays local to this run
        rec.run_id = ids[i];
        rec.config = configs[i];
        rec.status = RunStatus::failed;
        rec.failure = e.what();
        rec.final_err_l2 = std::nan("");
      }
      std::lock_guard lock(mutex);
      log << "  [" << (i + 1) << "/" << configs.size() << "] " << rec.run_id << " "
          << to_string(rec.status) << " rate " << rec.fit.rate << "\n";
      records[i] = std::move(rec);
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (io_failure) std::rethrow_exception(io_failure);

  write_summary_csv(out_dir / "summary.csv", records);
  return records;
}

void write_summary_csv(const fs::path& path, const std::vector<RunRecord>& records) {
  auto out = open_out(path);
  out << kSummaryHeader << '\n';
  for (const auto& r : records) {
    out << r.run_id << ',' << g17(r.config.mu) << ',' << g17(r.h_effective) << ','
        << to_string(r.config.observer) << ',' << r.config.seed << ',' << g17(r.fit.rate) << ','
        << g17(r.final_err_l2) << ',' << (r.satisfies_paper ? "true" : "false") << ','
        << to_string(r.status) << '\n';
  }
  finish(out, path);
}

std::string render_bounds_text(const bounds::BoundsReport& r) {
  std::ostringstream out;
  char line[160];
  auto row = [&](const std::string& name, const bounds::BoundValue& b) {
    if (std::isfinite(b.value)) {
      std::snprintf(line, sizeof line, "  %-26s %.12g%s\n", name.c_str(), b.value,
                    b.log_scale ? "  (log space)" : "");
    } else {
      std::snprintf(line, sizeof line, "  %-26s exp(%.12g)\n", name.c_str(), b.log_value);
    }
    out << line;
    if (!b.warning.empty()) out << "  " << std::string(26, ' ') << " warning: " << b.warning << "\n";
  };
  auto scalar = [&](const std::string& name, double v) {
    std::snprintf(line, sizeof line, "  %-26s %.12g\n", name.c_str(), v);
    out << line;
  };
  out << "setup\n";
  scalar("nu", r.setup.nu);
  scalar("lambda1", r.setup.lambda1);
  scalar("||f||", r.setup.f_norm);
  scalar("c", r.setup.c);
  scalar("c_tilde", r.setup.c_tilde);
  scalar("c0", r.setup.c0);
  out << "grashof\n";
  scalar("G", r.grashof);
  row("K", r.k);
  out << "mu_min\n";
  for (std::size_t i = 0; i < bounds::kAllRegimes.size(); ++i) {
    row(bounds::to_string(bounds::kAllRegimes[i]), r.mu_min[i]);
  }
  out << "resolution\n";
  scalar("mu", r.mu);
  scalar("h_max", r.h_max);
  out << "attractor (tau = " << r.tau << ")\n";
  const auto& a = r.attractor;
  row("dirichlet_l2", a.dirichlet_l2);
  row("dirichlet_int_h1", a.dirichlet_int_h1);
  row("dirichlet_h1", a.dirichlet_h1);
  row("dirichlet_int_h2", a.dirichlet_int_h2);
  row("dirichlet_h2", a.dirichlet_h2);
  row("periodic_h1", a.periodic_h1);
  row("periodic_int_h2", a.periodic_int_h2);
  row("periodic_h2", a.periodic_h2);
  return out.str();
}

std::string render_bounds_json(const bounds::BoundsReport& r) {
  json j;
  j["setup"] = {{"nu", r.setup.nu},       {"lambda1", r.setup.lambda1}, {"f_norm", r.setup.f_norm},
                {"c", r.setup.c},         {"c_tilde", r.setup.c_tilde}, {"c0", r.setup.c0}};
  j["grashof"] = r.grashof;
  j["K"] = bound_json(r.k);
  for (std::size_t i = 0; i < bounds::kAllRegimes.size(); ++i) {
    j["mu_min"][bounds::to_string(bounds::kAllRegimes[i])] = bound_json(r.mu_min[i]);
  }
  j["mu"] = r.mu;
  j["h_max"] = nullable(r.h_max);
  j["tau"] = r.tau;
  const auto& a = r.attractor;
  j["attractor"] = {{"dirichlet_l2", bound_json(a.dirichlet_l2)},
                    {"dirichlet_int_h1", bound_json(a.dirichlet_int_h1)},
                    {"dirichlet_h1", bound_json(a.dirichlet_h1)},
                    {"dirichlet_int_h2", bound_json(a.dirichlet_int_h2)},
                    {"dirichlet_h2", bound_json(a.dirichlet_h2)},
                    {"periodic_h1", bound_json(a.periodic_h1)},
                    {"periodic_int_h2", bound_json(a.periodic_int_h2)},
                    {"periodic_h2", bound_json(a.periodic_h2)}};
  return j.dump(2);
}

void emit_plot_data(const std::vector<RunRecord>& records, const fs::path& path) {
  if (records.empty()) throw std::invalid_argument("emit_plot_data: no records");
  std::vector<const RunRecord*> order;
  for (const auto& r : records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const RunRecord* a, const RunRecord* b) { return a->run_id < b->run_id; });

  static const std::array<std::pair<const char*, std::vector<double> ErrorSeries::*>, 6> metrics{{
      {"err_l2", &ErrorSeries::err_l2},
      {"err_h1", &ErrorSeries::err_h1},
      {"err_l2_u1", &ErrorSeries::err_l2_u1},
      {"err_l2_u2", &ErrorSeries::err_l2_u2},
      {"energy_ref", &ErrorSeries::energy_ref},
      {"energy_da", &ErrorSeries::energy_da},
  }};

  auto out = open_out(path);
  out << kPlotHeader << '\n';
  for (const RunRecord* r : order) {
    const ErrorSeries& s = r->series;
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return s.t[a] < s.t[b]; });
    for (std::size_t i : idx) {
      for (const auto& [name, member] : metrics) {
        out << r->run_id << ',' << g17(s.t[i]) << ',' << name << ',' << g17((s.*member)[i]) << '\n';
      }
    }
  }
  finish(out, path);
}

std::vector<RunRecord> load_records(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<RunRecord> records;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path series = entry.path() / "series.csv";
    if (!entry.is_directory() || !fs::exists(series)) continue;
    RunRecord rec;
    rec.run_id = entry.path().filename().string();
    rec.series_path = series;
    rec.series = read_series_csv(series);
    records.push_back(std::move(rec));
  }
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.run_id < b.run_id; });
  return records;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace nudge2d
