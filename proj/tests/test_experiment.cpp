#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nudge2d/config.hpp"
#include "nudge2d/experiment.hpp"

using namespace nudge2d;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[grid]
N = 16
L = 2pi

[physics]
nu = 0.1

[solver]
dt = 0.01

[assimilation]
mu = 20
h = 0.25
observer = fourier_modes
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nudge2d_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

AssimilationConfig tiny() {
  AssimilationConfig c = parse_config_string(kMinimal).run;
  c.t_spin = 1.0;
  c.t_assim = 1.0;
  return c;
}

std::vector<std::string> problems_of(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("minimal file gets documented defaults") {
    const ParsedConfig p = parse_config_string(kMinimal);
    const AssimilationConfig& c = p.run;
    CHECK(c.n == 16);
    CHECK(c.length == kTwoPi);
    CHECK(c.t_spin == doctest::Approx(100.0));  // 10 / (nu lambda1)
    CHECK(c.t_assim == doctest::Approx(200.0));
    CHECK(c.initial_guess == InitialGuess::zero);
    CHECK(c.record_every == 10);
    CHECK(c.observed_component == 2);
    CHECK(c.c == 1.0);
    CHECK_FALSE(p.sweep.has_value());
  }
  SUBCASE("stability constraint") {
    std::string text = kMinimal;
    text.replace(text.find("mu = 20"), 7, "mu = 200");
    const auto problems = problems_of(text);
    REQUIRE(problems.size() == 1);
    CHECK(mentions(problems, "mu*dt <= 1"));
  }
  SUBCASE("unknown keys are listed") {
    const auto problems = problems_of(std::string(kMinimal) + "colour = blue\n[extra]\nx = 1\n");
    CHECK(mentions(problems, "'colour'"));
    CHECK(mentions(problems, "[extra]"));
  }
  SUBCASE("all problems reported together") {
    const auto problems = problems_of("[grid]\nN = 15\n[solver]\ndt = fast\n");
    CHECK(mentions(problems, "[physics] nu"));
    CHECK(mentions(problems, "[grid] L"));
    CHECK(mentions(problems, "[assimilation] mu"));
    CHECK(mentions(problems, "[assimilation] h"));
    CHECK(mentions(problems, "[assimilation] observer"));
    CHECK(mentions(problems, "'fast'"));
  }
  SUBCASE("odd N") {
    std::string text = kMinimal;
    text.replace(text.find("N = 16"), 6, "N = 17");
    CHECK(mentions(problems_of(text), "N must be even"));
  }
  SUBCASE("bad enum") {
    std::string text = kMinimal;
    text.replace(text.find("fourier_modes"), 13, "satellites");
    CHECK(mentions(problems_of(text), "satellites"));
  }
  SUBCASE("round trip") {
    AssimilationConfig c = tiny();
    c.observer = ObserverKind::nodal;
    c.h = 0.7;
    c.initial_guess = InitialGuess::perturbed;
    c.forcing = ForcingKind::low_mode_random;
    c.seed = 12345678901234ULL;
    c.c_tilde = 0.3;
    c.dealias = false;
    const AssimilationConfig back = parse_config_string(to_config_string(c)).run;
    CHECK(to_config_string(back) == to_config_string(c));
    CHECK(back.length == c.length);
    CHECK(back.seed == c.seed);
  }
  SUBCASE("sweep axes") {
    const ParsedConfig p = parse_config_string(std::string(kMinimal) +
                                               "[sweep]\nmu = 0, 10, 20\nh = 0.5,0.25\n"
                                               "observer = nodal, volume_elements\nseeds = 1,2\n"
                                               "workers = 2\n");
    REQUIRE(p.sweep.has_value());
    const SweepSpec spec{p.run, *p.sweep};
    CHECK(spec.size() == 24);
    const auto runs = spec.expand();
    REQUIRE(runs.size() == 24);
    CHECK(runs[0].mu == 0.0);
    CHECK(runs[0].seed == 1);
    CHECK(runs[1].seed == 2);
    CHECK(runs[2].observer == ObserverKind::volume_elements);
    CHECK(runs[4].h == 0.25);
    CHECK(runs[8].mu == 10.0);
    CHECK(p.sweep->workers == 2);
    CHECK(mentions(problems_of(std::string(kMinimal) + "[sweep]\nmu = 1, x\n"), "'x'"));
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_config("/nonexistent/run.ini"), ConfigError);
  }
}

TEST_CASE("series CSV") {
  const fs::path dir = scratch("csv");
  ErrorSeries s;
  s.push({0.0, 1.0 / 3.0, 2.0, 0.1, 0.2, 1e-300, 5.0});
  s.push({0.1, 1e-17, 3.0, 0.3, 0.4, 0.5, 6.0});
  write_series_csv(dir / "s.csv", s);
  const std::string text = slurp(dir / "s.csv");
  CHECK(text.rfind("t,err_l2,err_h1,err_l2_u1,err_l2_u2,energy_ref,energy_da\n", 0) == 0);
  const ErrorSeries back = read_series_csv(dir / "s.csv");
  REQUIRE(back.size() == 2);
  CHECK(back.err_l2[0] == s.err_l2[0]);
  CHECK(back.energy_ref[0] == s.energy_ref[0]);
  CHECK(back.t[1] == s.t[1]);
  CHECK_THROWS_AS(write_series_csv(dir / "missing" / "s.csv", s), IoError);
}

TEST_CASE("runs, determinism and records") {
  const fs::path dir = scratch("run");
  const AssimilationConfig c = tiny();
  std::ostringstream log;
  const RunRecord a = cmd_run(c, dir / "a", log);
  const RunRecord b = cmd_run(c, dir / "b", log);
  CHECK(a.status == RunStatus::ok);
  CHECK(fs::exists(a.series_path));
  CHECK(slurp(a.series_path) == slurp(b.series_path));
  CHECK(log.str().find("mu_min(typeI_dirichlet)") != std::string::npos);
  CHECK(a.satisfies_paper == (c.mu * a.c0 * a.c0 * a.h_effective * a.h_effective <= c.nu));

  const auto meta = nlohmann::json::parse(slurp(a.series_path.parent_path() / "metadata.json"));
  CHECK(meta["status"] == "ok");
  CHECK(meta["config"]["seed"] == c.seed);
  CHECK(meta["mu_min"].contains("typeII_periodic"));
  CHECK(meta["satisfies_paper"] == a.satisfies_paper);
  // the stored config text replays the same run
  const AssimilationConfig replay = parse_config_string(meta["config_text"].get<std::string>()).run;
  const RunRecord r = execute_run(replay, dir, "replay");
  CHECK(slurp(r.series_path) == slurp(a.series_path));

  AssimilationConfig other = c;
  other.seed = 99;
  const RunRecord d = execute_run(other, dir, "other");
  CHECK(slurp(d.series_path) != slurp(a.series_path));
}

TEST_CASE("sweeps") {
  const fs::path dir = scratch("sweep");
  AssimilationConfig base = tiny();
  SweepAxes axes;
  axes.mu = {0.0, 20.0};
  axes.observer = {ObserverKind::fourier_modes, ObserverKind::nodal};
  std::ostringstream log;
  const auto records = cmd_sweep({base, axes}, dir, 2, false, log);
  REQUIRE(records.size() == 4);
  for (const auto& r : records) {
    CHECK(r.status == RunStatus::ok);
    CHECK(r.satisfies_paper ==
          (r.config.mu * r.c0 * r.c0 * r.h_effective * r.h_effective <= r.config.nu));
  }
  const std::string summary = slurp(dir / "summary.csv");
  CHECK(summary.rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 5);

  SUBCASE("failed run stays isolated") {
    AssimilationConfig hot = base;
    hot.grashof = 1e5;  // blows the CFL limit during spin-up
    SweepAxes g;
    g.seeds = {1, 2};
    SweepSpec bad{hot, g};
    const auto failing = cmd_sweep(bad, dir / "bad", 1, false, log);
    for (const auto& r : failing) CHECK(r.status == RunStatus::failed);

    SweepAxes mixed;
    mixed.mu = {20.0};
    const auto fine = cmd_sweep({base, mixed}, dir / "fine", 1, false, log);
    CHECK(fine[0].status == RunStatus::ok);
  }
  SUBCASE("size limit") {
    SweepAxes huge;
    for (int i = 0; i < 400; ++i) huge.mu.push_back(i);
    for (int i = 0; i < 300; ++i) huge.seeds.push_back(i);
    CHECK_THROWS_AS(cmd_sweep({base, huge}, dir / "huge", 1, false, log), SweepTooLarge);
    CHECK_FALSE(fs::exists(dir / "huge"));
  }
}

TEST_CASE("plot data") {
  const fs::path dir = scratch("plot");
  auto make = [](const std::string& id, std::vector<double> ts) {
    RunRecord r;
    r.run_id = id;
    for (double t : ts) r.series.push({t, t + 1, 0, 0, 0, 0, 0});
    return r;
  };
  SUBCASE("header and single run") {
    emit_plot_data({make("one", {0.0, 0.5})}, dir / "p.csv");
    const std::string text = slurp(dir / "p.csv");
    CHECK(text.rfind("run_id,t,metric,value\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 6);
    CHECK(text.find("one,0.5,err_l2,1.5\n") != std::string::npos);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(emit_plot_data({}, dir / "none.csv"), std::invalid_argument);
    CHECK_FALSE(fs::exists(dir / "none.csv"));
  }
  SUBCASE("grouped by run then time") {
    emit_plot_data({make("zeta", {1.0, 0.0}), make("alpha", {2.0, 1.0})}, dir / "two.csv");
    std::ifstream in(dir / "two.csv");
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<std::string, double>> keys;
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      keys.emplace_back(line.substr(0, c1), std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    REQUIRE(keys.size() == 24);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys.front().first == "alpha");
  }
  SUBCASE("loading run folders") {
    const RunRecord r = execute_run(tiny(), dir / "runs", "r1");
    const auto loaded = load_records(dir / "runs");
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].run_id == "r1");
    CHECK(loaded[0].series.err_l2 == r.series.err_l2);
  }
}

TEST_CASE("bounds rendering") {
  bounds::PhysicalSetup s;
  s.f_norm = 1.0;
  const auto report = bounds::bounds_report(s, 4.0, 1.0);
  CHECK(report.grashof == 1.0);
  CHECK(report.mu_min[0].value == 4.0);
  CHECK(report.h_max == 0.5);
  const std::string text = render_bounds_text(report);
  CHECK(text.find("typeI_dirichlet") != std::string::npos);
  CHECK(text.find("h_max") != std::string::npos);
  const auto j = nlohmann::json::parse(render_bounds_json(report));
  CHECK(j["grashof"] == 1.0);
  CHECK(j["mu_min"]["typeI_dirichlet"]["value"] == 4.0);
  CHECK(j["h_max"] == 0.5);
  CHECK(j["attractor"].size() == 8);

  s.f_norm = 36.0;  // G = 6 overflows e^{G^4}
  const auto big = nlohmann::json::parse(render_bounds_json(bounds::bounds_report(s, 1.0, 1.0)));
  CHECK(big["K"]["value"].is_null());
  CHECK(big["K"]["log_scale"] == true);
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  {
    std::ofstream cfg(dir / "run.ini");
    std::string text = kMinimal;
    text.replace(text.find("dt = 0.01"), 9, "dt = 0.01\nt_spin = 1\nt_assim = 1");
    cfg << text;
  }
  const std::string cli = NUDGE2D_CLI;
  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " > " + (dir / "log.txt").string() + " 2>&1").c_str());
  };
  CHECK(run("bounds --nu 1 --lambda1 1 --f-norm 1 --mu 4") == 0);
  CHECK(slurp(dir / "log.txt").find("0.5") != std::string::npos);
  CHECK(run("bounds --f-norm 1 --json") == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "log.txt"))["grashof"] == 1.0);

  CHECK(run("run --config " + (dir / "run.ini").string() + " --out " + (dir / "x").string()) == 0);
  CHECK(run("run --config " + (dir / "run.ini").string() + " --out " + (dir / "y").string()) == 0);
  const std::string id = default_run_id(parse_config(dir / "run.ini").run);
  CHECK(slurp(dir / "x" / id / "series.csv") == slurp(dir / "y" / id / "series.csv"));

  const std::string env = "NUDGE2D_OUT=" + (dir / "env").string() + " ";
  CHECK(std::system((env + cli + " run --config " + (dir / "run.ini").string() +
                     " --out " + (dir / "ignored").string() + " --seed 7 > /dev/null")
                        .c_str()) == 0);
  CHECK(fs::exists(dir / "env"));
  CHECK_FALSE(fs::exists(dir / "ignored"));

  CHECK(run("plot-data --out " + (dir / "x").string()) == 0);
  CHECK(slurp(dir / "x" / "plot_data.csv").rfind("run_id,t,metric,value\n", 0) == 0);

  {
    std::ofstream bad(dir / "bad.ini");
    bad << "[grid]\nN = 9\n";
  }
  CHECK(run("run --config " + (dir / "bad.ini").string()) != 0);
  CHECK(slurp(dir / "log.txt").find("missing required key") != std::string::npos);
}
