#include "nudge2d/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace nudge2d {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"grid", {"N", "L"}},
      {"physics", {"nu", "forcing", "grashof", "forcing_seed"}},
      {"solver", {"dt", "t_spin", "t_assim", "dealias"}},
      {"assimilation",
       {"mu", "h", "observer", "U0", "perturbation", "perturbation_seed", "observed_component",
        "record_every"}},
      {"run", {"seed"}},
      {"constants", {"c", "c_tilde"}},
      {"sweep", {"mu", "h", "observer", "seeds", "workers"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(const std::string& raw) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec == std::errc{} && ptr == end) return value;
  // multiples of pi: "pi", "2pi", "2*pi", "0.5pi"
  const auto pos = s.find("pi");
  if (pos != std::string::npos && pos + 2 == s.size()) {
    std::string prefix = trim(s.substr(0, pos));
    if (!prefix.empty() && prefix.back() == '*') prefix = trim(prefix.substr(0, prefix.size() - 1));
    if (prefix.empty()) return std::numbers::pi;
    if (auto factor = to_double(prefix)) return *factor * std::numbers::pi;
  }
  return std::nullopt;
}

template <class Int>
std::optional<Int> to_int(const std::string& raw) {
  const std::string s = trim(raw);
  Int value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec == std::errc{} && ptr == end) return value;
  return std::nullopt;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::vector<std::string>& problems() { return problems_; }

  std::optional<std::string> raw(const std::string& section, const std::string& key) {
    auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    auto value = sec->get_optional<std::string>(key);
    if (!value) return std::nullopt;
    return trim(*value);
  }

  void require(const std::string& section, const std::string& key) {
    if (!raw(section, key)) problems_.push_back("missing required key [" + section + "] " + key);
  }

  template <class Fn>
  void with(const std::string& section, const std::string& key, const char* what, Fn&& apply) {
    auto value = raw(section, key);
    if (!value) return;
    if (!apply(*value)) {
      problems_.push_back("[" + section + "] " + key + " = '" + *value + "' is not " + what);
    }
  }

  void number(const std::string& section, const std::string& key, double& out) {
    with(section, key, "a number", [&](const std::string& v) {
      auto d = to_double(v);
      if (d) out = *d;
      return d.has_value();
    });
  }

  template <class Int>
  void integer(const std::string& section, const std::string& key, Int& out) {
    with(section, key, "an integer", [&](const std::string& v) {
      auto d = to_int<Int>(v);
      if (d) out = *d;
      return d.has_value();
    });
  }

  template <class Enum, class Parse>
  void choice(const std::string& section, const std::string& key, Enum& out, Parse&& parse) {
    with(section, key, "a recognised option", [&](const std::string& v) {
      try {
        out = parse(v);
        return true;
      } catch (const std::invalid_argument&) {
        return false;
      }
    });
  }

 private:
  const pt::ptree& tree_;
  std::vector<std::string> problems_;
};

void check_keys(const pt::ptree& tree, std::vector<std::string>& problems) {
  const auto& s = schema();
  for (const auto& [section, child] : tree) {
    auto it = s.find(section);
    if (it == s.end()) {
      if (child.empty()) {
        problems.push_back("unknown key '" + section + "' outside any section");
      } else {
        problems.push_back("unknown section [" + section + "]");
      }
      continue;
    }
    for (const auto& [key, value] : child) {
      if (!it->second.contains(key)) {
        problems.push_back("unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "configuration errors:";
        for (const auto& p : problems) msg += "\n  - " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

ParsedConfig parse_config_string(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({std::string("syntax error: ") + e.message() + " (line " +
                       std::to_string(e.line()) + ")"});
  }

  std::vector<std::string> problems;
  check_keys(tree, problems);

  Reader r(tree);
  for (const auto& [section, key] :
       std::vector<std::pair<std::string, std::string>>{{"physics", "nu"},
                                                        {"grid", "N"},
                                                        {"grid", "L"},
                                                        {"solver", "dt"},
                                                        {"assimilation", "mu"},
                                                        {"assimilation", "h"},
                                                        {"assimilation", "observer"}}) {
    r.require(section, key);
  }

  ParsedConfig parsed;
  AssimilationConfig& c = parsed.run;
  r.integer("grid", "N", c.n);
  r.number("grid", "L", c.length);
  r.number("physics", "nu", c.nu);
  r.choice("physics", "forcing", c.forcing, parse_forcing_kind);
  r.number("physics", "grashof", c.grashof);
  r.integer("physics", "forcing_seed", c.forcing_seed);
  r.number("solver", "dt", c.dt);
  r.with("solver", "dealias", "a boolean", [&](const std::string& v) {
    if (v == "true" || v == "1") return c.dealias = true, true;
    if (v == "false" || v == "0") return c.dealias = false, true;
    return false;
  });
  r.number("assimilation", "mu", c.mu);
  r.number("assimilation", "h", c.h);
  r.choice("assimilation", "observer", c.observer, parse_observer_kind);
  r.choice("assimilation", "U0", c.initial_guess, parse_initial_guess);
  r.number("assimilation", "perturbation", c.perturbation);
  r.integer("assimilation", "perturbation_seed", c.perturbation_seed);
  r.integer("assimilation", "observed_component", c.observed_component);
  r.integer("assimilation", "record_every", c.record_every);
  r.integer("run", "seed", c.seed);
  r.number("constants", "c", c.c);
  r.number("constants", "c_tilde", c.c_tilde);

  // Time defaults scale with the viscous time 1/(nu lambda1).
  if (c.nu > 0.0 && c.length > 0.0) {
    const double viscous_time = 1.0 / (c.nu * c.lambda1());
    c.t_spin = 10.0 * viscous_time;
    c.t_assim = 20.0 * viscous_time;
  }
  r.number("solver", "t_spin", c.t_spin);
  r.number("solver", "t_assim", c.t_assim);

  if (tree.get_child_optional("sweep")) {
    SweepAxes axes;
    auto list = [&](const std::string& key, auto&& convert) {
      if (auto v = r.raw("sweep", key)) {
        for (const auto& item : split_list(*v)) {
          if (!convert(item)) {
            r.problems().push_back("[sweep] " + key + ": cannot parse '" + item + "'");
          }
        }
      }
    };
    list("mu", [&](const std::string& s) {
      auto d = to_double(s);
      if (d) axes.mu.push_back(*d);
      return d.has_value();
    });
    list("h", [&](const std::string& s) {
      auto d = to_double(s);
      if (d) axes.h.push_back(*d);
      return d.has_value();
    });
    list("observer", [&](const std::string& s) {
      try {
        axes.observer.push_back(parse_observer_kind(s));
        return true;
      } catch (const std::invalid_argument&) {
        return false;
      }
    });
    list("seeds", [&](const std::string& s) {
      auto d = to_int<std::uint64_t>(s);
      if (d) axes.seeds.push_back(*d);
      return d.has_value();
    });
    r.integer("sweep", "workers", axes.workers);
    if (axes.workers < 0) r.problems().push_back("[sweep] workers must be >= 0");
    parsed.sweep = std::move(axes);
  }

  problems.insert(problems.end(), r.problems().begin(), r.problems().end());
  // Constraint checks only make sense once every required key is present.
  if (problems.empty()) {
    auto constraint_errors = c.validation_errors();
    problems.insert(problems.end(), constraint_errors.begin(), constraint_errors.end());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return parsed;
}

ParsedConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file " + path.string()});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_string(buffer.str());
}

std::string to_config_string(const AssimilationConfig& c) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "[grid]\nN = " << c.n << "\nL = " << num(c.length) << "\n\n";
  out << "[physics]\nnu = " << num(c.nu) << "\nforcing = " << to_string(c.forcing)
      << "\ngrashof = " << num(c.grashof) << "\nforcing_seed = " << c.forcing_seed << "\n\n";
  out << "[solver]\ndt = " << num(c.dt) << "\nt_spin = " << num(c.t_spin)
      << "\nt_assim = " << num(c.t_assim) << "\ndealias = " << (c.dealias ? "true" : "false")
      << "\n\n";
  out << "[assimilation]\nmu = " << num(c.mu) << "\nh = " << num(c.h)
      << "\nobserver = " << to_string(c.observer) << "\nU0 = " << to_string(c.initial_guess)
      << "\nperturbation = " << num(c.perturbation)
      << "\nperturbation_seed = " << c.perturbation_seed
      << "\nobserved_component = " << c.observed_component
      << "\nrecord_every = " << c.record_every << "\n\n";
  out << "[run]\nseed = " << c.seed << "\n\n";
  out << "[constants]\nc = " << num(c.c) << "\nc_tilde = " << num(c.c_tilde) << "\n";
  return out.str();
}

std::size_t SweepSpec::size() const {
  auto extent = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
  return extent(axes.mu.size()) * extent(axes.h.size()) * extent(axes.observer.size()) *
         extent(axes.seeds.size());
}

std::vector<AssimilationConfig> SweepSpec::expand() const {
  const std::vector<double> mus = axes.mu.empty() ? std::vector<double>{base.mu} : axes.mu;
  const std::vector<double> hs = axes.h.empty() ? std::vector<double>{base.h} : axes.h;
  const std::vector<ObserverKind> kinds =
      axes.observer.empty() ? std::vector<ObserverKind>{base.observer} : axes.observer;
  const std::vector<std::uint64_t> seeds =
      axes.seeds.empty() ? std::vector<std::uint64_t>{base.seed} : axes.seeds;
  std::vector<AssimilationConfig> out;
  out.reserve(size());
  for (double mu : mus) {
    for (double h : hs) {
      for (ObserverKind kind : kinds) {
        for (std::uint64_t seed : seeds) {
          AssimilationConfig c = base;
          c.mu = mu;
          c.h = h;
          c.observer = kind;
          c.seed = seed;
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

}  // namespace nudge2d
