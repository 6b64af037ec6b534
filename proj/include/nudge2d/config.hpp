#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nudge2d/assimilation.hpp"

namespace nudge2d {

/// Aggregated configuration problems; what() lists all of them.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Axes of a parameter sweep; an empty axis keeps the base value.
struct SweepAxes {
  std::vector<double> mu;
  std::vector<double> h;
  std::vector<ObserverKind> observer;
  std::vector<std::uint64_t> seeds;
  int workers = 0;  ///< 0 = hardware concurrency
};

struct SweepSpec {
  AssimilationConfig base;
  SweepAxes axes;

  std::size_t size() const;
  /// Cross product in the order mu, h, observer, seed (last varies fastest).
  std::vector<AssimilationConfig> expand() const;
};

inline constexpr std::size_t kMaxSweepRuns = 100000;

struct ParsedConfig {
  AssimilationConfig run;
  std::optional<SweepAxes> sweep;
};

/// Parses the INI-style key=value format:
///
///   [grid]         N, L
///   [physics]      nu, forcing, grashof, forcing_seed
///   [solver]       dt, t_spin, t_assim, dealias
///   [assimilation] mu, h, observer, U0, perturbation, perturbation_seed,
///                  observed_component, record_every
///   [run]          seed
///   [constants]    c, c_tilde
///   [sweep]        mu, h, observer, seeds (comma lists), workers
///
/// Required: nu, N, L, dt, mu, h, observer. Defaults: t_spin = 10/(nu lambda1),
/// t_assim = 20/(nu lambda1), U0 = zero, record_every = 10. Unknown keys,
/// unparsable values and constraint violations are all reported together.
/// L accepts a number or a multiple of pi such as "2pi".
ParsedConfig parse_config_string(const std::string& text);
ParsedConfig parse_config(const std::filesystem::path& path);

/// Serializes a run config in the same format (round-trips through the parser).
std::string to_config_string(const AssimilationConfig& cfg);

}  // namespace nudge2d
