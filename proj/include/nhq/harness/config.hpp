#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nhq/model.hpp"
#include "nhq/workstats.hpp"

namespace nhq::harness {

enum class Engine { NonHermitian, LindbladIdeal, LindbladFull };

std::string_view to_string(Engine e);
/// Throws Error{ConfigError} on an unknown name.
Engine parse_engine(std::string_view name);

enum class PathKind { JSweep, Delta1, Delta2 };

/// Flat key = value run configuration. Units: rad/us for couplings and
/// detunings, us for times, us/rad for beta, 1/us for rates.
struct Config {
  Engine engine = Engine::NonHermitian;
  PathKind path = PathKind::JSweep;
  double j_max = 3.74;
  double j_min = 3.74;
  double delta_max = 0.0;
  double tau_start = 0.1;
  double tau_stop = 1.0;
  double tau_step = 0.02;
  double beta = 0.5;
  double gamma_e = 1.57;
  double gamma_f = 0.21;
  double gamma_2e = 1.631;
  double gamma_2f = 0.584;
  double slices_tol = 1e-10;
  double dt = 1e-4;
  std::uint64_t seed = 0;
  long shots = 8000;

  PathSpec path_spec(double tau) const;
  /// Rates seen by the selected engine: lindblad_ideal keeps gamma_e only.
  Rates rates() const;
  GibbsPrep prep() const;
  std::vector<double> tau_grid() const;
  void validate() const;
};

/// Parses UTF-8 "key = value" lines; '#' starts a comment. Unknown keys,
/// duplicate keys and malformed values throw Error{ConfigError}.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

/// Inclusive arithmetic grid start, start + step, ..., stop.
std::vector<double> linear_grid(double start, double stop, double step);
/// n evenly spaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace nhq::harness
