#include "nhq/harness/presets.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

#include "nhq/error.hpp"
#include "nhq/harness/contours.hpp"
#include "nhq/harness/csv.hpp"
#include "nhq/harness/sweep.hpp"

namespace nhq::harness {
namespace {

using std::numbers::pi;

constexpr double kJ = 3.74;
constexpr double kJLow = 1.89;
constexpr double kBeta = 0.5;

struct Series {
  std::string suffix;
  PathSpec family;
  std::vector<double> taus;
};

std::vector<double> default_taus() { return linear_grid(0.1, 1.0, 0.02); }

std::vector<CsvFile> run_series(std::string_view name, const std::vector<Series>& series,
                                const PresetOptions& opts) {
  const Rates rates = Rates::full_physics();
  EngineOptions eng;
  eng.engine = opts.engine;
  std::vector<CsvFile> files;
  for (const Series& s : series) {
    const GibbsPrep prep = gibbs_weights(kBeta, s.family.j_max());
    const auto points = run_tau_sweep(s.family, rates, prep, s.taus, eng);
    std::string file = s.suffix.empty() ? fmt::format("{}.csv", name)
                                        : fmt::format("{}_{}.csv", name, s.suffix);
    files.push_back({std::move(file), tau_sweep_csv(points)});
  }
  return files;
}

std::vector<CsvFile> fig5b(const PresetOptions& opts) {
  const Rates rates = Rates::full_physics();
  const GibbsPrep prep = gibbs_weights(kBeta, kJ);
  EngineOptions eng;
  eng.engine = opts.engine;
  const auto deltas = linspace(0.0, 12.0 * pi, 61);
  const auto taus = linspace(0.1, 1.0, 91);
  const SweepGrid grid = run_grid_sweep(kJ, deltas, taus, rates, prep, eng);
  const ContourSet contours = extract_contours(grid, delta2_evaluator(kJ, rates, prep, eng));
  return {{"fig5b_grid.csv", grid_csv(grid)}, {"fig5b_contours.csv", contours_csv(contours)}};
}

}  // namespace

const std::vector<std::string_view>& preset_names() {
  static const std::vector<std::string_view> names = {
      "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d",
      "fig4e", "fig4f", "fig5a", "fig5b", "fig5c", "fig5d"};
  return names;
}

std::vector<CsvFile> figure_preset(std::string_view name, const PresetOptions& opts) {
  const auto taus = default_taus();
  const auto fine = linear_grid(0.1, 1.0, 0.01);
  const auto window = linear_grid(0.4, 0.6, 0.002);

  if (name == "fig3a") return run_series(name, {{"", {JSweep{kJ, kJ}, 1.0}, taus}}, opts);
  if (name == "fig3b") return run_series(name, {{"", {DeltaHalfSine{kJ, 10 * pi}, 1.0}, taus}}, opts);
  if (name == "fig4a") {
    return run_series(name,
                      {{"jmax3.74", {JSweep{kJ, kJ}, 1.0}, taus},
                       {"jmax1.89", {JSweep{kJLow, kJLow}, 1.0}, taus}},
                      opts);
  }
  if (name == "fig4b") {
    return run_series(name,
                      {{"jmax3.74", {JSweep{kJ, 0.5 * kJ}, 1.0}, taus},
                       {"jmax1.89", {JSweep{kJLow, 0.5 * kJLow}, 1.0}, taus}},
                      opts);
  }
  if (name == "fig4c") {
    return run_series(name,
                      {{"jmax3.74", {JSweep{kJ, 0.0}, 1.0}, taus},
                       {"jmax1.89", {JSweep{kJLow, 0.0}, 1.0}, taus}},
                      opts);
  }
  if (name == "fig4d") {
    return run_series(name, {{"", {JSweep{0.04, opts.fig4d_j_min}, 1.0}, taus}}, opts);
  }
  if (name == "fig4e") {
    return run_series(name,
                      {{"dmax-10pi", {DeltaHalfSine{kJ, -10 * pi}, 1.0}, taus},
                       {"dmax-2pi", {DeltaHalfSine{kJ, -2 * pi}, 1.0}, taus}},
                      opts);
  }
  if (name == "fig4f") {
    return run_series(name,
                      {{"dmax10pi", {DeltaHalfSine{kJ, 10 * pi}, 1.0}, taus},
                       {"dmax2pi", {DeltaHalfSine{kJ, 2 * pi}, 1.0}, taus}},
                      opts);
  }
  if (name == "fig5a" || name == "fig5c") {
    return run_series(name, {{"", {DeltaFullSine{kJ, 10 * pi}, 1.0}, fine}}, opts);
  }
  if (name == "fig5b") return fig5b(opts);
  if (name == "fig5d") return run_series(name, {{"", {DeltaFullSine{kJ, 10 * pi}, 1.0}, window}}, opts);
  throw Error(ErrorCode::UnknownPreset, fmt::format("unknown figure preset '{}'", name));
}

}  // namespace nhq::harness
