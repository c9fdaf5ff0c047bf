#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "nhq/error.hpp"
#include "nhq/harness/config.hpp"
#include "nhq/propagator.hpp"
#include "nhq/workstats.hpp"

namespace nhq::harness {

struct EngineOptions {
  Engine engine = Engine::NonHermitian;
  double slices_tol = kDefaultPropagatorTol;
  double lindblad_dt = 1e-4;
};

/// One (tau, engine) evaluation. Floquet diagnostics exist only for the
/// non-Hermitian engine; a failed point carries its error code.
struct SweepPoint {
  double tau = 0.0;
  TransitionMatrix tm;
  JEResult je;
  std::optional<PtKind> pt_class;
  std::optional<bool> je_condition;
  std::optional<ErrorCode> error;
};

/// Transition matrix of `spec` under the chosen engine.
TransitionMatrix engine_transition(const PathSpec& spec, const Rates& rates,
                                   const EngineOptions& opts);

SweepPoint evaluate_point(const PathSpec& spec, const Rates& rates, const GibbsPrep& prep,
                          const EngineOptions& opts);

/// Evaluates `family` at each tau (its own tau is ignored). Per-point
/// failures are recorded, never dropped. Output order follows `taus`.
std::vector<SweepPoint> run_tau_sweep(const PathSpec& family, const Rates& rates,
                                      const GibbsPrep& prep, const std::vector<double>& taus,
                                      const EngineOptions& opts = {});

/// <exp(-beta W)> over a (delta_max, tau) grid of DeltaFullSine paths.
/// values[i][j] belongs to deltas[i], taus[j]; failed nodes are NaN with
/// the code in errors[i][j].
struct SweepGrid {
  double j_max = 0.0;
  std::vector<double> deltas;
  std::vector<double> taus;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::optional<ErrorCode>>> errors;
};

SweepGrid run_grid_sweep(double j_max, const std::vector<double>& deltas,
                         const std::vector<double>& taus, const Rates& rates,
                         const GibbsPrep& prep, const EngineOptions& opts = {});

/// Runs fn(0..n-1) on up to hardware_concurrency threads. fn must only
/// write to its own index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nhq::harness
