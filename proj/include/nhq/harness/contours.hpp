#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "nhq/harness/sweep.hpp"

namespace nhq::harness {

struct ContourVertex {
  double delta_max = 0.0;
  double tau = 0.0;
  /// <exp(-beta W)> at the refined vertex.
  double value = 1.0;
  /// |value - 1| <= contour_tol was reached within the iteration budget.
  bool converged = false;
};

using Polyline = std::vector<ContourVertex>;

/// Level set <exp(-beta W)> = 1 of a SweepGrid.
struct ContourSet {
  std::vector<Polyline> polylines;
  /// Cells (i, j) left untraced because at least two corners already sit
  /// within contour_tol of the level (unresolvable tangency).
  std::vector<std::pair<std::size_t, std::size_t>> tangency_cells;
  /// Cells skipped because a corner failed to evaluate.
  std::vector<std::pair<std::size_t, std::size_t>> failed_cells;
  bool all_cells_tangent = false;

  std::size_t vertex_count() const;
};

/// <exp(-beta W)> at an arbitrary (delta_max, tau).
using PointEvaluator = std::function<double(double delta_max, double tau)>;

inline constexpr double kDefaultContourTol = 1e-8;
inline constexpr int kMaxBisections = 60;

/// Marching squares on value - 1. Each crossed cell edge is refined by
/// bisection along that edge (tau at fixed delta_max, or delta_max at fixed
/// tau) until |value - 1| <= contour_tol or 60 halvings. Saddle cells are
/// resolved with the evaluator at the cell centre.
ContourSet extract_contours(const SweepGrid& grid, const PointEvaluator& eval,
                            double contour_tol = kDefaultContourTol);

/// Evaluator for DeltaFullSine grids on the non-Hermitian engine.
PointEvaluator delta2_evaluator(double j_max, const Rates& rates, const GibbsPrep& prep,
                                const EngineOptions& opts = {});

/// Bisection root of value - 1 on a single segment, used for both contour
/// edges and tau-line crossings.
ContourVertex bisect_level(const PointEvaluator& eval, double d0, double t0, double v0, double d1,
                           double t1, double v1, double contour_tol = kDefaultContourTol);

}  // namespace nhq::harness
