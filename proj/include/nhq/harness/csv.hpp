#pragma once

#include <string>
#include <vector>

#include "nhq/harness/contours.hpp"
#include "nhq/harness/shots.hpp"
#include "nhq/harness/sweep.hpp"
#include "nhq/propagator.hpp"

namespace nhq::harness {

/// Floating-point values are written with 17 significant digits so every
/// double round-trips.
std::string format_double(double x);

std::string_view pt_class_name(PtKind kind);

/// tau_us, p_pp, p_pm, p_mp, p_mm, exp_work_avg, deviation, mean_work,
/// asym, pt_class, je_condition, error_code
std::string tau_sweep_csv(const std::vector<SweepPoint>& points);

/// delta_max, tau_us, exp_work_avg (row-major over delta_max).
std::string grid_csv(const SweepGrid& grid);

/// polyline, vertex, delta_max, tau_us, exp_work_avg, converged
std::string contours_csv(const ContourSet& contours);

/// prep, n, n_g, n_plus, n_minus, discard_fraction, p_hat_pp, p_hat_mp,
/// se_pp, se_mp. Each row is one preparation; the p_hat/se columns hold the
/// outcome +x and outcome -x entries for that preparation.
std::string shots_csv(const ShotEnsemble& ens);

}  // namespace nhq::harness
