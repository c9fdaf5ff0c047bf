#pragma once

#include <array>
#include <utility>

#include "nhq/qmath.hpp"

namespace nhq {

/// Thermal mixture of the H(0) = Jmax sx eigenstates. The +x state has
/// energy +Jmax, so at positive beta most of the weight sits on -x.
struct GibbsPrep {
  double beta = 0.0;   // us/rad
  double j_max = 0.0;  // rad/us
  double w_plus = 0.5;
  double w_minus = 0.5;

  /// Same temperature with the weights swapped, for reproducing the
  /// labeling in which the majority weight is attributed to +x.
  GibbsPrep swapped() const { return {beta, j_max, w_minus, w_plus}; }
};

/// w_plus = 1/(1 + e^{2 beta J}), w_minus = 1/(1 + e^{-2 beta J}); finite for
/// any beta including +infinity.
GibbsPrep gibbs_weights(double beta, double j_max);

/// p[i][j]: probability of ending in eigenstate i given start j, with index
/// 0 = +x and 1 = -x. Columns sum to one.
struct TransitionMatrix {
  std::array<std::array<double, 2>, 2> p{};

  double pp() const { return p[0][0]; }
  double pm() const { return p[0][1]; }
  double mp() const { return p[1][0]; }
  double mm() const { return p[1][1]; }

  static TransitionMatrix identity() { return {{{{1.0, 0.0}, {0.0, 1.0}}}}; }
};

/// Sets p[1][j] from the normalized p[0][j] so the column sums to one.
void normalize_column(TransitionMatrix& tm, int column, double plus, double minus);

inline constexpr double kMinSurvival = 1e-12;

/// Post-selected transition probabilities |<i|G|j>|^2 / <j|G^dagger G|j>.
/// Error{NormalizationUnderflow} when a survival norm falls below 1e-12.
TransitionMatrix transition_probs(const ComplexMat2& g);

/// Discrete work distribution of the two-point measurement protocol on
/// the support {-2Jmax, 0, +2Jmax}.
struct WorkDistribution {
  std::array<double, 3> support{};
  std::array<double, 3> probs{};
};

WorkDistribution work_distribution(const TransitionMatrix& tm, const GibbsPrep& prep);

struct JEResult {
  /// <exp(-beta W)>
  double value = 1.0;
  double deviation = 0.0;
  /// <W> in rad/us.
  double mean_work = 0.0;
  /// P++ - P--
  double asym = 0.0;
};

JEResult exp_work_avg(const TransitionMatrix& tm, const GibbsPrep& prep);

/// (P++ - P--, P+- - P-+). Equal for any column-stochastic matrix.
std::pair<double, double> asymmetry(const TransitionMatrix& tm);

}  // namespace nhq
