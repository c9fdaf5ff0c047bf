#pragma once

#include <array>

#include "nhq/model.hpp"
#include "nhq/qmath.hpp"
#include "nhq/workstats.hpp"

namespace nhq {

/// Qutrit density matrix in the (g, e, f) basis.
struct DensityMatrix3 {
  ComplexMat3 rho = ComplexMat3::Zero();

  /// |psi><psi| for a normalized (g, e, f) amplitude vector.
  static DensityMatrix3 pure(const Eigen::Vector3cd& psi);
  /// +-x embedded in the (e, f) block; sign = +1 or -1.
  static DensityMatrix3 pm_x(int sign);
  static DensityMatrix3 level(int index);

  double trace() const { return rho.trace().real(); }
  double min_eigenvalue() const;
};

/// Single-shot outcome probabilities in the {g, +x, -x} readout basis.
struct ReadoutProbs {
  double p_g = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
};

inline constexpr double kDefaultLindbladDt = 1e-4;  // us

/// Fixed-step RK4 integration of the Lindblad equation over [0, tau] with
/// the drive Hamiltonian sampled at the RK4 stage times. The step is the
/// largest tau/N not exceeding dt. Requires dt <= tau/1000; throws
/// Error{StepTooLarge} if the trace drifts by more than 1e-6.
DensityMatrix3 evolve_rho3(const PathSpec& spec, const Rates& rates, const DensityMatrix3& rho0,
                           double dt = kDefaultLindbladDt,
                           DetuningConvention convention = DetuningConvention::Symmetric);

ReadoutProbs readout(const DensityMatrix3& rho);

/// Readout probabilities after evolving from +x (index 0) and -x (index 1).
std::array<ReadoutProbs, 2> oracle_readouts(
    const PathSpec& spec, const Rates& rates, double dt = kDefaultLindbladDt,
    DetuningConvention convention = DetuningConvention::Symmetric);

/// Post-selected transition matrix built from readout counts,
/// P_ij = p_i / (p_plus + p_minus) for preparation j.
TransitionMatrix transition_from_readouts(const std::array<ReadoutProbs, 2>& readouts);

TransitionMatrix oracle_transition_probs(
    const PathSpec& spec, const Rates& rates, double dt = kDefaultLindbladDt,
    DetuningConvention convention = DetuningConvention::Symmetric);

/// G rho G^dagger / Tr[rho G^dagger G]. Error{NormalizationUnderflow} when
/// the survival probability is below 1e-12.
ComplexMat2 rho2_postselected(const ComplexMat2& g, const ComplexMat2& rho0);

}  // namespace nhq
