#include "nhq/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "nhq/error.hpp"

namespace nhq {

DensityMatrix3 DensityMatrix3::pure(const Eigen::Vector3cd& psi) {
  return DensityMatrix3{psi * psi.adjoint()};
}

DensityMatrix3 DensityMatrix3::pm_x(int sign) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
  psi(kF) = r;
  psi(kE) = sign > 0 ? r : -r;
  return pure(psi);
}

DensityMatrix3 DensityMatrix3::level(int index) {
  Eigen::Vector3cd psi = Eigen::Vector3cd::Zero();
  psi(index) = 1.0;
  return pure(psi);
}

double DensityMatrix3::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMat3> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix3 evolve_rho3(const PathSpec& spec, const Rates& rates, const DensityMatrix3& rho0,
                           double dt, DetuningConvention convention) {
  spec.validate();
  rates.validate();
  if (!(dt > 0.0) || dt > spec.tau / 1000.0 * (1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "evolve_rho3: need 0 < dt <= tau/1000");
  }
  const long steps = static_cast<long>(std::ceil(spec.tau / dt - 1e-9));
  const double h = spec.tau / static_cast<double>(steps);

  // Dissipator terms do not depend on time.
  const LindbladSnapshot base = build_lindblad(DriveSample{}, rates, convention);
  ComplexMat3 decay = ComplexMat3::Zero();
  for (const auto& l : base.jumps) decay += l.adjoint() * l;

  const Deriv3 deriv = [&](double t, const ComplexMat3& rho) {
    const DriveSample d = eval_path(spec, std::min(t, spec.tau));
    const ComplexMat3 hc = build_lindblad(d, rates, convention).h_c;
    ComplexMat3 out = -kI * (hc * rho - rho * hc) - 0.5 * (decay * rho + rho * decay);
    for (const auto& l : base.jumps) out += l * rho * l.adjoint();
    return out;
  };

  const double trace0 = rho0.trace();
  ComplexMat3 rho = rho0.rho;
  for (long k = 0; k < steps; ++k) {
    rho = rk4_step(deriv, rho, static_cast<double>(k) * h, h);
    if (std::abs(rho.trace().real() - trace0) > 1e-6) {
      throw Error(ErrorCode::StepTooLarge, "evolve_rho3: trace drift above 1e-6");
    }
  }
  return DensityMatrix3{rho};
}

ReadoutProbs readout(const DensityMatrix3& rho) {
  const ComplexMat3& r = rho.rho;
  // <+-x|rho|+-x> = (rho_ee + rho_ff)/2 +- Re rho_ef.
  const double block = 0.5 * (r(kE, kE).real() + r(kF, kF).real());
  const double coherence = r(kE, kF).real();
  return ReadoutProbs{r(kG, kG).real(), block + coherence, block - coherence};
}

std::array<ReadoutProbs, 2> oracle_readouts(const PathSpec& spec, const Rates& rates, double dt,
                                            DetuningConvention convention) {
  return {readout(evolve_rho3(spec, rates, DensityMatrix3::pm_x(+1), dt, convention)),
          readout(evolve_rho3(spec, rates, DensityMatrix3::pm_x(-1), dt, convention))};
}

TransitionMatrix transition_from_readouts(const std::array<ReadoutProbs, 2>& readouts) {
  TransitionMatrix tm;
  for (int j = 0; j < 2; ++j) {
    const ReadoutProbs& r = readouts[static_cast<std::size_t>(j)];
    if (r.p_plus + r.p_minus < kMinSurvival) {
      throw Error(ErrorCode::NormalizationUnderflow,
                  "oracle: post-selected population below 1e-12");
    }
    normalize_column(tm, j, r.p_plus, r.p_minus);
  }
  return tm;
}

TransitionMatrix oracle_transition_probs(const PathSpec& spec, const Rates& rates, double dt,
                                         DetuningConvention convention) {
  return transition_from_readouts(oracle_readouts(spec, rates, dt, convention));
}

ComplexMat2 rho2_postselected(const ComplexMat2& g, const ComplexMat2& rho0) {
  const double survival = (rho0 * g.adjoint() * g).trace().real();
  if (survival < kMinSurvival) {
    throw Error(ErrorCode::NormalizationUnderflow, "rho2_postselected: survival below 1e-12");
  }
  return g * rho0 * g.adjoint() / survival;
}

}  // namespace nhq
