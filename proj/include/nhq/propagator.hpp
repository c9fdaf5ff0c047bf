#pragma once

#include <functional>

#include "nhq/model.hpp"
#include "nhq/qmath.hpp"

namespace nhq {

/// G(tau) = T exp(-i int_0^tau H_eff(t) dt).
struct Propagator {
  ComplexMat2 g = ComplexMat2::Identity();
  double tau = 0.0;
  long slices = 0;
  bool converged = false;
  /// Max-entry change between the last two slice doublings, relative to
  /// max(1, |G|_max).
  double est_error = 0.0;
};

inline constexpr double kDefaultPropagatorTol = 1e-10;
inline constexpr long kMaxSlices = 1L << 20;

using HamiltonianFn = std::function<ComplexMat2(double t)>;

/// Fixed-slice ordered product over [0, tau].
ComplexMat2 ordered_product(const HamiltonianFn& h, double tau, long slices);

/// Ordered product of per-slice steps, later times multiplying on the left.
/// Each slice is two exact exponentials of Gauss-node combinations of H
/// (fourth-order commutator-free Magnus). Slices start at 64 and double until
/// successive products agree to `tol`; Error{NoConvergence} past 2^20.
/// A time-independent generator (`is_static`) is exponentiated once.
Propagator propagate(const HamiltonianFn& h, double tau, double tol = kDefaultPropagatorTol,
                     bool is_static = false);

Propagator propagate(const PathSpec& spec, const Rates& rates,
                     double tol = kDefaultPropagatorTol);

enum class PtKind { RealSpectrum, ImaginarySpectrum, NoAntilinearSymmetry };

struct PtClass {
  PtKind kind = PtKind::RealSpectrum;
  /// |Im h^2| / max(|h^2|, 1e-24) in units of the relative tolerance used
  /// for the call. Below 1 the spectrum is classified as antilinear
  /// symmetric; values near 1 are close to the boundary.
  double margin = 0.0;
  /// h^2 vanished (the Floquet Hamiltonian sits on an exceptional point).
  bool exceptional_point = false;
};

struct FloquetDecomp {
  /// Pauli coefficients of H^F_eff = (i/tau) Log G, including the trace part.
  PauliCoeffs coeffs;
  /// hx^2 + hy^2 + hz^2 of the traceless part.
  Complex h_sq;
  PtClass classification;
  /// An eigenvalue of Log G lies within 0.05 pi of the branch cut, so the
  /// principal Floquet Hamiltonian is close to folding.
  bool branch_warning = false;
  double tau = 0.0;

  ComplexMat2 hamiltonian() const { return pauli_compose(coeffs); }
};

/// Requires p.converged. Propagates Singular / Defective from logm2.
FloquetDecomp floquet(const Propagator& p);

inline constexpr double kDefaultPtTol = 1e-9;
inline constexpr double kDefaultAlignmentTol = 1e-8;

PtClass classify_pt(const FloquetDecomp& f, double rel_tol = kDefaultPtTol);

/// hx real and hy, hz purely imaginary, relative to the largest component:
/// the Floquet energy operator is proportional to sx, i.e. aligned with H(0).
bool je_condition(const FloquetDecomp& f, double rel_tol = kDefaultAlignmentTol);

/// || G++ G+- | - | G-- G-+ || / max(|G++ G+-|, |G-- G-+|, 1e-30) with G in
/// the +-x basis. Zero exactly when the post-selected transition
/// probabilities are symmetric under +x <-> -x.
double exchange_symmetry_residual(const ComplexMat2& g);

}  // namespace nhq
