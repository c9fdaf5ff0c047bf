#include "nhq/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhq/error.hpp"

namespace nhq {
namespace {

constexpr long kInitialSlices = 64;
constexpr double kHSqFloor = 1e-24;

}  // namespace

ComplexMat2 ordered_product(const HamiltonianFn& h, double tau, long slices) {
  // Two-exponential commutator-free Magnus step on Gauss-Legendre nodes.
  constexpr double kNodeOffset = std::numbers::sqrt3 / 6.0;
  constexpr double kC1 = 0.5 - kNodeOffset;
  constexpr double kC2 = 0.5 + kNodeOffset;
  constexpr double kA1 = 0.25 + kNodeOffset;
  constexpr double kA2 = 0.25 - kNodeOffset;

  const double dt = tau / static_cast<double>(slices);
  const Complex step = -kI * dt;
  ComplexMat2 g = ComplexMat2::Identity();
  for (long k = 0; k < slices; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const ComplexMat2 h1 = h(t0 + kC1 * dt);
    const ComplexMat2 h2 = h(t0 + kC2 * dt);
    g = expm2(step * (kA1 * h2 + kA2 * h1)) * expm2(step * (kA1 * h1 + kA2 * h2)) * g;
  }
  return g;
}

Propagator propagate(const HamiltonianFn& h, double tau, double tol, bool is_static) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "propagate: tolerance must be positive");
  }
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "propagate: tau must be positive");
  }

  Propagator p;
  p.tau = tau;
  if (is_static) {
    p.g = expm2(-kI * tau * h(0.5 * tau));
    p.slices = 1;
    p.converged = true;
    return p;
  }

  ComplexMat2 coarse = ordered_product(h, tau, kInitialSlices);
  for (long slices = 2 * kInitialSlices; slices <= kMaxSlices; slices *= 2) {
    ComplexMat2 fine = ordered_product(h, tau, slices);
    const double err = max_abs(ComplexMat2(fine - coarse)) / std::max(1.0, max_abs(fine));
    p.g = fine;
    p.slices = slices;
    p.est_error = err;
    if (err < tol) {
      p.converged = true;
      return p;
    }
    coarse = std::move(fine);
  }
  throw Error(ErrorCode::NoConvergence, "propagate: slice count exceeded 2^20");
}

Propagator propagate(const PathSpec& spec, const Rates& rates, double tol) {
  spec.validate();
  rates.validate();
  HamiltonianFn h = [&](double t) { return build_heff(eval_path(spec, t), rates); };
  return propagate(h, spec.tau, tol, spec.is_static());
}

FloquetDecomp floquet(const Propagator& p) {
  if (!p.converged) {
    throw Error(ErrorCode::InvalidArgument, "floquet: propagator did not converge");
  }
  const ComplexMat2 log_g = logm2(p.g);
  FloquetDecomp f;
  f.tau = p.tau;
  f.coeffs = pauli_decompose((kI / p.tau) * log_g);
  f.h_sq = f.coeffs.h_sq();

  const double fold = 0.95 * std::numbers::pi;
  for (const Complex& ev : eig2(log_g).values) {
    if (std::abs(ev.imag()) > fold) f.branch_warning = true;
  }
  f.classification = classify_pt(f);
  return f;
}

PtClass classify_pt(const FloquetDecomp& f, double rel_tol) {
  const Complex h_sq = f.h_sq;
  const double mag = std::abs(h_sq);
  PtClass c;
  if (mag <= kHSqFloor) {
    c.kind = PtKind::RealSpectrum;
    c.margin = 0.0;
    c.exceptional_point = true;
    return c;
  }
  const double imag_fraction = std::abs(h_sq.imag()) / mag;
  c.margin = imag_fraction / rel_tol;
  if (imag_fraction <= rel_tol) {
    c.kind = h_sq.real() > 0.0 ? PtKind::RealSpectrum : PtKind::ImaginarySpectrum;
  } else {
    c.kind = PtKind::NoAntilinearSymmetry;
  }
  return c;
}

bool je_condition(const FloquetDecomp& f, double rel_tol) {
  const PauliCoeffs& c = f.coeffs;
  const double scale =
      std::max({std::abs(c.hx), std::abs(c.hy), std::abs(c.hz), 1e-30});
  const double bound = rel_tol * scale;
  return std::abs(c.hx.imag()) <= bound && std::abs(c.hy.real()) <= bound &&
         std::abs(c.hz.real()) <= bound;
}

double exchange_symmetry_residual(const ComplexMat2& g) {
  const ComplexMat2 u = pm_x_basis();
  const ComplexMat2 gx = u.adjoint() * g * u;
  // Index 0 is +x, 1 is -x; gx(i, j) = <i|G|j>.
  const double plus = std::abs(gx(0, 0) * gx(0, 1));
  const double minus = std::abs(gx(1, 1) * gx(1, 0));
  return std::abs(plus - minus) / std::max({plus, minus, 1e-30});
}

}  // namespace nhq
