#include "nhq/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhq/error.hpp"

namespace nhq {
namespace {

constexpr double kDegeneracyTol = 1e-12;
constexpr double kSingularDet = 1e-300;

Complex det2(const ComplexMat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

struct Split {
  Complex mean;      // tr(M)/2
  ComplexMat2 dev;   // traceless part N
  Complex d_sq;      // N^2 = d_sq * I
};

Split split(const ComplexMat2& m) {
  Split s;
  s.mean = 0.5 * (m(0, 0) + m(1, 1));
  s.dev = m - s.mean * ComplexMat2::Identity();
  s.d_sq = s.dev(0, 0) * s.dev(0, 0) + s.dev(0, 1) * s.dev(1, 0);
  return s;
}

// sinh(d)/d as a function of d^2, so it never needs the branch of d.
Complex sinhc(Complex d_sq, Complex d) {
  if (std::abs(d_sq) < 1e-8) {
    return 1.0 + d_sq / 6.0 + d_sq * d_sq / 120.0;
  }
  return std::sinh(d) / d;
}

}  // namespace

ComplexMat2 sigma_x() {
  ComplexMat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMat2 sigma_y() {
  ComplexMat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMat2 sigma_z() {
  ComplexMat2 m;
  m << -1.0, 0.0, 0.0, 1.0;
  return m;
}

PauliCoeffs pauli_decompose(const ComplexMat2& m) {
  PauliCoeffs c;
  c.h0 = 0.5 * (m(0, 0) + m(1, 1));
  c.hx = 0.5 * (m(0, 1) + m(1, 0));
  c.hy = 0.5 * kI * (m(0, 1) - m(1, 0));
  c.hz = 0.5 * (m(1, 1) - m(0, 0));
  return c;
}

ComplexMat2 pauli_compose(const PauliCoeffs& c) {
  ComplexMat2 m;
  m << c.h0 - c.hz, c.hx - kI * c.hy, c.hx + kI * c.hy, c.h0 + c.hz;
  return m;
}

ComplexMat2 expm2(const ComplexMat2& m) {
  const Split s = split(m);
  const Complex d = std::sqrt(s.d_sq);
  const Complex scale = std::exp(s.mean);
  return scale * (std::cosh(d) * ComplexMat2::Identity() + sinhc(s.d_sq, d) * s.dev);
}

double max_abs(const ComplexMat2& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const ComplexMat3& m) { return m.cwiseAbs().maxCoeff(); }

bool is_defective(const ComplexMat2& m) {
  const Split s = split(m);
  const double threshold = kDegeneracyTol * std::max(1.0, max_abs(m));
  const double separation = 2.0 * std::sqrt(std::abs(s.d_sq));
  return separation < threshold && max_abs(s.dev) > threshold;
}

ComplexMat2 logm2(const ComplexMat2& m) {
  const Complex det = det2(m);
  if (std::abs(det) <= kSingularDet) {
    throw Error(ErrorCode::Singular, "logm2: matrix is singular");
  }
  const Split s = split(m);
  const double threshold = kDegeneracyTol * std::max(1.0, max_abs(m));
  const Complex d = std::sqrt(s.d_sq);

  if (2.0 * std::abs(d) < threshold) {
    if (max_abs(s.dev) > threshold) {
      throw Error(ErrorCode::Defective,
                  "logm2: matrix is defective (exceptional point)");
    }
    // Scalar up to rounding; first-order correction in the residual part.
    return std::log(s.mean) * ComplexMat2::Identity() + s.dev / s.mean;
  }

  const Complex l1 = s.mean + d;
  const Complex l2 = s.mean - d;
  const Complex log1 = std::log(l1);
  const Complex log2 = std::log(l2);
  // Divided difference (log l1 - log l2) / (l1 - l2), evaluated through
  // atanh near coalescence to avoid cancellation.
  Complex diff = log1 - log2;
  if (std::abs(d) < 1e-4 * std::abs(s.mean)) {
    const Complex series = 2.0 * std::atanh(d / s.mean);
    const double wraps = std::round((diff.imag() - series.imag()) / (2.0 * std::numbers::pi));
    diff = series + Complex(0.0, 2.0 * std::numbers::pi * wraps);
  }
  return 0.5 * (log1 + log2) * ComplexMat2::Identity() + (diff / (2.0 * d)) * s.dev;
}

namespace {

ComplexVec2 eigvec_for(const ComplexMat2& m, Complex lambda) {
  // Rows of (M - lambda I) are orthogonal to the eigenvector; take the
  // better-conditioned of the two candidates.
  ComplexVec2 a(m(0, 1), lambda - m(0, 0));
  ComplexVec2 b(lambda - m(1, 1), m(1, 0));
  ComplexVec2 v = a.norm() >= b.norm() ? a : b;
  if (v.norm() < 1e-300) {
    return ComplexVec2(1.0, 0.0);
  }
  return v / v.norm();
}

bool precedes(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Eig2 eig2(const ComplexMat2& m) {
  const Split s = split(m);
  const Complex d = std::sqrt(s.d_sq);
  // Larger-magnitude root first, the other from the product of roots.
  Complex big = std::abs(s.mean + d) >= std::abs(s.mean - d) ? s.mean + d : s.mean - d;
  Complex small = big == Complex{} ? Complex{} : det2(m) / big;
  if (std::abs(d) < 1e-8 * std::abs(s.mean) || big == Complex{}) {
    // Near-degenerate: the quadratic form is better conditioned here.
    big = s.mean + d;
    small = s.mean - d;
  }

  Eig2 out;
  out.values = {big, small};
  if (precedes(out.values[1], out.values[0])) std::swap(out.values[0], out.values[1]);
  out.defective = is_defective(m);

  const bool scalar = max_abs(s.dev) <= kDegeneracyTol * std::max(1.0, max_abs(m));
  if (scalar) {
    out.vectors = ComplexMat2::Identity();
  } else {
    out.vectors.col(0) = eigvec_for(m, out.values[0]);
    out.vectors.col(1) = eigvec_for(m, out.values[1]);
  }
  return out;
}

ComplexMat3 rk4_step(const Deriv3& deriv, const ComplexMat3& rho, double t,
                     double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rk4_step: dt must be positive");
  }
  const double half = 0.5 * dt;
  const ComplexMat3 k1 = deriv(t, rho);
  const ComplexMat3 k2 = deriv(t + half, rho + half * k1);
  const ComplexMat3 k3 = deriv(t + half, rho + half * k2);
  const ComplexMat3 k4 = deriv(t + dt, rho + dt * k3);
  const ComplexMat3 next = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return 0.5 * (next + next.adjoint());
}

}  // namespace nhq
