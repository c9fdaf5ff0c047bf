#pragma once

#include <array>
#include <complex>
#include <functional>

#include <Eigen/Core>

namespace nhq {

using Complex = std::complex<double>;

/// Qubit operators in the (e, f) basis: index 0 is |e>, index 1 is |f>.
using ComplexMat2 = Eigen::Matrix2cd;
/// Qutrit operators in the (g, e, f) basis.
using ComplexMat3 = Eigen::Matrix3cd;
using ComplexVec2 = Eigen::Vector2cd;

inline constexpr Complex kI{0.0, 1.0};

/// Pauli matrices with sigma_z = |f><f| - |e><e|, i.e. diag(-1, +1).
ComplexMat2 sigma_x();
ComplexMat2 sigma_y();
ComplexMat2 sigma_z();

/// M = h0 I + hx sx + hy sy + hz sz with complex coefficients.
struct PauliCoeffs {
  Complex h0{};
  Complex hx{};
  Complex hy{};
  Complex hz{};

  /// hx^2 + hy^2 + hz^2 (no conjugation).
  Complex h_sq() const { return hx * hx + hy * hy + hz * hz; }
};

PauliCoeffs pauli_decompose(const ComplexMat2& m);
ComplexMat2 pauli_compose(const PauliCoeffs& c);

/// Closed-form matrix exponential. With M = m I + N and N^2 = d^2 I,
/// exp(M) = e^m (cosh(d) I + sinh(d)/d N), which is even in d and so
/// independent of the square-root branch.
ComplexMat2 expm2(const ComplexMat2& m);

/// Principal matrix logarithm (eigenvalue logs with Im in (-pi, pi]).
/// Throws Error{Singular} when |det M| <= 1e-300 and Error{Defective} at
/// a non-diagonalizable M.
ComplexMat2 logm2(const ComplexMat2& m);

struct Eig2 {
  std::array<Complex, 2> values;
  /// Unit-norm eigenvectors, column k belongs to values[k].
  ComplexMat2 vectors;
  bool defective = false;
};

/// Eigen-decomposition from the characteristic polynomial. Eigenvalues are
/// ordered by real part, ties broken by imaginary part.
Eig2 eig2(const ComplexMat2& m);

/// True when the eigenvalue separation is below 1e-12 max(1, |M|) while M
/// is not a multiple of the identity.
bool is_defective(const ComplexMat2& m);

double max_abs(const ComplexMat2& m);
double max_abs(const ComplexMat3& m);

using Deriv3 = std::function<ComplexMat3(double t, const ComplexMat3& rho)>;

/// One classical RK4 step of d(rho)/dt = deriv(t, rho). The result is
/// re-Hermitized, (rho + rho^dagger)/2.
ComplexMat3 rk4_step(const Deriv3& deriv, const ComplexMat3& rho, double t,
                     double dt);

}  // namespace nhq
