#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "nhq/error.hpp"
#include "nhq/model.hpp"
#include "nhq/qmath.hpp"
#include "test_support.hpp"

using namespace nhq;
using nhq::test::rel_diff;
using std::numbers::pi;

namespace {

void check_close(Complex a, Complex b, double tol = 1e-14) {
  CHECK(std::abs(a - b) <= tol);
}

}  // namespace

TEST_CASE("pauli_decompose basis cases") {
  const PauliCoeffs id = pauli_decompose(ComplexMat2::Identity());
  check_close(id.h0, 1.0);
  check_close(id.hx, 0.0);
  check_close(id.hy, 0.0);
  check_close(id.hz, 0.0);

  const PauliCoeffs x = pauli_decompose(sigma_x());
  check_close(x.h0, 0.0);
  check_close(x.hx, 1.0);
  check_close(x.hy, 0.0);
  check_close(x.hz, 0.0);

  check_close(pauli_decompose(sigma_y()).hy, 1.0);
  check_close(pauli_decompose(sigma_z()).hz, 1.0);
}

TEST_CASE("pauli_decompose of the effective Hamiltonian") {
  const Rates rates{1.57, 0.0, 0.0, 0.0};
  const PauliCoeffs c = pauli_decompose(build_heff({3.74, 0.0}, rates));
  check_close(c.h0, 0.0);
  check_close(c.hx, 3.74);
  check_close(c.hy, 0.0);
  check_close(c.hz, Complex(0.0, 0.3925));
}

TEST_CASE("pauli_decompose round trip is exact") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const ComplexMat2 m = test::random_mat2(rng, 3.0);
    CHECK(rel_diff(pauli_compose(pauli_decompose(m)), m) <= 4e-16);
  }
}

TEST_CASE("expm2 closed-form cases") {
  CHECK(rel_diff(expm2(ComplexMat2::Zero()), ComplexMat2::Identity()) == 0.0);

  const ComplexMat2 rot = expm2(-kI * (pi / 2) * sigma_x());
  CHECK(rel_diff(rot, ComplexMat2(-kI * sigma_x())) <= 1e-15);

  const double a = 1.57 / 4.0;
  const ComplexMat2 d = expm2(a * sigma_z());
  ComplexMat2 expected = ComplexMat2::Zero();
  expected(0, 0) = std::exp(-0.3925);
  expected(1, 1) = std::exp(0.3925);
  CHECK(rel_diff(d, expected) <= 1e-15);
}

TEST_CASE("expm2 agrees with a Pade/scaling-squaring reference") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const ComplexMat2 m = test::random_mat2(rng, 2.0);
    const ComplexMat2 ref = m.exp();
    CHECK(rel_diff(expm2(m), ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
  }
}

TEST_CASE("expm2 near-degenerate and nilpotent inputs") {
  ComplexMat2 nil = ComplexMat2::Zero();
  nil(0, 1) = 2.5;
  ComplexMat2 expected = ComplexMat2::Identity();
  expected(0, 1) = 2.5;
  CHECK(rel_diff(expm2(nil), expected) <= 1e-15);

  // Exceptional point of the static Hamiltonian: -i t H is nilpotent.
  const ComplexMat2 h = build_heff({0.3925, 0.0}, Rates{1.57, 0.0, 0.0, 0.0});
  const ComplexMat2 g = expm2(-kI * 0.7 * h);
  CHECK(rel_diff(g, ComplexMat2(ComplexMat2::Identity() - kI * 0.7 * h)) <= 1e-15);
}

TEST_CASE("expm2 factors scalar shifts") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const ComplexMat2 a = test::random_mat2(rng);
    const Complex c(n(rng), n(rng));
    const ComplexMat2 lhs = expm2(a + c * ComplexMat2::Identity());
    const ComplexMat2 rhs = std::exp(c) * expm2(a);
    CHECK(max_abs(ComplexMat2(lhs - rhs)) <= 1e-12 * max_abs(rhs));
  }
}

TEST_CASE("logm2 simple cases") {
  CHECK(max_abs(logm2(ComplexMat2::Identity())) == 0.0);
  ComplexMat2 d = ComplexMat2::Zero();
  d(0, 0) = std::exp(1.0);
  d(1, 1) = std::exp(2.0);
  const ComplexMat2 l = logm2(d);
  check_close(l(0, 0), 1.0);
  check_close(l(1, 1), 2.0);
  check_close(l(0, 1), 0.0);
}

TEST_CASE("logm2 uses the principal branch") {
  // exp(i pi sz) = -I; principal logs of -1 are i pi for both eigenvalues.
  ComplexMat2 m = ComplexMat2::Zero();
  m(0, 0) = std::exp(Complex(0.0, 3.0));
  m(1, 1) = std::exp(Complex(0.0, -3.0));
  const ComplexMat2 l = logm2(m);
  check_close(l(0, 0), Complex(0.0, 3.0), 1e-14);
  check_close(l(1, 1), Complex(0.0, -3.0), 1e-14);

  ComplexMat2 wrap = ComplexMat2::Zero();
  wrap(0, 0) = std::exp(Complex(0.0, 4.0));
  wrap(1, 1) = 1.0;
  check_close(logm2(wrap)(0, 0), Complex(0.0, 4.0 - 2.0 * pi), 1e-14);
}

TEST_CASE("logm2 inverts expm2 on the principal strip") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 1000) {
    const ComplexMat2 a = test::random_mat2(rng, 0.8);
    const Eig2 e = eig2(a);
    if (std::abs(e.values[0].imag()) >= pi - 0.05 || std::abs(e.values[1].imag()) >= pi - 0.05) continue;
    ++tested;
    const ComplexMat2 g = expm2(a);
    CHECK(rel_diff(logm2(g), a) <= 1e-10);
    CHECK(rel_diff(expm2(logm2(g)), g) <= 1e-12);
  }
}

TEST_CASE("logm2 agrees with the Schur-Parlett reference") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 300; ++k) {
    const ComplexMat2 m = test::random_mat2(rng, 1.5);
    const ComplexMat2 ref = m.log();
    CHECK(rel_diff(logm2(m), ref) <= 1e-10);
  }
}

TEST_CASE("logm2 errors") {
  ComplexMat2 singular;
  singular << 1.0, 2.0, 2.0, 4.0;
  try {
    logm2(singular);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Singular);
  }

  ComplexMat2 jordan;
  jordan << 2.0, 1.0, 0.0, 2.0;
  try {
    logm2(jordan);
    FAIL("expected Defective");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Defective);
  }
}

TEST_CASE("eig2 examples") {
  const Eig2 z = eig2(sigma_z());
  check_close(z.values[0], -1.0);
  check_close(z.values[1], 1.0);
  CHECK(std::abs(z.vectors(0, 0)) == doctest::Approx(1.0));  // |e>
  CHECK(std::abs(z.vectors(1, 1)) == doctest::Approx(1.0));  // |f>
  CHECK_FALSE(z.defective);

  const Eig2 x = eig2(sigma_x());
  check_close(x.values[0], -1.0);
  check_close(x.values[1], 1.0);
  // +1 eigenvector is (|f> + |e>)/sqrt2, up to phase.
  const ComplexVec2 plus = pm_x_basis().col(0);
  CHECK(std::abs(plus.dot(x.vectors.col(1))) == doctest::Approx(1.0));

  const Eig2 ep = eig2(build_heff({0.3925, 0.0}, Rates{1.57, 0.0, 0.0, 0.0}));
  check_close(ep.values[0], 0.0);
  check_close(ep.values[1], 0.0);
  CHECK(ep.defective);
}

TEST_CASE("eig2 residuals are small for non-defective inputs") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 1000; ++k) {
    const ComplexMat2 m = test::random_mat2(rng, 2.0);
    const Eig2 e = eig2(m);
    REQUIRE_FALSE(e.defective);
    CHECK(!(e.values[1].real() < e.values[0].real()));
    for (int c = 0; c < 2; ++c) {
      const ComplexVec2 v = e.vectors.col(c);
      CHECK(v.norm() == doctest::Approx(1.0));
      CHECK((m * v - e.values[static_cast<std::size_t>(c)] * v).norm() <= 1e-10 * max_abs(m));
    }
  }
}

TEST_CASE("eig2 scalar matrix is not defective") {
  const Eig2 e = eig2(Complex(2.0, 1.0) * ComplexMat2::Identity());
  CHECK_FALSE(e.defective);
  check_close(e.values[0], Complex(2.0, 1.0));
}

TEST_CASE("rk4_step zero derivative leaves rho unchanged") {
  std::mt19937_64 rng(1);
  ComplexMat3 rho = test::random_mat3(rng);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Deriv3 zero = [](double, const ComplexMat3&) { return ComplexMat3::Zero().eval(); };
  CHECK(max_abs(ComplexMat3(rk4_step(zero, rho, 0.0, 0.1) - rho)) <= 1e-16);
}

TEST_CASE("rk4_step on linear decay matches the fourth-order Taylor factor") {
  const double dt = 0.001;
  ComplexMat3 rho = ComplexMat3::Identity();
  rho(0, 1) = Complex(0.2, 0.1);
  rho(1, 0) = std::conj(rho(0, 1));
  const Deriv3 decay = [](double, const ComplexMat3& r) { return ComplexMat3(-r); };
  const double factor = 1.0 - dt + dt * dt / 2 - dt * dt * dt / 6 + dt * dt * dt * dt / 24;
  CHECK(max_abs(ComplexMat3(rk4_step(decay, rho, 0.0, dt) - factor * rho)) <= 1e-15);
}

TEST_CASE("rk4_step rejects non-positive steps") {
  const Deriv3 zero = [](double, const ComplexMat3&) { return ComplexMat3::Zero().eval(); };
  CHECK_THROWS_AS(rk4_step(zero, ComplexMat3::Identity(), 0.0, 0.0), Error);
}

namespace {

// Radiative decay of |e> -> |g> at rate gamma_e.
double decayed_population(double dt, double t_end) {
  const double gamma_e = 1.57;
  ComplexMat3 l = ComplexMat3::Zero();
  l(kG, kE) = std::sqrt(gamma_e);
  const ComplexMat3 ll = l.adjoint() * l;
  const Deriv3 deriv = [&](double, const ComplexMat3& r) {
    return ComplexMat3(l * r * l.adjoint() - 0.5 * (ll * r + r * ll));
  };
  ComplexMat3 rho = ComplexMat3::Zero();
  rho(kE, kE) = 1.0;
  const long steps = std::lround(t_end / dt);
  for (long k = 0; k < steps; ++k) rho = rk4_step(deriv, rho, k * dt, dt);
  return rho(kE, kE).real();
}

}  // namespace

TEST_CASE("rk4_step reproduces exponential decay") {
  CHECK(std::abs(decayed_population(1e-3, 1.0) - std::exp(-1.57)) <= 1e-8);
}

TEST_CASE("rk4 convergence order is four") {
  const double exact = std::exp(-1.57);
  const double e1 = std::abs(decayed_population(0.1, 1.0) - exact);
  const double e2 = std::abs(decayed_population(0.05, 1.0) - exact);
  const double order = std::log2(e1 / e2);
  CHECK(order == doctest::Approx(4.0).epsilon(0.05));
}
