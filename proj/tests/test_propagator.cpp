#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "nhq/error.hpp"
#include "nhq/model.hpp"
#include "nhq/propagator.hpp"
#include "nhq/workstats.hpp"
#include "test_support.hpp"

using namespace nhq;
using nhq::test::rel_diff;
using std::numbers::pi;

namespace {

const Rates kIdeal{1.57, 0.0, 0.0, 0.0};
const Rates kMeasured = Rates::full_physics();

// Classical RK4 on dG/dt = -i H(t) G, independent of the production stepper.
ComplexMat2 rk4_reference(const PathSpec& spec, const Rates& rates, long steps) {
  const double dt = spec.tau / static_cast<double>(steps);
  auto f = [&](double t, const ComplexMat2& g) {
    return ComplexMat2(-kI * build_heff(eval_path(spec, std::min(t, spec.tau)), rates) * g);
  };
  ComplexMat2 g = ComplexMat2::Identity();
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const ComplexMat2 k1 = f(t, g);
    const ComplexMat2 k2 = f(t + dt / 2, g + dt / 2 * k1);
    const ComplexMat2 k3 = f(t + dt / 2, g + dt / 2 * k2);
    const ComplexMat2 k4 = f(t + dt, g + dt * k3);
    g += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return g;
}

ComplexMat2 mat(Complex a, Complex b, Complex c, Complex d) {
  ComplexMat2 m;
  m << a, b, c, d;
  return m;
}

FloquetDecomp with_coeffs(Complex hx, Complex hy, Complex hz) {
  FloquetDecomp f;
  f.coeffs = PauliCoeffs{0.0, hx, hy, hz};
  f.h_sq = f.coeffs.h_sq();
  return f;
}

std::vector<PathSpec> driven_paths(double tau) {
  return {PathSpec{JSweep{3.74, 0.0}, tau}, PathSpec{DeltaHalfSine{3.74, 10 * pi}, tau},
          PathSpec{DeltaFullSine{3.74, 10 * pi}, tau}};
}

}  // namespace

TEST_CASE("static path is a single exponential") {
  for (double tau : {0.1, 0.5, 1.0}) {
    const PathSpec spec{JSweep{3.74, 3.74}, tau};
    const Propagator p = propagate(spec, kIdeal);
    CHECK(p.converged);
    const ComplexMat2 ref = ComplexMat2(-kI * tau * build_heff({3.74, 0.0}, kIdeal)).exp();
    CHECK(rel_diff(p.g, ref) <= 1e-12);
  }
}

TEST_CASE("vanishing period gives the identity") {
  for (const PathSpec& spec : driven_paths(1e-12)) {
    const Propagator p = propagate(spec, kMeasured);
    CHECK(rel_diff(p.g, ComplexMat2::Identity()) <= 1e-10);
  }
}

TEST_CASE("propagate matches frozen high-accuracy ODE solutions") {
  // Reference values from an adaptive 8th-order ODE solve at rtol 1e-13,
  // gamma = 1.36.
  SUBCASE("half-sine detuning, tau = 0.5") {
    const Propagator p = propagate(PathSpec{DeltaHalfSine{3.74, 10 * pi}, 0.5}, kMeasured);
    const ComplexMat2 ref = mat({0.807660603101169, 0.309041405251415},
                                {-0.128707199724485, 0.12624173765762},
                                {-0.128707199724485, 0.126241737657619},
                                {-0.694142294724101, 0.898946138047298});
    CHECK(rel_diff(p.g, ref) <= 1e-9);
  }
  SUBCASE("J sweep to zero, tau = 0.5") {
    const Propagator p = propagate(PathSpec{JSweep{3.74, 0.0}, 0.5}, kMeasured);
    const ComplexMat2 ref = mat(0.447859443456887, {0.0, -0.8112029766304},
                                {0.0, -0.8112029766304}, 0.763520197467685);
    CHECK(rel_diff(p.g, ref) <= 1e-9);
  }
  SUBCASE("full-sine detuning, tau = 0.3") {
    const Propagator p = propagate(PathSpec{DeltaFullSine{3.74, 10 * pi}, 0.3}, kMeasured);
    CHECK(std::abs(p.g(0, 1) - Complex(-0.514410316479061, 0.01163935172578046)) <= 1e-9);
    CHECK(std::abs(p.g(1, 0) - Complex(0.514410316479058, 0.01163935172578254)) <= 1e-9);
    CHECK(std::abs(p.g(0, 0).real() - 0.770206394069143) <= 1e-9);
    CHECK(std::abs(p.g(1, 1).real() - 0.954609774020247) <= 1e-9);
  }
}

TEST_CASE("propagate agrees with an independent RK4 integration") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ut(0.1, 1.0);
  for (int k = 0; k < 6; ++k) {
    const double tau = ut(rng);
    for (const PathSpec& spec : driven_paths(tau)) {
      const Propagator p = propagate(spec, kMeasured);
      CHECK(rel_diff(p.g, rk4_reference(spec, kMeasured, 40000)) <= 1e-9);
    }
  }
}

TEST_CASE("converged propagators satisfy their error bound") {
  for (const PathSpec& spec : driven_paths(0.7)) {
    const Propagator p = propagate(spec, kMeasured, 1e-10);
    CHECK(p.converged);
    CHECK(p.est_error < 1e-10);
    CHECK(p.slices >= 128);
  }
}

TEST_CASE("propagate errors") {
  const PathSpec spec{DeltaFullSine{3.74, 10 * pi}, 1.0};
  CHECK_THROWS_AS(propagate(spec, kMeasured, 0.0), Error);
  try {
    propagate(spec, kMeasured, 1e-30);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}

TEST_CASE("floquet of the identity") {
  Propagator p;
  p.tau = 1.0;
  p.converged = true;
  const FloquetDecomp f = floquet(p);
  CHECK(std::abs(f.coeffs.h0) == 0.0);
  CHECK(std::abs(f.coeffs.hx) == 0.0);
  CHECK(std::abs(f.h_sq) == 0.0);
  CHECK(f.classification.exceptional_point);
}

TEST_CASE("floquet of a static Hamiltonian returns it") {
  const Propagator p = propagate(PathSpec{JSweep{3.74, 3.74}, 0.2}, kIdeal);
  const FloquetDecomp f = floquet(p);
  CHECK(std::abs(f.coeffs.h0) <= 1e-12);
  CHECK(std::abs(f.coeffs.hx - 3.74) <= 1e-12);
  CHECK(std::abs(f.coeffs.hy) <= 1e-12);
  CHECK(std::abs(f.coeffs.hz - Complex(0.0, 0.3925)) <= 1e-12);
  CHECK(std::abs(f.h_sq.real() - 13.8335) <= 1e-4);
  CHECK(f.classification.kind == PtKind::RealSpectrum);
  CHECK_FALSE(f.branch_warning);
  CHECK(je_condition(f));
}

TEST_CASE("floquet requires convergence") {
  Propagator p;
  p.tau = 1.0;
  CHECK_THROWS_AS(floquet(p), Error);
}

TEST_CASE("branch warning near the fold") {
  // tau |h| = 0.85 * 3.719 > 0.95 pi.
  const FloquetDecomp f = floquet(propagate(PathSpec{JSweep{3.74, 3.74}, 0.85}, kIdeal));
  CHECK(f.branch_warning);
}

TEST_CASE("full-sine detuning has an emergent antilinear symmetry") {
  for (double tau = 0.1; tau <= 1.0 + 1e-12; tau += 0.05) {
    const FloquetDecomp f = floquet(propagate(PathSpec{DeltaFullSine{3.74, 10 * pi}, tau}, kMeasured));
    if (f.branch_warning) continue;
    CHECK(f.classification.kind != PtKind::NoAntilinearSymmetry);
  }
}

TEST_CASE("classify_pt examples") {
  CHECK(classify_pt(with_coeffs(1.0, 0.0, 0.0)).kind == PtKind::RealSpectrum);
  const PtClass broken = classify_pt(with_coeffs(0.2, 0.0, Complex(0.0, 0.3925)));
  CHECK(broken.kind == PtKind::ImaginarySpectrum);
  CHECK(broken.margin == 0.0);

  const FloquetDecomp d1 =
      floquet(propagate(PathSpec{DeltaHalfSine{3.74, 10 * pi}, 0.5}, kMeasured));
  CHECK(d1.classification.kind == PtKind::NoAntilinearSymmetry);
  CHECK(d1.classification.margin > 10.0);

  const PtClass ep = classify_pt(with_coeffs(0.0, 0.0, 0.0));
  CHECK(ep.kind == PtKind::RealSpectrum);
  CHECK(ep.exceptional_point);
}

TEST_CASE("je_condition examples") {
  CHECK(je_condition(with_coeffs(3.74, 0.0, Complex(0.0, 0.3925))));
  CHECK_FALSE(je_condition(with_coeffs(3.74, 0.1, Complex(0.0, 0.3925))));
  CHECK_FALSE(je_condition(with_coeffs(Complex(3.74, 1e-3), 0.0, Complex(0.0, 0.3925))));
  CHECK(je_condition(with_coeffs(0.0, 0.0, 0.0)));
}

TEST_CASE("je_condition along the full-sine path") {
  // Roots of P++ - P-- for DeltaFullSine(3.74, 10 pi) with the measured
  // rates, located independently to 1e-13.
  for (double root : {0.46369070385903294, 0.6080700230392053}) {
    const FloquetDecomp f =
        floquet(propagate(PathSpec{DeltaFullSine{3.74, 10 * pi}, root}, kMeasured));
    CHECK(je_condition(f, 1e-6));
  }
  const FloquetDecomp mid = floquet(propagate(PathSpec{DeltaFullSine{3.74, 10 * pi}, 0.5}, kMeasured));
  CHECK_FALSE(je_condition(mid));
}

TEST_CASE("exchange_symmetry_residual examples") {
  CHECK(exchange_symmetry_residual(ComplexMat2::Identity()) == 0.0);
  for (double tau : {0.1, 0.33, 0.5, 0.77, 1.0}) {
    const Propagator p = propagate(PathSpec{JSweep{3.74, 3.74}, tau}, kIdeal);
    CHECK(exchange_symmetry_residual(p.g) <= 1e-10);
  }
  const Propagator d1 = propagate(PathSpec{DeltaHalfSine{3.74, 10 * pi}, 0.5}, kMeasured);
  CHECK(exchange_symmetry_residual(d1.g) > 0.01);
}

TEST_CASE("scalar shifts drop out of post-selected probabilities") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-3.0, 3.0), ut(0.1, 1.0);
  for (int k = 0; k < 20; ++k) {
    const Complex c0(u(rng), u(rng)), c1(u(rng), u(rng));
    const double w = 2 * pi * std::abs(u(rng));
    for (const PathSpec& spec : driven_paths(ut(rng))) {
      const HamiltonianFn h = [&](double t) { return build_heff(eval_path(spec, t), kMeasured); };
      const HamiltonianFn shifted = [&](double t) {
        return ComplexMat2(h(t) + (c0 + c1 * std::sin(w * t)) * ComplexMat2::Identity());
      };
      // Same slicing for both so only the shift differs.
      const Propagator p = propagate(h, spec.tau);
      const TransitionMatrix a = transition_probs(p.g);
      const TransitionMatrix b = transition_probs(ordered_product(shifted, spec.tau, p.slices));
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(std::abs(a.p[i][j] - b.p[i][j]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("Floquet round trip") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ut(0.1, 1.0);
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    for (const PathSpec& spec : driven_paths(ut(rng))) {
      const Propagator p = propagate(spec, kMeasured);
      const FloquetDecomp f = floquet(p);
      if (f.branch_warning) continue;
      ++checked;
      CHECK(rel_diff(expm2(-kI * p.tau * f.hamiltonian()), p.g) <= 1e-10);
    }
  }
  CHECK(checked > 45);
}

TEST_CASE("exchange symmetry holds exactly when the Floquet operator is aligned and symmetric") {
  std::mt19937_64 rng(53);
  int tested = 0, skipped = 0, symmetric = 0, asymmetric = 0;
  while (tested < 1000) {
    const test::ExchangeSample s = test::exchange_sample(rng);
    if (s.ambiguous) {
      ++skipped;
      continue;
    }
    ++tested;
    const bool rhs = s.f.classification.kind != PtKind::NoAntilinearSymmetry && je_condition(s.f);
    const bool lhs = exchange_symmetry_residual(s.g) < 1e-8;
    CHECK(lhs == rhs);
    (lhs ? symmetric : asymmetric) += 1;
  }
  CHECK(symmetric > 200);
  CHECK(asymmetric > 200);
  CHECK(skipped < 50);
}

TEST_CASE("unitary limit") {
  for (double tau : {0.1, 0.45, 1.0}) {
    std::vector<PathSpec> paths = driven_paths(tau);
    paths.push_back(PathSpec{JSweep{3.74, 3.74}, tau});
    paths.push_back(PathSpec{JSweep{0.04, 3.74}, tau});
    for (const PathSpec& spec : paths) {
      const ComplexMat2 g = propagate(spec, Rates::none()).g;
      CHECK(max_abs(ComplexMat2(g.adjoint() * g - ComplexMat2::Identity())) <= 1e-10);
    }
  }
}

TEST_CASE("doubling error decreases monotonically") {
  for (const PathSpec& spec : driven_paths(1.0)) {
    const HamiltonianFn h = [&](double t) { return build_heff(eval_path(spec, t), kMeasured); };
    ComplexMat2 prev = ordered_product(h, spec.tau, 64);
    double prev_err = -1.0;
    for (long n = 128; n <= 8192; n *= 2) {
      const ComplexMat2 next = ordered_product(h, spec.tau, n);
      const double err = max_abs(ComplexMat2(next - prev)) / std::max(1.0, max_abs(next));
      if (err < 1e-13) break;  // roundoff floor
      if (prev_err >= 0.0) CHECK(err <= 2.0 * prev_err);
      prev_err = err;
      prev = next;
    }
  }
}
