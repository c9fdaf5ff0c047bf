#include "nhq/model.hpp"

#include <cmath>
#include <numbers>

#include "nhq/error.hpp"

namespace nhq {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

void Rates::validate() const {
  if (gamma_e < 0 || gamma_f < 0 || gamma_2e < 0 || gamma_2f < 0) {
    throw Error(ErrorCode::InvalidArgument, "rates must be non-negative");
  }
  if (gamma() < 0) {
    throw Error(ErrorCode::InvalidArgument, "decay contrast gamma_e - gamma_f must be >= 0");
  }
}

double PathSpec::j_max() const {
  return std::visit([](const auto& p) { return p.j_max; }, variant);
}

bool PathSpec::is_static() const {
  return std::visit(Overloaded{
                        [](const JSweep& p) { return p.j_max == p.j_min; },
                        [](const DeltaHalfSine& p) { return p.delta_max == 0.0; },
                        [](const DeltaFullSine& p) { return p.delta_max == 0.0; },
                    },
                    variant);
}

std::string_view PathSpec::name() const {
  return std::visit(Overloaded{
                        [](const JSweep&) { return std::string_view("jsweep"); },
                        [](const DeltaHalfSine&) { return std::string_view("delta1"); },
                        [](const DeltaFullSine&) { return std::string_view("delta2"); },
                    },
                    variant);
}

void PathSpec::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "path duration tau must be positive");
  }
  const bool ok = std::visit(Overloaded{
                                 [](const JSweep& p) { return p.j_max >= 0 && p.j_min >= 0; },
                                 [](const DeltaHalfSine& p) { return p.j_max >= 0; },
                                 [](const DeltaFullSine& p) { return p.j_max >= 0; },
                             },
                             variant);
  if (!ok) {
    throw Error(ErrorCode::InvalidArgument, "path couplings must be non-negative");
  }
}

DriveSample eval_path(const PathSpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.tau)) {
    throw Error(ErrorCode::OutOfRange, "eval_path: t outside [0, tau]");
  }
  using std::numbers::pi;
  const double phase = t / spec.tau;
  return std::visit(
      Overloaded{
          [&](const JSweep& p) {
            const double mean = 0.5 * (p.j_max + p.j_min);
            const double amp = 0.5 * (p.j_max - p.j_min);
            return DriveSample{mean + amp * std::cos(2.0 * pi * phase), 0.0};
          },
          [&](const DeltaHalfSine& p) {
            return DriveSample{p.j_max, p.delta_max * std::sin(pi * phase)};
          },
          [&](const DeltaFullSine& p) {
            return DriveSample{p.j_max, p.delta_max * std::sin(2.0 * pi * phase)};
          },
      },
      spec.variant);
}

ComplexMat2 build_heff(const DriveSample& d, const Rates& rates) {
  const double quarter = rates.gamma() / 4.0;
  ComplexMat2 h;
  h << Complex(0.0, -quarter), d.j,
       d.j, Complex(d.delta, quarter);
  return h;
}

std::pair<Complex, Complex> static_eigvals(double j, const Rates& rates) {
  const double quarter = rates.gamma() / 4.0;
  const Complex root = std::sqrt(Complex(j * j - quarter * quarter, 0.0));
  return {-root, root};
}

LindbladSnapshot build_lindblad(const DriveSample& d, const Rates& rates,
                                DetuningConvention convention) {
  LindbladSnapshot s;
  s.h_c.setZero();
  s.h_c(kE, kF) = d.j;
  s.h_c(kF, kE) = d.j;
  if (convention == DetuningConvention::Symmetric) {
    s.h_c(kE, kE) = -0.5 * d.delta;
    s.h_c(kF, kF) = 0.5 * d.delta;
  } else {
    s.h_c(kF, kF) = d.delta;
  }

  for (auto& l : s.jumps) l.setZero();
  s.jumps[0](kG, kE) = std::sqrt(rates.gamma_e);
  s.jumps[1](kE, kF) = std::sqrt(rates.gamma_f);
  s.jumps[2](kE, kE) = std::sqrt(rates.gamma_2e / 2.0);
  s.jumps[3](kF, kF) = std::sqrt(rates.gamma_2f / 2.0);
  return s;
}

}  // namespace nhq

namespace nhq {

ComplexMat2 pm_x_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexMat2 u;
  u << r, -r,
       r, r;
  return u;
}

}  // namespace nhq
