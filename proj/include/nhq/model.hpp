#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <variant>

#include "nhq/qmath.hpp"

namespace nhq {

/// Decay and dephasing rates in 1/us.
struct Rates {
  double gamma_e = 0.0;
  double gamma_f = 0.0;
  double gamma_2e = 0.0;
  double gamma_2f = 0.0;

  /// Decay contrast gamma_e - gamma_f, the strength of the i(gamma/4) sz term.
  double gamma() const { return gamma_e - gamma_f; }

  /// Throws Error{InvalidArgument} on a negative rate or negative contrast.
  void validate() const;

  /// Measured transmon rates including dephasing ("full physics").
  static Rates full_physics() { return {1.57, 0.21, 1.631, 0.584}; }
  /// Radiative decay of |e> only.
  static Rates ideal() { return {1.57, 0.0, 0.0, 0.0}; }
  static Rates none() { return {}; }
};

/// J(t) = (Jmax + Jmin)/2 + (Jmax - Jmin)/2 cos(2 pi t / tau), Delta = 0.
/// j_min > j_max is allowed (path that starts below the EP).
struct JSweep {
  double j_max = 0.0;
  double j_min = 0.0;
};

/// Delta(t) = delta_max sin(pi t / tau), J = j_max.
struct DeltaHalfSine {
  double j_max = 0.0;
  double delta_max = 0.0;
};

/// Delta(t) = delta_max sin(2 pi t / tau), J = j_max.
struct DeltaFullSine {
  double j_max = 0.0;
  double delta_max = 0.0;
};

using PathVariant = std::variant<JSweep, DeltaHalfSine, DeltaFullSine>;

struct PathSpec {
  PathVariant variant;
  double tau = 1.0;  // us

  double j_max() const;
  /// True when H(t) does not depend on t.
  bool is_static() const;
  std::string_view name() const;
  void validate() const;

  PathSpec with_tau(double t) const { return PathSpec{variant, t}; }
};

/// Instantaneous drive parameters, rad/us.
struct DriveSample {
  double j = 0.0;
  double delta = 0.0;
};

/// Throws Error{OutOfRange} for t outside [0, tau].
DriveSample eval_path(const PathSpec& spec, double t);

/// H_eff = J sx + Delta |f><f| + i (gamma/4) sz with gamma = gamma_e - gamma_f:
/// [[-i gamma/4, J], [J, Delta + i gamma/4]].
ComplexMat2 build_heff(const DriveSample& d, const Rates& rates);

/// lambda_pm = +-sqrt(J^2 - (gamma/4)^2), principal root; returned as
/// (-root, +root).
std::pair<Complex, Complex> static_eigvals(double j, const Rates& rates);

/// How the detuning enters the qutrit drive Hamiltonian. Symmetric is
/// -(Delta/2)(|e><e| - |f><f|); FLevel is Delta |f><f|. The two differ by
/// (Delta/2) I on the (e, f) block.
enum class DetuningConvention { Symmetric, FLevel };

struct LindbladSnapshot {
  ComplexMat3 h_c;
  /// sqrt(ge)|g><e|, sqrt(gf)|e><f|, sqrt(g2e/2)|e><e|, sqrt(g2f/2)|f><f|.
  std::array<ComplexMat3, 4> jumps;
};

/// Qutrit indices.
inline constexpr int kG = 0;
inline constexpr int kE = 1;
inline constexpr int kF = 2;

LindbladSnapshot build_lindblad(const DriveSample& d, const Rates& rates,
                                DetuningConvention convention = DetuningConvention::Symmetric);

}  // namespace nhq

namespace nhq {

/// Columns are |+x> = (|f> + |e>)/sqrt2 and |-x> = (|f> - |e>)/sqrt2 in (e, f)
/// coordinates; the eigenbasis of H(0) = Jmax sx with energies +Jmax, -Jmax.
ComplexMat2 pm_x_basis();

}  // namespace nhq
