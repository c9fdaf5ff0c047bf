#include "nhq/workstats.hpp"

#include <cmath>

#include "nhq/error.hpp"
#include "nhq/model.hpp"

namespace nhq {
namespace {

// 1 / (1 + e^x) without overflow.
double logistic_neg(double x) {
  if (x > 0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// weight * e^{exponent}, combined in log space.
double scaled_weight(double weight, double exponent) {
  if (weight <= 0.0) return 0.0;
  return std::exp(std::log(weight) + exponent);
}

}  // namespace

GibbsPrep gibbs_weights(double beta, double j_max) {
  if (!(beta >= 0.0) || !(j_max >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gibbs_weights: beta and j_max must be >= 0");
  }
  GibbsPrep prep{beta, j_max, 0.5, 0.5};
  if (j_max == 0.0 || beta == 0.0) return prep;
  const double x = 2.0 * beta * j_max;
  prep.w_plus = logistic_neg(x);
  prep.w_minus = 1.0 - prep.w_plus;
  return prep;
}

void normalize_column(TransitionMatrix& tm, int column, double plus, double minus) {
  const double total = plus + minus;
  // Larger share by division, smaller as its complement, keeps the column
  // sum at exactly one.
  if (plus >= minus) {
    tm.p[0][column] = plus / total;
    tm.p[1][column] = 1.0 - tm.p[0][column];
  } else {
    tm.p[1][column] = minus / total;
    tm.p[0][column] = 1.0 - tm.p[1][column];
  }
}

TransitionMatrix transition_probs(const ComplexMat2& g) {
  const ComplexMat2 u = pm_x_basis();
  const ComplexMat2 gx = u.adjoint() * g * u;
  TransitionMatrix tm;
  for (int j = 0; j < 2; ++j) {
    const double plus = std::norm(gx(0, j));
    const double minus = std::norm(gx(1, j));
    if (plus + minus < kMinSurvival) {
      throw Error(ErrorCode::NormalizationUnderflow,
                  "transition_probs: post-selected norm below 1e-12");
    }
    normalize_column(tm, j, plus, minus);
  }
  return tm;
}

WorkDistribution work_distribution(const TransitionMatrix& tm, const GibbsPrep& prep) {
  const double w = 2.0 * prep.j_max;
  WorkDistribution d;
  d.support = {-w, 0.0, w};
  d.probs = {tm.mp() * prep.w_plus,
             tm.pp() * prep.w_plus + tm.mm() * prep.w_minus,
             tm.pm() * prep.w_minus};
  return d;
}

JEResult exp_work_avg(const TransitionMatrix& tm, const GibbsPrep& prep) {
  const double x = 2.0 * prep.beta * prep.j_max;
  const GibbsPrep thermal = gibbs_weights(prep.beta, prep.j_max);
  double down = 0.0;  // e^{-x} w_minus
  double up = 0.0;    // e^{+x} w_plus
  if (prep.w_plus == thermal.w_plus && prep.w_minus == thermal.w_minus) {
    down = prep.w_plus;
    up = prep.w_minus;
  } else {
    down = scaled_weight(prep.w_minus, -x);
    up = scaled_weight(prep.w_plus, x);
  }
  JEResult r;
  r.value = (tm.pp() * prep.w_plus + tm.pm() * down) + (tm.mm() * prep.w_minus + tm.mp() * up);
  r.deviation = r.value - 1.0;
  const WorkDistribution d = work_distribution(tm, prep);
  r.mean_work = d.support[0] * d.probs[0] + d.support[2] * d.probs[2];
  r.asym = tm.pp() - tm.mm();
  return r;
}

std::pair<double, double> asymmetry(const TransitionMatrix& tm) {
  return {tm.pp() - tm.mm(), tm.pm() - tm.mp()};
}

}  // namespace nhq
