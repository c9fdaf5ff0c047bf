#include "nhq/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "nhq/lindblad.hpp"

namespace nhq::harness {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

TransitionMatrix engine_transition(const PathSpec& spec, const Rates& rates,
                                   const EngineOptions& opts) {
  switch (opts.engine) {
    case Engine::NonHermitian:
      return transition_probs(propagate(spec, rates, opts.slices_tol).g);
    case Engine::LindbladIdeal:
      return oracle_transition_probs(spec, Rates{rates.gamma_e, 0.0, 0.0, 0.0}, opts.lindblad_dt);
    case Engine::LindbladFull:
      return oracle_transition_probs(spec, rates, opts.lindblad_dt);
  }
  return TransitionMatrix::identity();
}

SweepPoint evaluate_point(const PathSpec& spec, const Rates& rates, const GibbsPrep& prep,
                          const EngineOptions& opts) {
  SweepPoint pt;
  pt.tau = spec.tau;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    if (opts.engine == Engine::NonHermitian) {
      const Propagator p = propagate(spec, rates, opts.slices_tol);
      pt.tm = transition_probs(p.g);
      pt.je = exp_work_avg(pt.tm, prep);
      const FloquetDecomp f = floquet(p);
      pt.pt_class = f.classification.kind;
      pt.je_condition = je_condition(f);
    } else {
      pt.tm = engine_transition(spec, rates, opts);
      pt.je = exp_work_avg(pt.tm, prep);
    }
  } catch (const Error& e) {
    pt.error = e.code();
    if (e.code() != ErrorCode::Defective && e.code() != ErrorCode::Singular) {
      pt.tm.p = {{{nan, nan}, {nan, nan}}};
      pt.je = JEResult{nan, nan, nan, nan};
    }
  }
  return pt;
}

std::vector<SweepPoint> run_tau_sweep(const PathSpec& family, const Rates& rates,
                                      const GibbsPrep& prep, const std::vector<double>& taus,
                                      const EngineOptions& opts) {
  if (taus.empty()) throw Error(ErrorCode::InvalidArgument, "run_tau_sweep: empty tau grid");
  if (!std::is_sorted(taus.begin(), taus.end())) {
    throw Error(ErrorCode::InvalidArgument, "run_tau_sweep: tau grid must be ascending");
  }
  std::vector<SweepPoint> out(taus.size());
  parallel_for(taus.size(), [&](std::size_t i) {
    out[i] = evaluate_point(family.with_tau(taus[i]), rates, prep, opts);
  });
  return out;
}

SweepGrid run_grid_sweep(double j_max, const std::vector<double>& deltas,
                         const std::vector<double>& taus, const Rates& rates,
                         const GibbsPrep& prep, const EngineOptions& opts) {
  if (deltas.empty() || taus.empty()) {
    throw Error(ErrorCode::InvalidArgument, "run_grid_sweep: empty grid");
  }
  if (taus.front() <= 0.0) throw Error(ErrorCode::InvalidArgument, "run_grid_sweep: tau must be > 0");

  SweepGrid g;
  g.j_max = j_max;
  g.deltas = deltas;
  g.taus = taus;
  g.values.assign(deltas.size(), std::vector<double>(taus.size()));
  g.errors.assign(deltas.size(), std::vector<std::optional<ErrorCode>>(taus.size()));
  const std::size_t cols = taus.size();
  parallel_for(deltas.size() * cols, [&](std::size_t k) {
    const std::size_t i = k / cols;
    const std::size_t j = k % cols;
    EngineOptions node_opts = opts;
    const PathSpec spec{DeltaFullSine{j_max, deltas[i]}, taus[j]};
    try {
      g.values[i][j] = exp_work_avg(engine_transition(spec, rates, node_opts), prep).value;
    } catch (const Error& e) {
      g.values[i][j] = std::numeric_limits<double>::quiet_NaN();
      g.errors[i][j] = e.code();
    }
  });
  return g;
}

}  // namespace nhq::harness
