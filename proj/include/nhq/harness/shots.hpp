#pragma once

#include <array>
#include <cstdint>

#include "nhq/lindblad.hpp"
#include "nhq/workstats.hpp"

namespace nhq::harness {

/// Counter-based uniform variate in [0, 1): a SplitMix64 finalizer applied
/// to (seed, stream, index). Every (preparation, shot) pair owns its own
/// value, so results do not depend on evaluation order.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct ShotCounts {
  long n_g = 0;
  long n_plus = 0;
  long n_minus = 0;

  long kept() const { return n_plus + n_minus; }
};

/// Simulated single-shot readout for the two preparations (+x at index 0,
/// -x at index 1), post-selected on not finding |g>.
struct ShotEnsemble {
  std::uint64_t seed = 0;
  long n_per_prep = 0;
  std::array<ShotCounts, 2> counts{};
  /// n_g / n per preparation.
  std::array<double, 2> discard_per_prep{};
  /// Discard fractions weighted by the Gibbs preparation weights.
  double discard_fraction = 0.0;
  TransitionMatrix p_hat;
  /// sqrt(p (1 - p) / n_kept) for every entry of p_hat.
  std::array<std::array<double, 2>, 2> se{};
};

/// Draws n trinomial outcomes per preparation from `truth`. Throws
/// Error{AllDiscarded} when a preparation keeps no shot.
ShotEnsemble sample_shots(const std::array<ReadoutProbs, 2>& truth, const GibbsPrep& prep, long n,
                          std::uint64_t seed);

}  // namespace nhq::harness
