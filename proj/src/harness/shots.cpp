#include "nhq/harness/shots.hpp"

#include <cmath>

#include "nhq/error.hpp"

namespace nhq::harness {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(stream));
  const std::uint64_t bits = splitmix64(key + index * kGolden);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ShotEnsemble sample_shots(const std::array<ReadoutProbs, 2>& truth, const GibbsPrep& prep, long n,
                          std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample_shots: need n >= 1");
  ShotEnsemble ens;
  ens.seed = seed;
  ens.n_per_prep = n;
  for (std::size_t j = 0; j < 2; ++j) {
    const ReadoutProbs& r = truth[j];
    const double total = r.p_g + r.p_plus + r.p_minus;
    const double cut_g = r.p_g / total;
    const double cut_plus = (r.p_g + r.p_plus) / total;
    ShotCounts& c = ens.counts[j];
    for (long s = 0; s < n; ++s) {
      const double u = counter_uniform(seed, j, static_cast<std::uint64_t>(s));
      if (u < cut_g) {
        ++c.n_g;
      } else if (u < cut_plus) {
        ++c.n_plus;
      } else {
        ++c.n_minus;
      }
    }
    if (c.kept() == 0) {
      throw Error(ErrorCode::AllDiscarded, "sample_shots: every shot projected onto |g>");
    }
    ens.discard_per_prep[j] = static_cast<double>(c.n_g) / static_cast<double>(n);
    normalize_column(ens.p_hat, static_cast<int>(j), static_cast<double>(c.n_plus),
                     static_cast<double>(c.n_minus));
    for (std::size_t i = 0; i < 2; ++i) {
      const double p = ens.p_hat.p[i][j];
      ens.se[i][j] = std::sqrt(p * (1.0 - p) / static_cast<double>(c.kept()));
    }
  }
  ens.discard_fraction = prep.w_plus * ens.discard_per_prep[0] + prep.w_minus * ens.discard_per_prep[1];
  return ens;
}

}  // namespace nhq::harness
