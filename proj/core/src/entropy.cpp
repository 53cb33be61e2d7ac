#include "spintrng/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "spintrng/errors.hpp"
#include "spintrng/rng.hpp"

namespace spintrng {

double shannon_entropy(const EmpiricalDistribution& dist) {
  double h = 0.0;
  for (double p : dist.probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double min_entropy(const EmpiricalDistribution& dist) {
  const double p_max =
      *std::max_element(dist.probabilities.begin(), dist.probabilities.end());
  if (!(p_max > 0.0)) throw ConfigError("min_entropy: empty distribution");
  // max() also normalizes the -0.0 that -log2(1.0) would produce.
  return std::max(0.0, -std::log2(p_max));
}

EntropyReport make_entropy_report(const EmpiricalDistribution& dist,
                                  bool symmetrize, int resamples,
                                  std::uint64_t seed) {
  const EmpiricalDistribution est = estimate_distribution(dist, symmetrize);
  EntropyReport rep;
  rep.shannon_per_word = shannon_entropy(est);
  rep.min_entropy_per_word = min_entropy(est);
  rep.shannon_per_bit = rep.shannon_per_word / dist.n_bits;
  rep.min_per_bit = rep.min_entropy_per_word / dist.n_bits;
  if (resamples < 2) return rep;

  // Multinomial bootstrap from the raw counts: draw total_trials words per
  // resample via inverse-CDF on the cumulative counts, re-estimate with the
  // same mode, and take the sample standard deviation of the replicates.
  std::vector<std::uint64_t> cumulative(dist.counts.size());
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < dist.counts.size(); ++w) {
    acc += dist.counts[w];
    cumulative[w] = acc;
  }
  std::vector<double> replicates;
  replicates.reserve(resamples);
  std::vector<std::uint64_t> counts(dist.counts.size());
  for (int r = 0; r < resamples; ++r) {
    TrialRng rng(seed, SeedDomain::bootstrap, static_cast<std::uint64_t>(r));
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t k = 0; k < dist.total_trials; ++k) {
      const auto u = static_cast<std::uint64_t>(
          rng.uniform01() * static_cast<double>(dist.total_trials));
      const auto it =
          std::upper_bound(cumulative.begin(), cumulative.end(), u);
      ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    EmpiricalDistribution boot = dist;
    boot.counts = counts;
    boot.total_trials = dist.total_trials;
    replicates.push_back(
        shannon_entropy(estimate_distribution(boot, symmetrize)));
  }
  double mean = 0.0;
  for (double h : replicates) mean += h;
  mean /= static_cast<double>(replicates.size());
  double var = 0.0;
  for (double h : replicates) var += (h - mean) * (h - mean);
  var /= static_cast<double>(replicates.size() - 1);
  rep.bootstrap_stderr = std::sqrt(var);
  return rep;
}

}  // namespace spintrng
