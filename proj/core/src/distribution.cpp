#include "spintrng/distribution.hpp"

#include <bit>
#include <cmath>

#include "spintrng/errors.hpp"

namespace spintrng {

namespace {

void check_width(std::uint32_t n_bits) {
  if (n_bits < 1 || n_bits > 24) {
    throw ConfigError("distribution: word width must be in [1, 24]");
  }
}

}  // namespace

EmpiricalDistribution make_distribution(std::uint32_t n_bits,
                                        std::vector<std::uint64_t> counts,
                                        bool exchangeable_source) {
  check_width(n_bits);
  const std::size_t support = std::size_t{1} << n_bits;
  if (counts.size() != support) {
    throw ConfigError("distribution: counts must cover all 2^N words");
  }
  EmpiricalDistribution d;
  d.n_bits = n_bits;
  d.counts = std::move(counts);
  d.exchangeable_source = exchangeable_source;
  for (auto c : d.counts) d.total_trials += c;
  if (d.total_trials == 0) {
    throw ConfigError("distribution: no trials recorded");
  }
  d.probabilities.resize(support);
  for (std::size_t w = 0; w < support; ++w) {
    d.probabilities[w] =
        static_cast<double>(d.counts[w]) / static_cast<double>(d.total_trials);
  }
  return d;
}

EmpiricalDistribution tally_words(std::uint32_t n_bits,
                                  const std::vector<std::uint32_t>& words,
                                  bool exchangeable_source) {
  check_width(n_bits);
  std::vector<std::uint64_t> counts(std::size_t{1} << n_bits, 0);
  for (auto w : words) {
    if (w >= counts.size()) {
      throw ConfigError("distribution: word exceeds 2^N - 1");
    }
    ++counts[w];
  }
  return make_distribution(n_bits, std::move(counts), exchangeable_source);
}

EmpiricalDistribution estimate_distribution(const EmpiricalDistribution& dist,
                                            bool symmetrize) {
  if (dist.total_trials == 0) {
    throw ConfigError("estimate_distribution: empty distribution");
  }
  EmpiricalDistribution out = dist;
  if (!symmetrize) {
    out.symmetrized = false;
    const auto total = static_cast<double>(dist.total_trials);
    for (std::size_t w = 0; w < dist.counts.size(); ++w) {
      out.probabilities[w] = static_cast<double>(dist.counts[w]) / total;
    }
    return out;
  }
  if (!dist.exchangeable_source) {
    throw ConfigError(
        "estimate_distribution: Hamming-weight symmetrization requires "
        "identical devices");
  }
  // Pool counts by Hamming weight, then split each pool evenly over the
  // C(N, k) words of that weight.
  const std::uint32_t n = dist.n_bits;
  std::vector<double> weight_freq(n + 1, 0.0);
  for (std::size_t w = 0; w < dist.counts.size(); ++w) {
    weight_freq[std::popcount(static_cast<std::uint32_t>(w))] +=
        static_cast<double>(dist.counts[w]);
  }
  std::vector<double> binom(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k) {
    binom[k] = k == 0 ? 1.0 : binom[k - 1] * (n - k + 1) / k;
  }
  const auto total = static_cast<double>(dist.total_trials);
  for (std::size_t w = 0; w < dist.counts.size(); ++w) {
    const auto k = std::popcount(static_cast<std::uint32_t>(w));
    out.probabilities[w] = weight_freq[k] / (total * binom[k]);
  }
  out.symmetrized = true;
  return out;
}

}  // namespace spintrng
