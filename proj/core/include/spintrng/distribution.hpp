#pragma once

#include <cstdint>
#include <vector>

namespace spintrng {

// Empirical N-bit output-word distribution.  counts/probabilities are dense,
// indexed by word value (size 2^n_bits).
struct EmpiricalDistribution {
  std::uint32_t n_bits = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total_trials = 0;
  std::vector<double> probabilities;
  bool symmetrized = false;
  // Whether the generating devices were identical (prerequisite for
  // Hamming-weight symmetrization).
  bool exchangeable_source = true;
};

// Builds a raw (count/total) distribution; validates sizes.
EmpiricalDistribution make_distribution(std::uint32_t n_bits,
                                        std::vector<std::uint64_t> counts,
                                        bool exchangeable_source = true);

// Tallies a word sequence.
EmpiricalDistribution tally_words(std::uint32_t n_bits,
                                  const std::vector<std::uint32_t>& words,
                                  bool exchangeable_source = true);

// Probability re-estimation.  With symmetrize (identical devices only --
// throws ConfigError otherwise), pools words of equal Hamming weight:
// p(word) = freq(hw(word)) / C(N, hw(word)).
EmpiricalDistribution estimate_distribution(const EmpiricalDistribution& dist,
                                            bool symmetrize);

}  // namespace spintrng
