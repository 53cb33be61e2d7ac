#pragma once

#include <cstdint>

#include "spintrng/distribution.hpp"

namespace spintrng {

// Shannon entropy per word, -sum p log2 p with 0 log 0 = 0.  In [0, N].
double shannon_entropy(const EmpiricalDistribution& dist);

// Min-entropy per word, -log2 max p.  Always <= shannon_entropy.
double min_entropy(const EmpiricalDistribution& dist);

struct EntropyReport {
  double shannon_per_word = 0.0;
  double min_entropy_per_word = 0.0;
  double shannon_per_bit = 0.0;
  double min_per_bit = 0.0;
  // Nonparametric bootstrap standard error of shannon_per_word.
  double bootstrap_stderr = 0.0;
};

// Point estimates (optionally Hamming-weight symmetrized) plus a bootstrap
// standard error over `resamples` multinomial resamples of the trial words.
EntropyReport make_entropy_report(const EmpiricalDistribution& dist,
                                  bool symmetrize, int resamples = 200,
                                  std::uint64_t seed = 0);

}  // namespace spintrng
