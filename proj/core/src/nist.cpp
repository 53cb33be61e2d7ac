#include "spintrng/nist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "spintrng/errors.hpp"

namespace spintrng {

namespace {

// Regularized upper incomplete gamma Q(a, x), the standard's igamc.
double igamc(double a, double x) { return boost::math::gamma_q(a, x); }

// Standard normal CDF.
double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

void require_length(std::size_t n, std::size_t minimum, const char* test,
                    const NistParams& params) {
  if (params.enforce_minimums && n < minimum) {
    throw ConfigError(std::string(test) + ": input shorter than the minimum " +
                      std::to_string(minimum) + " bits");
  }
  if (n == 0) throw ConfigError(std::string(test) + ": empty input");
}

// Count of each overlapping m-bit pattern with cyclic wrap-around; returns
// the dense 2^m count table.
std::vector<std::uint64_t> cyclic_pattern_counts(
    std::span<const std::uint8_t> bits, int m) {
  const std::size_t n = bits.size();
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t pattern = 0;
    for (int j = 0; j < m; ++j) {
      pattern = (pattern << 1) | bits[(i + j) % n];
    }
    ++counts[pattern];
  }
  return counts;
}

// psi^2 statistic of the Serial test; zero for m <= 0.
double psi_squared(std::span<const std::uint8_t> bits, int m) {
  if (m <= 0) return 0.0;
  const auto counts = cyclic_pattern_counts(bits, m);
  const double n = static_cast<double>(bits.size());
  double sum = 0.0;
  for (auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
  return std::ldexp(1.0, m) / n * sum - n;
}

// phi_m of the Approximate Entropy test: sum (c/n) ln(c/n).
double apen_phi(std::span<const std::uint8_t> bits, int m) {
  const auto counts = cyclic_pattern_counts(bits, m);
  const double n = static_cast<double>(bits.size());
  double sum = 0.0;
  for (auto c : counts) {
    if (c > 0) {
      const double f = static_cast<double>(c) / n;
      sum += f * std::log(f);
    }
  }
  return sum;
}

}  // namespace

std::string_view nist_test_name(NistTest t) {
  switch (t) {
    case NistTest::frequency: return "frequency";
    case NistTest::block_frequency: return "block-frequency";
    case NistTest::runs: return "runs";
    case NistTest::longest_run: return "longest-run";
    case NistTest::serial1: return "serial-1";
    case NistTest::serial2: return "serial-2";
    case NistTest::approximate_entropy: return "approximate-entropy";
    case NistTest::cusum_forward: return "cusum-forward";
    case NistTest::cusum_reverse: return "cusum-reverse";
  }
  return "unknown";
}

NistTest nist_test_from_name(std::string_view name) {
  for (NistTest t : all_nist_tests) {
    if (nist_test_name(t) == name) return t;
  }
  throw ConfigError("unknown test name: " + std::string(name));
}

double nist_frequency(std::span<const std::uint8_t> bits,
                      const NistParams& params) {
  require_length(bits.size(), 100, "frequency", params);
  long s = 0;
  for (auto b : bits) s += b ? 1 : -1;
  const double s_obs =
      std::fabs(static_cast<double>(s)) / std::sqrt(static_cast<double>(bits.size()));
  return std::erfc(s_obs / std::numbers::sqrt2);
}

double nist_block_frequency(std::span<const std::uint8_t> bits,
                            const NistParams& params) {
  require_length(bits.size(), 100, "block-frequency", params);
  const int m = params.block_frequency_m;
  if (m < 1) throw ConfigError("block-frequency: block size must be positive");
  const std::size_t n_blocks = bits.size() / static_cast<std::size_t>(m);
  if (n_blocks == 0) {
    throw ConfigError("block-frequency: input shorter than one block");
  }
  double chi = 0.0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
      ones += bits[b * m + j];
    }
    const double pi = static_cast<double>(ones) / m;
    chi += (pi - 0.5) * (pi - 0.5);
  }
  chi *= 4.0 * m;
  return igamc(static_cast<double>(n_blocks) / 2.0, chi / 2.0);
}

double nist_runs(std::span<const std::uint8_t> bits, const NistParams& params) {
  require_length(bits.size(), 100, "runs", params);
  const double n = static_cast<double>(bits.size());
  std::size_t ones = 0;
  for (auto b : bits) ones += b;
  const double pi = static_cast<double>(ones) / n;
  // Frequency pre-test: heavily biased input short-circuits to P = 0.
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
  std::uint64_t v = 1;
  for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
    if (bits[i] != bits[i + 1]) ++v;
  }
  const double num = std::fabs(static_cast<double>(v) - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
  return std::erfc(num / den);
}

double nist_longest_run(std::span<const std::uint8_t> bits,
                        const NistParams& params) {
  // This test defines its own minimum (128) independent of the flag: the
  // class probabilities below are undefined for shorter input.
  const std::size_t n = bits.size();
  require_length(n, 128, "longest-run", params);
  if (n < 128) {
    throw ConfigError("longest-run: input shorter than the minimum 128 bits");
  }
  int m = 0;
  std::vector<int> classes;
  std::vector<double> pi;
  if (n < 6272) {
    m = 8;
    classes = {1, 2, 3, 4};  // v <= 1, 2, 3, >= 4
    pi = {0.2148, 0.3672, 0.2305, 0.1875};
  } else if (n < 750000) {
    m = 128;
    classes = {4, 5, 6, 7, 8, 9};  // v <= 4, 5..8, >= 9
    pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
  } else {
    m = 10000;
    classes = {10, 11, 12, 13, 14, 15, 16};  // v <= 10, ..., >= 16
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  }
  const std::size_t n_blocks = n / static_cast<std::size_t>(m);
  std::vector<std::uint64_t> nu(pi.size(), 0);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    int longest = 0;
    int current = 0;
    for (int j = 0; j < m; ++j) {
      if (bits[b * m + j]) {
        ++current;
        longest = std::max(longest, current);
      } else {
        current = 0;
      }
    }
    std::size_t k = 0;
    while (k + 1 < classes.size() && longest > classes[k]) ++k;
    ++nu[k];
  }
  double chi = 0.0;
  for (std::size_t k = 0; k < pi.size(); ++k) {
    const double expected = static_cast<double>(n_blocks) * pi[k];
    const double d = static_cast<double>(nu[k]) - expected;
    chi += d * d / expected;
  }
  const auto df = static_cast<double>(pi.size() - 1);
  return igamc(df / 2.0, chi / 2.0);
}

std::pair<double, double> nist_serial(std::span<const std::uint8_t> bits,
                                      const NistParams& params) {
  const int m = params.serial_m;
  if (m < 2) throw ConfigError("serial: pattern length must be >= 2");
  require_length(bits.size(), std::size_t{1} << (m + 3), "serial", params);
  const double psi_m = psi_squared(bits, m);
  const double psi_m1 = psi_squared(bits, m - 1);
  const double psi_m2 = psi_squared(bits, m - 2);
  const double d1 = psi_m - psi_m1;
  const double d2 = psi_m - 2.0 * psi_m1 + psi_m2;
  const double p1 = igamc(std::ldexp(1.0, m - 2), d1 / 2.0);
  const double p2 = igamc(std::ldexp(1.0, m - 3), d2 / 2.0);
  return {p1, p2};
}

double nist_approximate_entropy(std::span<const std::uint8_t> bits,
                                const NistParams& params) {
  const int m = params.apen_m;
  if (m < 1) throw ConfigError("approximate-entropy: m must be >= 1");
  require_length(bits.size(), std::size_t{1} << (m + 5), "approximate-entropy",
                 params);
  const double n = static_cast<double>(bits.size());
  const double apen = apen_phi(bits, m) - apen_phi(bits, m + 1);
  const double chi = 2.0 * n * (std::numbers::ln2 - apen);
  return igamc(std::ldexp(1.0, m - 1), chi / 2.0);
}

std::pair<double, double> nist_cusum(std::span<const std::uint8_t> bits,
                                     const NistParams& params) {
  require_length(bits.size(), 100, "cusum", params);
  const auto n = static_cast<double>(bits.size());
  const double sqn = std::sqrt(n);
  const auto p_value = [&](double z) {
    double t1 = 0.0;
    for (long k = static_cast<long>(std::floor((-n / z + 1.0) / 4.0));
         k <= static_cast<long>(std::floor((n / z - 1.0) / 4.0)); ++k) {
      t1 += phi_cdf((4.0 * k + 1.0) * z / sqn) -
            phi_cdf((4.0 * k - 1.0) * z / sqn);
    }
    double t2 = 0.0;
    for (long k = static_cast<long>(std::floor((-n / z - 3.0) / 4.0));
         k <= static_cast<long>(std::floor((n / z - 1.0) / 4.0)); ++k) {
      t2 += phi_cdf((4.0 * k + 3.0) * z / sqn) -
            phi_cdf((4.0 * k + 1.0) * z / sqn);
    }
    return 1.0 - t1 + t2;
  };
  const auto max_excursion = [&](bool reverse) {
    long s = 0;
    long z = 0;
    const std::size_t len = bits.size();
    for (std::size_t i = 0; i < len; ++i) {
      const auto b = bits[reverse ? len - 1 - i : i];
      s += b ? 1 : -1;
      z = std::max(z, std::labs(s));
    }
    return static_cast<double>(z);
  };
  return {p_value(max_excursion(false)), p_value(max_excursion(true))};
}

double nist_test(NistTest test, std::span<const std::uint8_t> bits,
                 const NistParams& params) {
  switch (test) {
    case NistTest::frequency: return nist_frequency(bits, params);
    case NistTest::block_frequency: return nist_block_frequency(bits, params);
    case NistTest::runs: return nist_runs(bits, params);
    case NistTest::longest_run: return nist_longest_run(bits, params);
    case NistTest::serial1: return nist_serial(bits, params).first;
    case NistTest::serial2: return nist_serial(bits, params).second;
    case NistTest::approximate_entropy:
      return nist_approximate_entropy(bits, params);
    case NistTest::cusum_forward: return nist_cusum(bits, params).first;
    case NistTest::cusum_reverse: return nist_cusum(bits, params).second;
  }
  throw ConfigError("nist_test: unknown test id");
}

double uniformity_p_value(std::span<const double> p_values) {
  if (p_values.empty()) throw ConfigError("uniformity: no P-values");
  constexpr int bins = 10;
  std::array<std::uint64_t, bins> freq{};
  for (double p : p_values) {
    auto b = static_cast<int>(p * bins);
    b = std::clamp(b, 0, bins - 1);  // p = 1.0 falls into the last bin
    ++freq[static_cast<std::size_t>(b)];
  }
  const double expected = static_cast<double>(p_values.size()) / bins;
  double chi = 0.0;
  for (auto f : freq) {
    const double d = static_cast<double>(f) - expected;
    chi += d * d / expected;
  }
  return igamc((bins - 1) / 2.0, chi / 2.0);
}

NistSuiteResult run_suite(const Bitstream& stream, std::uint64_t n_sequences,
                          std::uint64_t sequence_length,
                          const SuiteThresholds& thresholds,
                          const NistParams& params) {
  if (n_sequences < 55) {
    throw ConfigError(
        "run_suite: need at least 55 sequences for a valid uniformity "
        "P-value");
  }
  if (stream.n_bits < n_sequences * sequence_length) {
    throw ConfigError("run_suite: stream holds fewer bits than requested");
  }
  NistSuiteResult result;
  result.n_sequences = n_sequences;
  result.sequence_length = sequence_length;
  result.params = params;
  result.thresholds = thresholds;
  for (NistTest t : all_nist_tests) {
    NistTestResult r;
    r.test = t;
    r.name = std::string(nist_test_name(t));
    r.p_values.reserve(n_sequences);
    result.tests.push_back(std::move(r));
  }

  std::vector<std::uint8_t> bits(sequence_length);
  for (std::uint64_t s = 0; s < n_sequences; ++s) {
    const std::uint64_t base = s * sequence_length;
    for (std::uint64_t i = 0; i < sequence_length; ++i) {
      bits[i] = static_cast<std::uint8_t>(stream.bit(base + i));
    }
    // Serial and Cusum share work between their paired P-values.
    const auto serial = nist_serial(bits, params);
    const auto cusum = nist_cusum(bits, params);
    for (auto& r : result.tests) {
      switch (r.test) {
        case NistTest::serial1: r.p_values.push_back(serial.first); break;
        case NistTest::serial2: r.p_values.push_back(serial.second); break;
        case NistTest::cusum_forward: r.p_values.push_back(cusum.first); break;
        case NistTest::cusum_reverse: r.p_values.push_back(cusum.second); break;
        default: r.p_values.push_back(nist_test(r.test, bits, params));
      }
    }
  }

  result.pass = true;
  for (auto& r : result.tests) {
    std::uint64_t passed = 0;
    for (double p : r.p_values) {
      if (p >= thresholds.per_sequence_alpha) ++passed;
    }
    r.success_rate =
        static_cast<double>(passed) / static_cast<double>(n_sequences);
    r.uniformity_p = uniformity_p_value(r.p_values);
    r.pass = r.uniformity_p >= thresholds.uniformity_p_min &&
             r.success_rate >= thresholds.success_rate_min;
    result.pass = result.pass && r.pass;
  }
  return result;
}

}  // namespace spintrng
