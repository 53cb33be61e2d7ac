#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spintrng/whitening.hpp"

// The nine statistical tests of the NIST SP 800-22 battery that apply at
// 2^20 total bits, plus the 1024x1024 suite protocol: per-sequence P-values,
// per-test proportion of passes at alpha = 0.01, and a 10-bin chi-square
// P-value uniformity check.
//
// Inputs are unpacked bit arrays (one 0/1 value per byte).  Default block
// parameters are tuned for 1024-bit sequences: Block Frequency M = 128,
// Serial m = 3, Approximate Entropy m = 2, Longest Run uses its n >= 128
// class set.  Serial uses m = 3 rather than the smallest legal m because at
// m = 2 the second serial statistic takes so few distinct values on 1024-bit
// input that its P-values cannot fill the upper deciles; the 10-bin
// uniformity check then rejects even an ideal generator.  m = 3 stays within
// the standard's m < log2(n) - 2 guidance.

namespace spintrng {

enum class NistTest {
  frequency,
  block_frequency,
  runs,
  longest_run,
  serial1,
  serial2,
  approximate_entropy,
  cusum_forward,
  cusum_reverse,
};

inline constexpr std::array<NistTest, 9> all_nist_tests = {
    NistTest::frequency,       NistTest::block_frequency,
    NistTest::runs,            NistTest::longest_run,
    NistTest::serial1,         NistTest::serial2,
    NistTest::approximate_entropy, NistTest::cusum_forward,
    NistTest::cusum_reverse,
};

std::string_view nist_test_name(NistTest t);

// Parses the names produced by nist_test_name; throws ConfigError otherwise.
NistTest nist_test_from_name(std::string_view name);

struct NistParams {
  int block_frequency_m = 128;
  int serial_m = 3;
  int apen_m = 2;
  // The standard's recommended minimum input sizes are enforced by default;
  // disabling this permits the standard's own short worked examples.
  bool enforce_minimums = true;
};

// Individual tests.  All return per-sequence P-values in [0, 1] and throw
// ConfigError (naming the minimum) on too-short input when minimums are
// enforced.
double nist_frequency(std::span<const std::uint8_t> bits,
                      const NistParams& params = {});
double nist_block_frequency(std::span<const std::uint8_t> bits,
                            const NistParams& params = {});
double nist_runs(std::span<const std::uint8_t> bits,
                 const NistParams& params = {});
double nist_longest_run(std::span<const std::uint8_t> bits,
                        const NistParams& params = {});
// First and second serial P-values (shared pattern-count computation).
std::pair<double, double> nist_serial(std::span<const std::uint8_t> bits,
                                      const NistParams& params = {});
double nist_approximate_entropy(std::span<const std::uint8_t> bits,
                                const NistParams& params = {});
// Forward and reverse cumulative-sums P-values.
std::pair<double, double> nist_cusum(std::span<const std::uint8_t> bits,
                                     const NistParams& params = {});

// Uniform dispatch by test id.
double nist_test(NistTest test, std::span<const std::uint8_t> bits,
                 const NistParams& params = {});

// Chi-square uniformity of a P-value sample over 10 equal bins.
double uniformity_p_value(std::span<const double> p_values);

struct SuiteThresholds {
  double per_sequence_alpha = 0.01;
  double uniformity_p_min = 1e-4;
  double success_rate_min = 1004.0 / 1024.0;
};

struct NistTestResult {
  NistTest test{};
  std::string name;
  double uniformity_p = 0.0;
  double success_rate = 0.0;
  bool pass = false;
  std::vector<double> p_values;  // one per sequence
};

struct NistSuiteResult {
  std::vector<NistTestResult> tests;
  bool pass = false;
  std::uint64_t n_sequences = 0;
  std::uint64_t sequence_length = 0;
  NistParams params;
  SuiteThresholds thresholds;
};

// Slices the stream into n_sequences x sequence_length bits and applies all
// nine tests.  Requires at least 55 sequences (uniformity validity) and
// enough bits.
NistSuiteResult run_suite(const Bitstream& stream, std::uint64_t n_sequences,
                          std::uint64_t sequence_length,
                          const SuiteThresholds& thresholds = {},
                          const NistParams& params = {});

}  // namespace spintrng
