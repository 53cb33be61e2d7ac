#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "spintrng/distribution.hpp"
#include "spintrng/errors.hpp"

using namespace spintrng;

TEST_SUITE("distribution") {

TEST_CASE("tally counts every word and normalizes") {
  const std::vector<std::uint32_t> words{3, 3, 0, 1, 3, 2, 3, 0};
  const EmpiricalDistribution d = tally_words(2, words);
  REQUIRE(d.counts.size() == 4);
  CHECK(d.n_bits == 2);
  CHECK(d.total_trials == 8);
  CHECK(d.counts[0] == 2);
  CHECK(d.counts[1] == 1);
  CHECK(d.counts[2] == 1);
  CHECK(d.counts[3] == 4);
  CHECK(d.probabilities[3] == doctest::Approx(0.5).epsilon(1e-14));
  const double sum = std::accumulate(d.probabilities.begin(),
                                     d.probabilities.end(), 0.0);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(!d.symmetrized);
}

TEST_CASE("tally rejects words outside the N-bit range") {
  CHECK_THROWS_AS(tally_words(2, std::vector<std::uint32_t>{4}), ConfigError);
  CHECK_THROWS_AS(tally_words(0, std::vector<std::uint32_t>{}), ConfigError);
}

TEST_CASE("make_distribution validates the count-vector size") {
  EmpiricalDistribution d = make_distribution(3, std::vector<std::uint64_t>(8, 5));
  CHECK(d.total_trials == 40);
  CHECK(d.probabilities[7] == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(make_distribution(3, std::vector<std::uint64_t>(7, 5)),
                  ConfigError);
  CHECK_THROWS_AS(make_distribution(3, std::vector<std::uint64_t>(8, 0)),
                  ConfigError);
}

TEST_CASE("symmetrization pools words of equal Hamming weight") {
  // N=3: weight classes {0}, {1,2,4}, {3,5,6}, {7} with sizes 1,3,3,1.
  std::vector<std::uint64_t> counts{10, 30, 6, 12, 12, 15, 9, 6};
  const EmpiricalDistribution raw = make_distribution(3, std::move(counts));
  const EmpiricalDistribution sym = estimate_distribution(raw, true);
  CHECK(sym.symmetrized);
  CHECK(sym.total_trials == 100);
  // weight 1 words 1,2,4: pooled count 30+6+12 = 48 -> 0.48/3 each.
  CHECK(sym.probabilities[1] == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(sym.probabilities[2] == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(sym.probabilities[4] == doctest::Approx(0.16).epsilon(1e-14));
  // weight 2 words 3,5,6: pooled 12+15+9 = 36 -> 0.12 each.
  CHECK(sym.probabilities[3] == doctest::Approx(0.12).epsilon(1e-14));
  // Singleton classes are untouched.
  CHECK(sym.probabilities[0] == doctest::Approx(0.10).epsilon(1e-14));
  CHECK(sym.probabilities[7] == doctest::Approx(0.06).epsilon(1e-14));
  const double sum = std::accumulate(sym.probabilities.begin(),
                                     sym.probabilities.end(), 0.0);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("symmetrization refuses a non-exchangeable source") {
  EmpiricalDistribution d =
      make_distribution(2, std::vector<std::uint64_t>{5, 5, 5, 5},
                        /*exchangeable_source=*/false);
  CHECK_THROWS_AS(estimate_distribution(d, true), ConfigError);
  // Without symmetrization the raw estimate passes through unchanged.
  const EmpiricalDistribution raw = estimate_distribution(d, false);
  CHECK(raw.probabilities == d.probabilities);
  CHECK(!raw.symmetrized);
}

}  // TEST_SUITE
