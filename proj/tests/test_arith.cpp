#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "glasner/arith.hpp"

using namespace glasner;

namespace {

// Independent oracle: factorization by trial division over successive
// integers, no prime table, no Pollard rho.
std::vector<std::pair<std::uint64_t, int>> naive_factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int a = 0;
      while (n % d == 0) {
        n /= d;
        ++a;
      }
      out.emplace_back(d, a);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool naive_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("factorize matches the trial-division oracle on the worked examples") {
  CHECK(factorize(1).factors.empty());

  const auto f = factorize(1653750);
  const std::vector<std::pair<std::uint64_t, int>> expected = {
      {2, 1}, {3, 3}, {5, 4}, {7, 2}};
  CHECK(f.factors == expected);
  CHECK(f.factors == naive_factorize(1653750));
  CHECK(f.product() == 1653750);

  REQUIRE(naive_is_prime(999999937));
  const auto g = factorize(999999937);
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0] == std::pair<std::uint64_t, int>{999999937, 1});

  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reaches the Pollard rho path for large semiprimes") {
  const std::uint64_t p = 1000003, q = 1000033;
  const auto f = factorize(p * q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<std::uint64_t, int>{p, 1});
  CHECK(f.factors[1] == std::pair<std::uint64_t, int>{q, 1});

  const std::uint64_t r = 999999937;
  const auto g = factorize(r * r);  // 999999874000003969
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0] == std::pair<std::uint64_t, int>{r, 2});
}

TEST_CASE("factorize round trip on random inputs up to 1e12") {
  std::mt19937_64 rng(20240517);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = rng() % 1'000'000'000'000ULL + 1;
    const auto f = factorize(n);
    CHECK(f.product() == n);
    for (std::size_t j = 0; j + 1 < f.factors.size(); ++j) {
      CHECK(f.factors[j].first < f.factors[j + 1].first);
    }
    for (const auto& [p, a] : f.factors) {
      CHECK(is_prime(p));
      CHECK(a >= 1);
    }
  }
}

TEST_CASE("deterministic primality test agrees with trial division") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(is_prime(n) == naive_is_prime(n));
  }
  CHECK(is_prime(999999937));
  CHECK_FALSE(is_prime(999999937ULL * 999999937ULL));
}

TEST_CASE("gcd_vec folds the components together with the modulus") {
  CHECK(gcd_vec({6, 10}, 4) == 2);
  CHECK(gcd_vec({0, 0}, 7) == 7);
  CHECK(gcd_vec({3, 5}, 8) == 1);
  CHECK(gcd_vec({-6, 10}, 4) == 2);
  CHECK(gcd_vec({}, 12) == 12);
}

TEST_CASE("power-full and power-free predicates") {
  CHECK(is_power_full(1, 5));
  CHECK(is_power_full(72, 2));  // 2^3 * 3^2
  CHECK_FALSE(is_power_full(12, 2));

  CHECK(is_power_free(12, 3));
  CHECK_FALSE(is_power_free(8, 3));
  CHECK(is_power_free(1, 2));

  CHECK_THROWS_AS(is_power_full(10, 1), std::invalid_argument);
  CHECK_THROWS_AS(is_power_free(10, 1), std::invalid_argument);
}

TEST_CASE("enumerate_power_full worked examples") {
  const auto s = enumerate_power_full(2, 1, 100);
  const std::vector<std::uint64_t> expected = {1,  4,  8,  9,  16, 25, 27,
                                               32, 36, 49, 64, 72, 81, 100};
  CHECK(s.members == expected);

  const auto g = enumerate_power_full(2, 51, 100);
  CHECK(g.members == std::vector<std::uint64_t>{64, 72, 81, 100});

  const auto t = enumerate_power_full(5, 1, 31);
  CHECK(t.members == std::vector<std::uint64_t>{1});

  CHECK_THROWS_AS(enumerate_power_full(1, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_power_full(2, 10, 5), std::invalid_argument);
}

TEST_CASE("enumeration equals the brute-force predicate filter") {
  constexpr std::uint64_t x = 100000;
  for (int nu = 2; nu <= 6; ++nu) {
    std::vector<std::uint64_t> brute;
    for (std::uint64_t n = 1; n <= x; ++n) {
      if (is_power_full(n, nu)) brute.push_back(n);
    }
    CHECK(enumerate_power_full(nu, 1, x).members == brute);
  }
}

TEST_CASE("power-full members nest as nu grows") {
  constexpr std::uint64_t x = 100000;
  for (int nu = 2; nu <= 5; ++nu) {
    const auto coarse = enumerate_power_full(nu, 1, x).members;
    const auto fine = enumerate_power_full(nu + 1, 1, x).members;
    const std::set<std::uint64_t> coarse_set(coarse.begin(), coarse.end());
    for (std::uint64_t m : fine) {
      CHECK(coarse_set.count(m) == 1);
    }
  }
}

TEST_CASE("square-full counts stay under 2.2 * sqrt(x)") {
  for (std::uint64_t x : {10000ULL, 100000ULL, 1000000ULL}) {
    const auto s = enumerate_power_full(2, 1, x);
    const double ratio = static_cast<double>(s.members.size()) / std::sqrt(static_cast<double>(x));
    CHECK(ratio <= 2.2);
  }
}

TEST_CASE("enumeration range cap follows the prime table") {
  // 10^12 = (10^6)^2 is the largest admissible hi at nu = 2.
  CHECK_NOTHROW(enumerate_power_full(2, 999'999'999'000ULL, 1'000'000'000'000ULL));
  CHECK_THROWS_AS(enumerate_power_full(2, 1, 2'000'000'000'000ULL), budget_error);
}
