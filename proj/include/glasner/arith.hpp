#pragma once

// Exact integer arithmetic: factorization, gcd utilities, and nu-th power
// full / power free predicates and enumeration.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "glasner/errors.hpp"

namespace glasner {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;

  const int rank = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> rank;
  for (std::uint64_t base :
       {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = pow_mod(base % n, d, n);
    if (x <= 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < rank - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Primes below 10^6, sieved once. Trial division by this table resolves any
/// n <= 10^12 completely and strips every small factor of larger n.
inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t bound = 1'000'000;
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= bound; j += i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;  // (prime, exponent), primes increasing

  std::uint64_t product() const {
    std::uint64_t acc = 1;
    for (const auto& [p, a] : factors) {
      for (int i = 0; i < a; ++i) acc *= p;
    }
    return acc;
  }
};

namespace detail {

/// Brent-cycle Pollard rho with a deterministic sequence of curve constants.
/// Callers guarantee n is composite, odd and has no factor <= 10^6.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto step = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t power = 1, lam = 0;
    while (d == 1) {
      if (lam == power) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = step(y);
      ++lam;
      const std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle closed without a factor, retry with next c
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factor_large(std::uint64_t m, std::vector<std::uint64_t>& out) {
  if (m == 1) return;
  if (is_prime(m)) {
    out.push_back(m);
    return;
  }
  const std::uint64_t d = pollard_rho(m);
  factor_large(d, out);
  factor_large(m / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1. Trial division by primes <= 10^6, then
/// Pollard rho for the (at most two) remaining large prime factors.
inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization result;
  result.n = n;
  std::uint64_t m = n;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > m) break;
    if (m % p == 0) {
      int a = 0;
      while (m % p == 0) {
        m /= p;
        ++a;
      }
      result.factors.emplace_back(p, a);
    }
  }
  if (m > 1) {
    std::vector<std::uint64_t> large;
    detail::factor_large(m, large);
    std::sort(large.begin(), large.end());
    for (std::size_t i = 0; i < large.size();) {
      std::size_t j = i;
      while (j < large.size() && large[j] == large[i]) ++j;
      result.factors.emplace_back(large[i], static_cast<int>(j - i));
      i = j;
    }
  }
  return result;
}

/// gcd(a_1, ..., a_nu, q). Returns q for the zero vector.
inline std::uint64_t gcd_vec(const std::vector<long long>& a, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("gcd_vec: q must be positive");
  std::uint64_t g = q;
  for (long long v : a) {
    const std::uint64_t mag =
        v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    g = std::gcd(g, mag);
    if (g == 1) break;
  }
  return g;
}

/// Every prime dividing n does so to exponent >= nu. n = 1 qualifies.
inline bool is_power_full(std::uint64_t n, int nu) {
  if (nu < 2) throw std::invalid_argument("is_power_full: nu must be >= 2");
  if (n == 0) throw std::invalid_argument("is_power_full: n must be positive");
  for (const auto& [p, a] : factorize(n).factors) {
    (void)p;
    if (a < nu) return false;
  }
  return true;
}

/// Every prime dividing n does so to exponent <= nu - 1. n = 1 qualifies.
inline bool is_power_free(std::uint64_t n, int nu) {
  if (nu < 2) throw std::invalid_argument("is_power_free: nu must be >= 2");
  if (n == 0) throw std::invalid_argument("is_power_free: n must be positive");
  for (const auto& [p, a] : factorize(n).factors) {
    (void)p;
    if (a >= nu) return false;
  }
  return true;
}

struct PowerFullSet {
  int nu = 2;
  std::uint64_t limit = 1;                // upper end of the enumerated range
  std::vector<std::uint64_t> members;     // sorted strictly increasing
};

/// All nu-full integers in [lo, hi], generated by DFS over increasing primes
/// with exponents >= nu. Output-sensitive: never scans [lo, hi] itself.
inline PowerFullSet enumerate_power_full(int nu, std::uint64_t lo, std::uint64_t hi) {
  if (nu < 2) throw std::invalid_argument("enumerate_power_full: nu must be >= 2");
  if (lo == 0 || lo > hi) {
    throw std::invalid_argument("enumerate_power_full: need 1 <= lo <= hi");
  }
  const auto& primes = small_primes();
  {
    // The DFS needs every prime up to hi^{1/nu}; the table holds all primes
    // below 10^6.
    const long double root = std::pow(static_cast<long double>(hi), 1.0L / nu);
    if (root > 1'000'000.5L) {
      throw budget_error("enumerate_power_full: hi^{1/nu} exceeds the prime table");
    }
  }

  PowerFullSet out;
  out.nu = nu;
  out.limit = hi;

  // value carries a product of p^a with a >= nu over primes below index idx.
  auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t value) -> void {
    if (value >= lo) out.members.push_back(value);
    for (std::size_t i = idx; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      std::uint64_t next = value;
      bool fits = true;
      for (int j = 0; j < nu; ++j) {
        if (next > hi / p) {
          fits = false;
          break;
        }
        next *= p;
      }
      if (!fits) break;  // primes increase, so no later prime fits either
      while (true) {
        self(self, i + 1, next);
        if (next > hi / p) break;
        next *= p;
      }
    }
  };
  dfs(dfs, 0, 1);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace glasner
