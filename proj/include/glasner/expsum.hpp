#pragma once

// Complete rational exponential sums S_{e,q}(f) = sum_{n=1}^{q} e_q(f_1 n +
// ... + f_e n^e), their q-content, the power-structure split of the modulus,
// and the bound envelopes (Weil at primes, Hua, refined product).

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "glasner/arith.hpp"
#include "glasner/errors.hpp"
#include "glasner/summation.hpp"

namespace glasner {

/// Largest modulus the direct q-term loop will accept.
inline constexpr std::uint64_t kDirectEvalBudget = 100'000'000;
/// Largest candidate count (q^e) the exhaustive extremal search will accept.
inline constexpr std::uint64_t kExhaustiveBudget = 10'000'000;

struct SumSpec {
  int degree = 1;                  // e >= 1
  std::uint64_t modulus = 1;       // q >= 1
  std::vector<long long> coeffs;   // f_1, ..., f_e; no constant term

  void validate() const {
    if (degree < 1) throw std::invalid_argument("SumSpec: degree must be >= 1");
    if (modulus == 0) throw std::invalid_argument("SumSpec: modulus must be positive");
    if (coeffs.size() != static_cast<std::size_t>(degree)) {
      throw std::invalid_argument("SumSpec: need exactly degree coefficients");
    }
  }
};

/// gcd(f_1, ..., f_e, q); the constant term is excluded by definition.
/// f is q-primitive exactly when this is 1.
inline std::uint64_t q_content(const std::vector<long long>& f, std::uint64_t q) {
  return gcd_vec(f, q);
}

/// Largest k with f_k != 0 (mod q); 0 when the whole vector vanishes mod q.
inline int reduced_degree(const std::vector<long long>& f, std::uint64_t q) {
  for (int k = static_cast<int>(f.size()); k >= 1; --k) {
    if (f[k - 1] % static_cast<long long>(q) != 0) return k;
  }
  return 0;
}

namespace detail {

inline std::uint64_t reduce_mod(long long v, std::uint64_t q) {
  long long r = v % static_cast<long long>(q);
  if (r < 0) r += static_cast<long long>(q);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t horner_mod(const std::vector<std::uint64_t>& c, std::uint64_t n,
                                std::uint64_t q) {
  std::uint64_t acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = (mul_mod(acc, n, q) + c[k]) % q;
  }
  return mul_mod(acc, n, q);  // coefficients start at degree 1
}

}  // namespace detail

/// Direct evaluation of S_{e,q}(f). The polynomial value is reduced mod q in
/// exact integer arithmetic before the single float conversion per term, and
/// the complex sum is accumulated with compensation. The q-term loop walks a
/// finite-difference table mod q, so each step costs e additions, no
/// multiplication.
inline std::complex<double> eval_direct(const SumSpec& spec) {
  spec.validate();
  const std::uint64_t q = spec.modulus;
  if (q > kDirectEvalBudget) {
    throw budget_error(
        "eval_direct: modulus exceeds the direct-loop budget; use eval_crt");
  }

  std::vector<std::uint64_t> c(spec.coeffs.size());
  bool all_zero = true;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = detail::reduce_mod(spec.coeffs[k], q);
    all_zero = all_zero && c[k] == 0;
  }
  if (all_zero) return {static_cast<double>(q), 0.0};

  const double two_pi_over_q = 2.0 * std::numbers::pi / static_cast<double>(q);
  CompensatedComplexSum sum;

  const std::size_t e = c.size();
  if (q <= e + 1) {
    for (std::uint64_t n = 1; n <= q; ++n) {
      const double angle = two_pi_over_q * static_cast<double>(detail::horner_mod(c, n, q));
      sum.add(std::cos(angle), std::sin(angle));
    }
    return sum.value();
  }

  // diffs[j] = (forward difference of order j of n -> f(n) mod q) at the
  // current n; advancing all of them by one step keeps diffs[0] = f(n).
  std::vector<std::uint64_t> diffs(e + 1);
  for (std::size_t j = 0; j <= e; ++j) {
    diffs[j] = detail::horner_mod(c, static_cast<std::uint64_t>(j + 1), q);
  }
  for (std::size_t level = 1; level <= e; ++level) {
    for (std::size_t j = e; j >= level; --j) {
      diffs[j] = (diffs[j] + q - diffs[j - 1]) % q;
    }
  }

  for (std::uint64_t n = 1;; ++n) {
    const double angle = two_pi_over_q * static_cast<double>(diffs[0]);
    sum.add(std::cos(angle), std::sin(angle));
    if (n == q) break;
    for (std::size_t j = 0; j < e; ++j) {
      diffs[j] += diffs[j + 1];
      if (diffs[j] >= q) diffs[j] -= q;
    }
  }
  return sum.value();
}

namespace detail {

inline std::complex<double> eval_crt_parts(
    int degree, const std::vector<long long>& coeffs,
    const std::vector<std::pair<std::uint64_t, int>>& parts, std::size_t lo,
    std::size_t hi, std::uint64_t q) {
  if (lo == hi) return {1.0, 0.0};  // q = 1
  if (hi - lo == 1) {
    SumSpec leaf;
    leaf.degree = degree;
    leaf.modulus = q;
    leaf.coeffs = coeffs;
    return eval_direct(leaf);
  }
  // Split off the first prime power q1 and twist the coefficients on both
  // sides: S_{e,q1*q2}(f) = S_{e,q1}(g1) * S_{e,q2}(g2) with
  // g1_k = f_k * q2^{k-1} mod q1 and g2_k = f_k * q1^{k-1} mod q2. The
  // identity needs gcd(q1, q2) = 1 and a zero constant term.
  std::uint64_t q1 = 1;
  for (int i = 0; i < parts[lo].second; ++i) q1 *= parts[lo].first;
  const std::uint64_t q2 = q / q1;

  auto twist = [&](std::uint64_t mod, std::uint64_t other) {
    std::vector<long long> g(coeffs.size());
    std::uint64_t scale = 1 % mod;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      g[k] = static_cast<long long>(mul_mod(reduce_mod(coeffs[k], mod), scale, mod));
      scale = mul_mod(scale, other % mod, mod);
    }
    return g;
  };

  const auto left = eval_crt_parts(degree, twist(q1, q2), parts, lo, lo + 1, q1);
  const auto right = eval_crt_parts(degree, twist(q2, q1), parts, lo + 1, hi, q2);
  return left * right;
}

}  // namespace detail

/// Multiplicative evaluation: factor q into coprime prime powers and take the
/// product of the twisted sums. Only the per-part modulus must fit the direct
/// budget.
inline std::complex<double> eval_crt(const SumSpec& spec, const Factorization& fact) {
  spec.validate();
  if (fact.n != spec.modulus || fact.product() != spec.modulus) {
    throw std::invalid_argument("eval_crt: factorization does not match the modulus");
  }
  return detail::eval_crt_parts(spec.degree, spec.coeffs, fact.factors, 0,
                                fact.factors.size(), spec.modulus);
}

/// Direct loop when it fits the budget, CRT recursion otherwise.
inline std::complex<double> eval_sum(const SumSpec& spec) {
  spec.validate();
  if (spec.modulus <= kDirectEvalBudget) return eval_direct(spec);
  return eval_crt(spec, factorize(spec.modulus));
}

/// The split q = q_2 * (prod q_i) * q_e by prime-exponent routing: exponents
/// 1..2 to the cube-free slot, exponent i to the exactly-i-full slot for
/// 3 <= i <= e-1, exponents >= e to the full slot. For e = 2 the two slots
/// are the cube-free and cube-full parts and both carry index 2.
struct ModulusDecomposition {
  std::uint64_t q = 1;
  int degree = 2;                              // e
  std::uint64_t cube_free = 1;                 // q_2: prime exponents <= 2
  std::map<int, std::uint64_t> exact_power;    // i -> q_i, exponents exactly i
  std::uint64_t full = 1;                      // q_e: prime exponents >= max(e, 3)

  /// (exponent index, part value) pairs in slot order.
  std::vector<std::pair<int, std::uint64_t>> parts() const {
    std::vector<std::pair<int, std::uint64_t>> out;
    out.emplace_back(2, cube_free);
    for (const auto& [i, v] : exact_power) out.emplace_back(i, v);
    out.emplace_back(degree, full);
    return out;
  }
};

inline ModulusDecomposition decompose_modulus(std::uint64_t q, int e) {
  if (e < 2) throw std::invalid_argument("decompose_modulus: degree must be >= 2");
  if (q == 0) throw std::invalid_argument("decompose_modulus: q must be positive");
  ModulusDecomposition dec;
  dec.q = q;
  dec.degree = e;
  for (int i = 3; i < e; ++i) dec.exact_power[i] = 1;
  for (const auto& [p, a] : factorize(q).factors) {
    std::uint64_t pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    if (a <= 2) {
      dec.cube_free *= pa;
    } else if (a < e) {
      dec.exact_power[a] *= pa;
    } else {
      dec.full *= pa;
    }
  }
  return dec;
}

/// Hua envelope q^{1 - 1/e}, with the o(1) factor dropped.
inline double hua_bound(std::uint64_t q, int e) {
  if (e < 2) throw std::invalid_argument("hua_bound: degree must be >= 2");
  if (q == 0) throw std::invalid_argument("hua_bound: q must be positive");
  return std::pow(static_cast<double>(q), 1.0 - 1.0 / e);
}

/// Refined product envelope prod q_i^{1 - 1/i} over the decomposition slots.
inline double refined_bound(const ModulusDecomposition& dec) {
  double out = 1.0;
  for (const auto& [i, v] : dec.parts()) {
    out *= std::pow(static_cast<double>(v), 1.0 - 1.0 / i);
  }
  return out;
}

/// Content-aware envelope q * prod (q_i / gcd(q_i, s))^{-1/i} for
/// gcd(q, f_1, ..., f_e) = s.
inline double refined_bound_gcd(const ModulusDecomposition& dec, std::uint64_t s) {
  if (s == 0 || dec.q % s != 0) {
    throw std::invalid_argument("refined_bound_gcd: s must divide q");
  }
  double out = static_cast<double>(dec.q);
  for (const auto& [i, v] : dec.parts()) {
    const std::uint64_t g = std::gcd(v, s);
    out *= std::pow(static_cast<double>(v / g), -1.0 / i);
  }
  return out;
}

/// Weil envelope (m-1) sqrt(q), defined when q is prime and the reduced
/// degree m of f mod q satisfies 1 <= m < q.
inline std::optional<double> weil_bound(const SumSpec& spec) {
  spec.validate();
  if (!is_prime(spec.modulus)) return std::nullopt;
  const int m = reduced_degree(spec.coeffs, spec.modulus);
  if (m < 1 || static_cast<std::uint64_t>(m) >= spec.modulus) return std::nullopt;
  return (m - 1) * std::sqrt(static_cast<double>(spec.modulus));
}

struct BoundReport {
  double abs_sum = 0.0;
  double hua = 1.0;
  double refined = 1.0;
  std::optional<double> weil;
};

/// |S| next to its envelopes. For e = 1 both envelopes collapse to
/// q^{1-1/1} = 1, which still dominates every q-primitive sum.
inline BoundReport bound_report(const SumSpec& spec) {
  spec.validate();
  BoundReport report;
  report.abs_sum = std::abs(eval_sum(spec));
  if (spec.degree >= 2) {
    report.hua = hua_bound(spec.modulus, spec.degree);
    report.refined = refined_bound(decompose_modulus(spec.modulus, spec.degree));
  }
  report.weil = weil_bound(spec);
  return report;
}

struct ExtremalResult {
  double max_abs = 0.0;
  std::vector<long long> argmax;   // lexicographically smallest maximizer
  BoundReport report;
  std::uint64_t evaluated = 0;     // primitive candidates actually summed
};

namespace detail {

inline void extremal_consider(const SumSpec& spec, ExtremalResult& best) {
  const double a = std::abs(eval_direct(spec));
  ++best.evaluated;
  if (best.argmax.empty() || a > best.max_abs ||
      (a == best.max_abs && spec.coeffs < best.argmax)) {
    best.max_abs = a;
    best.argmax = spec.coeffs;
  }
}

}  // namespace detail

/// Maximum of |S_{e,q}(f)| over q-primitive coefficient vectors f in [0,q)^e.
inline ExtremalResult extremal_search_exhaustive(std::uint64_t q, int e) {
  if (e < 1) throw std::invalid_argument("extremal_search: degree must be >= 1");
  if (q == 0) throw std::invalid_argument("extremal_search: q must be positive");
  double candidates = std::pow(static_cast<double>(q), e);
  if (candidates > static_cast<double>(kExhaustiveBudget)) {
    throw budget_error("extremal_search: q^e exceeds the exhaustive budget");
  }

  ExtremalResult best;
  SumSpec spec;
  spec.degree = e;
  spec.modulus = q;
  spec.coeffs.assign(e, 0);
  while (true) {
    if (q_content(spec.coeffs, q) == 1) detail::extremal_consider(spec, best);
    int k = 0;
    while (k < e) {
      if (static_cast<std::uint64_t>(++spec.coeffs[k]) < q) break;
      spec.coeffs[k] = 0;
      ++k;
    }
    if (k == e) break;
  }
  best.report = bound_report({e, q, best.argmax});
  return best;
}

/// Sampled lower estimate of the same maximum; deterministic for a fixed seed.
inline ExtremalResult extremal_search_random(std::uint64_t q, int e,
                                             std::uint64_t samples,
                                             std::uint64_t seed) {
  if (e < 1) throw std::invalid_argument("extremal_search: degree must be >= 1");
  if (q == 0) throw std::invalid_argument("extremal_search: q must be positive");
  std::mt19937_64 rng(seed);
  ExtremalResult best;
  SumSpec spec;
  spec.degree = e;
  spec.modulus = q;
  spec.coeffs.assign(e, 0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (auto& f : spec.coeffs) f = static_cast<long long>(rng() % q);
    if (q_content(spec.coeffs, q) != 1) continue;
    detail::extremal_consider(spec, best);
  }
  if (best.argmax.empty()) {
    // Every draw was imprimitive; fall back to the first unit vector, which
    // is always q-primitive.
    spec.coeffs.assign(e, 0);
    spec.coeffs[0] = 1;
    detail::extremal_consider(spec, best);
  }
  best.report = bound_report({e, q, best.argmax});
  return best;
}

}  // namespace glasner
