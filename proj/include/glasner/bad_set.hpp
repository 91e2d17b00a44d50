#pragma once

// The bad-set functional: the two sides of the inequality
//   k^2 << eps^{-d} sum_{m in B(M)} sum_q (h_q / q) |S_{e,q}(m^t A(X) b_q)|
//        + eps^{-d} M^d k,        M = floor(d / eps),
// computed exactly as written with implied constant 1. The b_q are only
// existentially given, so the caller picks a selection strategy; no
// inequality is asserted, both sides are reported for inspection.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "glasner/expsum.hpp"
#include "glasner/pair_stats.hpp"
#include "glasner/poly_matrix.hpp"
#include "glasner/torus.hpp"

namespace glasner {

/// Default elementary-term budget for the functional.
inline constexpr std::uint64_t kDefaultTermBudget = 1'000'000'000;

enum class BVectorStrategy {
  FirstPair,      // b_q from the first ordered pair (i, j) with denominator q
  MaxOverPairs,   // b_q maximizing the summed magnitude, the largest rhs
};

struct BadSetRow {
  std::uint64_t q = 1;
  std::uint64_t h_q = 0;
  std::vector<long long> b;   // chosen b_q
  double sum_abs = 0.0;       // sum over m in B(M) of |S_{e,q}(m^t A(X) b)|
};

struct BadSetReport {
  double lhs = 0.0;            // k^2
  double rhs = 0.0;            // full right-hand side
  double sum_term = 0.0;       // eps^{-d} * sum of (h_q / q) * row sums
  double trailing_term = 0.0;  // eps^{-d} M^d k
  long long box_m = 0;         // M
  std::vector<BadSetRow> rows;
};

namespace detail {

/// Calls fn for every nonzero integer vector in [-box, box]^d.
template <typename Fn>
void for_each_box_vector(int d, long long box, Fn&& fn) {
  std::vector<long long> m(d, -box);
  while (true) {
    bool zero = true;
    for (long long v : m) zero = zero && v == 0;
    if (!zero) fn(m);
    int k = 0;
    while (k < d) {
      if (++m[k] <= box) break;
      m[k] = -box;
      ++k;
    }
    if (k == d) break;
  }
}

}  // namespace detail

inline BadSetReport bad_set_functional(const PointSet& s, const PolyMatrix& a, double eps,
                                       BVectorStrategy strategy,
                                       std::uint64_t term_budget = kDefaultTermBudget) {
  a.validate();
  if (a.dim != s.dim) throw std::invalid_argument("bad_set_functional: dimension mismatch");
  if (!(eps > 0.0)) throw std::invalid_argument("bad_set_functional: eps must be positive");

  const int d = s.dim;
  const auto k = static_cast<double>(s.points.size());
  BadSetReport report;
  report.lhs = k * k;
  report.box_m = static_cast<long long>(std::floor(d / eps));
  if (report.box_m == 0) return report;  // B(M) is empty, both terms vanish

  const long long big_m = report.box_m;
  double n_box = 1.0;
  for (int i = 0; i < d; ++i) n_box *= static_cast<double>(2 * big_m + 1);
  n_box -= 1.0;

  // b-vector candidates per denominator, in ordered-pair scan order.
  const HqHistogram hist = hq_histogram(s);
  std::map<std::uint64_t, std::vector<std::vector<long long>>> candidates;
  for (const auto& x : s.points) {
    for (const auto& y : s.points) {
      const auto pb = pair_bvector(x, y);
      auto& list = candidates[pb.q];
      if (strategy == BVectorStrategy::FirstPair && !list.empty()) continue;
      bool seen = false;
      for (const auto& b : list) seen = seen || b == pb.b;
      if (!seen) list.push_back(pb.b);
    }
  }

  double planned_terms = 0.0;
  for (const auto& [q, list] : candidates) {
    planned_terms += n_box * static_cast<double>(q) * static_cast<double>(list.size());
  }
  if (planned_terms > static_cast<double>(term_budget)) {
    throw budget_error("bad_set_functional: elementary-term budget exceeded");
  }

  const int e = std::max(1, a.degree());
  double total = 0.0;
  for (const auto& [q, list] : candidates) {
    BadSetRow best_row;
    bool have = false;
    for (const auto& b : list) {
      double sum_abs = 0.0;
      detail::for_each_box_vector(d, big_m, [&](const std::vector<long long>& m) {
        const IntPolynomial form = bilinear_form(m, a, b);
        std::vector<long long> f(static_cast<std::size_t>(e), 0);
        for (std::size_t j = 1; j < form.coeffs.size() && j <= static_cast<std::size_t>(e); ++j) {
          f[j - 1] = form.coeffs[j];
        }
        sum_abs += std::abs(eval_sum({e, q, f}));
      });
      if (!have || sum_abs > best_row.sum_abs) {
        best_row = BadSetRow{q, hist.entries.at(q), b, sum_abs};
        have = true;
      }
    }
    report.rows.push_back(best_row);
    total += static_cast<double>(best_row.h_q) / static_cast<double>(best_row.q) *
             best_row.sum_abs;
  }

  const double eps_pow = std::pow(eps, -d);
  report.sum_term = eps_pow * total;
  report.trailing_term = eps_pow * std::pow(static_cast<double>(big_m), d) * k;
  report.rhs = report.sum_term + report.trailing_term;
  return report;
}

}  // namespace glasner
