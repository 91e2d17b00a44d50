#pragma once

// Pair-denominator statistics of rational torus sets: the h_q histogram, the
// (q, b) data of a point pair, and the q-content of the bilinear polynomial
// m^t A(X) b.

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "glasner/arith.hpp"
#include "glasner/expsum.hpp"
#include "glasner/poly_matrix.hpp"
#include "glasner/rational.hpp"
#include "glasner/torus.hpp"

namespace glasner {

struct PairBVector {
  std::uint64_t q = 1;          // minimal q with q(x - y) integral
  std::vector<long long> b;     // q * (x - y) mod q, componentwise in [0, q)
};

/// Minimal denominator q of x - y together with b = q(x - y) reduced mod q.
/// Minimality forces gcd(b_1, ..., b_d, q) = 1.
inline PairBVector pair_bvector(const TorusPoint& x, const TorusPoint& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("pair_bvector: dimension mismatch");
  const int d = x.dim();
  std::vector<Rat> delta(d);
  unsigned __int128 l = 1;
  for (int i = 0; i < d; ++i) {
    delta[i] = (x.coords[i] - y.coords[i]).mod1();
    const unsigned __int128 den = static_cast<std::uint64_t>(delta[i].den);
    l = l / detail::gcd128(l, den) * den;
    if (l > static_cast<unsigned __int128>(std::numeric_limits<long long>::max())) {
      throw std::overflow_error("pair_bvector: denominator lcm exceeds 64 bits");
    }
  }
  PairBVector out;
  out.q = static_cast<std::uint64_t>(l);
  out.b.resize(d);
  for (int i = 0; i < d; ++i) {
    out.b[i] = delta[i].num * static_cast<long long>(out.q / static_cast<std::uint64_t>(delta[i].den));
  }
  return out;
}

/// h_q over all k^2 ordered pairs (i, j), the diagonal contributing to q = 1.
struct HqHistogram {
  std::map<std::uint64_t, std::uint64_t> entries;  // q -> h_q, positive values only
  std::uint64_t k = 0;
};

inline HqHistogram hq_histogram(const PointSet& s) {
  if (s.points.empty()) throw std::invalid_argument("hq_histogram: empty set");
  HqHistogram h;
  h.k = static_cast<std::uint64_t>(s.points.size());
  for (const auto& x : s.points) {
    for (const auto& y : s.points) {
      ++h.entries[pair_bvector(x, y).q];
    }
  }
  return h;
}

/// cont_q(m^t A(X) b): the polynomial is expanded exactly and the gcd runs
/// over its non-constant coefficients and q. The identically zero form has
/// content q.
inline std::uint64_t content_of_form(const std::vector<long long>& m, const PolyMatrix& a,
                                     const std::vector<long long>& b, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("content_of_form: q must be positive");
  const IntPolynomial form = bilinear_form(m, a, b);
  std::vector<long long> tail;
  if (form.coeffs.size() > 1) {
    tail.assign(form.coeffs.begin() + 1, form.coeffs.end());
  }
  return q_content(tail, q);
}

}  // namespace glasner
