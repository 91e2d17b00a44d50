#pragma once

// Integer-coefficient polynomials and d x d polynomial matrices A(X) with
// zero constant terms, plus the bounded nondegeneracy scan for the
// hypothesis u^t A(X) v != 0.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace glasner {

struct IntPolynomial {
  std::vector<long long> coeffs;  // ascending degree; trailing zeros allowed

  /// Largest k with coeffs[k] != 0; 0 for the zero polynomial.
  int degree() const {
    for (int k = static_cast<int>(coeffs.size()); k-- > 0;) {
      if (coeffs[k] != 0) return k;
    }
    return 0;
  }

  bool is_zero() const {
    for (long long c : coeffs) {
      if (c != 0) return false;
    }
    return true;
  }

  long long constant_term() const { return coeffs.empty() ? 0 : coeffs[0]; }

  /// Exact evaluation; throws if any intermediate leaves the 64-bit range.
  long long eval(long long x) const {
    __int128 acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      if (__builtin_mul_overflow(acc, static_cast<__int128>(x), &acc) ||
          __builtin_add_overflow(acc, static_cast<__int128>(coeffs[k]), &acc)) {
        throw std::overflow_error("IntPolynomial::eval: overflow");
      }
      constexpr __int128 lim = static_cast<__int128>(1) << 100;
      if (acc > lim || acc < -lim) {
        throw std::overflow_error("IntPolynomial::eval: overflow");
      }
    }
    if (acc > std::numeric_limits<long long>::max() ||
        acc < std::numeric_limits<long long>::min()) {
      throw std::overflow_error("IntPolynomial::eval: result does not fit in 64 bits");
    }
    return static_cast<long long>(acc);
  }
};

struct PolyMatrix {
  int dim = 1;
  std::vector<std::vector<IntPolynomial>> entries;  // row-major d x d

  int degree() const {
    int e = 0;
    for (const auto& row : entries) {
      for (const auto& p : row) e = std::max(e, p.degree());
    }
    return e;
  }

  long long height() const {
    long long h = 0;
    for (const auto& row : entries) {
      for (const auto& p : row) {
        for (long long c : p.coeffs) h = std::max(h, c < 0 ? -c : c);
      }
    }
    return h;
  }

  bool constant_terms_zero() const {
    for (const auto& row : entries) {
      for (const auto& p : row) {
        if (p.constant_term() != 0) return false;
      }
    }
    return true;
  }

  void validate() const {
    if (dim < 1) throw std::invalid_argument("PolyMatrix: dimension must be >= 1");
    if (static_cast<int>(entries.size()) != dim) {
      throw std::invalid_argument("PolyMatrix: wrong number of rows");
    }
    for (const auto& row : entries) {
      if (static_cast<int>(row.size()) != dim) {
        throw std::invalid_argument("PolyMatrix: wrong number of columns");
      }
    }
    if (!constant_terms_zero()) {
      throw std::invalid_argument("PolyMatrix: entries must have zero constant term");
    }
  }
};

/// Entrywise exact evaluation of A(n).
inline std::vector<std::vector<long long>> eval_matrix(const PolyMatrix& a, long long n) {
  std::vector<std::vector<long long>> out(a.dim, std::vector<long long>(a.dim, 0));
  for (int r = 0; r < a.dim; ++r) {
    for (int s = 0; s < a.dim; ++s) out[r][s] = a.entries[r][s].eval(n);
  }
  return out;
}

/// The polynomial m^t A(X) b, expanded exactly.
inline IntPolynomial bilinear_form(const std::vector<long long>& m, const PolyMatrix& a,
                                   const std::vector<long long>& b) {
  if (static_cast<int>(m.size()) != a.dim || static_cast<int>(b.size()) != a.dim) {
    throw std::invalid_argument("bilinear_form: dimension mismatch");
  }
  std::size_t len = 1;
  for (const auto& row : a.entries) {
    for (const auto& p : row) len = std::max(len, p.coeffs.size());
  }
  std::vector<__int128> acc(len, 0);
  for (int r = 0; r < a.dim; ++r) {
    for (int s = 0; s < a.dim; ++s) {
      const __int128 w = static_cast<__int128>(m[r]) * b[s];
      const auto& c = a.entries[r][s].coeffs;
      for (std::size_t k = 0; k < c.size(); ++k) acc[k] += w * c[k];
    }
  }
  IntPolynomial out;
  out.coeffs.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    if (acc[k] > std::numeric_limits<long long>::max() ||
        acc[k] < std::numeric_limits<long long>::min()) {
      throw std::overflow_error("bilinear_form: coefficient overflow");
    }
    out.coeffs[k] = static_cast<long long>(acc[k]);
  }
  return out;
}

struct NondegeneracyReport {
  /// First (u, v) with u^t A(X) v identically zero, in scan order; empty when
  /// the search box is clear.
  std::optional<std::pair<std::vector<long long>, std::vector<long long>>> witness;
  int box = 0;           // scanned u, v in [-box, box]^d, up to sign symmetry
  int degree = 0;        // e
  long long height = 0;  // H
  bool constant_terms_zero = true;
};

namespace detail {

/// Odometer over [-box, box]^d restricted to canonical vectors: nonzero with
/// the first nonzero component positive (the form is odd in each argument).
inline bool next_canonical_vector(std::vector<long long>& v, int box) {
  const int d = static_cast<int>(v.size());
  while (true) {
    int k = 0;
    while (k < d) {
      if (++v[k] <= box) break;
      v[k] = -box;
      ++k;
    }
    if (k == d) return false;
    int first = 0;
    while (first < d && v[first] == 0) ++first;
    if (first < d && v[first] > 0) return true;
  }
}

inline std::vector<long long> first_canonical_vector(int d, int box) {
  // Smallest canonical vector in odometer order: (1, -box, ..., -box) is not
  // first; start the odometer below every state and advance once.
  std::vector<long long> v(d, -box);
  v[0] = -box - 1;
  if (!next_canonical_vector(v, box)) {
    throw std::invalid_argument("nondegeneracy scan: empty box");
  }
  return v;
}

}  // namespace detail

/// Exhaustive scan for a bilinear witness u^t A(X) v = 0 with nonzero
/// u, v in [-box, box]^d. Sign symmetry halves both sides of the search.
inline NondegeneracyReport check_nondegenerate(const PolyMatrix& a, int box) {
  if (box < 1) throw std::invalid_argument("check_nondegenerate: box must be >= 1");
  if (a.dim < 1 || static_cast<int>(a.entries.size()) != a.dim) {
    throw std::invalid_argument("check_nondegenerate: malformed matrix");
  }
  NondegeneracyReport report;
  report.box = box;
  report.degree = a.degree();
  report.height = a.height();
  report.constant_terms_zero = a.constant_terms_zero();

  auto u = detail::first_canonical_vector(a.dim, box);
  do {
    auto v = detail::first_canonical_vector(a.dim, box);
    do {
      if (bilinear_form(u, a, v).is_zero()) {
        report.witness = std::make_pair(u, v);
        return report;
      }
    } while (detail::next_canonical_vector(v, box));
  } while (detail::next_canonical_vector(u, box));
  return report;
}

}  // namespace glasner
