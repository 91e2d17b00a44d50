#pragma once

// Search for the minimal n with A(n)X eps-dense, scanning n = 1..n_max with
// exact certification for d = 1 and grid certification with mesh refinement
// for d >= 2.

#include <algorithm>
#include <future>
#include <optional>
#include <stdexcept>
#include <vector>

#include "glasner/poly_matrix.hpp"
#include "glasner/torus.hpp"

namespace glasner {

/// Mesh halvings attempted before an Unknown verdict is accepted.
inline constexpr int kMaxMeshRefinements = 6;

struct SearchTraceRow {
  long long n = 0;
  Verdict verdict = Verdict::Unknown;
  double distance = 0.0;          // covering radius (d = 1) or worst probe distance
  std::optional<Rat> radius;      // exact covering radius, d = 1 only
  int support = 0;                // points left after duplicate images collapse
};

struct GlasnerSearchResult {
  /// Present only when the dilation at minimal_n is certified Dense and every
  /// smaller n is certified NotDense (no Unknown below it).
  std::optional<long long> minimal_n;
  std::vector<SearchTraceRow> trace;
  double eps = 0.0;
  long long n_max = 0;
  bool unknown_present = false;
};

namespace detail {

inline SearchTraceRow certify_dilation(const PolyMatrix& a, const PointSet& s, double eps,
                                       long long n) {
  SearchTraceRow row;
  row.n = n;
  const PointSet dilated = dilate(s, eval_matrix(a, n));
  row.support = dilated.size();
  if (s.dim == 1) {
    const Rat radius = covering_radius_1d(dilated);
    row.radius = radius;
    row.distance = radius.to_double();
    row.verdict = compare(radius, eps) <= 0 ? Verdict::Dense : Verdict::NotDense;
    return row;
  }
  double mesh = eps;
  for (int round = 0; round <= kMaxMeshRefinements; ++round) {
    const auto cert = is_eps_dense(dilated, eps, mesh);
    row.verdict = cert.verdict;
    row.distance = cert.worst_distance;
    if (cert.verdict != Verdict::Unknown) break;
    mesh /= 2.0;
  }
  return row;
}

}  // namespace detail

inline GlasnerSearchResult glasner_search(const PolyMatrix& a, const PointSet& s, double eps,
                                          long long n_max, int threads = 1) {
  a.validate();
  if (a.dim != s.dim) throw std::invalid_argument("glasner_search: dimension mismatch");
  if (!(eps > 0.0)) throw std::invalid_argument("glasner_search: eps must be positive");
  if (n_max < 1) throw std::invalid_argument("glasner_search: n_max must be >= 1");
  if (threads < 1) threads = 1;

  GlasnerSearchResult result;
  result.eps = eps;
  result.n_max = n_max;

  long long n = 1;
  while (n <= n_max) {
    const long long block_end = std::min(n_max, n + 4LL * threads - 1);
    std::vector<std::future<SearchTraceRow>> block;
    for (long long i = n; i <= block_end; ++i) {
      if (threads == 1) {
        std::promise<SearchTraceRow> ready;
        ready.set_value(detail::certify_dilation(a, s, eps, i));
        block.push_back(ready.get_future());
      } else {
        block.push_back(std::async(std::launch::async,
                                   [&, i] { return detail::certify_dilation(a, s, eps, i); }));
      }
    }
    for (auto& fut : block) {
      SearchTraceRow row = fut.get();
      const Verdict verdict = row.verdict;
      result.unknown_present = result.unknown_present || verdict == Verdict::Unknown;
      result.trace.push_back(std::move(row));
      if (verdict == Verdict::Dense) {
        if (!result.unknown_present) result.minimal_n = result.trace.back().n;
        return result;
      }
    }
    n = block_end + 1;
  }
  return result;
}

}  // namespace glasner
