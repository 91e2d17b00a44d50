// Search the dilations A(n)X of a rational point set for the first one that
// is eps-dense, then evaluate the bad-set functional on the same data.

#include <cstdio>

#include "glasner/bad_set.hpp"
#include "glasner/search.hpp"

using namespace glasner;

int main() {
  PolyMatrix a;
  a.dim = 1;
  a.entries = {{IntPolynomial{{0, 0, 1}}}};  // A(X) = X^2

  std::vector<TorusPoint> points;
  for (long long j = 1; j <= 5; ++j) {
    points.push_back(make_torus_point({Rat(j, 11)}));
  }
  const PointSet s = make_point_set(1, std::move(points));

  const double eps = 0.15;
  const auto result = glasner_search(a, s, eps, 50);
  std::printf("search for eps-dense dilations of X = {1/11, ..., 5/11}, A(X) = X^2:\n");
  for (const auto& row : result.trace) {
    std::printf("  n = %3lld  %-9s  covering radius = %s\n", row.n, to_string(row.verdict),
                row.radius ? row.radius->str().c_str() : "-");
  }
  if (result.minimal_n) {
    std::printf("minimal n: %lld\n", *result.minimal_n);
  } else {
    std::printf("no dense dilation up to n = %lld\n", result.n_max);
  }

  const auto report = bad_set_functional(s, a, eps, BVectorStrategy::FirstPair);
  std::printf("\nbad-set functional at eps = %.2f (M = %lld):\n", eps, report.box_m);
  std::printf("  lhs (k^2)     = %.1f\n", report.lhs);
  std::printf("  sum term      = %.4f\n", report.sum_term);
  std::printf("  trailing term = %.4f\n", report.trailing_term);
  std::printf("  rhs           = %.4f\n", report.rhs);
  for (const auto& row : report.rows) {
    std::printf("  q = %3llu  h_q = %3llu  sum over B(M) = %.4f\n",
                static_cast<unsigned long long>(row.q),
                static_cast<unsigned long long>(row.h_q), row.sum_abs);
  }
  return 0;
}
