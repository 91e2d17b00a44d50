// Quick tour of the exponential-sum engine: evaluate a few complete sums,
// split a modulus by its power structure, and compare |S| against the Hua
// and refined envelopes.

#include <cstdio>

#include "glasner/expsum.hpp"

using namespace glasner;

int main() {
  std::printf("Gauss sums |S_{2,q}(0,1)| against sqrt(q):\n");
  for (std::uint64_t q : {5ULL, 13ULL, 29ULL, 101ULL, 9973ULL}) {
    const double a = std::abs(eval_direct({2, q, {0, 1}}));
    std::printf("  q = %5llu   |S| = %12.8f   sqrt(q) = %12.8f\n",
                static_cast<unsigned long long>(q), a, std::sqrt(static_cast<double>(q)));
  }

  const std::uint64_t q = 1653750;  // 2 * 3^3 * 5^4 * 7^2
  const int e = 4;
  const auto dec = decompose_modulus(q, e);
  std::printf("\npower-structure split of q = %llu at e = %d:\n",
              static_cast<unsigned long long>(q), e);
  for (const auto& [i, v] : dec.parts()) {
    std::printf("  q_%d = %llu\n", i, static_cast<unsigned long long>(v));
  }
  std::printf("  hua     = %.4f\n", hua_bound(q, e));
  std::printf("  refined = %.4f\n", refined_bound(dec));

  std::printf("\nextremal |S_{2,q}(f)| over q-primitive f:\n");
  std::printf("  %4s  %12s  %12s  %12s\n", "q", "max |S|", "hua", "refined");
  for (std::uint64_t m : {8ULL, 9ULL, 12ULL, 16ULL, 30ULL, 36ULL}) {
    const auto r = extremal_search_exhaustive(m, 2);
    std::printf("  %4llu  %12.6f  %12.6f  %12.6f\n", static_cast<unsigned long long>(m),
                r.max_abs, r.report.hua, r.report.refined);
  }
  return 0;
}
