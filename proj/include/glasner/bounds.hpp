#pragma once

// Threshold-cardinality envelopes and the numeric report of the proof
// pipeline. All formulas drop their o(1) factors and unspecified constants;
// they are reference envelopes, not asserted inequalities.

#include <cmath>
#include <stdexcept>

namespace glasner {

namespace detail {

inline void check_bound_args(int d, int e, double big_h, double eps) {
  if (d < 1) throw std::invalid_argument("bounds: d must be >= 1");
  if (e < 2) throw std::invalid_argument("bounds: e must be >= 2");
  if (!(big_h >= 1.0)) throw std::invalid_argument("bounds: H must be >= 1");
  if (!(eps > 0.0) || !(eps <= 1.0)) throw std::invalid_argument("bounds: need 0 < eps <= 1");
}

}  // namespace detail

/// Prior threshold envelope H^{d(d+1)} eps^{-d(d+1)(2e+1)}.
inline double k_bound_prior(int d, int e, double big_h, double eps) {
  detail::check_bound_args(d, e, big_h, eps);
  const double exp_h = static_cast<double>(d) * (d + 1);
  const double exp_eps = static_cast<double>(d) * (d + 1) * (2 * e + 1);
  return std::pow(big_h, exp_h) * std::pow(eps, -exp_eps);
}

/// Improved threshold envelope H^{(3d+1)/2} eps^{-d(2d+1)e - (7d+1)/2}.
inline double k_bound_new(int d, int e, double big_h, double eps) {
  detail::check_bound_args(d, e, big_h, eps);
  const double exp_h = (3.0 * d + 1.0) / 2.0;
  const double exp_eps = static_cast<double>(d) * (2 * d + 1) * e + (7.0 * d + 1.0) / 2.0;
  return std::pow(big_h, exp_h) * std::pow(eps, -exp_eps);
}

/// Cut point R = C H eps^{-2de-1} between the small-q and tail regimes.
inline double r_opt(int d, int e, double big_h, double eps, double c) {
  detail::check_bound_args(d, e, big_h, eps);
  if (!(c > 0.0)) throw std::invalid_argument("r_opt: C must be positive");
  return c * big_h * std::pow(eps, -(2.0 * d * e + 1.0));
}

struct ProofPipelineReport {
  long long box_m = 0;          // M = floor(d / eps)
  double s1_envelope = 0.0;     // k H^{d/2} M^{3d/2} R^{d+1/2}
  double s2_envelope = 0.0;     // k^2 H^{1/e} M^{d+1/e} R^{-1/e}
  double trailing_term = 0.0;   // eps^{-d} M^d k
  double combined = 0.0;        // eps^{-d} (S1 + S2) + trailing
};

/// Numeric values of the split k^2 << eps^{-d}(S1 + S2) + eps^{-d} M^d k at
/// the given parameters; a transparency tool, no inequality asserted.
inline ProofPipelineReport proof_pipeline_report(int d, int e, double big_h, double eps,
                                                 double big_r, double k) {
  detail::check_bound_args(d, e, big_h, eps);
  if (!(big_r > 0.0)) throw std::invalid_argument("proof_pipeline_report: R must be positive");
  if (!(k > 0.0)) throw std::invalid_argument("proof_pipeline_report: k must be positive");
  ProofPipelineReport report;
  report.box_m = static_cast<long long>(std::floor(d / eps));
  const auto m = static_cast<double>(report.box_m);
  report.s1_envelope = k * std::pow(big_h, d / 2.0) * std::pow(m, 1.5 * d) *
                       std::pow(big_r, d + 0.5);
  report.s2_envelope = k * k * std::pow(big_h, 1.0 / e) * std::pow(m, d + 1.0 / e) *
                       std::pow(big_r, -1.0 / e);
  report.trailing_term = std::pow(eps, -d) * std::pow(m, d) * k;
  report.combined =
      std::pow(eps, -d) * (report.s1_envelope + report.s2_envelope) + report.trailing_term;
  return report;
}

}  // namespace glasner
