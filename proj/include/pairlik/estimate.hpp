#ifndef PAIRLIK_ESTIMATE_HPP
#define PAIRLIK_ESTIMATE_HPP

/** @file
 * WPMLE, WPCMLE and MLE of (theta, sigma2) over a parameter box, plus the
 * closed-form variance-only pairwise estimator for known correlations.
 *
 * For fixed theta every criterion is log_coef ln(s2) + quad / s2 + rest,
 * unimodal in s2 with minimum at quad / log_coef. Its minimum over a
 * closed s2 interval is therefore attained at the clamped profile, and the
 * box search reduces exactly to a one-dimensional search over theta.
 */

#include <cstdint>

#include "pairlik/covariance.hpp"
#include "pairlik/likelihood.hpp"
#include "pairlik/optimize.hpp"
#include "pairlik/types.hpp"

namespace pairlik {

struct EstimationResult {
  CovParams psi_hat;
  double microergodic = 0.0;     ///< theta_hat * sigma2_hat
  double objective_value = 0.0;  ///< criterion re-evaluated at psi_hat
  int evaluations = 0;
  bool converged = true;
  std::uint8_t active_bounds = kNoBound;
};

/// Unconstrained argmin over sigma2 > 0 of the criterion at fixed theta.
double profile_sigma2(ObjectiveKind kind, double theta, const SamplePath& path, const WeightSeq& w);

/// argmin over J of the criterion of the given kind.
EstimationResult estimate(ObjectiveKind kind, const SamplePath& path, const WeightSeq& w, const ParamBox& box,
                          const MinimizeOptions& opts = {});

EstimationResult wpmle(const SamplePath& path, const WeightSeq& w, const ParamBox& box,
                       const MinimizeOptions& opts = {});
EstimationResult wpcmle(const SamplePath& path, const WeightSeq& w, const ParamBox& box,
                        const MinimizeOptions& opts = {});
EstimationResult mle(const SamplePath& path, const ParamBox& box, const MinimizeOptions& opts = {});

/**
 * Closed-form minimizer of pl_general over sigma2:
 *   sum_{i<j} w_ij (Y_i^2 + Y_j^2 - 2 C_ij Y_i Y_j) / (1 - C_ij^2)  /  (2 sum_{i<j} w_ij).
 */
double variance_wpmle_closed_form(const GeneralSample& sample, const CorrelationModel& corr,
                                  const PairWeight& weight);

}  // namespace pairlik

#endif  // PAIRLIK_ESTIMATE_HPP
