#ifndef PAIRLIK_ASYMPTOTICS_HPP
#define PAIRLIK_ASYMPTOTICS_HPP

/** @file
 * Asymptotic variance of the pairwise estimators of theta * sigma2.
 *
 * With standardized increments
 *   W_{i,j} = (Z(s_j) - e^{-theta0 (s_j - s_i)} Z(s_i)) / sqrt(sigma0^2 (1 - e^{-2 theta0 (s_j - s_i)})),
 * the normalized variance
 *   tau2 = (1/n) var( sum_i sum_{k <= K} w_k (W_{i,i+k}^2 - 1) )
 *        = (2/n) sum sum w w cov(W, W)^2
 * scales the asymptotic variance of WPMLE and WPCMLE. tau2_exact evaluates
 * the covariances in closed form; tau2_approx replaces cov(W, W)^2 by the
 * design-only overlap coefficients b_coeff.
 *
 * Both sums run in parallel over the first pair index with per-index
 * partial sums reduced in a fixed order, so results do not depend on the
 * thread count. Untruncated serial versions live in pairlik::reference.
 */

#include <cstddef>

#include "pairlik/types.hpp"

namespace pairlik {

/**
 * Overlap coefficient for index pairs i < j and k < l (0-based). For
 * i <= k it is 0 when j <= k, (s_j - s_k)^2 / ((s_j - s_i)(s_l - s_k)) when
 * k <= j <= l and (s_l - s_k) / (s_j - s_i) when l <= j; pairs with i > k
 * are swapped first. Throws std::out_of_range on bad ordering.
 */
double b_coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l, const Design& design);

enum class TauMethod { Exact, Approx };

struct TauResult {
  double tau2 = 0.0;
  TauMethod method = TauMethod::Approx;
  std::size_t n = 0;
  std::size_t K = 0;
};

/// Design-only approximation; O(n K^3). Requires n > K.
TauResult tau2_approx(const Design& design, const WeightSeq& w);

/// Exact tau2 for true scale theta0; O(n K^3). Requires n > K, theta0 > 0.
TauResult tau2_exact(const Design& design, const WeightSeq& w, double theta0);

/// Exact covariance of W_{i,j} and W_{k,l} under scale theta0 (0-based, i < j, k < l).
double increment_covariance(std::size_t i, std::size_t j, std::size_t k, std::size_t l, const Design& design,
                            double theta0);

enum class AsymptoticKind { MLE, WP };

/**
 * Per-n variance of the estimator of theta0 * sigma0^2:
 *   MLE: 2 (sigma0^2 theta0)^2 / n
 *   WP:  (sigma0^2 theta0)^2 tau2_approx / (n (sum w)^2)
 */
double asymptotic_variance(AsymptoticKind kind, const CovParams& psi0, const Design& design, const WeightSeq& w);

/// sqrt(tau2_approx) / sum w, the C of the standardized statistic for WPMLE and WPCMLE.
double wp_normalizer(const Design& design, const WeightSeq& w);

/// (sqrt(n) / C) (estimate / (sigma0^2 theta0) - 1).
double normalize(double estimate, const CovParams& psi0, std::size_t n, double C);

namespace reference {

/// Full quadruple sum of the approximation without index truncation; O(n^2 K^2).
double tau2_approx_full(const Design& design, const WeightSeq& w);

/// Full quadruple sum of the exact tau2 without index truncation; O(n^2 K^2).
double tau2_exact_full(const Design& design, const WeightSeq& w, double theta0);

}  // namespace reference

}  // namespace pairlik

#endif  // PAIRLIK_ASYMPTOTICS_HPP
