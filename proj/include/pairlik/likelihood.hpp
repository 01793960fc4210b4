#ifndef PAIRLIK_LIKELIHOOD_HPP
#define PAIRLIK_LIKELIHOOD_HPP

/** @file
 * Likelihood criteria of the exponential covariance model.
 *
 * Every criterion is -2 times a log density with the 2 ln(2 pi) per pair
 * (n ln(2 pi) for the full likelihood) dropped, so smaller is better and
 * the estimators are argmins. Lag-weighted criteria cost O(nK) and the
 * full likelihood O(n); no n x n matrix is formed.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pairlik/covariance.hpp"
#include "pairlik/types.hpp"

namespace pairlik {

/// -2 log density of (Z(s), Z(t)), constant dropped. Throws DegeneratePair if |s - t| < 1e-12.
double pair_loglik(const CovParams& psi, double s, double t, double zs, double zt);

/// -2 log conditional density of Z(t) given Z(s), constant dropped.
double cond_pair_loglik(const CovParams& psi, double s, double t, double zs, double zt);

/// Weighted pairwise criterion: sum over i < j of w_{j-i} * pair_loglik(s_i, s_j).
double pl_direct(const CovParams& psi, const SamplePath& path, const WeightSeq& w);

/// Weighted pairwise conditional criterion: each weighted pair contributes both conditionals.
double pcl_direct(const CovParams& psi, const SamplePath& path, const WeightSeq& w);

/**
 * One term of the subsampled representation: lag k, offset a and position
 * j select the consecutive pair (a + j k, a + (j + 1) k) of the subsequence
 * s_a, s_{a+k}, s_{a+2k}, ... (0-based indices).
 */
struct SubsampleIndex {
  std::size_t k;
  std::size_t a;
  std::size_t j;

  friend bool operator==(const SubsampleIndex&, const SubsampleIndex&) = default;
};

/// All (k, a, j) with k <= min(K, n-1), a < k and a + (j+1) k <= n - 1.
std::vector<SubsampleIndex> subsample_indices(std::size_t n, std::size_t K);

/// pl_direct evaluated as a lag-k sum of chains over the subsampled sequences.
double pl_reindexed(const CovParams& psi, const SamplePath& path, const WeightSeq& w);
/// pcl_direct evaluated over the same subsampled chains.
double pcl_reindexed(const CovParams& psi, const SamplePath& path, const WeightSeq& w);

/// -2 log of the joint Gaussian density via the Markov factorization, constant dropped.
double full_neg2_loglik(const CovParams& psi, const SamplePath& path);

enum class ObjectiveKind { PL, PCL, Full };

/**
 * For fixed theta each criterion reads
 *   value(sigma2) = log_coef * ln(sigma2) + quad / sigma2 + rest,
 * where log_coef counts the ln(sigma2) terms, quad is the weighted sum of
 * quadratic forms and rest collects ln(1 - e^{-2 theta d}) terms.
 */
struct ProfileTerms {
  double log_coef = 0.0;
  double quad = 0.0;
  double rest = 0.0;

  [[nodiscard]] double value(double sigma2) const noexcept;
  /// Unconstrained argmin quad / log_coef.
  [[nodiscard]] double argmin() const noexcept { return quad / log_coef; }
};

/// One O(nK) pass accumulating the profile decomposition at theta.
ProfileTerms profile_terms(ObjectiveKind kind, double theta, const SamplePath& path, const WeightSeq& w);

/// Criterion of the given kind; the weights are ignored for ObjectiveKind::Full.
class Objective {
 public:
  Objective(ObjectiveKind kind, const SamplePath& path, const WeightSeq& w)
      : kind_(kind), path_(&path), weights_(&w) {}

  [[nodiscard]] double operator()(const CovParams& psi) const;
  [[nodiscard]] ObjectiveKind kind() const noexcept { return kind_; }
  [[nodiscard]] const SamplePath& path() const noexcept { return *path_; }
  [[nodiscard]] const WeightSeq& weights() const noexcept { return *weights_; }

 private:
  ObjectiveKind kind_;
  const SamplePath* path_;
  const WeightSeq* weights_;
};

/// Pair weight for general designs: w_{i,j} = g(x_j - x_i).
using PairWeight = std::function<double(std::span<const double> delta)>;

/// g = 1 on every pair.
PairWeight unit_pair_weight();

/**
 * Weighted pairwise criterion for the variance only, under a known
 * correlation C:
 *   sum_{i<j} w_ij [2 ln s2 + ln(1 - C_ij^2) + Y_i^2 / s2
 *                   + (Y_j - C_ij Y_i)^2 / (s2 (1 - C_ij^2))].
 * Throws DegeneratePair when |C_ij| >= 1 - 1e-12 on a weighted pair.
 */
double pl_general(double sigma2, const GeneralSample& sample, const CorrelationModel& corr,
                  const PairWeight& weight);

}  // namespace pairlik

#endif  // PAIRLIK_LIKELIHOOD_HPP
