#ifndef PAIRLIK_COVARIANCE_HPP
#define PAIRLIK_COVARIANCE_HPP

/** @file
 * Exponential covariance, known correlation models for the variance-only
 * problem, and exact samplers for both.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "pairlik/rng.hpp"
#include "pairlik/types.hpp"

namespace pairlik {

/// sigma2 * exp(-theta |s - t|).
double exp_cov(const CovParams& params, double s, double t) noexcept;

/**
 * Isotropic stationary correlation C(x) on R^d, d in {1, 2}.
 *
 * Matern correlations use the closed forms for nu in {0.5, 1.5, 2.5},
 * written with theta multiplying the distance:
 *   nu = 0.5: exp(-theta r)
 *   nu = 1.5: (1 + theta r) exp(-theta r)
 *   nu = 2.5: (1 + theta r + (theta r)^2 / 3) exp(-theta r)
 * so Matern(0.5, theta) coincides with the isotropic exponential.
 */
class CorrelationModel {
 public:
  enum class Kind { Exponential, Matern };

  static CorrelationModel exponential(double theta, int dim = 1);
  static CorrelationModel matern(double nu, double theta, int dim = 1);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double nu() const noexcept { return nu_; }
  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }

  /// Correlation at Euclidean distance r >= 0.
  [[nodiscard]] double at_distance(double r) const noexcept;
  /// Correlation at lag vector delta (size dim()).
  [[nodiscard]] double operator()(std::span<const double> delta) const noexcept;

 private:
  CorrelationModel(Kind kind, double nu, double theta, int dim);

  Kind kind_;
  double nu_;
  double theta_;
  int dim_;
};

/// n points in [0,1]^d stored row-major.
class PointCloud {
 public:
  PointCloud(int dim, std::vector<double> coords);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }
  [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }

  /// First m points (m <= size()).
  [[nodiscard]] PointCloud prefix(std::size_t m) const;

  /// n i.i.d. uniform points on [0,1]^dim.
  static PointCloud uniform(std::size_t n, int dim, RngStream& rng);

 private:
  int dim_;
  std::vector<double> coords_;
};

/// Euclidean distance between points i and j.
double distance(const PointCloud& cloud, std::size_t i, std::size_t j) noexcept;

/// Values Y(x_1), ..., Y(x_n) observed on a point cloud.
struct GeneralSample {
  PointCloud points;
  std::vector<double> values;
};

/**
 * Exact draw of the stationary Ornstein-Uhlenbeck process on a design via
 * its AR(1) recursion:
 *   Z_1 ~ N(0, sigma2),
 *   Z_{i+1} = e^{-theta d_i} Z_i + sqrt(sigma2 (1 - e^{-2 theta d_i})) eps_i.
 */
SamplePath simulate_ou(const CovParams& params, const Design& design, RngStream& rng);

/// Same recursion for arbitrary sorted positions; used where no Design exists.
std::vector<double> simulate_ou_values(const CovParams& params, std::span<const double> sorted_points,
                                       RngStream& rng);

/**
 * Exact draw of a zero-mean process with covariance sigma2 * C via dense
 * Cholesky. Retries once with 1e-10 * sigma2 added to the diagonal.
 * Throws NotPositiveDefinite for repeated points or when the retry fails.
 */
GeneralSample simulate_general(const CorrelationModel& corr, double sigma2, const PointCloud& points,
                               RngStream& rng);

}  // namespace pairlik

#endif  // PAIRLIK_COVARIANCE_HPP
