#include "pairlik/covariance.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace pairlik {

double exp_cov(const CovParams& params, double s, double t) noexcept {
  return params.sigma2() * std::exp(-params.theta() * std::abs(s - t));
}

CorrelationModel::CorrelationModel(Kind kind, double nu, double theta, int dim)
    : kind_(kind), nu_(nu), theta_(theta), dim_(dim) {
  if (!(std::isfinite(theta) && theta > 0.0)) throw std::invalid_argument("CorrelationModel: theta must be > 0");
  if (dim != 1 && dim != 2) throw std::invalid_argument("CorrelationModel: dim must be 1 or 2");
}

CorrelationModel CorrelationModel::exponential(double theta, int dim) {
  return CorrelationModel(Kind::Exponential, 0.5, theta, dim);
}

CorrelationModel CorrelationModel::matern(double nu, double theta, int dim) {
  if (nu != 0.5 && nu != 1.5 && nu != 2.5) {
    throw std::invalid_argument("CorrelationModel: Matern smoothness must be 0.5, 1.5 or 2.5");
  }
  return CorrelationModel(Kind::Matern, nu, theta, dim);
}

double CorrelationModel::at_distance(double r) const noexcept {
  const double x = theta_ * r;
  const double e = std::exp(-x);
  if (kind_ == Kind::Exponential || nu_ == 0.5) return e;
  if (nu_ == 1.5) return (1.0 + x) * e;
  return (1.0 + x + x * x / 3.0) * e;
}

double CorrelationModel::operator()(std::span<const double> delta) const noexcept {
  double r2 = 0.0;
  for (double d : delta) r2 += d * d;
  return at_distance(std::sqrt(r2));
}

PointCloud::PointCloud(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("PointCloud: dim must be 1 or 2");
  if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("PointCloud: coordinate count must be a positive multiple of dim");
  }
  for (double c : coords_) {
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) throw std::invalid_argument("PointCloud: points must lie in [0,1]^d");
  }
}

PointCloud PointCloud::prefix(std::size_t m) const {
  if (m == 0 || m > size()) throw std::invalid_argument("PointCloud::prefix: bad size");
  return PointCloud(dim_, std::vector<double>(coords_.begin(), coords_.begin() + m * static_cast<std::size_t>(dim_)));
}

PointCloud PointCloud::uniform(std::size_t n, int dim, RngStream& rng) {
  std::vector<double> c(n * static_cast<std::size_t>(dim));
  for (double& x : c) x = rng.uniform();
  return PointCloud(dim, std::move(c));
}

double distance(const PointCloud& cloud, std::size_t i, std::size_t j) noexcept {
  const auto a = cloud.point(i);
  const auto b = cloud.point(j);
  double r2 = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) r2 += (a[d] - b[d]) * (a[d] - b[d]);
  return std::sqrt(r2);
}

std::vector<double> simulate_ou_values(const CovParams& params, std::span<const double> sorted_points,
                                       RngStream& rng) {
  std::vector<double> z(sorted_points.size());
  if (z.empty()) return z;
  const double sd = std::sqrt(params.sigma2());
  z[0] = sd * rng.normal();
  for (std::size_t i = 1; i < z.size(); ++i) {
    const double lag = params.theta() * (sorted_points[i] - sorted_points[i - 1]);
    const double rho = std::exp(-lag);
    const double innovation_var = -std::expm1(-2.0 * lag);
    z[i] = rho * z[i - 1] + sd * std::sqrt(innovation_var) * rng.normal();
  }
  return z;
}

SamplePath simulate_ou(const CovParams& params, const Design& design, RngStream& rng) {
  return SamplePath(design, simulate_ou_values(params, design.points(), rng));
}

GeneralSample simulate_general(const CorrelationModel& corr, double sigma2, const PointCloud& points,
                               RngStream& rng) {
  if (!(std::isfinite(sigma2) && sigma2 > 0.0)) throw std::invalid_argument("simulate_general: sigma2 must be > 0");
  if (points.dim() != corr.dim()) throw std::invalid_argument("simulate_general: dimension mismatch");
  const std::size_t n = points.size();
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd cov(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = sigma2;
    for (std::size_t j = 0; j < i; ++j) {
      const double r = distance(points, i, j);
      if (r == 0.0) throw NotPositiveDefinite("simulate_general: repeated observation point");
      const double c = sigma2 * corr.at_distance(r);
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
      cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    cov.diagonal().array() += 1e-10 * sigma2;
    llt.compute(cov);
    if (llt.info() != Eigen::Success) {
      throw NotPositiveDefinite("simulate_general: covariance matrix is not positive definite");
    }
  }
  Eigen::VectorXd eps(N);
  for (Eigen::Index i = 0; i < N; ++i) eps(i) = rng.normal();
  const Eigen::VectorXd y = llt.matrixL() * eps;
  return GeneralSample{points, std::vector<double>(y.data(), y.data() + y.size())};
}

}  // namespace pairlik
