#include "pairlik/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pairlik {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

CovParams::CovParams(double theta, double sigma2) : theta_(theta), sigma2_(sigma2) {
  if (!positive_finite(theta) || !positive_finite(sigma2)) {
    throw std::invalid_argument("CovParams: theta and sigma2 must be finite and > 0");
  }
}

Design::Design(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("Design: no points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double s = points_[i];
    if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
      throw std::invalid_argument("Design: points must lie in [0, 1]");
    }
    if (i > 0 && !(s - points_[i - 1] >= kMinSpacing)) {
      throw std::invalid_argument("Design: points must be strictly increasing with spacing >= 1e-12");
    }
  }
}

Design Design::uniform(std::size_t n) {
  if (n < 2) throw std::invalid_argument("Design::uniform: n >= 2 required");
  std::vector<double> s(n);
  const auto last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i) / last;
  return Design(std::move(s));
}

Design Design::regular_grid(std::size_t L) {
  if (L == 0) throw std::invalid_argument("Design::regular_grid: L >= 1 required");
  return uniform(50 * L + 1);
}

double Design::min_spacing() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) m = std::min(m, points_[i] - points_[i - 1]);
  return m;
}

WeightSeq::WeightSeq(std::vector<double> weights) : w_(std::move(weights)) {
  for (double w : w_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("WeightSeq: weights must be finite and >= 0");
    }
  }
  while (!w_.empty() && w_.back() == 0.0) w_.pop_back();
  if (w_.empty()) throw std::invalid_argument("WeightSeq: at least one weight must be > 0");
  sum_ = std::accumulate(w_.begin(), w_.end(), 0.0);
}

WeightSeq WeightSeq::unit(std::size_t K) {
  if (K == 0) throw std::invalid_argument("WeightSeq::unit: K >= 1 required");
  return WeightSeq(std::vector<double>(K, 1.0));
}

WeightSeq WeightSeq::scaled(double factor) const {
  if (!positive_finite(factor)) throw std::invalid_argument("WeightSeq::scaled: factor must be > 0");
  std::vector<double> w = w_;
  for (double& x : w) x *= factor;
  return WeightSeq(std::move(w));
}

SamplePath::SamplePath(Design design, std::vector<double> values)
    : design_(std::move(design)), values_(std::move(values)) {
  if (values_.size() != design_.size()) {
    throw std::invalid_argument("SamplePath: value count does not match design size");
  }
  for (double z : values_) {
    if (!std::isfinite(z)) throw std::invalid_argument("SamplePath: values must be finite");
  }
}

Interval Interval::closed(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw std::invalid_argument("Interval: need finite lo <= hi");
  }
  return Interval{lo, hi, false};
}

Interval Interval::positive_ray() {
  return Interval{0.0, std::numeric_limits<double>::infinity(), true};
}

bool Interval::contains(double x, double slack) const noexcept {
  if (ray) return x > 0.0 && std::isfinite(x);
  return x >= lo - slack && x <= hi + slack;
}

ParamBox::ParamBox(Interval theta, Interval sigma2) : theta_(theta), sigma2_(sigma2) {
  if (theta_.ray && sigma2_.ray) {
    throw std::invalid_argument("ParamBox: at most one side may be the open ray");
  }
  for (const Interval* side : {&theta_, &sigma2_}) {
    if (!side->ray && !(side->lo > 0.0 && side->lo <= side->hi && std::isfinite(side->hi))) {
      throw std::invalid_argument("ParamBox: bounds must satisfy 0 < lo <= hi < inf");
    }
  }
}

bool ParamBox::contains(const CovParams& p, double slack) const noexcept {
  return theta_.contains(p.theta(), slack) && sigma2_.contains(p.sigma2(), slack);
}

}  // namespace pairlik
