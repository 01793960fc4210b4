#ifndef PAIRLIK_TYPES_HPP
#define PAIRLIK_TYPES_HPP

/** @file
 * Domain types shared by every pairlik module: covariance parameters,
 * observation designs, lag weights, sample paths and parameter boxes.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairlik {

/// Base class of all numerical failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two observation points coincide (or a correlation reaches +-1).
class DegeneratePair : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// An objective returned NaN or +-inf where a finite value was required.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// An open-ray search kept hitting the edge of its expanded bracket.
class BracketExhausted : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Smallest admissible gap between two observation points.
inline constexpr double kMinSpacing = 1e-12;

/**
 * Covariance parameters (theta, sigma2) of the exponential model
 * cov(Z(s), Z(t)) = sigma2 * exp(-theta |s - t|).
 *
 * theta is the inverse correlation length, sigma2 the variance. Only the
 * product sigma2 * theta (the microergodic parameter) is consistently
 * estimable from observations in a bounded interval.
 */
class CovParams {
 public:
  /// Throws std::invalid_argument unless both values are finite and > 0.
  CovParams(double theta, double sigma2);

  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double sigma2() const noexcept { return sigma2_; }
  [[nodiscard]] double microergodic() const noexcept { return theta_ * sigma2_; }

  friend bool operator==(const CovParams&, const CovParams&) = default;

 private:
  double theta_;
  double sigma2_;
};

/// Strictly increasing observation points in [0, 1].
class Design {
 public:
  /// Validates ordering, range and the kMinSpacing gap.
  explicit Design(std::vector<double> points);

  /// s_i = i / (n - 1), i = 0..n-1.
  static Design uniform(std::size_t n);

  /// Grid with step 0.02 / L from 0 to 1, i.e. n = 50 L + 1 points.
  static Design regular_grid(std::size_t L);

  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return points_[i]; }
  [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
  [[nodiscard]] double min_spacing() const noexcept;

 private:
  std::vector<double> points_;
};

/**
 * Lag weights w_1..w_K. Pair (i, j) receives weight w_{|i-j|}, and zero
 * beyond the cutoff K. Trailing zeros are trimmed so that w_K > 0.
 */
class WeightSeq {
 public:
  explicit WeightSeq(std::vector<double> weights);

  /// w_k = 1 for k = 1..K.
  static WeightSeq unit(std::size_t K);

  [[nodiscard]] std::size_t cutoff() const noexcept { return w_.size(); }
  /// Weight at lag k >= 1; zero for k > K.
  [[nodiscard]] double at(std::size_t k) const noexcept {
    return (k >= 1 && k <= w_.size()) ? w_[k - 1] : 0.0;
  }
  [[nodiscard]] double sum() const noexcept { return sum_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return w_; }

  /// Copy with every weight multiplied by factor > 0.
  [[nodiscard]] WeightSeq scaled(double factor) const;

 private:
  std::vector<double> w_;
  double sum_ = 0.0;
};

/// Observed values Z(s_1), ..., Z(s_n) on a design.
class SamplePath {
 public:
  SamplePath(Design design, std::vector<double> values);

  [[nodiscard]] const Design& design() const noexcept { return design_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

 private:
  Design design_;
  std::vector<double> values_;
};

/**
 * Either a closed interval [lo, hi] or the open ray (0, inf).
 *
 * Generic intervals may have any finite lo <= hi; ParamBox adds the
 * positivity requirement.
 */
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool ray = false;

  static Interval closed(double lo, double hi);
  static Interval positive_ray();

  [[nodiscard]] bool contains(double x, double slack = 0.0) const noexcept;
  [[nodiscard]] bool singleton() const noexcept { return !ray && lo == hi; }
};

/// Admissible set J for (theta, sigma2); at most one side is the open ray.
class ParamBox {
 public:
  ParamBox(Interval theta, Interval sigma2);

  [[nodiscard]] const Interval& theta() const noexcept { return theta_; }
  [[nodiscard]] const Interval& sigma2() const noexcept { return sigma2_; }
  [[nodiscard]] bool contains(const CovParams& p, double slack = 1e-10) const noexcept;

 private:
  Interval theta_;
  Interval sigma2_;
};

/// Sides of a box touched by an optimum.
enum ActiveBound : std::uint8_t {
  kNoBound = 0,
  kThetaLower = 1,
  kThetaUpper = 2,
  kSigma2Lower = 4,
  kSigma2Upper = 8,
};

}  // namespace pairlik

#endif  // PAIRLIK_TYPES_HPP
