#ifndef PAIRLIK_SUMMARY_HPP
#define PAIRLIK_SUMMARY_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace pairlik {

/// Sum with a fixed binary-tree order; identical input gives identical bits.
double pairwise_sum(std::span<const double> values) noexcept;

/// Quantile by linear interpolation between order statistics (h = (m - 1) p).
double quantile_sorted(std::span<const double> sorted, double p);

struct SampleSummary {
  double q05 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;
  double mean = 0.0;
  double variance = 0.0;  ///< divisor m - 1
  double kurtosis = 0.0;  ///< excess: m4 / m2^2 - 3 with divisor m
  std::size_t count = 0;
};

/// Throws InsufficientSamples for fewer than two values.
SampleSummary summarize(std::span<const double> samples);

/// Counts in `bins` equal-width bins over [lo, hi); values outside are clipped to the end bins.
std::vector<std::size_t> histogram(std::span<const double> samples, double lo, double hi, std::size_t bins);

}  // namespace pairlik

#endif  // PAIRLIK_SUMMARY_HPP
