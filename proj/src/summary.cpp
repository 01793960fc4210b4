#include "pairlik/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairlik/types.hpp"

namespace pairlik {

double pairwise_sum(std::span<const double> values) noexcept {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InsufficientSamples("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must be in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SampleSummary summarize(std::span<const double> samples) {
  if (samples.size() < 2) throw InsufficientSamples("summarize: at least two samples required");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  SampleSummary out;
  out.count = samples.size();
  out.q05 = quantile_sorted(sorted, 0.05);
  out.q25 = quantile_sorted(sorted, 0.25);
  out.q50 = quantile_sorted(sorted, 0.50);
  out.q75 = quantile_sorted(sorted, 0.75);
  out.q95 = quantile_sorted(sorted, 0.95);

  const auto m = static_cast<double>(samples.size());
  out.mean = pairwise_sum(samples) / m;
  std::vector<double> sq(samples.size());
  std::vector<double> quart(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = samples[i] - out.mean;
    sq[i] = d * d;
    quart[i] = sq[i] * sq[i];
  }
  const double ss = pairwise_sum(sq);
  out.variance = ss / (m - 1.0);
  const double m2 = ss / m;
  const double m4 = pairwise_sum(quart) / m;
  out.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
  return out;
}

std::vector<std::size_t> histogram(std::span<const double> samples, double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("histogram: need bins > 0 and hi > lo");
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    if (!std::isfinite(x)) continue;
    const double pos = std::floor((x - lo) / width);
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    ++counts[b];
  }
  return counts;
}

}  // namespace pairlik
