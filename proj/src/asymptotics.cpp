#include "pairlik/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pairlik/summary.hpp"

namespace pairlik {

double b_coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l, const Design& design) {
  const std::size_t n = design.size();
  if (!(i < j && j < n && k < l && l < n)) throw std::out_of_range("b_coeff: need i < j < n and k < l < n");
  if (i > k) {
    std::swap(i, k);
    std::swap(j, l);
  }
  if (j <= k) return 0.0;
  const double sij = design[j] - design[i];
  const double skl = design[l] - design[k];
  if (j <= l) {
    const double sjk = design[j] - design[k];
    return sjk * sjk / (sij * skl);
  }
  return skl / sij;
}

double increment_covariance(std::size_t i, std::size_t j, std::size_t k, std::size_t l, const Design& design,
                            double theta0) {
  auto corr = [&](std::size_t a, std::size_t b) { return std::exp(-theta0 * std::abs(design[a] - design[b])); };
  const double dij = theta0 * (design[j] - design[i]);
  const double dkl = theta0 * (design[l] - design[k]);
  const double rho_ij = std::exp(-dij);
  const double rho_kl = std::exp(-dkl);
  const double q_ij = -std::expm1(-2.0 * dij);
  const double q_kl = -std::expm1(-2.0 * dkl);
  const double num = corr(j, l) - rho_kl * corr(j, k) - rho_ij * corr(i, l) + rho_ij * rho_kl * corr(i, k);
  return num / std::sqrt(q_ij * q_kl);
}

namespace {

void check_tau_inputs(const Design& design, const WeightSeq& w) {
  if (design.size() <= w.cutoff()) throw std::invalid_argument("tau2: need n > K");
}

// (2/n) sum_i partial(i), where partial(i) covers the pairs (i, j) against
// every (k, l) with |k - i| < K, the only ones with overlapping increments.
template <typename PairTerm>
double tau2_kernel(const Design& design, const WeightSeq& w, PairTerm&& term) {
  const std::size_t n = design.size();
  const std::size_t K = w.cutoff();
  std::vector<double> partial(n - 1, 0.0);
  const auto rows = static_cast<long long>(n - 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double acc = 0.0;
    const std::size_t k_first = i >= K ? i - K + 1 : 0;
    const std::size_t k_last = std::min(n - 2, i + K - 1);
    for (std::size_t j = i + 1; j <= std::min(n - 1, i + K); ++j) {
      const double wij = w.at(j - i);
      if (wij == 0.0) continue;
      for (std::size_t k = k_first; k <= k_last; ++k) {
        for (std::size_t l = k + 1; l <= std::min(n - 1, k + K); ++l) {
          const double wkl = w.at(l - k);
          if (wkl == 0.0) continue;
          acc += wij * wkl * term(i, j, k, l);
        }
      }
    }
    partial[i] = acc;
  }
  return 2.0 * pairwise_sum(partial) / static_cast<double>(n);
}

}  // namespace

TauResult tau2_approx(const Design& design, const WeightSeq& w) {
  check_tau_inputs(design, w);
  const double tau2 = tau2_kernel(design, w, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return b_coeff(i, j, k, l, design);
  });
  return {tau2, TauMethod::Approx, design.size(), w.cutoff()};
}

TauResult tau2_exact(const Design& design, const WeightSeq& w, double theta0) {
  check_tau_inputs(design, w);
  if (!(std::isfinite(theta0) && theta0 > 0.0)) throw std::invalid_argument("tau2_exact: theta0 must be > 0");
  const double tau2 = tau2_kernel(design, w, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    const double c = increment_covariance(i, j, k, l, design, theta0);
    return c * c;
  });
  return {tau2, TauMethod::Exact, design.size(), w.cutoff()};
}

double asymptotic_variance(AsymptoticKind kind, const CovParams& psi0, const Design& design, const WeightSeq& w) {
  const double m = psi0.microergodic();
  const auto n = static_cast<double>(design.size());
  if (kind == AsymptoticKind::MLE) return 2.0 * m * m / n;
  const double s = w.sum();
  return m * m * tau2_approx(design, w).tau2 / (n * s * s);
}

double wp_normalizer(const Design& design, const WeightSeq& w) {
  return std::sqrt(tau2_approx(design, w).tau2) / w.sum();
}

double normalize(double estimate, const CovParams& psi0, std::size_t n, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("normalize: C must be > 0");
  return std::sqrt(static_cast<double>(n)) / C * (estimate / psi0.microergodic() - 1.0);
}

}  // namespace pairlik
