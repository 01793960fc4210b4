// Serial, untruncated tau2 sums. Slow on purpose: they visit every pair of
// weighted index pairs and serve as the reference for the parallel kernels.

#include <cmath>
#include <stdexcept>

#include "pairlik/asymptotics.hpp"

namespace pairlik::reference {

namespace {

template <typename PairTerm>
double full_sum(const Design& design, const WeightSeq& w, PairTerm&& term) {
  const std::size_t n = design.size();
  if (n <= w.cutoff()) throw std::invalid_argument("tau2: need n > K");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n && j - i <= w.cutoff(); ++j) {
      const double wij = w.at(j - i);
      if (wij == 0.0) continue;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t l = k + 1; l < n && l - k <= w.cutoff(); ++l) {
          const double wkl = w.at(l - k);
          if (wkl == 0.0) continue;
          total += wij * wkl * term(i, j, k, l);
        }
      }
    }
  }
  return 2.0 * total / static_cast<double>(n);
}

}  // namespace

double tau2_approx_full(const Design& design, const WeightSeq& w) {
  return full_sum(design, w, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return b_coeff(i, j, k, l, design);
  });
}

double tau2_exact_full(const Design& design, const WeightSeq& w, double theta0) {
  return full_sum(design, w, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    const double c = increment_covariance(i, j, k, l, design, theta0);
    return c * c;
  });
}

}  // namespace pairlik::reference
