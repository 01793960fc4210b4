#include "pairlik/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairlik {

namespace {

// Quantities of one pair at lag distance d: rho = e^{-theta d},
// q = 1 - rho^2 through expm1, so tiny theta d keeps full precision.
struct PairGeometry {
  double rho;
  double q;
  double log_q;
};

inline PairGeometry geometry(double theta, double d) noexcept {
  const double x = theta * d;
  const double q = -std::expm1(-2.0 * x);
  return {std::exp(-x), q, std::log(q)};
}

inline void check_pair(double s, double t) {
  if (!(std::abs(s - t) >= kMinSpacing)) {
    throw DegeneratePair("pair likelihood: observation points closer than 1e-12");
  }
}

inline double pair_term(const PairGeometry& g, double sigma2, double zs, double zt) noexcept {
  const double r = zt - g.rho * zs;
  return 2.0 * std::log(sigma2) + g.log_q + zs * zs / sigma2 + r * r / (sigma2 * g.q);
}

inline double cond_term(const PairGeometry& g, double sigma2, double zs, double zt) noexcept {
  const double r = zt - g.rho * zs;
  return std::log(sigma2) + g.log_q + r * r / (sigma2 * g.q);
}

void require_pairs(const SamplePath& path) {
  if (path.size() < 2) throw std::invalid_argument("pairwise criterion: at least two observations required");
}

}  // namespace

double pair_loglik(const CovParams& psi, double s, double t, double zs, double zt) {
  check_pair(s, t);
  return pair_term(geometry(psi.theta(), std::abs(s - t)), psi.sigma2(), zs, zt);
}

double cond_pair_loglik(const CovParams& psi, double s, double t, double zs, double zt) {
  check_pair(s, t);
  return cond_term(geometry(psi.theta(), std::abs(s - t)), psi.sigma2(), zs, zt);
}

double pl_direct(const CovParams& psi, const SamplePath& path, const WeightSeq& w) {
  require_pairs(path);
  const auto s = path.design().points();
  const auto z = path.values();
  const std::size_t n = path.size();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t last = std::min(n - 1, i + w.cutoff());
    for (std::size_t j = i + 1; j <= last; ++j) {
      const double wk = w.at(j - i);
      if (wk == 0.0) continue;
      total += wk * pair_term(geometry(psi.theta(), s[j] - s[i]), psi.sigma2(), z[i], z[j]);
    }
  }
  return total;
}

double pcl_direct(const CovParams& psi, const SamplePath& path, const WeightSeq& w) {
  require_pairs(path);
  const auto s = path.design().points();
  const auto z = path.values();
  const std::size_t n = path.size();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t last = std::min(n - 1, i + w.cutoff());
    for (std::size_t j = i + 1; j <= last; ++j) {
      const double wk = w.at(j - i);
      if (wk == 0.0) continue;
      const PairGeometry g = geometry(psi.theta(), s[j] - s[i]);
      total += wk * (cond_term(g, psi.sigma2(), z[i], z[j]) + cond_term(g, psi.sigma2(), z[j], z[i]));
    }
  }
  return total;
}

std::vector<SubsampleIndex> subsample_indices(std::size_t n, std::size_t K) {
  std::vector<SubsampleIndex> out;
  if (n < 2) return out;
  const std::size_t kmax = std::min(K, n - 1);
  for (std::size_t k = 1; k <= kmax; ++k) {
    for (std::size_t a = 0; a < k; ++a) {
      // Largest j with a + (j + 1) k <= n - 1; empty when a + k > n - 1.
      if (a + k > n - 1) continue;
      const std::size_t jmax = (n - 1 - a - k) / k;
      for (std::size_t j = 0; j <= jmax; ++j) out.push_back({k, a, j});
    }
  }
  return out;
}

namespace {

template <typename PairFn>
double chain_sum(const SamplePath& path, const WeightSeq& w, PairFn&& pair_fn) {
  require_pairs(path);
  const auto s = path.design().points();
  const auto z = path.values();
  const std::size_t n = path.size();
  const std::size_t kmax = std::min(w.cutoff(), n - 1);
  double total = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double wk = w.at(k);
    if (wk == 0.0) continue;
    double lag_total = 0.0;
    for (std::size_t a = 0; a < k && a + k <= n - 1; ++a) {
      for (std::size_t cur = a; cur + k <= n - 1; cur += k) {
        lag_total += pair_fn(s[cur], s[cur + k], z[cur], z[cur + k]);
      }
    }
    total += wk * lag_total;
  }
  return total;
}

}  // namespace

double pl_reindexed(const CovParams& psi, const SamplePath& path, const WeightSeq& w) {
  return chain_sum(path, w, [&](double s, double t, double zs, double zt) {
    return pair_term(geometry(psi.theta(), t - s), psi.sigma2(), zs, zt);
  });
}

double pcl_reindexed(const CovParams& psi, const SamplePath& path, const WeightSeq& w) {
  return chain_sum(path, w, [&](double s, double t, double zs, double zt) {
    const PairGeometry g = geometry(psi.theta(), t - s);
    return cond_term(g, psi.sigma2(), zs, zt) + cond_term(g, psi.sigma2(), zt, zs);
  });
}

double full_neg2_loglik(const CovParams& psi, const SamplePath& path) {
  const auto s = path.design().points();
  const auto z = path.values();
  const double sigma2 = psi.sigma2();
  double total = z[0] * z[0] / sigma2 + std::log(sigma2);
  for (std::size_t i = 1; i < path.size(); ++i) {
    total += cond_term(geometry(psi.theta(), s[i] - s[i - 1]), sigma2, z[i - 1], z[i]);
  }
  return total;
}

double ProfileTerms::value(double sigma2) const noexcept {
  return log_coef * std::log(sigma2) + quad / sigma2 + rest;
}

ProfileTerms profile_terms(ObjectiveKind kind, double theta, const SamplePath& path, const WeightSeq& w) {
  const auto s = path.design().points();
  const auto z = path.values();
  const std::size_t n = path.size();
  ProfileTerms t;
  if (kind == ObjectiveKind::Full) {
    t.log_coef = static_cast<double>(n);
    t.quad = z[0] * z[0];
    for (std::size_t i = 1; i < n; ++i) {
      const PairGeometry g = geometry(theta, s[i] - s[i - 1]);
      const double r = z[i] - g.rho * z[i - 1];
      t.quad += r * r / g.q;
      t.rest += g.log_q;
    }
    return t;
  }
  require_pairs(path);
  const bool conditional = kind == ObjectiveKind::PCL;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t last = std::min(n - 1, i + w.cutoff());
    for (std::size_t j = i + 1; j <= last; ++j) {
      const double wk = w.at(j - i);
      if (wk == 0.0) continue;
      const PairGeometry g = geometry(theta, s[j] - s[i]);
      const double fwd = z[j] - g.rho * z[i];
      t.log_coef += 2.0 * wk;
      if (conditional) {
        const double back = z[i] - g.rho * z[j];
        t.quad += wk * (fwd * fwd + back * back) / g.q;
        t.rest += 2.0 * wk * g.log_q;
      } else {
        t.quad += wk * (z[i] * z[i] + fwd * fwd / g.q);
        t.rest += wk * g.log_q;
      }
    }
  }
  return t;
}

double Objective::operator()(const CovParams& psi) const {
  switch (kind_) {
    case ObjectiveKind::PL:
      return pl_direct(psi, *path_, *weights_);
    case ObjectiveKind::PCL:
      return pcl_direct(psi, *path_, *weights_);
    case ObjectiveKind::Full:
      return full_neg2_loglik(psi, *path_);
  }
  return 0.0;
}

PairWeight unit_pair_weight() {
  return [](std::span<const double>) { return 1.0; };
}

double pl_general(double sigma2, const GeneralSample& sample, const CorrelationModel& corr,
                  const PairWeight& weight) {
  if (!(std::isfinite(sigma2) && sigma2 > 0.0)) throw std::invalid_argument("pl_general: sigma2 must be > 0");
  const PointCloud& x = sample.points;
  const std::size_t n = x.size();
  const auto dim = static_cast<std::size_t>(x.dim());
  std::vector<double> delta(dim);
  const double log_s2 = std::log(sigma2);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t d = 0; d < dim; ++d) delta[d] = x.point(j)[d] - x.point(i)[d];
      const double wij = weight(delta);
      if (wij == 0.0) continue;
      const double c = corr(delta);
      if (std::abs(c) >= 1.0 - 1e-12) throw DegeneratePair("pl_general: correlation too close to 1");
      const double q = 1.0 - c * c;
      const double yi = sample.values[i];
      const double r = sample.values[j] - c * yi;
      total += wij * (2.0 * log_s2 + std::log(q) + yi * yi / sigma2 + r * r / (sigma2 * q));
    }
  }
  return total;
}

}  // namespace pairlik
