#include "pairlik/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pairlik {

double profile_sigma2(ObjectiveKind kind, double theta, const SamplePath& path, const WeightSeq& w) {
  if (!(std::isfinite(theta) && theta > 0.0)) throw std::invalid_argument("profile_sigma2: theta must be > 0");
  return profile_terms(kind, theta, path, w).argmin();
}

namespace {

struct ClampedProfile {
  double sigma2;
  std::uint8_t active;
  bool degenerate;
};

// Minimizer over the sigma2 side of the box for given profile terms.
ClampedProfile clamp_profile(const ProfileTerms& t, const Interval& side, const MinimizeOptions& opts) {
  const double lower = side.ray ? opts.ray_lo : side.lo;
  if (!(t.quad > 0.0)) return {lower, side.ray ? kNoBound : kSigma2Lower, true};
  const double s2 = t.argmin();
  if (side.ray) return {s2, kNoBound, false};
  if (s2 <= side.lo) return {side.lo, kSigma2Lower, false};
  if (s2 >= side.hi) return {side.hi, kSigma2Upper, false};
  return {s2, kNoBound, false};
}

}  // namespace

EstimationResult estimate(ObjectiveKind kind, const SamplePath& path, const WeightSeq& w, const ParamBox& box,
                          const MinimizeOptions& opts) {
  if (kind != ObjectiveKind::Full && path.size() < 2) {
    throw std::invalid_argument("estimate: pairwise criteria need at least two observations");
  }
  auto profiled = [&](double theta) {
    const ProfileTerms t = profile_terms(kind, theta, path, w);
    return t.value(clamp_profile(t, box.sigma2(), opts).sigma2);
  };
  const BoxMinimum best = minimize_interval(profiled, box.theta(), opts);
  const double theta = best.x[0];
  const ProfileTerms t = profile_terms(kind, theta, path, w);
  const ClampedProfile s2 = clamp_profile(t, box.sigma2(), opts);

  EstimationResult out{CovParams(theta, s2.sigma2)};
  out.microergodic = theta * s2.sigma2;
  out.objective_value = Objective(kind, path, w)(out.psi_hat);
  out.evaluations = best.evaluations + 1;
  out.converged = best.converged && !s2.degenerate;
  out.active_bounds = static_cast<std::uint8_t>(best.active | s2.active);
  return out;
}

EstimationResult wpmle(const SamplePath& path, const WeightSeq& w, const ParamBox& box, const MinimizeOptions& opts) {
  return estimate(ObjectiveKind::PL, path, w, box, opts);
}

EstimationResult wpcmle(const SamplePath& path, const WeightSeq& w, const ParamBox& box, const MinimizeOptions& opts) {
  return estimate(ObjectiveKind::PCL, path, w, box, opts);
}

EstimationResult mle(const SamplePath& path, const ParamBox& box, const MinimizeOptions& opts) {
  static const WeightSeq unused = WeightSeq::unit(1);
  return estimate(ObjectiveKind::Full, path, unused, box, opts);
}

double variance_wpmle_closed_form(const GeneralSample& sample, const CorrelationModel& corr,
                                  const PairWeight& weight) {
  const PointCloud& x = sample.points;
  const std::size_t n = x.size();
  const auto dim = static_cast<std::size_t>(x.dim());
  std::vector<double> delta(dim);
  double weight_sum = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t d = 0; d < dim; ++d) delta[d] = x.point(j)[d] - x.point(i)[d];
      const double wij = weight(delta);
      if (wij == 0.0) continue;
      const double c = corr(delta);
      if (std::abs(c) >= 1.0 - 1e-12) throw DegeneratePair("variance_wpmle_closed_form: correlation too close to 1");
      const double yi = sample.values[i];
      const double yj = sample.values[j];
      weight_sum += wij;
      total += wij * (yi * yi + yj * yj - 2.0 * c * yi * yj) / (1.0 - c * c);
    }
  }
  if (!(weight_sum > 0.0)) throw std::invalid_argument("variance_wpmle_closed_form: all pair weights are zero");
  return total / (2.0 * weight_sum);
}

}  // namespace pairlik
