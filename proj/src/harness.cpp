#include "pairlik/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pairlik/asymptotics.hpp"
#include "pairlik/covariance.hpp"
#include "pairlik/estimate.hpp"
#include "pairlik/likelihood.hpp"

namespace pairlik {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Stream tag offset separating the variance-only draws from the 1-D paths.
constexpr std::uint32_t kAppendixTag = 0x40000000u;
constexpr std::uint32_t kPathwiseTag = 0x7fffffffu;

const std::vector<std::size_t> kDefaultSizes{51, 101, 201, 401, 801};

// Runs body(r) for every replication; body must not throw.
template <typename Body>
void for_each_replication(std::size_t reps, int threads, Body&& body) {
  const auto count = static_cast<long long>(reps);
  const int nthreads = std::max(1, threads);
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
  for (long long r = 0; r < count; ++r) body(static_cast<std::size_t>(r));
}

double run_estimator(Estimator e, const SamplePath& path, const WeightSeq& w, const ParamBox& box,
                     const MinimizeOptions& opts) {
  EstimationResult res = [&] {
    switch (e) {
      case Estimator::MLE:
        return mle(path, box, opts);
      case Estimator::WPMLE:
        return wpmle(path, w, box, opts);
      case Estimator::WPCMLE:
        return wpcmle(path, w, box, opts);
    }
    throw std::logic_error("unknown estimator");
  }();
  if (!res.converged || !std::isfinite(res.microergodic)) return kNaN;
  return res.microergodic;
}

ReportRow base_row(const ExperimentConfig& config, const EstimateBatch& batch) {
  ReportRow row;
  row.scenario = to_string(config.scenario);
  row.estimator = to_string(batch.estimator);
  row.n = batch.n;
  if (batch.estimator != Estimator::MLE) row.K = batch.K;
  row.reps = batch.values.size() - batch.failures;
  row.failures = batch.failures;
  row.seed = config.base_seed;
  return row;
}

std::optional<double> variance_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  if (xs.size() == 1) return 0.0;
  return summarize(xs).variance;
}

// summarize() needs two samples; a single replication still gets a row with
// zero spread and an undefined kurtosis.
std::optional<SampleSummary> stats_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  if (xs.size() >= 2) return summarize(xs);
  const double v = xs.front();
  return SampleSummary{v, v, v, v, v, v, 0.0, kNaN, 1};
}

void check_acceptance(const ExperimentConfig& config, const Report& report) {
  if (!config.acceptance) return;
  for (const auto& row : report.rows) {
    if (row.failures > 0) {
      throw ExperimentFailed("replication failures in " + row.scenario + " " + row.estimator +
                             " n=" + std::to_string(row.n));
    }
  }
}

// One path per replication, every requested estimator evaluated on it.
std::vector<EstimateBatch> simulate_and_estimate(const ExperimentConfig& config, std::size_t n,
                                                 const std::vector<std::pair<Estimator, WeightSeq>>& jobs) {
  const Design design = Design::uniform(n);
  std::vector<EstimateBatch> batches(jobs.size());
  for (std::size_t b = 0; b < jobs.size(); ++b) {
    batches[b].estimator = jobs[b].first;
    batches[b].n = n;
    batches[b].K = jobs[b].first == Estimator::MLE ? 0 : jobs[b].second.cutoff();
    batches[b].values.assign(config.replications, kNaN);
  }
  for_each_replication(config.replications, config.threads, [&](std::size_t r) {
    RngStream rng(config.base_seed, r, static_cast<std::uint32_t>(n));
    const SamplePath path = simulate_ou(config.psi0, design, rng);
    for (std::size_t b = 0; b < jobs.size(); ++b) {
      double value = kNaN;
      try {
        value = run_estimator(jobs[b].first, path, jobs[b].second, config.box, config.optimizer);
      } catch (const Error&) {
        value = kNaN;
      }
      batches[b].values[r] = value;
    }
  });
  for (auto& b : batches) {
    b.failures = static_cast<std::size_t>(std::count_if(b.values.begin(), b.values.end(),
                                                        [](double v) { return std::isnan(v); }));
  }
  return batches;
}

}  // namespace

std::vector<double> EstimateBatch::successes() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) out.push_back(v);
  }
  return out;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Table1: return "table1";
    case Scenario::Table2: return "table2";
    case Scenario::CaseI: return "case-i";
    case Scenario::CaseIII: return "case-iii";
    case Scenario::CaseIV: return "case-iv";
    case Scenario::AppendixB: return "appendix-b";
  }
  return "unknown";
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::MLE: return "MLE";
    case Estimator::WPMLE: return "WPMLE";
    case Estimator::WPCMLE: return "WPCMLE";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::Table1, Scenario::Table2, Scenario::CaseI, Scenario::CaseIII, Scenario::CaseIV,
                     Scenario::AppendixB}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

Estimator parse_estimator(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Estimator e : {Estimator::MLE, Estimator::WPMLE, Estimator::WPCMLE}) {
    if (to_string(e) == upper) return e;
  }
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

ExperimentConfig default_config(Scenario scenario) {
  ExperimentConfig c;
  c.scenario = scenario;
  c.n_list = kDefaultSizes;
  switch (scenario) {
    case Scenario::Table1:
      c.estimators = {Estimator::WPMLE, Estimator::WPCMLE, Estimator::MLE};
      break;
    case Scenario::Table2:
      c.estimators = {Estimator::WPMLE, Estimator::WPCMLE, Estimator::MLE};
      c.K_list = {1, 10, 20, 30};
      break;
    case Scenario::CaseIII:
      c.replications = 500;
      c.weights = WeightSeq({1.0, 1.0});
      c.box = ParamBox(Interval::closed(13.0, 17.0), Interval::positive_ray());
      c.estimators = {Estimator::WPMLE, Estimator::WPCMLE};
      break;
    case Scenario::CaseI:
      c.replications = 500;
      c.weights = WeightSeq({1.0, 1.0});
      c.box = ParamBox(Interval::closed(20.0, 40.0), Interval::closed(0.1, 2.0));
      c.estimators = {Estimator::WPMLE, Estimator::WPCMLE};
      break;
    case Scenario::CaseIV:
      c.replications = 500;
      c.weights = WeightSeq({1.0, 1.0});
      c.box = ParamBox(Interval::positive_ray(), Interval::closed(0.5, 2.0));
      c.estimators = {Estimator::WPMLE, Estimator::MLE};
      break;
    case Scenario::AppendixB:
      c.replications = 2000;
      c.n_list = {50, 100, 200, 400, 800};
      c.estimators = {};
      break;
  }
  return c;
}

Report run_table1(const ExperimentConfig& config) {
  Report report;
  for (std::size_t n : config.n_list) {
    const Design design = Design::uniform(n);
    std::vector<std::pair<Estimator, WeightSeq>> jobs;
    for (Estimator e : config.estimators) jobs.emplace_back(e, config.weights);
    auto batches = simulate_and_estimate(config, n, jobs);
    for (auto& batch : batches) {
      batch.normalizer = batch.estimator == Estimator::MLE ? std::sqrt(2.0) : wp_normalizer(design, config.weights);
      const std::vector<double> raw = batch.successes();
      std::vector<double> standardized(raw.size());
      std::transform(raw.begin(), raw.end(), standardized.begin(),
                     [&](double v) { return normalize(v, config.psi0, n, batch.normalizer); });
      ReportRow row = base_row(config, batch);
      row.stats = stats_of(standardized);
      batch.standardized = std::move(standardized);
      const double m0c = config.psi0.microergodic() * batch.normalizer;
      row.asym_var = m0c * m0c / static_cast<double>(n);
      row.sample_var = variance_of(raw);
      report.rows.push_back(std::move(row));
      report.batches.push_back(std::move(batch));
    }
  }
  check_acceptance(config, report);
  return report;
}

Report run_table2(const ExperimentConfig& config) {
  Report report;
  const bool want_mle = std::find(config.estimators.begin(), config.estimators.end(), Estimator::MLE) !=
                        config.estimators.end();
  for (std::size_t n : config.n_list) {
    const Design design = Design::uniform(n);
    std::vector<std::pair<Estimator, WeightSeq>> jobs;
    if (want_mle) jobs.emplace_back(Estimator::MLE, WeightSeq::unit(1));
    for (std::size_t K : config.K_list) {
      for (Estimator e : config.estimators) {
        if (e != Estimator::MLE) jobs.emplace_back(e, WeightSeq::unit(K));
      }
    }
    auto batches = simulate_and_estimate(config, n, jobs);
    for (std::size_t b = 0; b < batches.size(); ++b) {
      auto& batch = batches[b];
      ReportRow row = base_row(config, batch);
      const auto kind = batch.estimator == Estimator::MLE ? AsymptoticKind::MLE : AsymptoticKind::WP;
      row.asym_var = asymptotic_variance(kind, config.psi0, design, jobs[b].second);
      row.sample_var = variance_of(batch.successes());
      report.rows.push_back(std::move(row));
      report.batches.push_back(std::move(batch));
    }
  }
  check_acceptance(config, report);
  return report;
}

Report run_inconsistency(const ExperimentConfig& config) {
  Report report;
  const double target = config.psi0.microergodic();
  for (std::size_t n : config.n_list) {
    std::vector<std::pair<Estimator, WeightSeq>> jobs;
    for (Estimator e : config.estimators) jobs.emplace_back(e, config.weights);
    auto batches = simulate_and_estimate(config, n, jobs);
    for (auto& batch : batches) {
      const std::vector<double> raw = batch.successes();
      ReportRow row = base_row(config, batch);
      row.stats = stats_of(raw);
      row.sample_var = variance_of(raw);
      if (!raw.empty()) {
        std::vector<double> sq(raw.size());
        std::transform(raw.begin(), raw.end(), sq.begin(), [&](double v) { return (v - target) * (v - target); });
        row.rmse = std::sqrt(pairwise_sum(sq) / static_cast<double>(sq.size()));
      }
      report.rows.push_back(std::move(row));
      report.batches.push_back(std::move(batch));
    }
  }
  check_acceptance(config, report);
  return report;
}

namespace {

CorrelationModel appendix_correlation(const ExperimentConfig& config) {
  if (config.matern_nu == 0.5) return CorrelationModel::exponential(config.psi0.theta(), config.dim);
  return CorrelationModel::matern(config.matern_nu, config.psi0.theta(), config.dim);
}

// Exact draw of Y on the cloud: the Markov recursion on sorted positions
// for the 1-D exponential correlation, dense Cholesky otherwise.
GeneralSample draw_general(const ExperimentConfig& config, const CorrelationModel& corr, const PointCloud& points,
                           RngStream& rng) {
  if (corr.dim() == 1 && corr.kind() == CorrelationModel::Kind::Exponential) {
    const auto x = points.coords();
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> sorted(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = x[order[i]];
    const std::vector<double> z = simulate_ou_values(config.psi0, sorted, rng);
    std::vector<double> values(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) values[order[i]] = z[i];
    return GeneralSample{points, std::move(values)};
  }
  return simulate_general(corr, config.psi0.sigma2(), points, rng);
}

}  // namespace

Report run_appendix_b(const ExperimentConfig& config) {
  Report report;
  const CorrelationModel corr = appendix_correlation(config);
  const PairWeight weight = unit_pair_weight();
  for (std::size_t n : config.n_list) {
    EstimateBatch batch;
    batch.estimator = Estimator::WPMLE;
    batch.n = n;
    batch.values.assign(config.replications, kNaN);
    for_each_replication(config.replications, config.threads, [&](std::size_t r) {
      RngStream rng(config.base_seed, r, kAppendixTag + static_cast<std::uint32_t>(n));
      try {
        const PointCloud points = PointCloud::uniform(n, config.dim, rng);
        const GeneralSample sample = draw_general(config, corr, points, rng);
        batch.values[r] = variance_wpmle_closed_form(sample, corr, weight);
      } catch (const Error&) {
        batch.values[r] = kNaN;
      }
    });
    batch.failures = static_cast<std::size_t>(
        std::count_if(batch.values.begin(), batch.values.end(), [](double v) { return std::isnan(v); }));
    const std::vector<double> raw = batch.successes();
    ReportRow row;
    row.scenario = to_string(config.scenario);
    row.estimator = "WPMLE";
    row.n = n;
    row.reps = raw.size();
    row.failures = batch.failures;
    row.seed = config.base_seed;
    row.stats = stats_of(raw);
    row.sample_var = variance_of(raw);
    report.rows.push_back(std::move(row));
    report.batches.push_back(std::move(batch));
  }
  check_acceptance(config, report);
  return report;
}

std::vector<std::pair<double, double>> appendix_b_pathwise(const ExperimentConfig& config, std::size_t n_small,
                                                           std::size_t n_large, std::size_t paths) {
  if (!(n_small >= 2 && n_small <= n_large)) throw std::invalid_argument("appendix_b_pathwise: need 2 <= n_small <= n_large");
  const CorrelationModel corr = appendix_correlation(config);
  const PairWeight weight = unit_pair_weight();
  std::vector<std::pair<double, double>> out(paths, {kNaN, kNaN});
  for_each_replication(paths, config.threads, [&](std::size_t p) {
    RngStream rng(config.base_seed, p, kPathwiseTag);
    try {
      const PointCloud points = PointCloud::uniform(n_large, config.dim, rng);
      const GeneralSample full = draw_general(config, corr, points, rng);
      const GeneralSample head{points.prefix(n_small),
                               std::vector<double>(full.values.begin(), full.values.begin() + static_cast<long>(n_small))};
      out[p] = {variance_wpmle_closed_form(head, corr, weight), variance_wpmle_closed_form(full, corr, weight)};
    } catch (const Error&) {
      out[p] = {kNaN, kNaN};
    }
  });
  return out;
}

Report run_experiment(const ExperimentConfig& config) {
  switch (config.scenario) {
    case Scenario::Table1: return run_table1(config);
    case Scenario::Table2: return run_table2(config);
    case Scenario::CaseI:
    case Scenario::CaseIII:
    case Scenario::CaseIV: return run_inconsistency(config);
    case Scenario::AppendixB: return run_appendix_b(config);
  }
  throw std::logic_error("unknown scenario");
}

std::string format_g6(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

void write_csv(const Report& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  auto cell = [](double v) { return std::isfinite(v) ? format_g6(v) : std::string(); };
  auto opt = [&](const std::optional<double>& v) { return v ? cell(*v) : std::string(); };
  for (const auto& r : report.rows) {
    out << r.scenario << ',' << r.estimator << ',' << r.n << ',' << (r.K ? std::to_string(*r.K) : std::string())
        << ',' << r.reps << ',' << r.failures << ',';
    if (r.stats) {
      const SampleSummary& s = *r.stats;
      for (double v : {s.q05, s.q25, s.q50, s.q75, s.q95, s.mean, s.variance, s.kurtosis}) out << cell(v) << ',';
    } else {
      out << ",,,,,,,,";
    }
    out << opt(r.asym_var) << ',' << opt(r.sample_var) << ',' << r.seed << '\n';
  }
}

void write_summary(const Report& report, std::ostream& out) {
  for (const auto& r : report.rows) {
    out << r.scenario << ' ' << r.estimator << " n=" << r.n;
    if (r.K) out << " K=" << *r.K;
    out << " reps=" << r.reps << " failures=" << r.failures;
    if (r.stats) out << " q50=" << format_g6(r.stats->q50) << " mean=" << format_g6(r.stats->mean)
                     << " var=" << format_g6(r.stats->variance);
    if (r.asym_var) out << " asym_var=" << format_g6(*r.asym_var);
    if (r.sample_var) out << " sample_var=" << format_g6(*r.sample_var);
    if (r.rmse) out << " rmse=" << format_g6(*r.rmse);
    out << '\n';
  }
}

void write_histogram(const Report& report, std::ostream& out, double lo, double hi, std::size_t bins) {
  out << "estimator,n,bin_lo,bin_hi,count\n";
  const double width = (hi - lo) / static_cast<double>(bins);
  for (const auto& b : report.batches) {
    if (b.standardized.empty()) continue;
    const auto counts = histogram(b.standardized, lo, hi, bins);
    for (std::size_t k = 0; k < bins; ++k) {
      out << to_string(b.estimator) << ',' << b.n << ',' << format_g6(lo + width * static_cast<double>(k)) << ','
          << format_g6(lo + width * static_cast<double>(k + 1)) << ',' << counts[k] << '\n';
    }
  }
}

}  // namespace pairlik
