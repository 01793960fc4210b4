#ifndef PAIRLIK_HARNESS_HPP
#define PAIRLIK_HARNESS_HPP

/** @file
 * Replicated Monte Carlo experiments.
 *
 * Replication r of sample size n draws from RngStream(base_seed, r, n), so
 * every replication owns its stream and the output does not depend on the
 * number of threads or the order in which replications finish. Per-replication
 * results are stored by index and summarized in index order.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pairlik/optimize.hpp"
#include "pairlik/summary.hpp"
#include "pairlik/types.hpp"

namespace pairlik {

enum class Scenario { Table1, Table2, CaseI, CaseIII, CaseIV, AppendixB };
enum class Estimator { MLE, WPMLE, WPCMLE };

std::string to_string(Scenario s);
std::string to_string(Estimator e);
/// Accepts the CLI names: table1, table2, case-i, case-iii, case-iv, appendix-b.
Scenario parse_scenario(const std::string& name);
Estimator parse_estimator(const std::string& name);

/// Raised after an acceptance-mode run in which some replication failed.
class ExperimentFailed : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::Table1;
  std::vector<std::size_t> n_list;
  std::size_t replications = 1000;
  std::uint64_t base_seed = 42;
  CovParams psi0{15.0, 1.0};
  WeightSeq weights = WeightSeq::unit(1);
  ParamBox box{Interval::closed(0.01, 2500.0), Interval::closed(0.01, 5.0)};
  std::vector<Estimator> estimators;
  std::vector<std::size_t> K_list;  ///< table2 only; unit weights up to each K
  int threads = 1;
  bool acceptance = false;  ///< throw ExperimentFailed when any replication fails
  int dim = 1;              ///< appendix-b only
  double matern_nu = 0.5;   ///< appendix-b only; 0.5 is the exponential correlation
  MinimizeOptions optimizer;
};

/// Default sizes, boxes, weights and replication counts of each scenario.
ExperimentConfig default_config(Scenario scenario);

/// Per-replication estimates of one estimator at one (n, K); NaN marks a failure.
struct EstimateBatch {
  Estimator estimator = Estimator::MLE;
  std::size_t n = 0;
  std::size_t K = 0;  ///< 0 for MLE
  std::vector<double> values;
  double normalizer = 0.0;          ///< C of the standardized statistic (table1 only)
  std::vector<double> standardized;  ///< standardized successes (table1 only)
  std::size_t failures = 0;

  /// Values with failures removed, in replication order.
  [[nodiscard]] std::vector<double> successes() const;
};

/// One CSV line of a report.
struct ReportRow {
  std::string scenario;
  std::string estimator;
  std::size_t n = 0;
  std::optional<std::size_t> K;
  std::size_t reps = 0;
  std::size_t failures = 0;
  std::optional<SampleSummary> stats;
  std::optional<double> asym_var;
  std::optional<double> sample_var;
  std::optional<double> rmse;  ///< printed in summaries, not a CSV column
  std::uint64_t seed = 0;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<EstimateBatch> batches;
};

/// Standardized distribution of theta_hat * sigma2_hat per estimator and n.
Report run_table1(const ExperimentConfig& config);
/// Asymptotic versus sample variance of theta_hat * sigma2_hat for each K.
Report run_table2(const ExperimentConfig& config);
/// RMSE of theta_hat * sigma2_hat about theta0 * sigma0^2 across n (cases i, iii, iv).
Report run_inconsistency(const ExperimentConfig& config);
/// Mean and variance of the closed-form variance-only estimator across n.
Report run_appendix_b(const ExperimentConfig& config);
/// Dispatches on config.scenario.
Report run_experiment(const ExperimentConfig& config);

/**
 * Variance-only estimates on nested point sets: for each path, n_large
 * i.i.d. points and one joint draw of Y; returns (estimate on the first
 * n_small points, estimate on all points).
 */
std::vector<std::pair<double, double>> appendix_b_pathwise(const ExperimentConfig& config, std::size_t n_small,
                                                           std::size_t n_large, std::size_t paths);

/// CSV with the fixed column set; floats with 6 significant digits.
void write_csv(const Report& report, std::ostream& out);
/// One human-readable line per row.
void write_summary(const Report& report, std::ostream& out);
/// Binned standardized statistics of a table1 report: estimator,n,bin_lo,bin_hi,count.
void write_histogram(const Report& report, std::ostream& out, double lo = -4.0, double hi = 4.0,
                     std::size_t bins = 32);

inline constexpr const char* kCsvHeader =
    "scenario,estimator,n,K,reps,failures,q05,q25,q50,q75,q95,mean,variance,kurtosis,asym_var,sample_var,seed";

/// printf("%.6g") independent of the global locale.
std::string format_g6(double x);

}  // namespace pairlik

#endif  // PAIRLIK_HARNESS_HPP
