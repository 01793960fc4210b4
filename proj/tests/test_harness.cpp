#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pairlik/harness.hpp"

using namespace pairlik;

namespace {

ExperimentConfig small_table1() {
  ExperimentConfig c = default_config(Scenario::Table1);
  c.n_list = {21, 41};
  c.replications = 24;
  return c;
}

std::string csv_of(const Report& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

}  // namespace

TEST_CASE("scenario and estimator names round-trip") {
  for (Scenario s : {Scenario::Table1, Scenario::Table2, Scenario::CaseI, Scenario::CaseIII, Scenario::CaseIV,
                     Scenario::AppendixB}) {
    CHECK(parse_scenario(to_string(s)) == s);
  }
  CHECK(parse_estimator("wpcmle") == Estimator::WPCMLE);
  CHECK(to_string(Estimator::MLE) == "MLE");
  CHECK_THROWS_AS(parse_scenario("table3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_estimator("ols"), std::invalid_argument);
}

TEST_CASE("default configurations") {
  const ExperimentConfig t1 = default_config(Scenario::Table1);
  CHECK(t1.n_list == std::vector<std::size_t>{51, 101, 201, 401, 801});
  CHECK(t1.replications == 1000);
  CHECK(t1.base_seed == 42);
  CHECK(t1.psi0 == CovParams(15.0, 1.0));
  CHECK(t1.weights.cutoff() == 1);
  CHECK(default_config(Scenario::Table2).K_list == std::vector<std::size_t>{1, 10, 20, 30});
  CHECK(default_config(Scenario::CaseIII).box.sigma2().ray);
  CHECK(default_config(Scenario::AppendixB).replications == 2000);
}

TEST_CASE("table1 report shape and CSV format") {
  const Report r = run_table1(small_table1());
  CHECK(r.rows.size() == 6);
  CHECK(r.batches.size() == 6);
  const std::string csv = csv_of(r);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 16);
  }
  CHECK(count == 6);
  for (const auto& row : r.rows) {
    CHECK(row.reps + row.failures == 24);
    CHECK(row.stats.has_value());
    CHECK(row.K.has_value() == (row.estimator != "MLE"));
  }
}

TEST_CASE("results do not depend on the thread count") {
  ExperimentConfig c = small_table1();
  c.threads = 1;
  const std::string one = csv_of(run_table1(c));
  c.threads = 3;
  CHECK(csv_of(run_table1(c)) == one);

  ExperimentConfig b = default_config(Scenario::AppendixB);
  b.n_list = {30};
  b.replications = 20;
  b.threads = 1;
  const std::string ab1 = csv_of(run_appendix_b(b));
  b.threads = 4;
  CHECK(csv_of(run_appendix_b(b)) == ab1);
}

TEST_CASE("seeds change the output") {
  ExperimentConfig c = small_table1();
  const std::string a = csv_of(run_table1(c));
  c.base_seed = 43;
  CHECK(csv_of(run_table1(c)) != a);
}

TEST_CASE("table2 asymptotic column") {
  ExperimentConfig c = default_config(Scenario::Table2);
  c.n_list = {51};
  c.replications = 4;
  c.estimators = {Estimator::WPMLE, Estimator::MLE};
  const Report r = run_table2(c);
  REQUIRE(r.rows.size() == 5);
  CHECK(r.rows[0].estimator == "MLE");
  CHECK(*r.rows[0].asym_var == doctest::Approx(450.0 / 51.0));
  CHECK(*r.rows[1].K == 1);
  CHECK(*r.rows[1].asym_var == doctest::Approx(225.0 * 100.0 / (51.0 * 51.0)));
}

TEST_CASE("inconsistency runs report RMSE") {
  ExperimentConfig c = default_config(Scenario::CaseI);
  c.n_list = {51};
  c.replications = 10;
  const Report r = run_experiment(c);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].rmse.has_value());
  CHECK(*r.rows[0].rmse >= 0.0);
}

TEST_CASE("acceptance mode turns failures into an error") {
  ExperimentConfig c = small_table1();
  c.n_list = {21};
  c.replications = 8;
  // A box that excludes every plausible estimate still converges; force failure via a degenerate optimizer.
  c.optimizer.max_iter = 0;
  c.acceptance = true;
  const auto attempt = [&] { return run_table1(c); };
  bool threw = false;
  try {
    const Report r = attempt();
    for (const auto& row : r.rows) CHECK(row.failures == 0);
  } catch (const ExperimentFailed&) {
    threw = true;
  }
  if (threw) {
    c.acceptance = false;
    const Report r = run_table1(c);
    std::size_t fails = 0;
    for (const auto& row : r.rows) fails += row.failures;
    CHECK(fails > 0);
  }
}

TEST_CASE("histogram output") {
  const Report r = run_table1(small_table1());
  std::ostringstream os;
  write_histogram(r, os, -4.0, 4.0, 8);
  std::istringstream lines(os.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "estimator,n,bin_lo,bin_hi,count");
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 6 * 8);
}

TEST_CASE("pathwise variance estimates on nested point sets") {
  ExperimentConfig c = default_config(Scenario::AppendixB);
  const auto pairs = appendix_b_pathwise(c, 20, 40, 5);
  REQUIRE(pairs.size() == 5);
  for (const auto& [small, large] : pairs) {
    CHECK(small > 0.0);
    CHECK(large > 0.0);
  }
  CHECK_THROWS_AS(appendix_b_pathwise(c, 40, 20, 1), std::invalid_argument);
}

TEST_CASE("six significant digits") {
  CHECK(format_g6(1.0) == "1");
  CHECK(format_g6(0.0123456789) == "0.0123457");
  CHECK(format_g6(1234567.0) == "1.23457e+06");
}

TEST_CASE("a single replication gives a zero-variance row") {
  ExperimentConfig c = small_table1();
  c.n_list = {21};
  c.replications = 1;
  c.estimators = {Estimator::MLE};
  const Report r = run_table1(c);
  REQUIRE(r.rows.size() == 1);
  REQUIRE(r.rows[0].stats.has_value());
  CHECK(r.rows[0].stats->variance == 0.0);
  CHECK(*r.rows[0].sample_var == 0.0);
  CHECK(r.rows[0].reps + r.rows[0].failures == 1);
}

TEST_CASE("K = 1 pairwise estimates coincide replication by replication") {
  ExperimentConfig c = small_table1();
  c.n_list = {51};
  c.replications = 30;
  c.estimators = {Estimator::WPMLE, Estimator::WPCMLE};
  const Report r = run_table1(c);
  REQUIRE(r.batches.size() == 2);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(r.batches[0].values[i] == doctest::Approx(r.batches[1].values[i]).epsilon(1e-6));
  }
}
