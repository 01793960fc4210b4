#include "pairlik/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "pairlik/asymptotics.hpp"
#include "pairlik/covariance.hpp"
#include "pairlik/estimate.hpp"
#include "pairlik/harness.hpp"
#include "pairlik/rng.hpp"

#ifndef PAIRLIK_VERSION
#define PAIRLIK_VERSION "0.0.0"
#endif

namespace pairlik::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string sig10(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_double(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

Interval parse_side(double lo, double hi) {
  if (std::isinf(lo) || std::isinf(hi)) {
    if (!(std::isinf(hi) && lo <= 0.0)) throw UsageError("an open box side must read 0,inf");
    return Interval::positive_ray();
  }
  return Interval::closed(lo, hi);
}

void open_output(const std::string& file, std::ofstream& stream) {
  stream.open(file, std::ios::binary | std::ios::trunc);
  if (!stream) throw UsageError("cannot open output file '" + file + "'");
}

struct SimulateFlags {
  std::size_t n = 0;
  std::size_t grid = 0;
  double theta = 0.0;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct EstimateFlags {
  std::string in;
  std::string method;
  std::string weights;
  std::size_t K = 0;
  std::string box = "0.01,2500,0.01,5";
};

struct TauFlags {
  std::string in;
  std::size_t grid = 0;
  std::size_t n = 0;
  std::string weights;
  std::size_t K = 0;
  bool exact = false;
  bool asym_var = false;
  double theta0 = 0.0;
  double sigma20 = 1.0;
};

struct ExperimentFlags {
  std::string scenario;
  std::size_t reps = 0;
  std::uint64_t seed = 42;
  std::string out = "-";
  std::string histogram;
  int threads = 1;
  std::vector<std::size_t> n_list;
  std::vector<std::size_t> k_list;
  double theta0 = 0.0;
  double sigma20 = 0.0;
  std::string weights;
  std::size_t K = 0;
  std::string box;
  bool acceptance = false;
  int dim = 1;
  double nu = 0.5;
};

WeightSeq weights_from(const std::string& text, std::size_t K) {
  if (!text.empty() && K > 0) throw UsageError("--weights and --K are mutually exclusive");
  if (!text.empty()) return parse_weights(text);
  return WeightSeq::unit(K > 0 ? K : 1);
}

Design design_from(const std::string& in, std::size_t grid, std::size_t n) {
  const int given = (in.empty() ? 0 : 1) + (grid > 0 ? 1 : 0) + (n > 0 ? 1 : 0);
  if (given != 1) throw UsageError("exactly one of --in, --grid, --n is required");
  if (!in.empty()) return read_path_csv(in).design();
  if (grid > 0) return Design::regular_grid(grid);
  return Design::uniform(n);
}

int cmd_simulate(const SimulateFlags& f, std::ostream&) {
  if ((f.n > 0) == (f.grid > 0)) throw UsageError("exactly one of --n and --grid is required");
  const Design design = f.grid > 0 ? Design::regular_grid(f.grid) : Design::uniform(f.n);
  const CovParams psi(f.theta, f.sigma2);
  RngStream rng(f.seed);
  const SamplePath path = simulate_ou(psi, design, rng);
  std::ofstream file;
  open_output(f.out, file);
  write_path_csv(path, file);
  return kExitOk;
}

int cmd_estimate(const EstimateFlags& f, std::ostream& out) {
  const SamplePath path = read_path_csv(f.in);
  const ParamBox box = parse_box(f.box);
  const WeightSeq w = weights_from(f.weights, f.K);
  EstimationResult res = [&] {
    if (f.method == "mle") return mle(path, box);
    if (f.method == "wpmle") return wpmle(path, w, box);
    if (f.method == "wpcmle") return wpcmle(path, w, box);
    throw UsageError("--method must be mle, wpmle or wpcmle");
  }();
  out << "theta_hat=" << sig10(res.psi_hat.theta()) << '\n'
      << "sigma2_hat=" << sig10(res.psi_hat.sigma2()) << '\n'
      << "microergodic=" << sig10(res.microergodic) << '\n'
      << "objective=" << sig10(res.objective_value) << '\n'
      << "converged=" << (res.converged ? "true" : "false") << '\n';
  return res.converged ? kExitOk : kExitFailure;
}

int cmd_tau(const TauFlags& f, std::ostream& out) {
  if (f.exact && !(f.theta0 > 0.0)) throw UsageError("--exact requires --theta0 > 0");
  if (f.asym_var && !(f.theta0 > 0.0 && f.sigma20 > 0.0)) throw UsageError("--asym-var requires --theta0 and --sigma20");
  const Design design = design_from(f.in, f.grid, f.n);
  const WeightSeq w = weights_from(f.weights, f.K);
  const TauResult tau = f.exact ? tau2_exact(design, w, f.theta0) : tau2_approx(design, w);
  out << "tau2=" << sig10(tau.tau2) << '\n';
  if (f.asym_var) {
    const CovParams psi0(f.theta0, f.sigma20);
    out << "asym_var=" << sig10(asymptotic_variance(AsymptoticKind::WP, psi0, design, w)) << '\n';
    out << "asym_var_mle=" << sig10(asymptotic_variance(AsymptoticKind::MLE, psi0, design, w)) << '\n';
  }
  return kExitOk;
}

int cmd_experiment(const ExperimentFlags& f, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = default_config(parse_scenario(f.scenario));
  if (f.reps > 0) config.replications = f.reps;
  config.base_seed = f.seed;
  config.threads = f.threads;
  config.acceptance = f.acceptance;
  config.dim = f.dim;
  config.matern_nu = f.nu;
  if (!f.n_list.empty()) config.n_list = f.n_list;
  if (!f.k_list.empty()) config.K_list = f.k_list;
  if (f.theta0 > 0.0 || f.sigma20 > 0.0) {
    config.psi0 = CovParams(f.theta0 > 0.0 ? f.theta0 : config.psi0.theta(),
                            f.sigma20 > 0.0 ? f.sigma20 : config.psi0.sigma2());
  }
  if (!f.weights.empty() || f.K > 0) config.weights = weights_from(f.weights, f.K);
  if (!f.box.empty()) config.box = parse_box(f.box);
  for (std::size_t n : config.n_list) {
    if (n < 2) throw UsageError("every n must be >= 2");
  }

  const Report report = run_experiment(config);
  const bool to_stdout = f.out == "-";
  std::ostream& summary = to_stdout ? err : out;
  write_summary(report, summary);
  if (to_stdout) {
    write_csv(report, out);
  } else {
    std::ofstream file;
    open_output(f.out, file);
    write_csv(report, file);
  }
  if (!f.histogram.empty()) {
    std::ofstream file;
    open_output(f.histogram, file);
    write_histogram(report, file);
  }
  return kExitOk;
}


std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

// Splices "--key value" pairs from a flat key=value file into the argument
// list, skipping keys already given on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string file;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (file.empty()) return args;
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open config file '" + file + "'");
  auto given = [&](const std::string& flag) {
    for (const auto& a : kept) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw UsageError(file + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    std::string value = trim(std::string_view(text).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    if (key.empty() || given(flag)) continue;
    if (key == "acceptance") {
      if (value == "true" || value == "1") kept.push_back(flag);
      continue;
    }
    kept.push_back(flag);
    kept.push_back(value);
  }
  return kept;
}

}  // namespace

SamplePath read_path_csv(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + file + "'");
  std::string line;
  if (!std::getline(in, line)) throw UsageError("empty path file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "s,z") throw UsageError("path file must start with header 's,z'");
  std::vector<double> s;
  std::vector<double> z;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw UsageError("malformed path line '" + line + "'");
    s.push_back(parse_double(std::string_view(line).substr(0, comma)));
    z.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  return SamplePath(Design(std::move(s)), std::move(z));
}

void write_path_csv(const SamplePath& path, std::ostream& out) {
  out << "s,z\n";
  const auto s = path.design().points();
  const auto z = path.values();
  for (std::size_t i = 0; i < path.size(); ++i) out << shortest(s[i]) << ',' << shortest(z[i]) << '\n';
}

ParamBox parse_box(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() != 4) throw UsageError("--box needs four comma-separated values a,b,c,d");
  return ParamBox(parse_side(v[0], v[1]), parse_side(v[2], v[3]));
}

WeightSeq parse_weights(const std::string& text) { return WeightSeq(parse_list(text)); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise and full likelihood estimation for the exponential covariance model", "pairlik"};
  app.require_subcommand(1, 1);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Draw an Ornstein-Uhlenbeck path and write it as CSV");
  auto* sim_n = simulate->add_option("--n", sim.n, "Number of equispaced points on [0,1]");
  auto* sim_grid = simulate->add_option("--grid", sim.grid, "Grid index L: step 0.02/L from 0 to 1");
  sim_n->excludes(sim_grid);
  simulate->add_option("--theta", sim.theta, "Scale parameter")->required();
  simulate->add_option("--sigma2", sim.sigma2, "Variance parameter")->required();
  simulate->add_option("--seed", sim.seed, "Random seed")->required();
  simulate->add_option("--out", sim.out, "Output CSV file")->required();

  EstimateFlags est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate (theta, sigma2) from a path CSV");
  estimate_cmd->add_option("--in", est.in, "Input CSV with header s,z")->required();
  estimate_cmd->add_option("--method", est.method, "mle, wpmle or wpcmle")
      ->required()
      ->check(CLI::IsMember({"mle", "wpmle", "wpcmle"}));
  auto* est_w = estimate_cmd->add_option("--weights", est.weights, "Lag weights w_1,...,w_K");
  auto* est_k = estimate_cmd->add_option("--K", est.K, "Unit weights up to lag K");
  est_w->excludes(est_k);
  estimate_cmd->add_option("--box", est.box, "a,b,c,d for [a,b]x[c,d]; 0,inf for an open side")->capture_default_str();

  TauFlags tau;
  auto* tau_cmd = app.add_subcommand("tau", "Normalized variance tau2 and asymptotic variances");
  tau_cmd->add_option("--in", tau.in, "Design from a path CSV");
  tau_cmd->add_option("--grid", tau.grid, "Grid index L");
  tau_cmd->add_option("--n", tau.n, "Number of equispaced points");
  auto* tau_w = tau_cmd->add_option("--weights", tau.weights, "Lag weights w_1,...,w_K");
  auto* tau_k = tau_cmd->add_option("--K", tau.K, "Unit weights up to lag K");
  tau_w->excludes(tau_k);
  tau_cmd->add_flag("--exact", tau.exact, "Exact covariance sum (needs --theta0)");
  tau_cmd->add_flag("--asym-var", tau.asym_var, "Also print asymptotic variances");
  tau_cmd->add_option("--theta0", tau.theta0, "True scale parameter");
  tau_cmd->add_option("--sigma20", tau.sigma20, "True variance parameter");

  ExperimentFlags exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo scenario and write the CSV report");
  std::string config_file;
  exp_cmd->add_option("--config", config_file, "key=value file; command-line flags take precedence");
  exp_cmd->add_option("--scenario", exp.scenario, "table1, table2, case-i, case-iii, case-iv, appendix-b")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "case-i", "case-iii", "case-iv", "appendix-b"}));
  exp_cmd->add_option("--reps", exp.reps, "Replications (scenario default when omitted)");
  exp_cmd->add_option("--seed", exp.seed, "Base seed")->capture_default_str();
  exp_cmd->add_option("--out", exp.out, "CSV report file, - for stdout")->capture_default_str();
  exp_cmd->add_option("--histogram", exp.histogram, "Binned standardized statistics (table1)");
  exp_cmd->add_option("--threads", exp.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--n-list", exp.n_list, "Sample sizes")->delimiter(',');
  exp_cmd->add_option("--k-list", exp.k_list, "Cutoffs for table2")->delimiter(',');
  exp_cmd->add_option("--theta0", exp.theta0, "True scale parameter");
  exp_cmd->add_option("--sigma20", exp.sigma20, "True variance parameter");
  auto* exp_w = exp_cmd->add_option("--weights", exp.weights, "Lag weights w_1,...,w_K");
  auto* exp_k = exp_cmd->add_option("--K", exp.K, "Unit weights up to lag K");
  exp_w->excludes(exp_k);
  exp_cmd->add_option("--box", exp.box, "a,b,c,d parameter box; 0,inf for an open side");
  exp_cmd->add_flag("--acceptance", exp.acceptance, "Fail with exit code 3 on any failed replication");
  exp_cmd->add_option("--dim", exp.dim, "Dimension for appendix-b")->capture_default_str()->check(CLI::Range(1, 2));
  exp_cmd->add_option("--nu", exp.nu, "Matern smoothness for appendix-b (0.5, 1.5, 2.5)")->capture_default_str();

  auto* version = app.add_subcommand("version", "Print the version");

  std::vector<std::string> argv_in = args;
  try {
    argv_in = expand_config(args);
  } catch (const std::invalid_argument& e) {
    err << "pairlik: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<std::string> reversed(argv_in.rbegin(), argv_in.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pairlik: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (estimate_cmd->parsed()) return cmd_estimate(est, out);
    if (tau_cmd->parsed()) return cmd_tau(tau, out);
    if (exp_cmd->parsed()) return cmd_experiment(exp, out, err);
    if (version->parsed()) {
      out << "pairlik " << PAIRLIK_VERSION << '\n';
      return kExitOk;
    }
  } catch (const ExperimentFailed& e) {
    err << "pairlik: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "pairlik: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "pairlik: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "pairlik: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pairlik::cli
