#include "minspec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace minspec::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad number in list: " + item);
  }
  return out;
}

struct Timer {
  std::map<std::string, double>& sink;
  std::string phase;
  std::chrono::steady_clock::time_point start;
  Timer(std::map<std::string, double>& s, std::string p)
      : sink(s), phase(std::move(p)), start(std::chrono::steady_clock::now()) {}
  ~Timer() {
    sink[phase] += std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start).count();
  }
};

struct CsvWriter {
  std::ofstream file;
  explicit CsvWriter(const fs::path& path, const std::string& header)
      : file(path, std::ios::binary) {
    if (!file) throw std::invalid_argument("cannot open output file " + path.string());
    file << header << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      file << (i ? "," : "") << cells[i];
    file << "\n";
  }
};

Discretization parse_discretization(const std::string& tag) {
  if (tag == "fourier") return Discretization::fourier;
  if (tag == "fd2") return Discretization::fd2;
  throw std::invalid_argument("unknown discretization: " + tag);
}

Smoothing parse_smoothing(const std::string& tag) {
  if (tag == "mollified") return Smoothing::mollified;
  if (tag == "hard") return Smoothing::hard;
  throw std::invalid_argument("unknown smoothing: " + tag);
}

ManifoldGrid make_grid(const RunConfig& c) {
  const std::size_t n2 = c.n2 ? c.n2 : c.n1;
  if (c.manifold == "circle") return make_circle(c.length1, c.n1);
  if (c.manifold == "torus") return make_torus(c.length1, c.length2, c.n1, n2);
  throw std::invalid_argument("unknown manifold: " + c.manifold);
}

CouplingFunction make_coupling_spec(const RunConfig& c) {
  if (c.coupling == "square") return coupling_square(c.kappa0);
  if (c.coupling == "identity") return coupling_identity(c.kappa0);
  if (c.coupling == "exp") return coupling_exp(c.kappa0);
  if (c.coupling.rfind("table:", 0) == 0) {
    auto table = std::make_shared<Table>(load_table(c.coupling.substr(6)));
    // Tabulated couplings: derivatives by central differences over the
    // typical table spacing (the table is only piecewise linear).
    const double h = (table->x.back() - table->x.front()) /
                     double(table->x.size() - 1);
    auto f = [table](double k) { return table->clamped(k); };
    auto df = [table, h](double k) {
      return (table->clamped(k + h) - table->clamped(k - h)) / (2.0 * h);
    };
    auto ddf = [table, h](double k) {
      return (table->clamped(k + h) - 2.0 * table->clamped(k) +
              table->clamped(k - h)) / (h * h);
    };
    return make_coupling(f, df, ddf, c.kappa0);
  }
  throw std::invalid_argument("unknown coupling: " + c.coupling);
}

PotentialField make_potential_spec(const RunConfig& c, const ManifoldGrid& grid,
                                   Smoothing smoothing) {
  if (c.potential == "constant") return constant_potential(grid, c.kappa0);
  if (c.potential == "mode") {
    const auto pairs = laplace_eigenbasis(grid, 2);
    return mode_perturbation(grid, c.kappa0, c.potential_epsilon, pairs[1]);
  }
  if (c.potential == "spike")
    return spike_potential_1d(grid, c.kappa0, c.potential_delta, smoothing);
  if (c.potential == "ball")
    return ball_potential(grid, c.kappa0, 0, c.potential_delta, smoothing);
  if (c.potential.rfind("table:", 0) == 0) {
    const Table table = load_table(c.potential.substr(6));
    std::vector<double> samples(grid.node_count());
    for (std::size_t i = 0; i < samples.size(); ++i)
      samples[i] = table.periodic(grid.coord1[i], grid.length1);
    return project_to_constraint(grid, samples, c.kappa0);
  }
  throw std::invalid_argument("unknown potential: " + c.potential);
}

std::vector<double> make_direction(const RunConfig& c, const ManifoldGrid& grid,
                                   std::mt19937_64& rng) {
  if (c.direction == "v1") return laplace_eigenbasis(grid, 2)[1].samples;
  if (c.direction == "v2") return laplace_eigenbasis(grid, 4)[3].samples;
  if (c.direction == "random") return random_band_limited(grid, c.band_limit, rng);
  throw std::invalid_argument("unknown direction: " + c.direction);
}

json config_echo(const RunConfig& c) {
  json j;
  j["manifold"] = c.manifold;
  j["L1"] = c.length1;
  j["L2"] = c.length2;
  j["N1"] = c.n1;
  j["N2"] = c.n2 ? c.n2 : c.n1;
  j["coupling"] = c.coupling;
  j["kappa0"] = c.kappa0;
  j["alpha"] = c.alpha;
  j["alpha_list"] = c.alpha_list;
  j["epsilon_list"] = c.epsilon_list;
  j["delta_list"] = c.delta_list;
  j["eigen_count"] = c.eigen_count;
  j["steps"] = c.steps;
  j["step_size"] = c.step_size;
  j["smoothing"] = c.smoothing;
  j["direction"] = c.direction;
  j["band_limit"] = c.band_limit;
  j["potential"] = c.potential;
  j["potential_epsilon"] = c.potential_epsilon;
  j["potential_delta"] = c.potential_delta;
  j["discretization"] = c.discretization;
  j["seed"] = c.seed;
  return j;
}

void write_summary(const fs::path& out_dir, const RunConfig& c,
                   const std::string& subcommand, const json& results,
                   const std::vector<std::pair<std::string, bool>>& invariants,
                   const std::map<std::string, double>& timing) {
  json j;
  j["config"] = config_echo(c);
  j["invariants"] = json::array();
  for (const auto& [name, pass] : invariants)
    j["invariants"].push_back({{"name", name}, {"pass", pass}});
  j["results"] = results;
  j["seed"] = c.seed;
  j["subcommand"] = subcommand;
  j["timing"] = timing;
  j["version"] = kToolVersion;
  std::ofstream file(out_dir / "summary.json", std::ios::binary);
  file << j.dump(2) << "\n";
}

}  // namespace

RunConfig parse_config(const fs::path& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open config " + path.string());
  RunConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "manifold") c.manifold = value;
      else if (key == "L" || key == "L1") c.length1 = std::stod(value);
      else if (key == "L2") c.length2 = std::stod(value);
      else if (key == "N" || key == "N1") c.n1 = std::stoul(value);
      else if (key == "N2") c.n2 = std::stoul(value);
      else if (key == "coupling") c.coupling = value;
      else if (key == "kappa0") c.kappa0 = std::stod(value);
      else if (key == "alpha") c.alpha = std::stod(value);
      else if (key == "alpha_list") c.alpha_list = parse_list(value);
      else if (key == "epsilon_list") c.epsilon_list = parse_list(value);
      else if (key == "delta_list") c.delta_list = parse_list(value);
      else if (key == "eigen_count") c.eigen_count = std::stoul(value);
      else if (key == "steps") c.steps = std::stoul(value);
      else if (key == "step_size") c.step_size = std::stod(value);
      else if (key == "smoothing") c.smoothing = value;
      else if (key == "direction") c.direction = value;
      else if (key == "band_limit") c.band_limit = std::stoul(value);
      else if (key == "potential") c.potential = value;
      else if (key == "potential_epsilon") c.potential_epsilon = std::stod(value);
      else if (key == "potential_delta") c.potential_delta = std::stod(value);
      else if (key == "discretization") c.discretization = value;
      else if (key == "seed") c.seed = std::stoull(value);
      else if (key == "out") c.out_dir = value;
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
  }
  return c;
}

Table load_table(const fs::path& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open table " + path.string());
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y))
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected two numeric columns");
    std::string rest;
    if (ss >> rest)
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": trailing token '" + rest + "'");
    if (!t.x.empty() && x <= t.x.back())
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": abscissae must be strictly increasing");
    t.x.push_back(x);
    t.y.push_back(y);
  }
  if (t.x.size() < 2)
    throw std::invalid_argument(path.string() + ": need at least two rows");
  return t;
}

double Table::clamped(double q) const {
  if (q <= x.front()) return y.front();
  if (q >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), q);
  const std::size_t i = std::size_t(it - x.begin());
  const double t = (q - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + t * (y[i] - y[i - 1]);
}

double Table::periodic(double q, double period) const {
  double s = std::fmod(q - x.front(), period);
  if (s < 0.0) s += period;
  s += x.front();
  // Wrap the final segment back to the first sample.
  if (s >= x.back()) {
    const double t = (s - x.back()) / (period - (x.back() - x.front()));
    return y.back() + t * (y.front() - y.back());
  }
  return clamped(s);
}

namespace {

int run_spectrum(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  const auto kappa = make_potential_spec(c, grid, parse_smoothing(c.smoothing));
  const auto disc = parse_discretization(c.discretization);
  EigenResult res;
  {
    Timer t(timing, "eigensolve");
    const auto op = assemble(grid, kappa, coupling, c.alpha, disc);
    res = eigh(op, std::min(c.eigen_count, grid.node_count()));
  }
  CsvWriter csv(out / "spectrum.csv", "j,eigenvalue,residual");
  for (std::size_t j = 0; j < res.eigenvalues.size(); ++j)
    csv.row({std::to_string(j), fmt17(res.eigenvalues[j]), fmt17(res.residuals[j])});

  json results;
  results["lambda0"] = res.eigenvalues.front();
  results["max_residual"] = *std::max_element(res.residuals.begin(), res.residuals.end());
  std::vector<std::pair<std::string, bool>> invariants;
  bool sorted = std::is_sorted(res.eigenvalues.begin(), res.eigenvalues.end());
  bool resid_ok = true;
  for (std::size_t j = 0; j < res.eigenvalues.size(); ++j)
    resid_ok = resid_ok &&
               res.residuals[j] <= 1e-9 * (1.0 + std::fabs(res.eigenvalues[j]));
  invariants.push_back({"eigenvalues_nondecreasing", sorted});
  invariants.push_back({"residuals_within_tolerance", resid_ok});
  write_summary(out, c, "spectrum", results, invariants, timing);
  return 0;
}

int run_perturb(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  std::mt19937_64 rng(c.seed);
  const auto q = make_direction(c, grid, rng);
  PerturbationReport report;
  {
    Timer t(timing, "perturbation");
    report = perturbation_report(grid, q, coupling, c.alpha);
  }
  CsvWriter csv(out / "perturb.csv", "quantity,value");
  csv.row({"l0", fmt17(report.l0)});
  csv.row({"l1", fmt17(report.l1)});
  csv.row({"l2", fmt17(report.l2)});
  csv.row({"l2_gradient_form", fmt17(report.l2_gradient_form)});
  csv.row({"l2_spectral_form", fmt17(report.l2_spectral_form)});
  csv.row({"alpha_star", report.critical_alpha ? fmt17(*report.critical_alpha)
                                               : "undefined"});

  json results;
  results["l0"] = report.l0;
  results["l2"] = report.l2;
  if (report.critical_alpha)
    results["alpha_star"] = *report.critical_alpha;
  else
    results["alpha_star"] = "undefined";
  const double form_gap =
      std::max(std::fabs(report.l2 - report.l2_gradient_form),
               std::fabs(report.l2 - report.l2_spectral_form));
  results["l2_form_gap"] = form_gap;
  std::vector<std::pair<std::string, bool>> invariants;
  invariants.push_back({"l1_vanishes", std::fabs(report.l1) <= 1e-10});
  invariants.push_back({"l2_forms_agree", form_gap <= 1e-9});
  double phi_mean = 0.0;
  for (double v : report.phi1) phi_mean += v;
  phi_mean /= double(report.phi1.size());
  invariants.push_back({"phi1_zero_mean", std::fabs(phi_mean) <= 1e-10});
  write_summary(out, c, "perturb", results, invariants, timing);
  return 0;
}

int run_sweep_alpha(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  std::mt19937_64 rng(c.seed);
  const auto q = make_direction(c, grid, rng);
  const auto alphas = c.alpha_list.empty()
                          ? std::vector<double>{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4}
                          : c.alpha_list;
  const auto epsilons =
      c.epsilon_list.empty() ? std::vector<double>{0.02} : c.epsilon_list;
  TransitionSweep sweep;
  {
    Timer t(timing, "sweep");
    sweep = transition_sweep(grid, coupling, c.kappa0, alphas, epsilons, q,
                             parse_discretization(c.discretization));
  }
  CsvWriter csv(out / "sweep-alpha.csv", "alpha,epsilon,lambda0_shift,fitted_l2");
  for (std::size_t a = 0; a < sweep.alphas.size(); ++a)
    for (std::size_t e = 0; e < sweep.epsilons[a].size(); ++e)
      csv.row({fmt17(sweep.alphas[a]), fmt17(sweep.epsilons[a][e]),
               fmt17(sweep.lambda_shift[a][e]), fmt17(sweep.fitted_l2[a])});

  json results;
  results["estimated_alpha_c"] = sweep.estimated_alpha_c;
  if (sweep.reference_alpha_c)
    results["reference_alpha_c"] = *sweep.reference_alpha_c;
  std::vector<std::pair<std::string, bool>> invariants;
  if (sweep.reference_alpha_c && std::isfinite(sweep.estimated_alpha_c))
    invariants.push_back(
        {"alpha_c_within_2_percent",
         std::fabs(sweep.estimated_alpha_c - *sweep.reference_alpha_c) <=
             0.02 * std::fabs(*sweep.reference_alpha_c)});
  write_summary(out, c, "sweep-alpha", results, invariants, timing);
  return 0;
}

int run_spike_limit(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  const auto deltas = c.delta_list.empty()
                          ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                          : c.delta_list;
  SpikeLimit result;
  {
    Timer t(timing, "spike");
    result = spike_limit(grid, coupling, c.kappa0, c.alpha, deltas,
                         parse_smoothing(c.smoothing),
                         parse_discretization(c.discretization));
  }
  CsvWriter csv(out / "spike-limit.csv", "delta,lambda0,test_quotient");
  for (std::size_t i = 0; i < result.deltas.size(); ++i)
    csv.row({fmt17(result.deltas[i]), fmt17(result.lambda0[i]),
             fmt17(result.test_quotient[i])});

  json results;
  results["extrapolated_lambda0"] = result.extrapolated;
  results["fitted_order"] = result.fitted_order;
  results["reference_mu1_over_4"] = result.reference;
  std::vector<std::pair<std::string, bool>> invariants;
  bool above = true;
  for (double l : result.lambda0) above = above && l > result.reference;
  invariants.push_back({"lambda0_strictly_above_limit", above});
  invariants.push_back(
      {"extrapolation_within_2_percent",
       std::fabs(result.extrapolated - result.reference) <= 0.02 * result.reference});
  write_summary(out, c, "spike-limit", results, invariants, timing);
  return 0;
}

int run_torus_collapse(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  const auto deltas = c.delta_list.empty()
                          ? std::vector<double>{0.2, 0.12, 0.07}
                          : c.delta_list;
  TorusCollapse result;
  {
    Timer t(timing, "collapse");
    result = torus_collapse(grid, coupling, c.kappa0, c.alpha, deltas,
                            c.eigen_count, parse_smoothing(c.smoothing),
                            parse_discretization(c.discretization));
  }
  CsvWriter csv(out / "torus-collapse.csv", "delta,j,lambda,excision_bound,mu");
  for (std::size_t d = 0; d < result.deltas.size(); ++d)
    for (std::size_t j = 0; j < result.eigenvalues[d].size(); ++j)
      csv.row({fmt17(result.deltas[d]), std::to_string(j),
               fmt17(result.eigenvalues[d][j]), fmt17(result.excision_bounds[d][j]),
               fmt17(result.laplace_mu[j])});

  json results;
  results["coupling_at_zero"] = result.coupling_at_zero;
  results["finest_lambda0"] = result.eigenvalues.back().front();
  results["finest_lambda1"] = result.eigenvalues.back()[1];
  results["mu1"] = result.laplace_mu[1];
  std::vector<std::pair<std::string, bool>> invariants;
  bool monotone = true;
  for (std::size_t d = 1; d < result.deltas.size(); ++d)
    monotone = monotone &&
               result.eigenvalues[d][0] < result.eigenvalues[d - 1][0];
  invariants.push_back({"lambda0_monotone_decreasing", monotone});
  invariants.push_back({"lambda0_collapses",
                        result.eigenvalues.back()[0] <= 0.15 * result.laplace_mu[1]});
  invariants.push_back(
      {"lambda1_near_mu1",
       std::fabs(result.eigenvalues.back()[1] - result.laplace_mu[1]) <=
           0.10 * result.laplace_mu[1]});
  write_summary(out, c, "torus-collapse", results, invariants, timing);
  return 0;
}

int run_hill_bound(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  const auto kappa = make_potential_spec(c, grid, parse_smoothing(c.smoothing));

  // V = alpha F(kappa): the Hill operator -u'' + V u.
  HillBoundInput input;
  input.period = grid.length1;
  input.potential.resize(grid.node_count());
  for (std::size_t i = 0; i < input.potential.size(); ++i)
    input.potential[i] = c.alpha * coupling(kappa.samples[i]);

  HillBound bound;
  double lambda0;
  {
    Timer t(timing, "hill");
    bound = hill_lower_bound(input);
    const auto op = assemble(grid, kappa, coupling, c.alpha,
                             parse_discretization(c.discretization));
    lambda0 = eigh(op, 1).eigenvalues[0];
  }
  CsvWriter csv(out / "hill-bound.csv", "v_min,integral,bound,branch,lambda0_direct");
  csv.row({fmt17(bound.v_min), fmt17(bound.integral), fmt17(bound.bound),
           bound.branch, fmt17(lambda0)});

  json results;
  results["bound"] = bound.bound;
  results["branch"] = bound.branch;
  results["lambda0_direct"] = lambda0;
  std::vector<std::pair<std::string, bool>> invariants;
  invariants.push_back({"bound_below_lambda0", bound.bound <= lambda0 + 1e-9});
  write_summary(out, c, "hill-bound", results, invariants, timing);
  return 0;
}

int run_lemma_check(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto pairs = laplace_eigenbasis(grid, c.eigen_count);
  std::vector<double> mu;
  for (const auto& p : pairs) mu.push_back(p.eigenvalue);
  const double mu1 = mu[1];
  std::mt19937_64 rng(c.seed);

  const double alpha = c.alpha > 0.0 ? c.alpha : 1.0 / mu1;
  const auto gamma = lemma_gamma(alpha, mu);

  CsvWriter csv(out / "lemma-check.csv", "j,mu,gamma");
  for (std::size_t j = 0; j < mu.size(); ++j)
    csv.row({std::to_string(j), fmt17(mu[j]), fmt17(gamma[j])});

  bool nonneg_ok = true;
  double min_I = 0.0;
  {
    Timer t(timing, "functional");
    for (int trial = 0; trial < 32; ++trial) {
      const auto u = random_band_limited(grid, c.band_limit, rng);
      const double v = functional_I(grid, u, 1.0 / mu1);
      min_I = std::min(min_I, v);
      nonneg_ok = nonneg_ok && v >= -1e-9;
    }
  }
  // Certified negative witness below the lemma threshold.
  const double witness = functional_I(grid, pairs[1].samples, 0.5 / mu1);

  json results;
  results["alpha"] = alpha;
  results["min_functional_at_threshold"] = min_I;
  results["mu1"] = mu1;
  results["witness_value"] = witness;
  std::vector<std::pair<std::string, bool>> invariants;
  invariants.push_back({"functional_nonnegative_at_threshold", nonneg_ok});
  invariants.push_back({"witness_negative_below_threshold", witness < 0.0});
  write_summary(out, c, "lemma-check", results, invariants, timing);
  return 0;
}

int run_optimize(const RunConfig& c, const fs::path& out) {
  std::map<std::string, double> timing;
  const auto grid = make_grid(c);
  const auto coupling = make_coupling_spec(c);
  const auto start = make_potential_spec(c, grid, parse_smoothing(c.smoothing));
  StepRule rule;
  rule.initial_step = c.step_size;
  DescentTrajectory traj;
  {
    Timer t(timing, "descent");
    traj = minimize_potential(grid, coupling, c.kappa0, c.alpha, 0, start,
                              c.steps, rule,
                              parse_discretization(c.discretization));
  }
  CsvWriter csv(out / "optimize.csv", "step,lambda,gradient_norm,hf_error");
  for (std::size_t i = 0; i < traj.lambda.size(); ++i)
    csv.row({std::to_string(i), fmt17(traj.lambda[i]),
             fmt17(traj.gradient_norm[i]), fmt17(traj.hf_check_error[i])});

  json results;
  results["final_lambda"] = traj.lambda.empty() ? std::nan("") : traj.lambda.back();
  results["status"] = traj.status == DescentStatus::completed ? "completed"
                      : traj.status == DescentStatus::degeneracy_stop
                          ? "degeneracy-stop"
                          : "line-search-failure";
  std::vector<std::pair<std::string, bool>> invariants;
  bool monotone = true;
  for (std::size_t i = 1; i < traj.lambda.size(); ++i)
    monotone = monotone && traj.lambda[i] <= traj.lambda[i - 1] + 1e-12;
  invariants.push_back({"lambda_trajectory_monotone", monotone});
  bool in_k = true;
  for (const auto& it : traj.iterates) {
    double mean = 0.0;
    for (double v : it) mean += v;
    mean /= double(it.size());
    in_k = in_k && std::fabs(mean - c.kappa0) <= 1e-12 * (1.0 + std::fabs(c.kappa0));
  }
  invariants.push_back({"iterates_in_constraint_set", in_k});
  write_summary(out, c, "optimize", results, invariants, timing);
  return traj.status == DescentStatus::line_search_failure ? 3 : 0;
}

}  // namespace

int run(const std::string& subcommand, const RunConfig& config) {
  try {
    const fs::path out(config.out_dir);
    fs::create_directories(out);
    if (subcommand == "spectrum") return run_spectrum(config, out);
    if (subcommand == "perturb") return run_perturb(config, out);
    if (subcommand == "sweep-alpha") return run_sweep_alpha(config, out);
    if (subcommand == "spike-limit") return run_spike_limit(config, out);
    if (subcommand == "torus-collapse") return run_torus_collapse(config, out);
    if (subcommand == "hill-bound") return run_hill_bound(config, out);
    if (subcommand == "lemma-check") return run_lemma_check(config, out);
    if (subcommand == "optimize") return run_optimize(config, out);
    std::fprintf(stderr, "unknown subcommand: %s\n", subcommand.c_str());
    return 2;
  } catch (const numerical_failure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace minspec::cli
