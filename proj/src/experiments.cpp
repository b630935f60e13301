#include "minspec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace minspec {

namespace {

constexpr double kPi = std::numbers::pi;

double lambda0_of(const ManifoldGrid& grid, const PotentialField& kappa,
                  const CouplingFunction& coupling, double alpha,
                  Discretization disc) {
  const auto op = assemble(grid, kappa, coupling, alpha, disc);
  return eigh(op, 1).eigenvalues[0];
}

// l2 estimated from a pair of eigensolves at one small epsilon.
double fitted_l2(const ManifoldGrid& grid, const CouplingFunction& coupling,
                 double kappa0, double alpha, double eps,
                 const std::vector<double>& q, Discretization disc) {
  std::vector<double> s(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) s[i] = kappa0 + eps * q[i];
  const auto kappa = project_to_constraint(grid, s, kappa0);
  const double base = lambda0_of(grid, constant_potential(grid, kappa0),
                                 coupling, alpha, disc);
  return (lambda0_of(grid, kappa, coupling, alpha, disc) - base) / (eps * eps);
}

void check_monotone(const std::vector<double>& v, bool increasing,
                    const char* name) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const bool ok = increasing ? v[i] > v[i - 1] : v[i] < v[i - 1];
    if (!ok) throw std::invalid_argument(std::string(name) + " must be strictly monotone");
  }
}

}  // namespace

TransitionSweep transition_sweep(const ManifoldGrid& grid,
                                 const CouplingFunction& coupling, double kappa0,
                                 const std::vector<double>& alphas,
                                 const std::vector<double>& epsilons,
                                 const std::vector<double>& q,
                                 Discretization disc) {
  if (alphas.empty() || epsilons.empty())
    throw std::invalid_argument("empty sweep range");
  check_monotone(alphas, true, "alpha list");

  TransitionSweep sweep;
  sweep.alphas = alphas;
  const auto pairs = laplace_eigenbasis(grid, 2);
  sweep.reference_alpha_c = critical_alpha(coupling, pairs[1].eigenvalue);

  for (double alpha : alphas) {
    std::vector<double> shifts;
    const double base = lambda0_of(grid, constant_potential(grid, kappa0),
                                   coupling, alpha, disc);
    for (double eps : epsilons) {
      std::vector<double> s(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) s[i] = kappa0 + eps * q[i];
      const auto kappa = project_to_constraint(grid, s, kappa0);
      shifts.push_back(lambda0_of(grid, kappa, coupling, alpha, disc) - base);
    }
    sweep.epsilons.push_back(epsilons);
    sweep.lambda_shift.push_back(shifts);
    sweep.fitted_l2.push_back(fitted_l2(grid, coupling, kappa0, alpha,
                                        epsilons.back(), q, disc));
  }

  // Bisection on the fitted l2 sign change, at the smallest epsilon.
  const double eps = *std::min_element(epsilons.begin(), epsilons.end());
  double lo = alphas.front(), hi = alphas.back();
  double flo = sweep.fitted_l2.front();
  bool bracketed = false;
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (flo > 0.0 && sweep.fitted_l2[i] < 0.0) {
      lo = alphas[i - 1];
      hi = alphas[i];
      bracketed = true;
      break;
    }
    flo = sweep.fitted_l2[i];
  }
  if (!bracketed) {
    sweep.estimated_alpha_c = std::nan("");
    return sweep;
  }
  for (int iter = 0; iter < 24 && hi - lo > 1e-4 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (fitted_l2(grid, coupling, kappa0, mid, eps, q, disc) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  sweep.estimated_alpha_c = 0.5 * (lo + hi);
  return sweep;
}

SpikeLimit spike_limit(const ManifoldGrid& grid, const CouplingFunction& coupling,
                       double kappa0, double alpha,
                       const std::vector<double>& deltas, Smoothing smoothing,
                       Discretization disc) {
  if (grid.kind != ManifoldKind::circle)
    throw std::invalid_argument("spike limit runs on the circle");
  if (deltas.size() < 3) throw std::invalid_argument("need at least three deltas");
  check_monotone(deltas, false, "delta list");

  SpikeLimit result;
  result.deltas = deltas;
  const double length = grid.length1;
  result.reference = std::pow(2.0 * kPi / length, 2) / 4.0;  // mu1 / 4

  // The half-period sine test function from the attainment argument.
  std::vector<double> test(grid.node_count());
  for (std::size_t i = 0; i < grid.node_count(); ++i)
    test[i] = std::sqrt(2.0) * std::sin(kPi * grid.coord1[i] / length);

  for (double delta : deltas) {
    const auto kappa = spike_potential_1d(grid, kappa0, delta, smoothing);
    const auto op = assemble(grid, kappa, coupling, alpha, disc);
    result.lambda0.push_back(eigh(op, 1).eigenvalues[0]);
    result.test_quotient.push_back(rayleigh_quotient(op, test));
  }

  // Empirical order p from the three finest points, then the Richardson
  // limit lambda* = l_fine - (l_mid - l_fine) / (r^p - 1).
  const std::size_t n = deltas.size();
  const double l2v = result.lambda0[n - 3], l1v = result.lambda0[n - 2],
               l0v = result.lambda0[n - 1];
  const double r = deltas[n - 2] / deltas[n - 1];
  const double ratio = (l2v - l1v) / (l1v - l0v);
  result.fitted_order = ratio > 0.0 ? std::log(ratio) / std::log(r) : 1.0;
  const double rp = std::pow(r, result.fitted_order);
  result.extrapolated = l0v - (l1v - l0v) / (rp - 1.0);
  return result;
}

HillBound hill_lower_bound(const HillBoundInput& input) {
  if (input.potential.empty()) throw std::invalid_argument("empty potential sample");
  if (!(input.period > 0.0)) throw std::invalid_argument("period must be positive");

  HillBound out;
  out.v_min = *std::min_element(input.potential.begin(), input.potential.end());
  double acc = 0.0;
  for (double v : input.potential) acc += std::sqrt(std::max(0.0, v - out.v_min));
  out.integral = acc / double(input.potential.size());
  const double threshold = kPi / input.period;
  if (out.integral <= threshold) {
    out.branch = "subcritical";
    out.bound = out.v_min + out.integral * out.integral;
  } else {
    out.branch = "supercritical";
    out.bound = out.v_min + threshold * threshold;
  }
  return out;
}

TorusCollapse torus_collapse(const ManifoldGrid& grid,
                             const CouplingFunction& coupling, double kappa0,
                             double alpha, const std::vector<double>& deltas,
                             std::size_t eigen_count, Smoothing smoothing,
                             Discretization disc) {
  if (grid.kind != ManifoldKind::torus)
    throw std::invalid_argument("collapse study runs on the torus");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  check_monotone(deltas, false, "delta list");

  // The construction needs F(0) to be the global minimum; probe a range.
  const double f_zero = coupling(0.0);
  double probe_max = std::fabs(kappa0);
  for (double d : deltas)
    probe_max = std::max(probe_max, std::fabs(kappa0) * grid.measure() / (kPi * d * d));
  for (int i = -500; i <= 500; ++i) {
    const double k = probe_max * double(i) / 500.0;
    if (coupling(k) < f_zero - 1e-12)
      throw std::invalid_argument("F(0) is not the minimum of F on the probed range");
  }

  TorusCollapse result;
  result.deltas = deltas;
  result.coupling_at_zero = f_zero;
  const auto pairs = laplace_eigenbasis(grid, eigen_count);
  for (const auto& p : pairs) result.laplace_mu.push_back(p.eigenvalue);

  const double w = grid.weight();
  for (double delta : deltas) {
    const auto kappa = ball_potential(grid, kappa0, 0, delta, smoothing);
    const auto op = assemble(grid, kappa, coupling, alpha, disc);
    result.eigenvalues.push_back(eigenvalues(op, eigen_count));

    // Excision upper bounds: Laplace modes masked to the ball complement.
    const auto ball = geodesic_ball_indicator(grid, 0, delta);
    std::vector<double> bounds;
    for (const auto& p : pairs) {
      std::vector<double> u(p.samples);
      for (std::size_t i = 0; i < u.size(); ++i)
        if (ball.mask[i]) u[i] = 0.0;
      double norm = 0.0;
      for (double v : u) norm += w * v * v;
      if (norm <= 0.0) {
        bounds.push_back(std::nan(""));
        continue;
      }
      bounds.push_back(rayleigh_quotient(op, u));
    }
    result.excision_bounds.push_back(bounds);
  }
  return result;
}

double eigenvalue_directional_derivative(const ManifoldGrid& grid,
                                         const CouplingFunction& coupling,
                                         double alpha,
                                         const PotentialField& kappa,
                                         const std::vector<double>& direction,
                                         std::size_t j, Discretization disc) {
  const auto op = assemble(grid, kappa, coupling, alpha, disc);
  const auto res = eigh(op, j + 1);
  const std::vector<double>& u = res.vectors[j];
  const double w = grid.weight();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += w * coupling.df(kappa.samples[i]) * direction[i] * u[i] * u[i];
  return alpha * acc;
}

DescentTrajectory minimize_potential(const ManifoldGrid& grid,
                                     const CouplingFunction& coupling,
                                     double kappa0, double alpha, std::size_t j,
                                     const PotentialField& start,
                                     std::size_t steps, const StepRule& rule,
                                     Discretization disc) {
  if (std::fabs(start.discrete_mean() - kappa0) > 1e-10)
    throw std::invalid_argument("starting potential is outside K");

  DescentTrajectory traj;
  PotentialField kappa = project_to_constraint(grid, start.samples, kappa0);
  const double w = grid.weight();
  double step = rule.initial_step;

  for (std::size_t it = 0; it <= steps; ++it) {
    const auto op = assemble(grid, kappa, coupling, alpha, disc);
    const auto res = eigh(op, j + 2 <= op.dim() ? j + 2 : j + 1);
    const double lambda = res.eigenvalues[j];

    // First-order formula needs a simple eigenvalue.
    const bool gap_ok =
        (j + 1 >= res.eigenvalues.size()) ||
        (res.eigenvalues[j + 1] - lambda > 1e-6 * (1.0 + std::fabs(lambda)));
    const bool gap_below =
        (j == 0) || (lambda - res.eigenvalues[j - 1] > 1e-6 * (1.0 + std::fabs(lambda)));
    if (!gap_ok || !gap_below) {
      traj.status = DescentStatus::degeneracy_stop;
      return traj;
    }

    const std::vector<double>& u = res.vectors[j];
    std::vector<double> grad(u.size());
    double gmean = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      grad[i] = alpha * coupling.df(kappa.samples[i]) * u[i] * u[i];
      gmean += grad[i];
    }
    gmean /= double(grad.size());
    double gnorm_sq = 0.0;
    for (double& g : grad) {
      g -= gmean;  // tangent projection: stay inside K
      gnorm_sq += w * g * g;
    }
    const double gnorm = std::sqrt(gnorm_sq);

    // Hellmann-Feynman sanity: analytic directional derivative along -grad
    // against a central finite difference.
    double hf_err = 0.0;
    if (gnorm > 1e-12) {
      double gmax = 0.0;
      for (double g : grad) gmax = std::max(gmax, std::fabs(g));
      const double t = 1e-6 * (1.0 + std::fabs(kappa0)) / gmax;
      auto shifted = [&](double sign) {
        std::vector<double> s(kappa.samples);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += sign * t * grad[i];
        const auto field = project_to_constraint(grid, s, kappa0);
        const auto sop = assemble(grid, field, coupling, alpha, disc);
        return eigh(sop, j + 1).eigenvalues[j];
      };
      const double fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * t);
      const double analytic = gnorm_sq;  // <grad, grad> in the weighted product
      hf_err = std::fabs(fd - analytic) / std::max(1e-14, std::fabs(analytic));
    }

    traj.iterates.push_back(kappa.samples);
    traj.lambda.push_back(lambda);
    traj.gradient_norm.push_back(gnorm);
    traj.hf_check_error.push_back(hf_err);

    if (it == steps) break;
    if (gnorm <= 1e-12) break;  // stationary (the constant potential case)

    bool moved = false;
    double t = step;
    for (std::size_t back = 0; back <= rule.max_backtracks; ++back) {
      std::vector<double> s(kappa.samples);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] -= t * grad[i];
      const auto trial = project_to_constraint(grid, s, kappa0);
      const auto top = assemble(grid, trial, coupling, alpha, disc);
      const double tl = eigh(top, j + 1).eigenvalues[j];
      if (tl <= lambda + 1e-12) {
        kappa = trial;
        step = t * 2.0 > rule.initial_step ? rule.initial_step : t * 2.0;
        moved = true;
        break;
      }
      t *= rule.shrink;
    }
    if (!moved) {
      traj.status = DescentStatus::line_search_failure;
      return traj;
    }
  }
  traj.status = DescentStatus::completed;
  return traj;
}

std::vector<double> random_band_limited(const ManifoldGrid& grid,
                                        std::size_t max_mode_index,
                                        std::mt19937_64& rng) {
  const auto pairs = laplace_eigenbasis(grid, max_mode_index + 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(grid.node_count(), 0.0);
  for (std::size_t j = 1; j <= max_mode_index; ++j) {
    const double c = gauss(rng);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * pairs[j].samples[i];
  }
  return u;
}

}  // namespace minspec
