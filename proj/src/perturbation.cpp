#include "minspec/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace minspec {

namespace {

double quad_dot(const ManifoldGrid& grid, const std::vector<double>& a,
                const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return grid.weight() * acc;
}

void require_zero_mean(const ManifoldGrid& grid, const std::vector<double>& q) {
  double mean = 0.0;
  for (double v : q) mean += v;
  mean /= double(q.size());
  if (std::fabs(mean) > 1e-10)
    throw std::invalid_argument("perturbation direction must have zero mean");
  (void)grid;
}

}  // namespace

std::optional<double> critical_alpha(const CouplingFunction& coupling,
                                     double mu1) {
  if (std::fabs(coupling.f1) <= 1e-12) return std::nullopt;
  return mu1 * coupling.f2 / (coupling.f1 * coupling.f1);
}

std::vector<double> solve_phi1(const ManifoldGrid& grid,
                               const std::vector<double>& q,
                               const CouplingFunction& coupling, double alpha) {
  require_zero_mean(grid, q);
  std::vector<double> rhs(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    rhs[i] = -alpha * coupling.f1 * q[i];
  return poisson_solve(grid, rhs);
}

Ell2 ell2(const ManifoldGrid& grid, const std::vector<double>& q,
          const CouplingFunction& coupling, double alpha) {
  require_zero_mean(grid, q);
  const double qq = quad_dot(grid, q, q);
  if (qq == 0.0) throw std::invalid_argument("perturbation direction is zero");
  const double vol = grid.measure();
  const double f1 = coupling.f1, f2 = coupling.f2;

  const auto phi1 = solve_phi1(grid, q, coupling, alpha);

  Ell2 out;
  out.value = (alpha * f2 / vol) * qq + (alpha * f1 / vol) * quad_dot(grid, q, phi1);

  // Independent route through sampled -Laplace phi1 and grad phi1.
  const auto lap = spectral_laplacian(grid, phi1);
  const auto grad = spectral_gradient(grid, phi1);
  double grad_sq = 0.0;
  for (const auto& comp : grad) grad_sq += quad_dot(grid, comp, comp);
  if (alpha != 0.0 && f1 != 0.0)
    out.gradient_form =
        (f2 / (alpha * f1 * f1 * vol)) * quad_dot(grid, lap, lap) - grad_sq / vol;
  else
    out.gradient_form = 0.0;

  // Mode decomposition q = sum c_j v_j.
  const SpectralBasis& basis = shared_basis(grid);
  const auto c = basis_coefficients(grid, q);
  double acc = 0.0;
  for (std::size_t j = 1; j < basis.size(); ++j)
    acc += c[j] * c[j] * (f2 - alpha * f1 * f1 / basis.mu[j]);
  out.spectral_form = (alpha / vol) * acc;
  return out;
}

PerturbationReport perturbation_report(const ManifoldGrid& grid,
                                       const std::vector<double>& q,
                                       const CouplingFunction& coupling,
                                       double alpha) {
  PerturbationReport report;
  report.q = q;
  report.l0 = alpha * coupling.f0;
  report.l1 = 0.0;  // forced by integrating the first-order equation
  report.phi1 = solve_phi1(grid, q, coupling, alpha);
  const Ell2 forms = ell2(grid, q, coupling, alpha);
  report.l2 = forms.value;
  report.l2_gradient_form = forms.gradient_form;
  report.l2_spectral_form = forms.spectral_form;
  const auto pairs = laplace_eigenbasis(grid, 2);
  report.critical_alpha = critical_alpha(coupling, pairs[1].eigenvalue);
  return report;
}

ExpansionCheck verify_expansion(const ManifoldGrid& grid,
                                const std::vector<double>& q,
                                const CouplingFunction& coupling, double alpha,
                                const std::vector<double>& epsilons,
                                Discretization discretization) {
  require_zero_mean(grid, q);
  double qmax = 0.0;
  for (double v : q) qmax = std::max(qmax, std::fabs(v));
  const double k0 = coupling.expansion_point;
  for (double e : epsilons) {
    if (!(e > 0.0)) throw std::invalid_argument("epsilon values must be positive");
    if (k0 != 0.0 && e * qmax > 0.1 * std::fabs(k0))
      throw std::invalid_argument("epsilon outside the linear-response guard");
  }

  const double l0 = alpha * coupling.f0;
  const double l2 = ell2(grid, q, coupling, alpha).value;

  ExpansionCheck check;
  check.epsilons = epsilons;
  for (double e : epsilons) {
    auto field = project_to_constraint(grid, [&] {
      std::vector<double> s(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) s[i] = k0 + e * q[i];
      return s;
    }(), k0);
    const auto op = assemble(grid, field, coupling, alpha, discretization);
    const auto res = eigh(op, 1);
    check.lambda0.push_back(res.eigenvalues[0]);
    check.remainders.push_back(std::fabs(res.eigenvalues[0] - l0 - l2 * e * e));
  }

  // Least-squares slope of log remainder vs log epsilon.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(epsilons.size());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double x = std::log(epsilons[i]);
    const double y = std::log(std::max(check.remainders[i], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  check.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return check;
}

std::vector<double> lemma_gamma(double alpha, const std::vector<double>& mu) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  std::vector<double> gamma(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j)
    gamma[j] = (alpha * mu[j] - 1.0) * mu[j];
  return gamma;
}

double functional_I(const ManifoldGrid& grid, const std::vector<double>& u,
                    double alpha) {
  const auto lap = spectral_laplacian(grid, u);
  const auto grad = spectral_gradient(grid, u);
  double lap_sq = quad_dot(grid, lap, lap);
  double grad_sq = 0.0;
  for (const auto& comp : grad) grad_sq += quad_dot(grid, comp, comp);
  return alpha * lap_sq - grad_sq;
}

}  // namespace minspec
