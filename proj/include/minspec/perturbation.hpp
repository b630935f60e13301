#pragma once

// Second-order expansion of the principal eigenvalue around a constant
// potential: l0, l1, the corrector phi1, l2 in three algebraic forms, the
// critical coupling, and the quartic functional behind the sign law.

#include <optional>
#include <vector>

#include "minspec/eigensolve.hpp"

namespace minspec {

struct PerturbationReport {
  double l0 = 0.0;
  double l1 = 0.0;                 // identically zero up to quadrature noise
  double l2 = 0.0;
  double l2_gradient_form = 0.0;   // independent route, must match l2
  double l2_spectral_form = 0.0;   // mode-decomposed route, must match l2
  std::optional<double> critical_alpha;
  std::vector<double> phi1;        // zero-mean gauge
  std::vector<double> q;
};

// a* = mu1 F''(k0) / (2 F'(k0)^2); empty when F'(k0) vanishes.
std::optional<double> critical_alpha(const CouplingFunction& coupling,
                                     double mu1);

// Zero-mean solution of -Laplace phi1 = -a F'(k0) q.
std::vector<double> solve_phi1(const ManifoldGrid& grid,
                               const std::vector<double>& q,
                               const CouplingFunction& coupling, double alpha);

struct Ell2 {
  double value = 0.0;          // (a f2/|M|) int q^2 + (a f1/|M|) int q phi1
  double gradient_form = 0.0;  // (f2/(a f1^2 |M|)) int (L phi1)^2 - (1/|M|) int |grad phi1|^2
  double spectral_form = 0.0;  // (a/|M|) sum c_j^2 (f2 - a f1^2 / mu_j)
};
Ell2 ell2(const ManifoldGrid& grid, const std::vector<double>& q,
          const CouplingFunction& coupling, double alpha);

PerturbationReport perturbation_report(const ManifoldGrid& grid,
                                       const std::vector<double>& q,
                                       const CouplingFunction& coupling,
                                       double alpha);

struct ExpansionCheck {
  std::vector<double> epsilons;
  std::vector<double> lambda0;      // full eigensolve per epsilon
  std::vector<double> remainders;   // |lambda0(e) - l0 - l2 e^2|
  double fitted_order = 0.0;        // log-log slope of the remainder
};
ExpansionCheck verify_expansion(const ManifoldGrid& grid,
                                const std::vector<double>& q,
                                const CouplingFunction& coupling, double alpha,
                                const std::vector<double>& epsilons,
                                Discretization discretization = Discretization::fourier);

// gamma_j = (a mu_j - 1) mu_j, the modewise spectrum of the functional below.
std::vector<double> lemma_gamma(double alpha, const std::vector<double>& mu);

// I_a(u) = int a (Laplace u)^2 - |grad u|^2, by quadrature of sampled fields.
double functional_I(const ManifoldGrid& grid, const std::vector<double>& u,
                    double alpha);

}  // namespace minspec
