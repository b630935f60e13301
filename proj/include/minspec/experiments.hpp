#pragma once

// Reproducible studies turning each analytic claim into a numerical check: the 1D
// transition and spike limit, the Hill-equation lower bound, the torus
// eigenvalue collapse, and a projected-gradient minimizer over K.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minspec/perturbation.hpp"

namespace minspec {

struct TransitionSweep {
  std::vector<double> alphas;
  std::vector<std::vector<double>> epsilons;       // per alpha
  std::vector<std::vector<double>> lambda_shift;   // lambda0(k0+eq) - lambda0(k0)
  std::vector<double> fitted_l2;                   // per alpha, from eigensolves
  double estimated_alpha_c = 0.0;                  // sign-change bisection
  std::optional<double> reference_alpha_c;         // closed form
};

TransitionSweep transition_sweep(const ManifoldGrid& grid,
                                 const CouplingFunction& coupling, double kappa0,
                                 const std::vector<double>& alphas,
                                 const std::vector<double>& epsilons,
                                 const std::vector<double>& q,
                                 Discretization discretization = Discretization::fourier);

struct SpikeLimit {
  std::vector<double> deltas;
  std::vector<double> lambda0;        // principal eigenvalue per delta
  std::vector<double> test_quotient;  // J_delta at sqrt(2) sin(pi s / L)
  double fitted_order = 0.0;          // empirical leading order in delta
  double extrapolated = 0.0;          // Richardson limit of lambda0
  double reference = 0.0;             // mu1 / 4
};

SpikeLimit spike_limit(const ManifoldGrid& grid, const CouplingFunction& coupling,
                       double kappa0, double alpha,
                       const std::vector<double>& deltas,
                       Smoothing smoothing = Smoothing::mollified,
                       Discretization discretization = Discretization::fourier);

struct HillBoundInput {
  double period = 0.0;
  std::vector<double> potential;  // V on the uniform grid
};

struct HillBound {
  double v_min = 0.0;
  double integral = 0.0;  // (1/L) int sqrt(V - V_min)
  double bound = 0.0;
  std::string branch;     // "subcritical" | "supercritical"
};

HillBound hill_lower_bound(const HillBoundInput& input);

struct TorusCollapse {
  std::vector<double> deltas;
  std::vector<std::vector<double>> eigenvalues;   // per delta, j ascending
  std::vector<std::vector<double>> excision_bounds;  // masked-mode Rayleigh quotients
  std::vector<double> laplace_mu;                 // reference mu_j
  double coupling_at_zero = 0.0;                  // F(0)
};

TorusCollapse torus_collapse(const ManifoldGrid& grid,
                             const CouplingFunction& coupling, double kappa0,
                             double alpha, const std::vector<double>& deltas,
                             std::size_t eigen_count,
                             Smoothing smoothing = Smoothing::mollified,
                             Discretization discretization = Discretization::fourier);

struct StepRule {
  double initial_step = 0.05;
  double shrink = 0.5;
  std::size_t max_backtracks = 40;
};

enum class DescentStatus { completed, degeneracy_stop, line_search_failure };

struct DescentTrajectory {
  std::vector<std::vector<double>> iterates;  // kappa samples per step
  std::vector<double> lambda;                 // objective per step
  std::vector<double> gradient_norm;          // projected-gradient L2 norm
  std::vector<double> hf_check_error;         // Hellmann-Feynman vs FD, relative
  DescentStatus status = DescentStatus::completed;
};

DescentTrajectory minimize_potential(const ManifoldGrid& grid,
                                     const CouplingFunction& coupling,
                                     double kappa0, double alpha, std::size_t j,
                                     const PotentialField& start,
                                     std::size_t steps, const StepRule& rule,
                                     Discretization discretization = Discretization::fourier);

// First-order derivative of a simple eigenvalue along direction h:
// a int F'(kappa) h u_j^2, with u_j quadrature-normalized.
double eigenvalue_directional_derivative(const ManifoldGrid& grid,
                                         const CouplingFunction& coupling,
                                         double alpha,
                                         const PotentialField& kappa,
                                         const std::vector<double>& direction,
                                         std::size_t j,
                                         Discretization discretization = Discretization::fourier);

// Zero-mean random field from modes 1..max_mode_index of the analytic basis.
std::vector<double> random_band_limited(const ManifoldGrid& grid,
                                        std::size_t max_mode_index,
                                        std::mt19937_64& rng);

}  // namespace minspec
