#pragma once

// The constraint set K (fields with prescribed mean), the coupling
// function F, and the constructive potential families: single-mode
// perturbations, the 1D spike and the ball-concentrated bump.

#include <functional>
#include <vector>

#include "minspec/geometry.hpp"

namespace minspec {

struct PotentialField {
  const ManifoldGrid* grid = nullptr;
  std::vector<double> samples;
  double mean = 0.0;  // kappa_0, enforced at construction

  double discrete_mean() const;
};

// F with analytic first and second derivatives; the expansion data
// f0 = F(k0), f1 = F'(k0), f2 = F''(k0)/2 is cached at construction.
struct CouplingFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> ddf;
  double expansion_point = 0.0;
  double f0 = 0.0, f1 = 0.0, f2 = 0.0;

  double operator()(double kappa) const { return f(kappa); }
};

CouplingFunction make_coupling(std::function<double(double)> f,
                               std::function<double(double)> df,
                               std::function<double(double)> ddf,
                               double expansion_point);

CouplingFunction coupling_square(double expansion_point);     // F(k) = k^2
CouplingFunction coupling_identity(double expansion_point);   // F(k) = k
CouplingFunction coupling_exp(double expansion_point);        // F(k) = e^k

enum class Smoothing { hard, mollified };

PotentialField constant_potential(const ManifoldGrid& grid, double kappa0);

PotentialField mode_perturbation(const ManifoldGrid& grid, double kappa0,
                                 double epsilon, const LaplaceEigenpair& mode);

// kappa_0 * L / delta on (0, delta), zero elsewhere; mollified variant uses
// raised-cosine ramps of width delta/10. A final constant rescale makes the
// discrete mean exactly kappa0.
PotentialField spike_potential_1d(const ManifoldGrid& grid, double kappa0,
                                  double delta, Smoothing smoothing);

// kappa_0 * |M| / |B_delta| on the geodesic ball, zero elsewhere.
PotentialField ball_potential(const ManifoldGrid& grid, double kappa0,
                              std::size_t center_node, double delta,
                              Smoothing smoothing);

// Constant shift onto K; identity for fields already in K.
PotentialField project_to_constraint(const ManifoldGrid& grid,
                                     std::vector<double> samples,
                                     double kappa0);

}  // namespace minspec
