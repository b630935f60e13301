#pragma once

// Assembly of the dense symmetric discretization of H = -Laplace + a F(k),
// in two interchangeable forms: Fourier (exact differentiation matrix from
// the analytic eigenbasis) and second-order finite differences.

#include <vector>

#include "minspec/geometry.hpp"
#include "minspec/kernels.hpp"
#include "minspec/potentials.hpp"

namespace minspec {

enum class Discretization { fourier, fd2 };

struct SpectralOperator {
  const ManifoldGrid* grid = nullptr;
  double alpha = 0.0;
  Discretization discretization = Discretization::fourier;
  std::vector<double> matrix;      // dense symmetric, row-major n x n
  std::vector<double> potential;   // F(kappa(x_i)) samples used in assembly
  double asymmetry_defect = 0.0;   // max |a_ij - a_ji| before symmetrization

  std::size_t dim() const { return grid->node_count(); }
};

SpectralOperator assemble(const ManifoldGrid& grid, const PotentialField& kappa,
                          const CouplingFunction& coupling, double alpha,
                          Discretization discretization,
                          ExecPolicy policy = kernels::default_policy());

std::vector<double> apply(const SpectralOperator& op,
                          const std::vector<double>& u,
                          ExecPolicy policy = kernels::default_policy());

double rayleigh_quotient(const SpectralOperator& op,
                         const std::vector<double>& u);

// The pure discrete Laplacian matrix for one grid (alpha = 0 part); shared
// by assemble and by tests that want the operator without a potential.
std::vector<double> laplacian_matrix(const ManifoldGrid& grid,
                                     Discretization discretization,
                                     ExecPolicy policy = kernels::default_policy());

}  // namespace minspec
