#pragma once

// Dense symmetric eigensolver (Householder + implicit-shift QL, with a
// Jacobi-rotation fallback) and the eigenbasis Poisson inverse on a
// closed flat manifold.

#include <vector>

#include "minspec/spectral_operator.hpp"

namespace minspec {

enum class EighMethod { householder_ql, jacobi };

struct EigenResult {
  std::vector<double> eigenvalues;            // sorted ascending
  std::vector<std::vector<double>> vectors;   // quadrature-weighted norm 1
  std::vector<double> residuals;              // ||H u - l u|| / ||u||
  std::size_t matrix_dim = 0;
};

EigenResult eigh(const SpectralOperator& op, std::size_t count,
                 EighMethod method = EighMethod::householder_ql,
                 ExecPolicy policy = kernels::default_policy());

// Full decomposition of a raw symmetric matrix in the plain dot product;
// eigenvectors are the columns of the returned matrix.
struct DenseEigen {
  std::vector<double> values;
  std::vector<double> vectors;  // row-major, column j = eigenvector j
};
DenseEigen dense_eigh(std::size_t n, std::vector<double> matrix,
                      EighMethod method = EighMethod::householder_ql,
                      ExecPolicy policy = kernels::default_policy());

// Sorted eigenvalues only; skips the orthogonal-transform accumulation,
// roughly a 3x saving on large dense problems.
std::vector<double> dense_eigenvalues(std::size_t n, std::vector<double> matrix,
                                      EighMethod method = EighMethod::householder_ql,
                                      ExecPolicy policy = kernels::default_policy());

// First `count` eigenvalues of the assembled operator, values only.
std::vector<double> eigenvalues(const SpectralOperator& op, std::size_t count,
                                EighMethod method = EighMethod::householder_ql,
                                ExecPolicy policy = kernels::default_policy());

// Unique zero-mean u with -Laplace u = rhs, by analytic-eigenbasis mode
// division. rhs must have (quadrature) mean below 1e-10.
std::vector<double> poisson_solve(const ManifoldGrid& grid,
                                  const std::vector<double>& rhs);

double residual(const SpectralOperator& op, double lambda,
                const std::vector<double>& u);

// Basis-transform helpers shared with the perturbation module: expansion
// coefficients of u in the analytic basis, and sampled Laplacian/gradient.
std::vector<double> basis_coefficients(const ManifoldGrid& grid,
                                       const std::vector<double>& u);
std::vector<double> spectral_laplacian(const ManifoldGrid& grid,
                                       const std::vector<double>& u);
// Returns one sampled field per coordinate direction.
std::vector<std::vector<double>> spectral_gradient(const ManifoldGrid& grid,
                                                   const std::vector<double>& u);

// Memoized full analytic basis per grid shape.
const SpectralBasis& shared_basis(const ManifoldGrid& grid);

}  // namespace minspec
