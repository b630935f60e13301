#include "minspec/spectral_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace minspec {

namespace {

// 1D Fourier differentiation matrix (-d^2/ds^2) on a circle, n x n.
std::vector<double> fourier_laplacian_1d(double length, std::size_t n,
                                         ExecPolicy policy) {
  const ManifoldGrid circle = make_circle(length, n);
  const SpectralBasis basis = full_spectral_basis(circle);
  std::vector<double> a(n * n, 0.0);
  kernels::add_basis_outer(n, n, basis.functions.data(), basis.mu.data(),
                           circle.weight(), a.data(), policy);
  return a;
}

std::vector<double> fd2_laplacian(const ManifoldGrid& grid) {
  const std::size_t m = grid.node_count();
  std::vector<double> a(m * m, 0.0);
  if (grid.kind == ManifoldKind::circle) {
    const double h = grid.length1 / double(grid.n1);
    const double c = 1.0 / (h * h);
    for (std::size_t i = 0; i < m; ++i) {
      a[i * m + i] = 2.0 * c;
      a[i * m + (i + 1) % m] -= c;
      a[i * m + (i + m - 1) % m] -= c;
    }
  } else {
    const double h1 = grid.length1 / double(grid.n1);
    const double h2 = grid.length2 / double(grid.n2);
    const double c1 = 1.0 / (h1 * h1), c2 = 1.0 / (h2 * h2);
    const std::size_t n1 = grid.n1, n2 = grid.n2;
    auto id = [&](std::size_t i, std::size_t j) { return i * n2 + j; };
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        const std::size_t r = id(i, j);
        a[r * m + r] = 2.0 * (c1 + c2);
        a[r * m + id((i + 1) % n1, j)] -= c1;
        a[r * m + id((i + n1 - 1) % n1, j)] -= c1;
        a[r * m + id(i, (j + 1) % n2)] -= c2;
        a[r * m + id(i, (j + n2 - 1) % n2)] -= c2;
      }
  }
  return a;
}

}  // namespace

std::vector<double> laplacian_matrix(const ManifoldGrid& grid,
                                     Discretization discretization,
                                     ExecPolicy policy) {
  if (discretization == Discretization::fd2) return fd2_laplacian(grid);

  const std::size_t m = grid.node_count();
  if (grid.kind == ManifoldKind::circle)
    return fourier_laplacian_1d(grid.length1, grid.n1, policy);

  // Torus: Kronecker sum of the two 1D differentiation matrices.
  const auto a1 = fourier_laplacian_1d(grid.length1, grid.n1, policy);
  const auto a2 = fourier_laplacian_1d(grid.length2, grid.n2, policy);
  const std::size_t n1 = grid.n1, n2 = grid.n2;
  std::vector<double> a(m * m, 0.0);
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      double* row = a.data() + (i1 * n2 + i2) * m;
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        row[j1 * n2 + i2] += a1[i1 * n1 + j1];
      for (std::size_t j2 = 0; j2 < n2; ++j2)
        row[i1 * n2 + j2] += a2[i2 * n2 + j2];
    }
  return a;
}

SpectralOperator assemble(const ManifoldGrid& grid, const PotentialField& kappa,
                          const CouplingFunction& coupling, double alpha,
                          Discretization discretization, ExecPolicy policy) {
  if (kappa.grid != &grid || kappa.samples.size() != grid.node_count())
    throw std::invalid_argument("potential sampled on a different grid");

  SpectralOperator op;
  op.grid = &grid;
  op.alpha = alpha;
  op.discretization = discretization;
  op.matrix = laplacian_matrix(grid, discretization, policy);
  const std::size_t m = grid.node_count();
  op.potential.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    op.potential[i] = coupling(kappa.samples[i]);
    op.matrix[i * m + i] += alpha * op.potential[i];
  }
  op.asymmetry_defect = kernels::symmetrize(m, op.matrix.data(), policy);
  return op;
}

std::vector<double> apply(const SpectralOperator& op,
                          const std::vector<double>& u, ExecPolicy policy) {
  if (u.size() != op.dim())
    throw std::invalid_argument("vector length does not match operator");
  std::vector<double> out(u.size());
  kernels::sym_matvec(op.dim(), op.matrix.data(), u.data(), out.data(), policy);
  return out;
}

double rayleigh_quotient(const SpectralOperator& op,
                         const std::vector<double>& u) {
  const double w = op.grid->weight();
  const auto hu = apply(op, u);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += w * u[i] * hu[i];
    den += w * u[i] * u[i];
  }
  if (den == 0.0) throw std::invalid_argument("Rayleigh quotient of the zero vector");
  return num / den;
}

}  // namespace minspec
