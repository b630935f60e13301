#include "minspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace minspec {

namespace {

double weighted_norm(double w, const std::vector<double>& u) {
  double acc = 0.0;
  for (double v : u) acc += v * v;
  return std::sqrt(w * acc);
}

// Sign convention: largest-magnitude entry positive.
void fix_sign(std::vector<double>& u) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < u.size(); ++i)
    if (std::fabs(u[i]) > std::fabs(u[arg])) arg = i;
  if (u[arg] < 0.0)
    for (double& v : u) v = -v;
}

}  // namespace

DenseEigen dense_eigh(std::size_t n, std::vector<double> matrix,
                      EighMethod method, ExecPolicy policy) {
  DenseEigen out;
  out.values.resize(n);
  std::vector<double> sub(n);
  if (method == EighMethod::householder_ql) {
    kernels::tridiagonalize(n, matrix.data(), out.values.data(), sub.data(),
                            policy);
    kernels::ql_implicit_shift(n, out.values.data(), sub.data(), matrix.data(),
                               policy);
    out.vectors = std::move(matrix);
  } else {
    out.vectors.assign(n * n, 0.0);
    kernels::jacobi_eigen(n, matrix.data(), out.values.data(),
                          out.vectors.data(), policy);
  }
  // Sort ascending, permuting columns.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.values[a] < out.values[b];
  });
  std::vector<double> values(n), vectors(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = out.values[order[j]];
    for (std::size_t i = 0; i < n; ++i)
      vectors[i * n + j] = out.vectors[i * n + order[j]];
  }
  out.values = std::move(values);
  out.vectors = std::move(vectors);
  return out;
}

std::vector<double> dense_eigenvalues(std::size_t n, std::vector<double> matrix,
                                      EighMethod method, ExecPolicy policy) {
  std::vector<double> values(n);
  if (method == EighMethod::householder_ql) {
    std::vector<double> sub(n);
    kernels::tridiagonalize(n, matrix.data(), values.data(), sub.data(), policy,
                            /*with_vectors=*/false);
    kernels::ql_implicit_shift(n, values.data(), sub.data(), nullptr, policy);
  } else {
    std::vector<double> scratch(n * n, 0.0);
    std::vector<double> a(matrix);
    kernels::jacobi_eigen(n, a.data(), values.data(), scratch.data(), policy);
  }
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<double> eigenvalues(const SpectralOperator& op, std::size_t count,
                                EighMethod method, ExecPolicy policy) {
  const std::size_t n = op.dim();
  if (count == 0 || count > n)
    throw std::invalid_argument("eigenvalue count out of range");
  auto values = dense_eigenvalues(n, op.matrix, method, policy);
  values.resize(count);
  return values;
}

EigenResult eigh(const SpectralOperator& op, std::size_t count,
                 EighMethod method, ExecPolicy policy) {
  const std::size_t n = op.dim();
  if (count == 0 || count > n)
    throw std::invalid_argument("eigenpair count out of range");

  DenseEigen dec = dense_eigh(n, op.matrix, method, policy);

  EigenResult res;
  res.matrix_dim = n;
  res.eigenvalues.assign(dec.values.begin(), dec.values.begin() + count);
  const double scale = 1.0 / std::sqrt(op.grid->weight());
  res.vectors.resize(count);
  res.residuals.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double>& u = res.vectors[j];
    u.resize(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = scale * dec.vectors[i * n + j];
    fix_sign(u);
    res.residuals[j] = residual(op, res.eigenvalues[j], u);
  }
  return res;
}

double residual(const SpectralOperator& op, double lambda,
                const std::vector<double>& u) {
  const double w = op.grid->weight();
  const double nu = weighted_norm(w, u);
  if (nu == 0.0) throw std::invalid_argument("residual of the zero vector");
  auto r = apply(op, u);
  for (std::size_t i = 0; i < u.size(); ++i) r[i] -= lambda * u[i];
  return weighted_norm(w, r) / nu;
}

const SpectralBasis& shared_basis(const ManifoldGrid& grid) {
  using Key = std::tuple<int, double, double, std::size_t, std::size_t>;
  static std::map<Key, std::unique_ptr<SpectralBasis>> cache;
  static std::mutex mutex;
  const Key key{int(grid.kind), grid.length1, grid.length2, grid.n1, grid.n2};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<SpectralBasis>(full_spectral_basis(grid))).first;
  return *it->second;
}

std::vector<double> basis_coefficients(const ManifoldGrid& grid,
                                       const std::vector<double>& u) {
  const SpectralBasis& basis = shared_basis(grid);
  const std::size_t m = basis.size();
  if (u.size() != m) throw std::invalid_argument("vector length does not match grid");
  const double w = grid.weight();
  std::vector<double> c(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double* col = basis.column(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += col[i] * u[i];
    c[j] = w * acc;
  }
  return c;
}

std::vector<double> poisson_solve(const ManifoldGrid& grid,
                                  const std::vector<double>& rhs) {
  const SpectralBasis& basis = shared_basis(grid);
  const std::size_t m = basis.size();
  auto c = basis_coefficients(grid, rhs);
  // Mode 0 carries the mean: solvability requires it to vanish.
  const double mean = c[0] / std::sqrt(grid.measure()) ;
  if (std::fabs(mean) > 1e-10)
    throw std::invalid_argument("Poisson right-hand side must have zero mean");
  std::vector<double> u(m, 0.0);
  for (std::size_t j = 1; j < m; ++j) {
    const double cj = c[j] / basis.mu[j];
    const double* col = basis.column(j);
    if (cj == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) u[i] += cj * col[i];
  }
  return u;
}

std::vector<double> spectral_laplacian(const ManifoldGrid& grid,
                                       const std::vector<double>& u) {
  const SpectralBasis& basis = shared_basis(grid);
  const std::size_t m = basis.size();
  auto c = basis_coefficients(grid, u);
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double cj = c[j] * basis.mu[j];
    if (cj == 0.0) continue;
    const double* col = basis.column(j);
    for (std::size_t i = 0; i < m; ++i) out[i] += cj * col[i];
  }
  // Convention: returns (-Laplace) u, the positive operator's action.
  return out;
}

std::vector<std::vector<double>> spectral_gradient(const ManifoldGrid& grid,
                                                   const std::vector<double>& u) {
  const SpectralBasis& basis = shared_basis(grid);
  const std::size_t m = basis.size();
  auto c = basis_coefficients(grid, u);
  const std::size_t dims = grid.kind == ManifoldKind::circle ? 1 : 2;
  std::vector<std::vector<double>> grad(dims, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    if (c[j] == 0.0) continue;
    const double* g1 = basis.d1.data() + j * m;
    for (std::size_t i = 0; i < m; ++i) grad[0][i] += c[j] * g1[i];
    if (dims == 2) {
      const double* g2 = basis.d2.data() + j * m;
      for (std::size_t i = 0; i < m; ++i) grad[1][i] += c[j] * g2[i];
    }
  }
  return grad;
}

}  // namespace minspec
