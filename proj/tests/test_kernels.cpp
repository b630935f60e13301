#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "minspec/eigensolve.hpp"
#include "minspec/kernels.hpp"

using namespace minspec;

namespace {

std::vector<double> random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = uni(rng);
  return a;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference") {
  std::mt19937_64 rng(11);
  const std::size_t n = 64;
  const auto a = random_symmetric(n, rng);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = uni(rng);

  SUBCASE("sym_matvec") {
    std::vector<double> ys(n), yp(n);
    kernels::sym_matvec(n, a.data(), x.data(), ys.data(), ExecPolicy::serial);
    kernels::sym_matvec(n, a.data(), x.data(), yp.data(), ExecPolicy::parallel);
    for (std::size_t i = 0; i < n; ++i) CHECK(ys[i] == doctest::Approx(yp[i]).epsilon(1e-14));
  }

  SUBCASE("eigendecomposition") {
    const auto ds = dense_eigh(n, a, EighMethod::householder_ql, ExecPolicy::serial);
    const auto dp = dense_eigh(n, a, EighMethod::householder_ql, ExecPolicy::parallel);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(ds.values[i] == doctest::Approx(dp.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("householder+ql and jacobi agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 12;
    const auto a = random_symmetric(n, rng);
    const auto hq = dense_eigh(n, a, EighMethod::householder_ql);
    const auto jac = dense_eigh(n, a, EighMethod::jacobi);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(hq.values[i] == doctest::Approx(jac.values[i]).epsilon(1e-10));
  }
}

TEST_CASE("symmetrize reports the defect") {
  std::vector<double> a{1.0, 2.0, 2.5, 4.0};
  const double defect = kernels::symmetrize(2, a.data(), ExecPolicy::serial);
  CHECK(defect == doctest::Approx(0.5));
  CHECK(a[1] == doctest::Approx(2.25));
  CHECK(a[2] == doctest::Approx(2.25));
}

TEST_CASE("decomposition reconstructs the matrix") {
  std::mt19937_64 rng(17);
  const std::size_t n = 24;
  const auto a = random_symmetric(n, rng);
  const auto dec = dense_eigh(n, a);
  // Frobenius error of sum lambda_j z_j z_j^T against A.
  double err = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += dec.values[k] * dec.vectors[i * n + k] * dec.vectors[j * n + k];
      err += (acc - a[i * n + j]) * (acc - a[i * n + j]);
      norm += a[i * n + j] * a[i * n + j];
    }
  CHECK(std::sqrt(err) <= 1e-8 * std::sqrt(norm));
}
