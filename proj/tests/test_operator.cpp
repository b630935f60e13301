#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>
#include <vector>

#include "minspec/eigensolve.hpp"

using namespace minspec;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_eigenvalues(const ManifoldGrid& grid,
                                       const PotentialField& kappa,
                                       const CouplingFunction& c, double alpha,
                                       Discretization disc, std::size_t count) {
  const auto op = assemble(grid, kappa, c, alpha, disc);
  return eigh(op, count).eigenvalues;
}
}  // namespace

TEST_CASE("alpha = 0 gives the pure Laplacian") {
  const auto grid = make_circle(1.0, 32);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  std::vector<double> s(grid.node_count());
  for (double& v : s) v = gauss(rng);
  const auto kappa = project_to_constraint(grid, s, 1.0);
  const auto vals = sorted_eigenvalues(grid, kappa, coupling_square(1.0), 0.0,
                                       Discretization::fourier, 3);
  CHECK(std::fabs(vals[0]) <= 1e-9);
  CHECK(vals[1] == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("constant potential shifts the spectrum by alpha F(k0)") {
  const auto grid = make_circle(1.0, 32);
  const double k0 = 2.0 * kPi;
  const auto kappa = constant_potential(grid, k0);
  const auto vals = sorted_eigenvalues(grid, kappa, coupling_square(k0), 0.1,
                                       Discretization::fourier, 3);
  CHECK(vals[0] == doctest::Approx(0.1 * 4.0 * kPi * kPi).epsilon(1e-10));
  CHECK(vals[1] == doctest::Approx(4.0 * kPi * kPi + 0.1 * 4.0 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("fd2 symbol: lowest mode matches 2(1 - cos(2 pi /N)) / h^2") {
  const std::size_t n = 64;
  const auto grid = make_circle(1.0, n);
  const double k0 = 2.0 * kPi;
  const auto kappa = constant_potential(grid, k0);
  const auto vals = sorted_eigenvalues(grid, kappa, coupling_square(k0), 0.1,
                                       Discretization::fd2, 2);
  const double h = 1.0 / double(n);
  const double mu1_fd = 2.0 * (1.0 - std::cos(2.0 * kPi / double(n))) / (h * h);
  const double shift = 0.1 * 4.0 * kPi * kPi;
  CHECK(vals[0] == doctest::Approx(shift).epsilon(1e-9));
  CHECK(vals[1] == doctest::Approx(mu1_fd + shift).epsilon(1e-10));
}

TEST_CASE("apply: eigenbasis exactness and symmetry of the form") {
  const auto grid = make_circle(1.0, 24);
  const auto kappa = constant_potential(grid, 1.0);
  const auto op0 = assemble(grid, kappa, coupling_square(1.0), 0.0,
                            Discretization::fourier);
  const auto pairs = laplace_eigenbasis(grid, 2);

  const auto hv0 = minspec::apply(op0, pairs[0].samples);
  for (double v : hv0) CHECK(std::fabs(v) <= 1e-10);
  const auto hv1 = minspec::apply(op0, pairs[1].samples);
  for (std::size_t i = 0; i < hv1.size(); ++i)
    CHECK(hv1[i] == doctest::Approx(pairs[1].eigenvalue * pairs[1].samples[i])
                        .epsilon(1e-10));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  std::vector<double> u(grid.node_count()), v(grid.node_count());
  for (double& x : u) x = gauss(rng);
  for (double& x : v) x = gauss(rng);
  const auto hu = minspec::apply(op0, u);
  const auto hv = minspec::apply(op0, v);
  double uhv = 0.0, vhu = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uhv += u[i] * hv[i];
    vhu += v[i] * hu[i];
  }
  CHECK(uhv == doctest::Approx(vhu).epsilon(1e-10));
  CHECK_THROWS_AS(minspec::apply(op0, std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST_CASE("Rayleigh quotient basics") {
  const auto grid = make_circle(1.0, 32);
  const double k0 = 2.0 * kPi;
  const auto kappa = constant_potential(grid, k0);
  const auto op = assemble(grid, kappa, coupling_square(k0), 0.2,
                           Discretization::fourier);

  SUBCASE("at the ground eigenvector") {
    const auto res = eigh(op, 1);
    CHECK(rayleigh_quotient(op, res.vectors[0]) ==
          doctest::Approx(res.eigenvalues[0]).epsilon(1e-10));
  }

  SUBCASE("at the constant") {
    const std::vector<double> ones(grid.node_count(), 1.0);
    CHECK(rayleigh_quotient(op, ones) ==
          doctest::Approx(0.2 * 4.0 * kPi * kPi).epsilon(1e-12));
  }

  SUBCASE("upper-bound property on random vectors") {
    const auto res = eigh(op, 1);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> u(grid.node_count());
      for (double& x : u) x = gauss(rng);
      CHECK(rayleigh_quotient(op, u) >= res.eigenvalues[0] - 1e-10);
    }
  }

  SUBCASE("zero vector rejected") {
    CHECK_THROWS_AS(rayleigh_quotient(op, std::vector<double>(grid.node_count(), 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("shift covariance: F + c moves the whole spectrum by alpha c") {
  const auto grid = make_circle(1.0, 24);
  const double alpha = 0.37, c = 1.9;
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  std::vector<double> s(grid.node_count());
  for (double& v : s) v = 1.0 + 0.2 * gauss(rng);
  const auto kappa = project_to_constraint(grid, s, 1.0);

  const auto base = coupling_square(1.0);
  const auto shifted = make_coupling([&](double k) { return k * k + c; },
                                     [](double k) { return 2.0 * k; },
                                     [](double) { return 2.0; }, 1.0);
  const auto v0 = sorted_eigenvalues(grid, kappa, base, alpha,
                                     Discretization::fourier, 6);
  const auto v1 = sorted_eigenvalues(grid, kappa, shifted, alpha,
                                     Discretization::fourier, 6);
  for (std::size_t j = 0; j < v0.size(); ++j)
    CHECK(v1[j] - v0[j] == doctest::Approx(alpha * c).epsilon(1e-10));
}

TEST_CASE("translation invariance of the spectrum") {
  const auto grid = make_circle(1.0, 32);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss;
  std::vector<double> s(grid.node_count());
  for (double& v : s) v = 0.3 * gauss(rng);
  const auto kappa = project_to_constraint(grid, s, 1.0);
  std::vector<double> rotated(s);
  std::rotate(rotated.begin(), rotated.begin() + 5, rotated.end());
  const auto kappa_rot = project_to_constraint(grid, rotated, 1.0);

  const auto c = coupling_square(1.0);
  const auto v0 = sorted_eigenvalues(grid, kappa, c, 0.8, Discretization::fourier, 6);
  const auto v1 = sorted_eigenvalues(grid, kappa_rot, c, 0.8, Discretization::fourier, 6);
  for (std::size_t j = 0; j < v0.size(); ++j)
    CHECK(v0[j] == doctest::Approx(v1[j]).epsilon(1e-10));
}

TEST_CASE("fd2 converges to fourier at second order") {
  const double k0 = 2.0 * kPi;
  const auto c = coupling_square(k0);
  std::vector<double> errs;
  for (std::size_t n : {64, 128, 256}) {
    const auto grid = make_circle(1.0, n);
    // Smooth non-constant potential, fixed analytic shape across n.
    std::vector<double> s(grid.node_count());
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] = k0 + std::sin(2.0 * kPi * grid.coord1[i]);
    const auto kappa = project_to_constraint(grid, s, k0);
    const auto vf = sorted_eigenvalues(grid, kappa, c, 0.3, Discretization::fourier, 4);
    const auto vd = sorted_eigenvalues(grid, kappa, c, 0.3, Discretization::fd2, 4);
    double err = 0.0;
    for (std::size_t j = 0; j < 4; ++j) err = std::max(err, std::fabs(vf[j] - vd[j]));
    errs.push_back(err);
  }
  const double slope1 = std::log2(errs[0] / errs[1]);
  const double slope2 = std::log2(errs[1] / errs[2]);
  CHECK(slope1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(slope2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("torus assembly: constant potential spectrum, both discretizations") {
  const auto grid = make_torus(1.0, 1.0, 12, 12);
  const auto kappa = constant_potential(grid, 1.0);
  const auto vals = sorted_eigenvalues(grid, kappa, coupling_square(1.0), 0.5,
                                       Discretization::fourier, 6);
  const double shift = 0.5;
  CHECK(vals[0] == doctest::Approx(shift).epsilon(1e-10));
  for (std::size_t j = 1; j <= 4; ++j)
    CHECK(vals[j] == doctest::Approx(4.0 * kPi * kPi + shift).epsilon(1e-10));
  CHECK(vals[5] == doctest::Approx(8.0 * kPi * kPi + shift).epsilon(1e-10));

  const auto op = assemble(grid, kappa, coupling_square(1.0), 0.5,
                           Discretization::fd2);
  CHECK(op.asymmetry_defect <= 1e-12);
}
