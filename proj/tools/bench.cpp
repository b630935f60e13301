// Timing comparison of the serial reference kernels against the OpenMP
// paths: operator assembly, matvec and the full symmetric eigensolve.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "minspec/eigensolve.hpp"

using namespace minspec;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
             .count() / reps;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %10.4f ms   parallel %10.4f ms   speedup %.2fx\n",
              name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 256;
  const auto grid = make_circle(1.0, n);
  const auto coupling = coupling_square(2.0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  std::vector<double> noise(grid.node_count());
  for (double& v : noise) v = gauss(rng);
  const auto kappa = project_to_constraint(grid, noise, 2.0);

  std::printf("grid: circle L=1, N=%zu\n", n);

  double t_serial, t_parallel;

  t_serial = seconds([&] {
    (void)assemble(grid, kappa, coupling, 0.3, Discretization::fourier,
                   ExecPolicy::serial);
  }, 3);
  t_parallel = seconds([&] {
    (void)assemble(grid, kappa, coupling, 0.3, Discretization::fourier,
                   ExecPolicy::parallel);
  }, 3);
  report("assemble (fourier)", t_serial, t_parallel);

  const auto op = assemble(grid, kappa, coupling, 0.3, Discretization::fourier);
  std::vector<double> u(grid.node_count(), 1.0);
  t_serial = seconds([&] { (void)apply(op, u, ExecPolicy::serial); }, 50);
  t_parallel = seconds([&] { (void)apply(op, u, ExecPolicy::parallel); }, 50);
  report("matvec", t_serial, t_parallel);

  t_serial = seconds([&] {
    (void)eigh(op, 4, EighMethod::householder_ql, ExecPolicy::serial);
  }, 1);
  t_parallel = seconds([&] {
    (void)eigh(op, 4, EighMethod::householder_ql, ExecPolicy::parallel);
  }, 1);
  report("eigh (householder+ql)", t_serial, t_parallel);

  return 0;
}
