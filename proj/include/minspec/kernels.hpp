#pragma once

// Low-level dense kernels used by operator assembly and the eigensolver.
// Every kernel has a serial reference path and an OpenMP path selected by
// ExecPolicy; the serial path is the oracle the parallel one is tested
// against, and tools/bench compares their throughput.

#include <cstddef>
#include <exception>
#include <string>

namespace minspec {

enum class ExecPolicy { serial, parallel };

namespace kernels {

// Process-wide default policy (parallel when built with OpenMP).
ExecPolicy default_policy();
void set_default_policy(ExecPolicy p);

// y = A x for dense symmetric A stored row-major, n x n.
void sym_matvec(std::size_t n, const double* a, const double* x, double* y,
                ExecPolicy policy);

// C += scale * V diag(d) V^T for V (n x m, column j at v + j*n), writes the
// full dense n x n result row-major.
void add_basis_outer(std::size_t n, std::size_t m, const double* v,
                     const double* d, double scale, double* c,
                     ExecPolicy policy);

// Symmetrize in place by averaging; returns max |a_ij - a_ji| seen.
double symmetrize(std::size_t n, double* a, ExecPolicy policy);

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulation of the orthogonal transform in a (row-major, overwritten).
// d receives the diagonal, e the subdiagonal (e[0] unused). With
// with_vectors false the accumulation stage is skipped and a is scratch
// on return.
void tridiagonalize(std::size_t n, double* a, double* d, double* e,
                    ExecPolicy policy, bool with_vectors = true);

// Implicit-shift QL on the tridiagonal (d, e) with accumulation of the
// rotations into z (row-major, n x n, typically the output of
// tridiagonalize); pass z = nullptr for eigenvalues only. Throws
// numerical_failure if an eigenvalue needs more than 50 sweeps. On return
// d holds unsorted eigenvalues and z's columns the eigenvectors.
void ql_implicit_shift(std::size_t n, double* d, double* e, double* z,
                       ExecPolicy policy);

// Cyclic Jacobi rotations; same output contract as the pair above.
// Kept as an independent second solver path.
void jacobi_eigen(std::size_t n, double* a, double* d, double* z,
                  ExecPolicy policy);

}  // namespace kernels

// Thrown when an iterative kernel exceeds its iteration cap.
struct numerical_failure : std::exception {
  explicit numerical_failure(std::string msg) : message(std::move(msg)) {}
  const char* what() const noexcept override { return message.c_str(); }
  std::string message;
};

}  // namespace minspec
