#pragma once

// Flat model manifolds: the circle of circumference L and the rectangular
// torus L1 x L2, with uniform periodic grids, quadrature weights and the
// analytic Laplace eigenbasis.

#include <cstddef>
#include <vector>

namespace minspec {

enum class ManifoldKind { circle, torus };

struct ManifoldGrid {
  ManifoldKind kind;
  double length1 = 0.0;         // L, or L1 on the torus
  double length2 = 0.0;         // L2 on the torus, 0 on the circle
  std::size_t n1 = 0;           // points per dimension (even, >= 8)
  std::size_t n2 = 0;           // 0 on the circle
  std::vector<double> coord1;   // per-node first coordinate
  std::vector<double> coord2;   // per-node second coordinate (torus)

  std::size_t node_count() const { return coord1.size(); }
  double measure() const {
    return kind == ManifoldKind::circle ? length1 : length1 * length2;
  }
  double weight() const { return measure() / double(node_count()); }
  // Shortest periodic distance between node i and an arbitrary point.
  double periodic_distance(std::size_t i, double x1, double x2) const;
};

ManifoldGrid make_circle(double length, std::size_t n);
ManifoldGrid make_torus(double length1, double length2, std::size_t n1,
                        std::size_t n2);

struct LaplaceEigenpair {
  std::size_t index = 0;        // position in the mu-sorted list
  double eigenvalue = 0.0;      // mu_j
  std::vector<double> samples;  // v_j on the grid, sum w v^2 = 1
  std::size_t multiplicity = 1; // size of the mu-cluster this pair is in
};

// First `count` analytic eigenpairs, mu ascending, multiplicities repeated.
// Ties are ordered by wavenumber with cosine before sine so the output is
// deterministic.
std::vector<LaplaceEigenpair> laplace_eigenbasis(const ManifoldGrid& grid,
                                                 std::size_t count);

// The complete discrete basis (node_count functions) together with mu and
// first-derivative samples per coordinate; used by the spectral operator,
// the Poisson inverse and the gradient quadratures. Cached per grid shape
// by the callers that need it repeatedly.
struct SpectralBasis {
  std::vector<double> mu;            // size m = node_count
  std::vector<double> functions;     // column-major, m columns of length m
  std::vector<double> d1;            // d/dx1 samples, same layout
  std::vector<double> d2;            // d/dx2 samples (torus), else empty
  std::size_t size() const { return mu.size(); }
  const double* column(std::size_t j) const { return functions.data() + j * mu.size(); }
};

SpectralBasis full_spectral_basis(const ManifoldGrid& grid);

struct BallIndicator {
  std::vector<char> mask;       // 1 inside the geodesic ball
  std::size_t inside_count = 0;
  double measure = 0.0;         // inside_count * w
};

BallIndicator geodesic_ball_indicator(const ManifoldGrid& grid,
                                      std::size_t center_node, double radius);

}  // namespace minspec
