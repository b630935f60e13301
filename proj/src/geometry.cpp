#include "minspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace minspec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_side(double length, std::size_t n) {
  if (!(length > 0.0)) throw std::invalid_argument("manifold length must be positive");
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 8");
}

double wrap_distance(double d, double period) {
  d = std::fmod(std::fabs(d), period);
  return std::min(d, period - d);
}

// One-dimensional trigonometric basis on a circle of circumference L with
// N nodes: constant, then (cos, sin) per wavenumber k < N/2, then the
// Nyquist cosine. Normalized against the uniform weight L/N.
struct Mode1D {
  std::size_t k;
  bool sine;       // false: cosine (or constant when k == 0)
  double mu;
};

std::vector<Mode1D> modes_1d(std::size_t n, double length) {
  std::vector<Mode1D> modes;
  modes.push_back({0, false, 0.0});
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double mu = std::pow(2.0 * kPi * double(k) / length, 2);
    modes.push_back({k, false, mu});
    modes.push_back({k, true, mu});
  }
  modes.push_back({n / 2, false, std::pow(kPi * double(n) / length, 2)});
  return modes;
}

// Samples and derivative samples of one 1D mode, normalized so that
// sum (L/N) f^2 = 1 (exact for the trapezoid rule on these modes).
void sample_mode(const Mode1D& m, std::size_t n, double length,
                 double* f, double* df) {
  const double omega = 2.0 * kPi * double(m.k) / length;
  double amp;
  if (m.k == 0 || m.k == n / 2)
    amp = 1.0 / std::sqrt(length);
  else
    amp = std::sqrt(2.0 / length);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = double(i) * length / double(n);
    if (m.sine) {
      f[i] = amp * std::sin(omega * s);
      if (df) df[i] = amp * omega * std::cos(omega * s);
    } else {
      f[i] = amp * std::cos(omega * s);
      if (df) df[i] = -amp * omega * std::sin(omega * s);
    }
  }
}

}  // namespace

double ManifoldGrid::periodic_distance(std::size_t i, double x1, double x2) const {
  const double d1 = wrap_distance(coord1[i] - x1, length1);
  if (kind == ManifoldKind::circle) return d1;
  const double d2 = wrap_distance(coord2[i] - x2, length2);
  return std::hypot(d1, d2);
}

ManifoldGrid make_circle(double length, std::size_t n) {
  check_side(length, n);
  ManifoldGrid g;
  g.kind = ManifoldKind::circle;
  g.length1 = length;
  g.n1 = n;
  g.coord1.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.coord1[i] = double(i) * length / double(n);
  return g;
}

ManifoldGrid make_torus(double length1, double length2, std::size_t n1,
                        std::size_t n2) {
  check_side(length1, n1);
  check_side(length2, n2);
  ManifoldGrid g;
  g.kind = ManifoldKind::torus;
  g.length1 = length1;
  g.length2 = length2;
  g.n1 = n1;
  g.n2 = n2;
  g.coord1.resize(n1 * n2);
  g.coord2.resize(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      g.coord1[i * n2 + j] = double(i) * length1 / double(n1);
      g.coord2[i * n2 + j] = double(j) * length2 / double(n2);
    }
  return g;
}

std::vector<LaplaceEigenpair> laplace_eigenbasis(const ManifoldGrid& grid,
                                                 std::size_t count) {
  if (count == 0 || count > grid.node_count())
    throw std::invalid_argument("eigenpair count out of range");

  struct Entry {
    double mu;
    Mode1D m1, m2;
  };
  std::vector<Entry> entries;

  if (grid.kind == ManifoldKind::circle) {
    for (const auto& m : modes_1d(grid.n1, grid.length1))
      entries.push_back({m.mu, m, {0, false, 0.0}});
  } else {
    const auto ms1 = modes_1d(grid.n1, grid.length1);
    const auto ms2 = modes_1d(grid.n2, grid.length2);
    for (const auto& a : ms1)
      for (const auto& b : ms2)
        entries.push_back({a.mu + b.mu, a, b});
  }

  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tuple(a.mu, a.m1.k, a.m2.k, a.m1.sine, a.m2.sine) <
           std::tuple(b.mu, b.m1.k, b.m2.k, b.m1.sine, b.m2.sine);
  });

  std::vector<LaplaceEigenpair> out(count);
  std::vector<double> f1(grid.n1), f2;
  for (std::size_t j = 0; j < count; ++j) {
    const Entry& e = entries[j];
    LaplaceEigenpair& p = out[j];
    p.index = j;
    p.eigenvalue = e.mu;
    p.samples.resize(grid.node_count());
    sample_mode(e.m1, grid.n1, grid.length1, f1.data(), nullptr);
    if (grid.kind == ManifoldKind::circle) {
      p.samples = f1;
    } else {
      f2.resize(grid.n2);
      sample_mode(e.m2, grid.n2, grid.length2, f2.data(), nullptr);
      for (std::size_t i = 0; i < grid.n1; ++i)
        for (std::size_t k = 0; k < grid.n2; ++k)
          p.samples[i * grid.n2 + k] = f1[i] * f2[k];
    }
  }
  // Multiplicity tags from mu clusters over the full (not truncated) list.
  for (std::size_t j = 0; j < count; ++j) {
    const double mu = out[j].eigenvalue;
    std::size_t mult = 0;
    for (const Entry& e : entries)
      if (std::fabs(e.mu - mu) <= 1e-9 * (1.0 + mu)) ++mult;
    out[j].multiplicity = mult;
  }
  return out;
}

SpectralBasis full_spectral_basis(const ManifoldGrid& grid) {
  const std::size_t m = grid.node_count();
  SpectralBasis basis;
  basis.mu.resize(m);
  basis.functions.resize(m * m);
  basis.d1.resize(m * m);
  if (grid.kind == ManifoldKind::torus) basis.d2.resize(m * m);

  if (grid.kind == ManifoldKind::circle) {
    const auto modes = modes_1d(grid.n1, grid.length1);
    for (std::size_t j = 0; j < m; ++j) {
      basis.mu[j] = modes[j].mu;
      sample_mode(modes[j], grid.n1, grid.length1,
                  basis.functions.data() + j * m, basis.d1.data() + j * m);
    }
  } else {
    const auto ms1 = modes_1d(grid.n1, grid.length1);
    const auto ms2 = modes_1d(grid.n2, grid.length2);
    std::vector<double> f1(grid.n1), g1(grid.n1), f2(grid.n2), g2(grid.n2);
    std::size_t j = 0;
    for (const auto& a : ms1) {
      sample_mode(a, grid.n1, grid.length1, f1.data(), g1.data());
      for (const auto& b : ms2) {
        sample_mode(b, grid.n2, grid.length2, f2.data(), g2.data());
        basis.mu[j] = a.mu + b.mu;
        double* col = basis.functions.data() + j * m;
        double* c1 = basis.d1.data() + j * m;
        double* c2 = basis.d2.data() + j * m;
        for (std::size_t i = 0; i < grid.n1; ++i)
          for (std::size_t k = 0; k < grid.n2; ++k) {
            col[i * grid.n2 + k] = f1[i] * f2[k];
            c1[i * grid.n2 + k] = g1[i] * f2[k];
            c2[i * grid.n2 + k] = f1[i] * g2[k];
          }
        ++j;
      }
    }
  }
  return basis;
}

BallIndicator geodesic_ball_indicator(const ManifoldGrid& grid,
                                      std::size_t center_node, double radius) {
  if (center_node >= grid.node_count())
    throw std::invalid_argument("ball center node out of range");
  const double inj = grid.kind == ManifoldKind::circle
                         ? grid.length1 / 2.0
                         : std::min(grid.length1, grid.length2) / 2.0;
  if (!(radius > 0.0) || radius >= inj)
    throw std::invalid_argument("ball radius outside (0, injectivity scale)");

  const double cx = grid.coord1[center_node];
  const double cy = grid.kind == ManifoldKind::torus ? grid.coord2[center_node] : 0.0;
  BallIndicator ball;
  ball.mask.assign(grid.node_count(), 0);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    if (grid.periodic_distance(i, cx, cy) <= radius) {
      ball.mask[i] = 1;
      ++ball.inside_count;
    }
  }
  ball.measure = double(ball.inside_count) * grid.weight();
  return ball;
}

}  // namespace minspec
