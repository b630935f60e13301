#include "minspec/potentials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace minspec {

namespace {

constexpr double kPi = std::numbers::pi;

PotentialField finish(const ManifoldGrid& grid, std::vector<double> samples,
                      double kappa0, bool multiplicative_rescale) {
  PotentialField field;
  field.grid = &grid;
  field.samples = std::move(samples);
  field.mean = kappa0;
  double mean = 0.0;
  for (double v : field.samples) mean += v;
  mean /= double(field.samples.size());
  if (multiplicative_rescale && mean != 0.0) {
    const double scale = kappa0 / mean;
    for (double& v : field.samples) v *= scale;
  } else {
    const double shift = kappa0 - mean;
    for (double& v : field.samples) v += shift;
  }
  return field;
}

// Raised-cosine transition: 1 inside, 0 beyond the ramp.
double ramp_down(double excess, double width) {
  if (excess <= 0.0) return 1.0;
  if (excess >= width) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * excess / width));
}

}  // namespace

double PotentialField::discrete_mean() const {
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc / double(samples.size());
}

CouplingFunction make_coupling(std::function<double(double)> f,
                               std::function<double(double)> df,
                               std::function<double(double)> ddf,
                               double expansion_point) {
  CouplingFunction c;
  c.f = std::move(f);
  c.df = std::move(df);
  c.ddf = std::move(ddf);
  c.expansion_point = expansion_point;
  c.f0 = c.f(expansion_point);
  c.f1 = c.df(expansion_point);
  c.f2 = 0.5 * c.ddf(expansion_point);
  if (!std::isfinite(c.f0) || !std::isfinite(c.f1) || !std::isfinite(c.f2))
    throw std::invalid_argument("coupling derivatives not finite at expansion point");
  return c;
}

CouplingFunction coupling_square(double k0) {
  return make_coupling([](double k) { return k * k; },
                       [](double k) { return 2.0 * k; },
                       [](double) { return 2.0; }, k0);
}

CouplingFunction coupling_identity(double k0) {
  return make_coupling([](double k) { return k; }, [](double) { return 1.0; },
                       [](double) { return 0.0; }, k0);
}

CouplingFunction coupling_exp(double k0) {
  auto e = [](double k) { return std::exp(k); };
  return make_coupling(e, e, e, k0);
}

PotentialField constant_potential(const ManifoldGrid& grid, double kappa0) {
  PotentialField field;
  field.grid = &grid;
  field.samples.assign(grid.node_count(), kappa0);
  field.mean = kappa0;
  return field;
}

PotentialField mode_perturbation(const ManifoldGrid& grid, double kappa0,
                                 double epsilon, const LaplaceEigenpair& mode) {
  if (mode.samples.size() != grid.node_count())
    throw std::invalid_argument("eigenpair sampled on a different grid");
  std::vector<double> samples(grid.node_count());
  for (std::size_t i = 0; i < samples.size(); ++i)
    samples[i] = kappa0 + epsilon * mode.samples[i];
  // The modes have exact zero discrete mean; the shift is a no-op guard.
  return finish(grid, std::move(samples), kappa0, false);
}

PotentialField spike_potential_1d(const ManifoldGrid& grid, double kappa0,
                                  double delta, Smoothing smoothing) {
  if (grid.kind != ManifoldKind::circle)
    throw std::invalid_argument("1D spike needs a circle grid");
  const double h = grid.length1 / double(grid.n1);
  if (!(delta > 0.0) || delta < 4.0 * h || delta >= grid.length1)
    throw std::invalid_argument("spike width not resolvable on this grid");

  const double plateau = kappa0 * grid.length1 / delta;
  const double ramp = delta / 10.0;
  std::vector<double> samples(grid.node_count(), 0.0);
  for (std::size_t i = 0; i < grid.n1; ++i) {
    const double s = grid.coord1[i];
    if (smoothing == Smoothing::hard) {
      if (s > 0.0 && s < delta) samples[i] = plateau;
    } else {
      // Support [0, delta]; half-cosine ramps of width delta/10 inside.
      if (s >= 0.0 && s <= delta) {
        const double edge = std::min(s, delta - s);
        samples[i] = plateau * ramp_down(ramp - edge, ramp);
      }
    }
  }
  return finish(grid, std::move(samples), kappa0, true);
}

PotentialField ball_potential(const ManifoldGrid& grid, double kappa0,
                              std::size_t center_node, double delta,
                              Smoothing smoothing) {
  const BallIndicator ball = geodesic_ball_indicator(grid, center_node, delta);
  if (ball.inside_count < 12)
    throw std::invalid_argument("ball not resolvable: fewer than 12 nodes inside");

  const double plateau = kappa0 * grid.measure() / ball.measure;
  // Keep the ramp resolved by the grid: an unresolved ramp quantizes the
  // effective ball radius and makes lambda0 jitter in delta.
  const double h1 = grid.length1 / double(grid.n1);
  const double h2 = grid.n2 ? grid.length2 / double(grid.n2) : h1;
  const double ramp = std::max(delta / 10.0, 2.0 * std::max(h1, h2));
  const double cx = grid.coord1[center_node];
  const double cy = grid.kind == ManifoldKind::torus ? grid.coord2[center_node] : 0.0;
  std::vector<double> samples(grid.node_count(), 0.0);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    if (smoothing == Smoothing::hard) {
      if (ball.mask[i]) samples[i] = plateau;
    } else {
      const double d = grid.periodic_distance(i, cx, cy);
      samples[i] = plateau * ramp_down(d - (delta - ramp), ramp);
    }
  }
  return finish(grid, std::move(samples), kappa0, true);
}

PotentialField project_to_constraint(const ManifoldGrid& grid,
                                     std::vector<double> samples,
                                     double kappa0) {
  if (samples.size() != grid.node_count())
    throw std::invalid_argument("sample length does not match grid");
  return finish(grid, std::move(samples), kappa0, false);
}

}  // namespace minspec
