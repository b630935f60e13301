#include "minspec/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace minspec::kernels {

namespace {

#ifdef _OPENMP
ExecPolicy g_policy = ExecPolicy::parallel;
#else
ExecPolicy g_policy = ExecPolicy::serial;
#endif

inline bool par(ExecPolicy p) {
#ifdef _OPENMP
  return p == ExecPolicy::parallel;
#else
  (void)p;
  return false;
#endif
}

inline double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

ExecPolicy default_policy() { return g_policy; }
void set_default_policy(ExecPolicy p) { g_policy = p; }

void sym_matvec(std::size_t n, const double* a, const double* x, double* y,
                ExecPolicy policy) {
#pragma omp parallel for schedule(static) if (par(policy))
  for (long long i = 0; i < (long long)n; ++i) {
    const double* row = a + std::size_t(i) * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void add_basis_outer(std::size_t n, std::size_t m, const double* v,
                     const double* d, double scale, double* c,
                     ExecPolicy policy) {
#pragma omp parallel for schedule(static) if (par(policy))
  for (long long i = 0; i < (long long)n; ++i) {
    double* crow = c + std::size_t(i) * n;
    for (std::size_t k = 0; k < m; ++k) {
      const double* col = v + k * n;
      const double vik = scale * d[k] * col[i];
      if (vik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) crow[j] += vik * col[j];
    }
  }
}

double symmetrize(std::size_t n, double* a, ExecPolicy policy) {
  double defect = 0.0;
#pragma omp parallel for schedule(static) reduction(max : defect) if (par(policy))
  for (long long i = 0; i < (long long)n; ++i)
    for (std::size_t j = std::size_t(i) + 1; j < n; ++j) {
      double& up = a[std::size_t(i) * n + j];
      double& lo = a[j * n + std::size_t(i)];
      defect = std::max(defect, std::fabs(up - lo));
      const double avg = 0.5 * (up + lo);
      up = lo = avg;
    }
  return defect;
}

// Householder reduction, a classic tred2 with accumulation. The rank-two
// trailing update is the O(n^3) part and is what the OpenMP path splits
// over rows.
void tridiagonalize(std::size_t n, double* a, double* d, double* e,
                    ExecPolicy policy, bool with_vectors) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        // p = A u / h and K = u^T p / (2h), then the rank-two update.
#pragma omp parallel for schedule(static) if (par(policy))
        for (long long jj = 0; jj <= (long long)l; ++jj) {
          const std::size_t j = std::size_t(jj);
          A(j, i) = A(i, j) / h;  // column i stores u/H for the accumulation
          double gg = 0.0;
          for (std::size_t k = 0; k <= j; ++k) gg += A(j, k) * A(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) gg += A(k, j) * A(i, k);
          e[j] = gg / h;
        }
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) f += e[j] * A(i, j);
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) e[j] -= hh * A(i, j);
#pragma omp parallel for schedule(static) if (par(policy))
        for (long long jj = 0; jj <= (long long)l; ++jj) {
          const std::size_t j = std::size_t(jj);
          const double fj = A(i, j);
          const double gj = e[j];
          for (std::size_t k = 0; k <= j; ++k)
            A(j, k) -= fj * e[k] + gj * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }

  d[0] = 0.0;
  e[0] = 0.0;
  if (!with_vectors) {
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    return;
  }
  // Accumulate the transforms.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = i;
    if (d[i] != 0.0) {
#pragma omp parallel for schedule(static) if (par(policy))
      for (long long jj = 0; jj < (long long)l; ++jj) {
        const std::size_t j = std::size_t(jj);
        double g = 0.0;
        for (std::size_t k = 0; k < l; ++k) g += A(i, k) * A(k, j);
        for (std::size_t k = 0; k < l; ++k) A(k, j) -= g * A(k, i);
      }
    }
    d[i] = A(i, i);
    A(i, i) = 1.0;
    for (std::size_t j = 0; j < l; ++j) A(j, i) = A(i, j) = 0.0;
  }
  // Subdiagonal convention: e[k] couples d[k] and d[k+1].
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
}

void ql_implicit_shift(std::size_t n, double* d, double* e, double* z,
                       ExecPolicy policy) {
  auto Z = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };

  for (std::size_t l = 0; l < n; ++l) {
    std::size_t iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-300 || std::fabs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 50)
          throw numerical_failure("QL iteration cap (50) exceeded at index " +
                                  std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          // Rotate the eigenvector columns i and i+1.
          if (z != nullptr) {
            const double cc = c, ss = s;
#pragma omp parallel for schedule(static) if (par(policy))
            for (long long k = 0; k < (long long)n; ++k) {
              const double fk = Z(std::size_t(k), i + 1);
              Z(std::size_t(k), i + 1) = ss * Z(std::size_t(k), i) + cc * fk;
              Z(std::size_t(k), i) = cc * Z(std::size_t(k), i) - ss * fk;
            }
          }
        }
        if (r == 0.0 && m - l > 1) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void jacobi_eigen(std::size_t n, double* a, double* d, double* z,
                  ExecPolicy policy) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto Z = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Z(i, j) = i == j ? 1.0 : 0.0;
  std::vector<double> b(n), zacc(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) b[i] = d[i] = A(i, i);

  for (std::size_t sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::fabs(A(p, q));
    if (off == 0.0) return;
    const double thresh = sweep < 3 ? 0.2 * off / double(n * n) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::fabs(A(p, q));
        if (sweep > 3 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
            std::fabs(d[q]) + g == std::fabs(d[q])) {
          A(p, q) = 0.0;
        } else if (std::fabs(A(p, q)) > thresh) {
          double h = d[q] - d[p];
          double t;
          if (std::fabs(h) + g == std::fabs(h)) {
            t = A(p, q) / h;
          } else {
            const double theta = 0.5 * h / A(p, q);
            t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          h = t * A(p, q);
          zacc[p] -= h;
          zacc[q] += h;
          d[p] -= h;
          d[q] += h;
          A(p, q) = 0.0;
          auto rotate = [&](double& x, double& y) {
            const double gx = x, hy = y;
            x = gx - s * (hy + gx * tau);
            y = hy + s * (gx - hy * tau);
          };
          for (std::size_t j = 0; j < p; ++j) rotate(A(j, p), A(j, q));
          for (std::size_t j = p + 1; j < q; ++j) rotate(A(p, j), A(j, q));
          for (std::size_t j = q + 1; j < n; ++j) rotate(A(p, j), A(q, j));
#pragma omp parallel for schedule(static) if (par(policy))
          for (long long j = 0; j < (long long)n; ++j)
            rotate(Z(std::size_t(j), p), Z(std::size_t(j), q));
        }
      }
    for (std::size_t i = 0; i < n; ++i) {
      b[i] += zacc[i];
      d[i] = b[i];
      zacc[i] = 0.0;
    }
  }
  throw numerical_failure("Jacobi sweep cap (50) exceeded");
}

}  // namespace minspec::kernels
