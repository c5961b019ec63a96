#ifndef MAGDTN_TESTS_HALFLINE_ORACLE_HPP
#define MAGDTN_TESTS_HALFLINE_ORACLE_HPP

// Independent discretizations of the half-line oscillator, used only as test
// oracles. Nothing here calls into the parabolic-cylinder code.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Golden-section minimization; deliberately not the library's Brent search.
inline double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                         double* argmin = nullptr) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  if (argmin) *argmin = 0.5 * (a + b);
  return std::min(fc, fd);
}

// Lumped-mass P1 discretization of -u'' + (t - xi)^2 u on [0, T] with the
// natural condition u'(0) = gamma u(0) (form term gamma |u(0)|^2), symmetrized
// into a tridiagonal matrix.
struct RobinFd {
  std::vector<double> diag, off, mass;
  double h;

  RobinFd(double gamma, double xi, double h_, double T = 12.0) : h(h_) {
    const int n = static_cast<int>(std::lround(T / h)) + 1;
    diag.assign(n, 0.0);
    off.assign(n - 1, 0.0);
    mass.assign(n, h);
    mass[0] = mass[n - 1] = 0.5 * h;
    std::vector<double> a(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
      a[i] += 1.0 / h;
      a[i + 1] += 1.0 / h;
    }
    for (int i = 0; i < n; ++i) {
      const double t = i * h;
      a[i] += (t - xi) * (t - xi) * mass[i];
    }
    a[0] += gamma;
    for (int i = 0; i < n; ++i) diag[i] = a[i] / mass[i];
    for (int i = 0; i + 1 < n; ++i) off[i] = -1.0 / h / std::sqrt(mass[i] * mass[i + 1]);
  }

  int count_below(double x) const {
    int count = 0;
    double q = diag[0] - x;
    if (q < 0) ++count;
    for (size_t i = 1; i < diag.size(); ++i) {
      if (q == 0.0) q = 1e-300;
      q = diag[i] - x - off[i - 1] * off[i - 1] / q;
      if (q < 0) ++count;
    }
    return count;
  }

  double lowest() const {
    double lo = -100.0, hi = 100.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (count_below(mid) >= 1 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  }

  // |u(0)|^2 of the mass-normalized eigenvector, by inverse iteration.
  double boundary_value_sq(double lambda) const {
    const size_t n = diag.size();
    std::vector<double> y(n, 1.0);
    const double shift = lambda - 1e-9;
    for (int it = 0; it < 3; ++it) {
      // Thomas algorithm on (B - shift) x = y.
      std::vector<double> c(n), d(n);
      double beta = diag[0] - shift;
      d[0] = y[0] / beta;
      for (size_t i = 1; i < n; ++i) {
        c[i - 1] = off[i - 1] / beta;
        beta = diag[i] - shift - off[i - 1] * c[i - 1];
        d[i] = (y[i] - off[i - 1] * d[i - 1]) / beta;
      }
      for (size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
      double norm = 0.0;
      for (double v : d) norm += v * v;
      norm = std::sqrt(norm);
      for (size_t i = 0; i < n; ++i) y[i] = d[i] / norm;
    }
    // y is Euclidean-normalized in the symmetrized variables: u = y / sqrt(m).
    return y[0] * y[0] / mass[0];
  }
};

// Conforming P1 Galerkin value of min { int f'^2 + (t - xi)^2 f^2 : f(0) = 1 }
// on [0, T] with f(T) = 0, so every value is an upper bound for the exact one.
inline double dtn_quotient_p1(double xi, double h, double T = 10.0) {
  const int n = static_cast<int>(std::lround(T / h));  // nodes 0..n, f_n = 0
  std::vector<double> d(n, 0.0), e(n, 0.0);  // e[i]: coupling of i and i+1
  const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  for (int k = 0; k < n; ++k) {
    const double t0 = k * h;
    double m00 = 0, m01 = 0, m11 = 0;
    for (int q = 0; q < 3; ++q) {
      const double s = 0.5 * (1.0 + gx[q]);
      const double t = t0 + s * h;
      const double v = (t - xi) * (t - xi) * gw[q] * 0.5 * h;
      m00 += v * (1 - s) * (1 - s);
      m01 += v * (1 - s) * s;
      m11 += v * s * s;
    }
    d[k] += 1.0 / h + m00;
    if (k + 1 < n) {
      d[k + 1] += 1.0 / h + m11;
      e[k] += -1.0 / h + m01;
    }
  }
  // Eliminate nodes 1..n-1 with f_0 = 1: solve tridiagonal A_ii f = -A_i0.
  const int m = n - 1;
  if (m <= 0) return d[0];
  std::vector<double> rhs(m, 0.0), c(m), z(m);
  rhs[0] = -e[0];
  double beta = d[1];
  z[0] = rhs[0] / beta;
  for (int i = 1; i < m; ++i) {
    c[i - 1] = e[i] / beta;
    beta = d[i + 1] - e[i] * c[i - 1];
    z[i] = (rhs[i] - e[i] * z[i - 1]) / beta;
  }
  for (int i = m - 1; i-- > 0;) z[i] -= c[i] * z[i + 1];
  return d[0] + e[0] * z[0];
}

// Classical RK4 for f'' = (t - a)^2 f from t = 0.
inline double profile_ivp(double a, double fp0, double t_end, double h = 1e-4) {
  double t = 0.0, f = 1.0, g = fp0;
  const int steps = static_cast<int>(std::lround(t_end / h));
  auto acc = [a](double t, double f) { return (t - a) * (t - a) * f; };
  for (int i = 0; i < steps; ++i) {
    const double k1f = g, k1g = acc(t, f);
    const double k2f = g + 0.5 * h * k1g, k2g = acc(t + 0.5 * h, f + 0.5 * h * k1f);
    const double k3f = g + 0.5 * h * k2g, k3g = acc(t + 0.5 * h, f + 0.5 * h * k2f);
    const double k4f = g + h * k3g, k4g = acc(t + h, f + h * k3f);
    f += h / 6.0 * (k1f + 2 * k2f + 2 * k3f + k4f);
    g += h / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
    t += h;
  }
  return f;
}

}  // namespace oracle

#endif  // MAGDTN_TESTS_HALFLINE_ORACLE_HPP
