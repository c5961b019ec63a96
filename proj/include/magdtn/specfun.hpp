#ifndef MAGDTN_SPECFUN_HPP
#define MAGDTN_SPECFUN_HPP

// Special functions and scalar numerics: parabolic cylinder functions D_nu,
// modified Bessel I_0/I_1, bracketing root finding, adaptive Gauss-Kronrod
// quadrature and bracketed scalar minimization.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "magdtn/error.hpp"

namespace magdtn::specfun {

/// Parabolic cylinder value and z-derivative at a point.
struct PcfEval {
  double nu;
  double z;
  double value;
  double derivative;
};

inline constexpr double kPcfNuMin = -5.0;
inline constexpr double kPcfNuMax = 5.0;
inline constexpr double kPcfZMin = -30.0;
inline constexpr double kPcfZMax = 30.0;

/// Recessive solution of w'' + (nu + 1/2 - z^2/4) w = 0 normalized so that
/// D_nu(z) ~ exp(-z^2/4) z^nu as z -> +inf. Throws OutOfRange outside the
/// audited box nu in [-5, 5], z in [-30, 30].
double pcf_D(double nu, double z);
double pcf_D_prime(double nu, double z);
PcfEval pcf_eval(double nu, double z);

/// Same kernel without the box check. Used where the recurrence needs
/// nu + 1 just outside the box; accuracy is only audited inside it.
PcfEval pcf_eval_unchecked(double nu, double z);

/// I_0 (order 0) or I_1 (order 1) on [0, 100].
double bessel_I(int order, double z);

struct BracketedRoot {
  double lo;
  double hi;
  double root;
  double residual;
};

namespace detail {

// Brent's zeroin. Stops when |f| <= ftol or the bracket is narrower than
// xtol (plus a few ulps); `collapsed` reports which criterion fired.
template <class F>
BracketedRoot brent(F& f, double lo, double hi, double ftol, double xtol, int max_iter,
                    bool& collapsed) {
  collapsed = false;
  if (!(lo < hi)) throw Error(ErrorKind::NoSignChange, "find_root: empty bracket");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {lo, hi, a, 0.0};
  if (fb == 0.0) return {lo, hi, b, 0.0};
  if (std::signbit(fa) == std::signbit(fb) || !std::isfinite(fa) || !std::isfinite(fb)) {
    std::ostringstream os;
    os << "find_root: f(" << lo << ")=" << fa << ", f(" << hi << ")=" << fb;
    throw Error(ErrorKind::NoSignChange, os.str());
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    if (std::abs(fb) <= ftol) return {lo, hi, b, std::abs(fb)};
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol1) {
      collapsed = true;
      return {lo, hi, b, std::abs(fb)};
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (m > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw Error(ErrorKind::NonConvergence, "find_root: iteration cap reached");
}

}  // namespace detail

/// Bracketing root search (Brent: bisection with secant and inverse
/// quadratic refinement). Returns once |f(root)| <= tol; throws
/// NoSignChange for an invalid bracket and NonConvergence when the bracket
/// collapses to machine resolution with the residual still above tol.
template <class F>
BracketedRoot find_root(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  bool collapsed = false;
  auto r = detail::brent(f, lo, hi, tol, 0.0, max_iter, collapsed);
  if (collapsed && r.residual > tol) {
    std::ostringstream os;
    os << "find_root: bracket collapsed at " << r.root << " with residual " << r.residual;
    throw Error(ErrorKind::NonConvergence, os.str());
  }
  return r;
}

/// Same search, terminated on bracket width. For functions whose magnitude
/// carries no natural scale (secular determinants, shooting mismatches).
template <class F>
BracketedRoot find_root_x(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
  bool collapsed = false;
  return detail::brent(f, lo, hi, 0.0, xtol, max_iter, collapsed);
}

struct Minimum {
  double x;
  double value;
};

/// Brent's parabolic/golden-section minimizer on [lo, hi].
template <class F>
Minimum minimize_scalar(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
  constexpr double kGolden = 0.3819660112501051;
  double a = lo, b = hi;
  double x = a + kGolden * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double xm = 0.5 * (a + b);
    const double tol1 = xtol + 1e-12 * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) return {x, fx};
    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (!(std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x))) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm - x >= 0) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kGolden * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d >= 0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  throw Error(ErrorKind::NonConvergence, "minimize_scalar: iteration cap reached");
}

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class G>
Segment gk15(G& g, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = g(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = g(c - dx), f2 = g(c + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f on [a, b]. Pass
/// b = +infinity for a semi-infinite range; the tail is mapped onto [0, 1)
/// through t = a + x / (1 - x). The integrand must decay at least
/// exponentially in that case.
template <class F>
double integrate(F&& f, double a, double b, double tol, int max_segments = 4000) {
  const bool infinite = std::isinf(b);
  auto g = [&](double x) -> double {
    if (!infinite) return f(x);
    const double one_minus = 1.0 - x;
    const double t = a + x / one_minus;
    const double v = f(t);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  const double lo = infinite ? 0.0 : a;
  const double hi = infinite ? 1.0 : b;

  std::priority_queue<detail::Segment> heap;
  double total = 0.0, error = 0.0;
  // A few initial pieces so sharply peaked integrands are not missed.
  constexpr int kInitial = 8;
  for (int i = 0; i < kInitial; ++i) {
    const double s0 = lo + (hi - lo) * i / kInitial;
    const double s1 = lo + (hi - lo) * (i + 1) / kInitial;
    auto seg = detail::gk15(g, s0, s1);
    total += seg.value;
    error += seg.error;
    heap.push(seg);
  }
  int segments = kInitial;
  while (error > tol) {
    if (segments >= max_segments) {
      std::ostringstream os;
      os << "integrate: error estimate " << error << " above tolerance " << tol;
      throw Error(ErrorKind::NonConvergence, os.str());
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15(g, worst.a, mid);
    auto right = detail::gk15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
    // Periodically resum to shed accumulated cancellation in the running sums.
    if (segments % 64 == 0) {
      auto copy = heap;
      total = error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

}  // namespace magdtn::specfun

#endif  // MAGDTN_SPECFUN_HPP
