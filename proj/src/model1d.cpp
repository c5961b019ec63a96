#include "magdtn/model1d.hpp"

#include <cmath>
#include <sstream>

#include "magdtn/error.hpp"
#include "magdtn/specfun.hpp"

namespace magdtn::model1d {
namespace {

using specfun::pcf_eval;

constexpr double kGammaMax = 3.0;
constexpr double kXiMax = 5.0;
// Highest eigenvalue searched for; every quantity used here sits below 1.
constexpr double kMuCeiling = 6.0;
constexpr double kScanStep = 0.2;

void check_gamma(double gamma) {
  if (!(std::abs(gamma) <= kGammaMax)) {
    std::ostringstream os;
    os << "gamma=" << gamma << " outside [-3, 3]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
}

// Secular function scaled to O(1); the scaling is positive so roots and signs
// are those of sqrt(2) D' - gamma D.
double secular(double gamma, double xi, double mu) {
  const auto e = pcf_eval(0.5 * (mu - 1.0), -std::sqrt(2.0) * xi);
  const double raw = std::sqrt(2.0) * e.derivative - gamma * e.value;
  const double scale = std::sqrt(2.0) * std::abs(e.derivative) + (1.0 + std::abs(gamma)) * std::abs(e.value);
  return raw / scale;
}

// ||u||^2 / u(0)^2 for u(t) = D_nu(sqrt(2)(t - xi)).
double norm_ratio(double nu, double xi) {
  const double u0 = specfun::pcf_D(nu, -std::sqrt(2.0) * xi);
  auto integrand = [&](double t) {
    const double v = specfun::pcf_D(nu, std::sqrt(2.0) * (t - xi)) / u0;
    return v * v;
  };
  // Past t = xi + 20 the integrand is below exp(-400).
  return specfun::integrate(integrand, 0.0, xi + 20.0, 1e-14);
}

double alpha_value() {
  static const double alpha = [] {
    auto f = [](double z) { return specfun::pcf_D(0.5, -z); };
    return specfun::find_root(f, 0.5, 1.0, 1e-15).root;
  }();
  return alpha;
}

// Minimizer of xi -> mu(gamma, xi): Brent search, then a root of the
// centered-difference slope to push the argmin below the flatness limit.
struct ThetaPoint {
  double theta;
  double argmin;
};

ThetaPoint theta_point(double gamma, bool refine) {
  check_gamma(gamma);
  auto f = [gamma](double xi) { return mu_value(gamma, xi); };
  const auto m = specfun::minimize_scalar(f, 0.0, 4.0, 1e-9);
  if (!refine) return {m.value, m.x};
  constexpr double h = 1e-4;
  auto slope = [&](double xi) { return (f(xi + h) - f(xi - h)) / (2.0 * h); };
  double lo = m.x - 1e-3, hi = m.x + 1e-3;
  double slo = slope(lo), shi = slope(hi);
  // Widen once if the coarse minimum was off by more than expected.
  if (std::signbit(slo) == std::signbit(shi)) {
    lo = m.x - 2e-2;
    hi = m.x + 2e-2;
  }
  const auto r = specfun::find_root_x(slope, lo, hi, 1e-11);
  return {m.value, r.root};
}

}  // namespace

double mu_value(double gamma, double xi) {
  check_gamma(gamma);
  if (!(std::abs(xi) <= kXiMax)) {
    std::ostringstream os;
    os << "xi=" << xi << " outside [-5, 5]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  // mu > -gamma^2 for gamma < 0 and mu > 0 otherwise; nu = (mu - 1)/2 stays
  // inside the audited parabolic-cylinder box.
  double lo = (gamma < 0.0) ? std::max(-gamma * gamma - 1.0, 2.0 * specfun::kPcfNuMin + 1.0) : -1.0;
  auto g = [&](double m) { return secular(gamma, xi, m); };
  double glo = g(lo);
  while (lo < kMuCeiling) {
    const double hi = std::min(lo + kScanStep, kMuCeiling);
    const double ghi = g(hi);
    if (ghi == 0.0) return hi;
    if (std::signbit(glo) != std::signbit(ghi)) {
      return specfun::find_root_x(g, lo, hi, 1e-14).root;
    }
    lo = hi;
    glo = ghi;
  }
  std::ostringstream os;
  os << "no Robin eigenvalue below " << kMuCeiling << " for gamma=" << gamma << ", xi=" << xi;
  throw Error(ErrorKind::NonConvergence, os.str());
}

RobinEigenResult mu(double gamma, double xi) {
  const double m = mu_value(gamma, xi);
  const double ratio = norm_ratio(0.5 * (m - 1.0), xi);
  return {gamma, xi, m, 1.0 / ratio};
}

double theta(double gamma) { return theta_point(gamma, false).theta; }

double xi_of_gamma(double gamma) {
  const auto p = theta_point(gamma, true);
  const double formula = std::sqrt(std::max(0.0, p.theta + gamma * gamma));
  if (std::abs(p.argmin - formula) > 1e-5) {
    std::ostringstream os;
    os << "argmin " << p.argmin << " disagrees with sqrt(Theta + gamma^2) = " << formula;
    throw Error(ErrorKind::ConsistencyFailure, os.str());
  }
  return p.argmin;
}

double theta_prime(double gamma) {
  const double th = theta(gamma);
  const double xi = std::sqrt(th + gamma * gamma);
  return mu(gamma, xi).boundary_value_sq;
}

double f_star(double t) {
  if (!(t >= 0.0 && t <= 20.0)) {
    std::ostringstream os;
    os << "f_star(t=" << t << ") outside [0, 20]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  const double a = alpha_value();
  return specfun::pcf_D(-0.5, std::sqrt(2.0) * t - a) / specfun::pcf_D(-0.5, -a);
}

double f_star_prime(double t) {
  if (!(t >= 0.0 && t <= 20.0)) {
    std::ostringstream os;
    os << "f_star_prime(t=" << t << ") outside [0, 20]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  const double a = alpha_value();
  return std::sqrt(2.0) * specfun::pcf_D_prime(-0.5, std::sqrt(2.0) * t - a) /
         specfun::pcf_D(-0.5, -a);
}

FStarMoments f_star_moments() {
  const double ah = alpha_value() / std::sqrt(2.0);
  auto moment = [](auto&& g) { return specfun::integrate(g, 0.0, 20.0, 1e-13); };
  FStarMoments m{};
  m.m0 = moment([](double t) { return std::pow(f_star(t), 2); });
  m.c1 = moment([ah](double t) { return (t - ah) * std::pow(f_star(t), 2); });
  m.c2 = moment([ah](double t) { return std::pow(t - ah, 2) * std::pow(f_star(t), 2); });
  m.c3 = moment([ah](double t) { return std::pow(t - ah, 3) * std::pow(f_star(t), 2); });
  m.c3_cubed = moment([ah](double t) { return std::pow(t - ah, 3) * std::pow(f_star(t), 3); });
  m.ff = moment([](double t) { return f_star_prime(t) * f_star(t); });
  m.tfp = moment([](double t) { return t * std::pow(f_star_prime(t), 2); });
  m.energy = moment([ah](double t) {
    return std::pow(f_star_prime(t), 2) + std::pow(t - ah, 2) * std::pow(f_star(t), 2);
  });
  return m;
}

double C1(double gamma) {
  const double th = theta(gamma);
  const double xi = std::sqrt(th + gamma * gamma);
  const double u0sq = mu(gamma, xi).boundary_value_sq;
  return (1.0 - gamma * xi) * u0sq / 3.0;
}

double d2mu_dxi2(double gamma, double h) {
  const double th = theta(gamma);
  const double xi = std::sqrt(th + gamma * gamma);
  auto stencil = [&](double s) {
    const double f0 = mu_value(gamma, xi);
    const double fp1 = mu_value(gamma, xi + s), fm1 = mu_value(gamma, xi - s);
    const double fp2 = mu_value(gamma, xi + 2 * s), fm2 = mu_value(gamma, xi - 2 * s);
    return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * s * s);
  };
  const double coarse = stencil(h);
  const double fine = stencil(0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

double C2(double gamma, double k2, double h) {
  const double radicand = k2 * C1(gamma) * d2mu_dxi2(gamma, h);
  if (!(radicand > 0.0)) {
    std::ostringstream os;
    os << "C2: k2 * C1 * d2mu = " << radicand << " at gamma=" << gamma;
    throw Error(ErrorKind::NegativeRadicand, os.str());
  }
  return 0.5 * std::sqrt(radicand);
}

double splitting_c_star(double k2, double h) {
  const double ah = constants().alpha_hat;
  return C2(-ah, k2, h) / theta_prime(-ah);
}

const ModelConstants& constants() {
  static const ModelConstants c = [] {
    ModelConstants k{};
    k.alpha = alpha_value();
    k.alpha_hat = k.alpha / std::sqrt(2.0);
    k.theta0 = theta(0.0);
    k.gamma0 = specfun::find_root_x([](double g) { return theta(g); }, -1.0, -0.2, 1e-13).root;
    k.c1_at_gamma0 = C1(k.gamma0);
    k.norm_fstar_sq = specfun::integrate([](double t) { return std::pow(f_star(t), 2); }, 0.0,
                                         20.0, 1e-13);
    return k;
  }();
  return c;
}

}  // namespace magdtn::model1d
