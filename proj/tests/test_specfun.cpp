#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "magdtn/error.hpp"
#include "magdtn/specfun.hpp"

using namespace magdtn;
using namespace magdtn::specfun;

namespace {

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule,
// which converges geometrically for this analytic, doubly decaying integrand.
double bessel_K_trapezoid(double nu, double x) {
  const double h = 1e-3;
  double sum = 0.5 * std::exp(-x);
  for (int k = 1; k * h < 10.0; ++k) {
    const double t = k * h;
    sum += std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
  }
  return sum * h;
}

// I_n(x) by naive summation in long double until the partial sum stops moving.
double bessel_I_naive(int n, double x) {
  long double sum = 0.0L, prev = -1.0L;
  for (int k = 0; k < 2000 && sum != prev; ++k) {
    prev = sum;
    sum += std::pow(0.5L * x, 2.0L * k + n) / (std::tgamma(k + 1.0L) * std::tgamma(k + n + 1.0L));
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST(Pcf, GaussianOrderZero) {
  EXPECT_NEAR(pcf_D(0.0, 1.0), std::exp(-0.25), 1e-13);
  for (double z : {-7.0, -2.5, 0.0, 3.0, 11.9, 12.1, 25.0}) {
    EXPECT_NEAR(pcf_D(0.0, z), std::exp(-0.25 * z * z), 1e-12 * std::max(1.0, std::exp(-0.25 * z * z)));
  }
}

TEST(Pcf, HermiteOrders) {
  // D_n(z) = exp(-z^2/4) He_n(z).
  for (double z : {-20.0, -10.0, -3.3, -0.4, 0.7, 5.5, 13.0}) {
    const double g = std::exp(-0.25 * z * z);
    const double he3 = z * z * z - 3.0 * z;
    const double he4 = z * z * z * z - 6.0 * z * z + 3.0;
    EXPECT_NEAR(pcf_D(1.0, z), g * z, 1e-12 * std::max(1.0, std::abs(g * z)));
    EXPECT_NEAR(pcf_D(3.0, z), g * he3, 1e-11 * std::max(1.0, std::abs(g * he3)));
    EXPECT_NEAR(pcf_D(4.0, z), g * he4, 1e-11 * std::max(1.0, std::abs(g * he4)));
  }
}

TEST(Pcf, ZeroOfHalfOrder) {
  EXPECT_NEAR(pcf_D(0.5, -0.7649508673), 0.0, 1e-9);
}

TEST(Pcf, QuarterBesselIdentity) {
  for (double z : {0.5, 1.0, 2.0, 3.5}) {
    const double oracle = std::sqrt(z / (2.0 * M_PI)) * bessel_K_trapezoid(0.25, 0.25 * z * z);
    EXPECT_NEAR(pcf_D(-0.5, z), oracle, 1e-11) << "z=" << z;
  }
  EXPECT_NEAR(pcf_D(-0.5, 2.0), std::sqrt(2.0 / (2.0 * M_PI)) * bessel_K_trapezoid(0.25, 1.0), 1e-11);
}

TEST(Pcf, DerivativeExamples) {
  EXPECT_NEAR(pcf_D_prime(0.0, 0.0), 0.0, 1e-14);
  EXPECT_NEAR(pcf_D_prime(0.5, 1.0), 0.5 * pcf_D(0.5, 1.0) - pcf_D(1.5, 1.0), 1e-12);
  const double h = 1e-5;
  const double fd = (pcf_D(-0.5, 1.3 + h) - pcf_D(-0.5, 1.3 - h)) / (2.0 * h);
  EXPECT_NEAR(pcf_D_prime(-0.5, 1.3), fd, 1e-7);
}

TEST(Pcf, OutOfBox) {
  EXPECT_THROW(pcf_D(5.5, 0.0), Error);
  EXPECT_THROW(pcf_D(0.0, -31.0), Error);
  try {
    pcf_D_prime(0.0, 40.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Pcf, OdeResidualRandom) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> nud(-5.0, 5.0), zd(-29.9, 29.9);
  for (int i = 0; i < 200; ++i) {
    const double nu = nud(rng), z = zd(rng);
    const double q = 0.25 * z * z - nu - 0.5;
    const double h = 6e-3 / std::sqrt(1.0 + std::abs(q));
    const double w = pcf_D(nu, z);
    const double d2 = (-pcf_D(nu, z + 2 * h) + 16.0 * pcf_D(nu, z + h) - 30.0 * w +
                       16.0 * pcf_D(nu, z - h) - pcf_D(nu, z - 2 * h)) /
                      (12.0 * h * h);
    EXPECT_LT(std::abs(d2 - q * w), 1e-6 * (1.0 + std::abs(w))) << "nu=" << nu << " z=" << z;
  }
}

TEST(Pcf, RecurrenceRandom) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> nud(-5.0, 4.0), zd(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double nu = nud(rng), z = zd(rng);
    const auto e = pcf_eval(nu, z);
    const double up = pcf_D(nu + 1.0, z);
    const double scale = 1.0 + std::abs(e.derivative) + std::abs(0.5 * z * e.value) + std::abs(up);
    EXPECT_LT(std::abs(e.derivative - 0.5 * z * e.value + up), 1e-10 * scale)
        << "nu=" << nu << " z=" << z;
  }
}

TEST(Pcf, DecayAndPositivity) {
  for (double nu = -1.0; nu <= 0.0; nu += 0.125) {
    double prev = pcf_D(nu, 0.0);
    EXPECT_GT(prev, 0.0);
    for (double z = 0.5; z <= 30.0; z += 0.5) {
      const double v = pcf_D(nu, z);
      EXPECT_GT(v, 0.0) << nu << " " << z;
      EXPECT_LT(v, prev);
      prev = v;
    }
    EXPECT_LT(pcf_D(nu, 30.0), 1e-90);
  }
}

TEST(Pcf, AsymptoticMatch) {
  // D_nu(z) exp(z^2/4) z^{-nu} -> 1 with 1/z^2 and 1/z^4 corrections.
  for (double nu : {-0.5, 0.5, 1.6}) {
    const double z = 25.0, z2 = z * z;
    const double ratio = pcf_D(nu, z) * std::exp(0.25 * z2) * std::pow(z, -nu);
    const double two_term = 1.0 - nu * (nu - 1.0) / (2.0 * z2) +
                            nu * (nu - 1.0) * (nu - 2.0) * (nu - 3.0) / (8.0 * z2 * z2);
    EXPECT_NEAR(ratio, two_term, 5e-8);  // next term is O(z^-6)
  }
}

TEST(Bessel, Values) {
  EXPECT_EQ(bessel_I(0, 0.0), 1.0);
  EXPECT_EQ(bessel_I(1, 0.0), 0.0);
  for (double x : {1.0, 0.05, 2.5, 17.0, 60.0, 100.0}) {
    EXPECT_NEAR(bessel_I(0, x) / bessel_I_naive(0, x), 1.0, 1e-12) << x;
    EXPECT_NEAR(bessel_I(1, x) / bessel_I_naive(1, x), 1.0, 1e-12) << x;
  }
  EXPECT_THROW(bessel_I(2, 1.0), Error);
  EXPECT_THROW(bessel_I(0, 101.0), Error);
  EXPECT_THROW(bessel_I(0, -1.0), Error);
}

TEST(Bessel, MonotoneAboveOne) {
  double prev = bessel_I(0, 0.0);
  for (double x = 0.25; x <= 100.0; x += 0.25) {
    const double v = bessel_I(0, x);
    EXPECT_GE(v, 1.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(FindRoot, Examples) {
  auto r = find_root([](double z) { return z * z - 2.0; }, 1.0, 2.0, 1e-12);
  EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-12);
  EXPECT_LE(r.residual, 1e-12);
  EXPECT_GT(r.root, 1.0);
  EXPECT_LT(r.root, 2.0);
  auto c = find_root([](double z) { return std::cos(z); }, 1.0, 2.0, 1e-12);
  EXPECT_NEAR(c.root, M_PI / 2, 1e-12);
  auto a = find_root([](double z) { return pcf_D(0.5, -z); }, 0.5, 1.0, 1e-12);
  EXPECT_NEAR(a.root, 0.7649508673, 1e-9);
}

TEST(FindRoot, Errors) {
  try {
    find_root([](double z) { return z * z + 1.0; }, -1.0, 1.0, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSignChange);
  }
  // A jump discontinuity: the bracket collapses but |f| never drops.
  try {
    find_root([](double z) { return z < 0.3 ? -1.0 : 1.0; }, 0.0, 1.0, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
  }
}

TEST(FindRoot, Deterministic) {
  auto f = [](double z) { return std::exp(z) - 3.0; };
  const auto a = find_root(f, 0.0, 2.0, 1e-13);
  const auto b = find_root(f, 0.0, 2.0, 1e-13);
  EXPECT_EQ(a.root, b.root);
}

TEST(Minimize, Parabola) {
  auto m = minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, -1.0, 2.0, 1e-10);
  EXPECT_NEAR(m.x, 0.3, 1e-8);
  EXPECT_NEAR(m.value, 2.0, 1e-15);
}

TEST(Integrate, Examples) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(integrate([](double t) { return std::exp(-t); }, 0.0, inf, 1e-12), 1.0, 1e-12);
  EXPECT_NEAR(integrate([](double t) { return t * std::exp(-t * t); }, 0.0, inf, 1e-12), 0.5, 1e-12);
  EXPECT_NEAR(integrate([](double t) { return std::sin(t); }, 0.0, M_PI, 1e-13), 2.0, 1e-13);
  EXPECT_NEAR(integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-9), 2.0, 1e-8);
}

TEST(Integrate, CapReached) {
  try {
    integrate([](double t) { return 1.0 / t; }, 0.0, 1.0, 1e-10, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
  }
}
