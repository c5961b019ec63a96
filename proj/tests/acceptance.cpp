// Acceptance run: one PASS/FAIL line per criterion. Exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "magdtn/asympt.hpp"
#include "magdtn/diskexact.hpp"
#include "magdtn/domain2d.hpp"
#include "magdtn/halfspace3d.hpp"
#include "magdtn/model1d.hpp"
#include "magdtn/parallel.hpp"
#include "magdtn/specfun.hpp"

using namespace magdtn;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records one check; the criterion passes only if every check does.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [miss]");
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double ahat() { return model1d::constants().alpha_hat; }
double curv() { return (ahat() * ahat() + 1.0) / 3.0; }

std::vector<double> schur(const domain2d::DomainSpec& d, const domain2d::FieldSpec& f, double b, double h,
                          int count, std::uint64_t seed = 1) {
  return domain2d::dtn_schur_eigs(domain2d::assemble(d, f, b, h), count, seed).eigenvalues;
}

double disk_lambda1(double R, double b, const diskexact::RadialField& f = {}) {
  return diskexact::dtn_disk_spectrum(R, b, 1, diskexact::default_mode_window(R, b), f).eigenvalues[0];
}

void constants(Verdict& v) {
  const auto& k = model1d::constants();
  v.check(std::abs(k.alpha - 0.7649508673) <= 1e-9, "alpha " + fmt("%.12f", k.alpha));
  v.check(std::abs(k.theta0 - 0.590106) <= 1e-5, "Theta0 " + fmt("%.9f", k.theta0));
  v.check(std::abs(k.gamma0 + k.alpha_hat) <= 1e-8, "gamma0+ahat " + fmt("%.1e", k.gamma0 + k.alpha_hat));
  v.check(std::abs(k.norm_fstar_sq - 0.6861814388) <= 1e-8,
          "int f*^2 " + fmt("%.12f", k.norm_fstar_sq) + " vs 0.6861814388");
}

void moments(Verdict& v) {
  const auto m = model1d::f_star_moments();
  const double a = ahat();
  const double worst = std::max({std::abs(m.c1), std::abs(m.c2 - a / 4), std::abs(m.ff + 0.5),
                                 std::abs(m.tfp - 1.0 / 3 - a * a / 12), std::abs(m.energy - a)});
  v.check(worst <= 1e-8, "max moment error " + fmt("%.1e", worst));
  const double cstar = -m.tfp - a * m.c2;
  v.check(std::abs(cstar + curv()) <= 1e-8, "C_* error " + fmt("%.1e", cstar + curv()));
}

void disk_closed_form(Verdict& v) {
  double worst = 0.0;
  std::vector<std::pair<double, double>> sweep;
  for (double b : {0.05, 0.1, 0.2}) {
    const double exact = 0.5 * b * specfun::bessel_I(1, b / 4) / specfun::bessel_I(0, b / 4);
    worst = std::max(worst, std::abs(diskexact::dtn_disk_mode({1.0, b, 0}) / exact - 1.0));
    sweep.emplace_back(b, disk_lambda1(1.0, b));
  }
  v.check(worst <= 1e-10, "m=0 rel error " + fmt("%.1e", worst));
  const auto r = asympt::compare(sweep, [](double b) { return asympt::weak_field(b, 1.0 / 16); }, 4.0);
  v.check(r.pass, "|lambda1-b^2/16|/b^4 " + fmt("%.5f", r.head_max) + " -> " + fmt("%.5f", r.tail_max));
}

void two_term(Verdict& v) {
  for (double R : {1.0, 2.0}) {
    std::vector<std::pair<double, double>> in, ex;
    for (double b : {50.0, 100.0, 200.0, 400.0}) {
      const int w = diskexact::default_mode_window(R, b);
      in.emplace_back(b, diskexact::dtn_disk_spectrum(R, b, 1, w).eigenvalues[0]);
      ex.emplace_back(b, diskexact::dtn_disk_exterior(R, b, 1, w).eigenvalues[0]);
    }
    const auto ri = asympt::compare(in, [R](double b) { return asympt::two_term_2d(b, 1.0 / R); }, -0.5);
    const auto re = asympt::compare(ex, [R](double b) { return asympt::two_term_2d(b, -1.0 / R); }, -0.5);
    v.check(ri.pass, "R=" + fmt("%g", R) + " interior " + fmt("%.3f", ri.head_max) + "->" + fmt("%.3f", ri.tail_max));
    v.check(re.pass, "exterior " + fmt("%.3f", re.head_max) + "->" + fmt("%.3f", re.tail_max));
  }
}

void duality(Verdict& v) {
  double worst = 0.0;
  for (double b : {5.0, 20.0, 80.0}) {
    worst = std::max(worst, std::abs(-std::sqrt(b) * diskexact::gamma_crossing(1.0, b, 1) - disk_lambda1(1.0, b)));
  }
  v.check(worst < 1e-8, "max |-sqrt(b) gamma1 - lambda1| " + fmt("%.1e", worst));
}

void schur_oracle(Verdict& v) {
  const auto disk = domain2d::build_domain({1.0});
  for (double b : {0.0, 1.0, 10.0, 50.0}) {
    auto exact = diskexact::dtn_disk_spectrum(1.0, b, 5, diskexact::default_mode_window(1.0, b)).eigenvalues;
    double err[2] = {0.0, 0.0};
    int k = 0;
    for (double h : {0.1, 0.05}) {
      const auto s = schur(disk, domain2d::FieldSpec::constant(), b, h, 5);
      for (int j = 0; j < 5; ++j) err[k] = std::max(err[k], std::abs(s[j] - exact[j]));
      ++k;
    }
    v.check(err[0] / err[1] >= 3.0, "b=" + fmt("%g", b) + " " + fmt("%.1e", err[0]) + "->" + fmt("%.1e", err[1]));
    if (b == 0.0) {
      const double steklov[5] = {0, 1, 1, 2, 2};
      double e = 0.0;
      for (int j = 0; j < 5; ++j) e = std::max(e, std::abs(exact[j] - steklov[j]));
      v.check(e < 1e-10 && err[1] < 0.5 * 0.05 * 0.05, "Steklov (0,1,1,2,2)");
    }
  }
}

void ellipse_two_term(Verdict& v) {
  const auto d = domain2d::build_ellipse(1.0, 0.6);
  const double b = 400.0;
  const double target = -curv() * d.kappa_max;
  const auto l = parallel_map(2, [&](int i) {
    return schur(d, domain2d::FieldSpec::constant(), b, i == 0 ? 0.1 : 0.05, 1)[0] - ahat() * std::sqrt(b);
  });
  const double extrap = (4.0 * l[1] - l[0]) / 3.0;
  const double ratio = l[1] / target;
  v.check(ratio >= 0.75 && ratio <= 1.25, "shift(h=0.05) " + fmt("%.4f", l[1]) + " vs " + fmt("%.4f", target) +
                                              " ratio " + fmt("%.3f", ratio));
  v.detail << " (h=0.1 " << fmt("%.4f", l[0]) << ", extrapolated " << fmt("%.4f", extrap) << " ratio "
           << fmt("%.3f", extrap / target) << ")";
}

void variable_field(Verdict& v) {
  const double b = 400.0;
  const double l = disk_lambda1(1.0, b, diskexact::RadialField::polynomial({1.0, 0.0, 0.5}));
  const double ref = asympt::leading_variable_2d(b, 1.5).value;
  v.check(std::abs(l / ref - 1.0) <= 0.1, "lambda1/ahat sqrt(1.5 b) " + fmt("%.4f", l / ref));
}

void weak_field(Verdict& v) {
  const auto disk = domain2d::build_domain({1.0});
  double prev = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const double e = std::abs(domain2d::weak_field_coefficient(disk, h) - 1.0 / 16);
    if (prev > 0.0) v.check(prev / e >= 3.0, "disk h=" + fmt("%g", h) + " ratio " + fmt("%.2f", prev / e));
    prev = e;
  }
  v.check(prev < 1e-4, "disk error " + fmt("%.1e", prev));
  const auto ell = domain2d::build_ellipse(1.0, 0.6);
  const double c1 = domain2d::weak_field_coefficient(ell, 0.05), c2 = domain2d::weak_field_coefficient(ell, 0.025);
  v.check(std::abs(c1 - c2) < 1e-4, "ellipse " + fmt("%.7f", c2) + " change " + fmt("%.1e", std::abs(c1 - c2)));
}

void halfspace(Verdict& v) {
  const halfspace3d::Truncation t{16.0, 400};
  const auto r = parallel_map(17, [&](int i) { return halfspace3d::lambda_dn_theta(0.5 * kPi * i / 16, t); });
  v.check(std::abs(r[0].lambda - ahat()) <= 2e-3 && std::abs(r[0].consistency_lambda - ahat()) <= 2e-3,
          "lambda(0) 2D " + fmt("%.6f", r[0].consistency_lambda));
  v.check(std::abs(r[16].lambda - 1.0) <= 2e-3, "lambda(pi/2) " + fmt("%.6f", r[16].lambda));
  double margin = INFINITY, gap = INFINITY;
  int warnings = 0;
  for (int i = 0; i <= 16; ++i) {
    margin = std::min(margin, r[i].lambda - r[i].lower_bound);
    if (i >= 2) gap = std::min(gap, r[i].lambda - ahat());
    warnings += r[i].truncation_warning;
  }
  v.check(margin >= -5e-3, "min lambda-g " + fmt("%.4f", margin));
  v.check(gap > 1e-3, "min lambda-ahat beyond pi/16 " + fmt("%.4f", gap));
  // Angles flagged for truncation are re-solved on a larger box at the same h.
  const halfspace3d::Truncation big{20.0, 500};
  for (int i = 0; i <= 16; ++i) {
    if (!r[i].truncation_warning) continue;
    const double l = halfspace3d::lambda_dn_theta(r[i].theta, big).lambda;
    v.check(std::abs(l - r[i].lambda) <= 1e-4, "theta=" + fmt("%.4f", r[i].theta) + " tail " +
                                                    fmt("%.1e", r[i].tail_mass) + ", L=20 shift " +
                                                    fmt("%.1e", std::abs(l - r[i].lambda)));
  }
  v.detail << " (" << warnings << " truncation warnings)";
}

void splitting(Verdict& v) {
  bool positive = true;
  double homog = 0.0, step = 0.0;
  for (double k2 : {0.5, 3.0, 41.15}) {
    const double c = model1d::splitting_c_star(k2);
    positive = positive && c > 0.0;
    homog = std::max(homog, std::abs(model1d::splitting_c_star(4.0 * k2) / c - 2.0));
    step = std::max(step, std::abs(model1d::splitting_c_star(k2, 5e-4) - c));
  }
  v.check(positive, "c_* > 0");
  v.check(homog <= 1e-10, "homogeneity " + fmt("%.1e", homog));
  v.check(step <= 1e-4, "step halving " + fmt("%.1e", step));

  // Roots of the three-term Robin expansion recover the crossing expansion.
  const double kappa = 1.0, k2 = 2.5, cstar = model1d::splitting_c_star(k2);
  for (int j : {1, 2}) {
    double prev1 = INFINITY, prev2 = INFINITY;
    bool shrinking = true;
    for (double b : {1e4, 1e5, 1e6, 1e7, 1e8}) {
      const double g = asympt::robin_three_term_root(b, kappa, k2, j);
      const double e1 = std::abs((g + ahat()) * std::sqrt(b) - curv() * kappa);
      const double e2 =
          std::abs((g + ahat() - curv() * kappa / std::sqrt(b)) * std::pow(b, 0.75) + (2 * j - 1) * cstar);
      shrinking = shrinking && e1 < prev1 && e2 < prev2;
      prev1 = e1;
      prev2 = e2;
    }
    v.check(shrinking && prev2 < 0.05 * (2 * j - 1) * cstar,
            "gamma_" + std::to_string(j) + " b^-3/4 term rel " + fmt("%.1e", prev2 / ((2 * j - 1) * cstar)));
  }

  // The disk has k2 = 0, so its low modes bunch faster than b^{-1/4}.
  std::vector<double> spread;
  for (double b : {50.0, 100.0, 200.0, 400.0}) {
    const auto s = diskexact::dtn_disk_spectrum(1.0, b, 3, diskexact::default_mode_window(1.0, b));
    spread.push_back((s.eigenvalues[2] - s.eigenvalues[0]) * std::sqrt(b));
  }
  const double head = std::max(spread[0], spread[1]), tail = std::max(spread[2], spread[3]);
  v.check(tail <= 1.5 * head, "disk (lambda3-lambda1) sqrt(b) " + fmt("%.3f", head) + "->" + fmt("%.3f", tail));
}

void invariants(Verdict& v) {
  const auto d = domain2d::build_domain({1.0, 0.05, 0.1});
  const auto base = schur(d, domain2d::FieldSpec::constant(), 20.0, 0.1, 3);
  const auto gauge = domain2d::FieldSpec::constant().gauge_shifted([](const Eigen::Vector2d& x) -> Eigen::Vector2d {
    return {3 * x.x() * x.x() * x.y() + 0.7, x.x() * x.x() * x.x() - 2 * x.y()};
  });
  const auto shifted = schur(d, gauge, 20.0, 0.1, 3, 11);
  double g = 0.0;
  for (int j = 0; j < 3; ++j) g = std::max(g, std::abs(shifted[j] - base[j]) / std::max(1.0, base[j]));
  v.check(g <= 1e-10, "gauge " + fmt("%.1e", g));

  const auto ell = domain2d::build_ellipse(1.0, 0.6);
  const auto p = schur(ell, domain2d::FieldSpec::constant(), 15.0, 0.1, 4);
  const auto n = schur(ell, domain2d::FieldSpec::constant(), -15.0, 0.1, 4);
  double s = 0.0;
  for (int j = 0; j < 4; ++j) s = std::max(s, std::abs(p[j] - n[j]) / std::max(1.0, p[j]));
  const double dp = disk_lambda1(1.0, 30.0), dn = disk_lambda1(1.0, -30.0);
  v.check(s <= 1e-10 && std::abs(dp - dn) <= 1e-10 * dp, "b<->-b " + fmt("%.1e", std::max(s, std::abs(dp - dn))));

  bool positive = p[0] > 0.0 && base[0] > 0.0 && dp > 0.0;
  for (double x : p) positive = positive && x > 0.0;
  v.check(positive, "D-to-N positivity");

  bool monotone = true;
  double prev = -INFINITY;
  for (int i = 0; i <= 60; ++i) {
    const double th = model1d::theta(-3.0 + 6.0 * i / 60);
    monotone = monotone && th > prev && th < 1.0;
    prev = th;
  }
  v.check(monotone, "Theta increasing below 1");

  double sec = 0.0;
  for (double gm : {-2.5, -1.3, -ahat(), 0.0, 0.4, 1.0, 2.2}) {
    const double th = model1d::theta(gm), xi = std::sqrt(th + gm * gm);
    const double nu = 0.5 * (th - 1.0), z = -std::sqrt(2.0) * xi;
    const double dv = specfun::pcf_D(nu, z), scale = std::max(1.0, std::abs(dv));
    sec = std::max(sec, std::abs(std::sqrt(2.0) * specfun::pcf_D_prime(nu, z) - gm * dv) / scale);
    sec = std::max(sec, std::abs(-std::sqrt(2.0) * specfun::pcf_D(nu + 1.0, z) - (gm + xi) * dv) / scale);
  }
  v.check(sec <= 1e-7, "secular identities " + fmt("%.1e", sec));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria = {
      {"constants", constants},
      {"f_* moments", moments},
      {"disk closed form and weak field", disk_closed_form},
      {"disk two-term sweep", two_term},
      {"Robin duality", duality},
      {"grid solver vs disk", schur_oracle},
      {"ellipse curvature term", ellipse_two_term},
      {"variable field leading order", variable_field},
      {"weak-field coefficient", weak_field},
      {"half-space model", halfspace},
      {"splitting machinery", splitting},
      {"invariants", invariants},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("criterion %2zu %s  %s: %s (%.1f s)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
