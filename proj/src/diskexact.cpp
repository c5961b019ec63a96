#include "magdtn/diskexact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "magdtn/error.hpp"
#include "magdtn/parallel.hpp"
#include "magdtn/specfun.hpp"
#include "ode.hpp"

namespace magdtn::diskexact {
namespace {

constexpr double kRtol = 1e-12;
constexpr double kAtol = 1e-16;
// r u'/u below this means u vanished inside the disk.
constexpr double kEscape = 1e8;

void check_problem(const RadialProblem& p) {
  if (!(p.R > 0.0) || !std::isfinite(p.b)) {
    std::ostringstream os;
    os << "radial problem needs R > 0 and finite b (R=" << p.R << ", b=" << p.b << ")";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  if (std::abs(p.b) * p.R * p.R > 4000.0 || std::abs(p.m) > mode_cap(p.R, p.b)) {
    std::ostringstream os;
    os << "mode m=" << p.m << " at b=" << p.b << ", R=" << p.R << " beyond the supported range";
    throw Error(ErrorKind::ModeOverflow, os.str());
  }
}

// r u'/u at r = R for the solution regular at the origin, with spectral
// parameter mu. `escaped` reports a zero of u inside (0, R].
detail::OdeResult interior_log_derivative(const RadialProblem& p, double mu) {
  // (m/r - b a)^2 is invariant under (b, m) -> (-b, -m).
  const double b = std::abs(p.b);
  const double m = (p.b < 0.0) ? -p.m : p.m;
  const double k = std::abs(m);
  const RadialField& field = p.field;
  const double beta0 = field.beta(0.0);
  // Frobenius start u = r^k (1 + a2 r^2 + ...).
  const double a2 = (-m * b * beta0 - mu) / (4.0 * k + 4.0);
  const double r0 = 1e-3 * std::min(p.R, 1.0 / std::sqrt(b * std::abs(beta0) + std::abs(mu) + 1.0));
  const double v0 = k + 2.0 * a2 * r0 * r0;
  auto rhs = [&](double r, double v) {
    const double w = std::abs(m - b * r * field.potential(r));
    return (w - v) * (w + v) / r - mu * r;
  };
  return detail::dopri5(rhs, r0, v0, p.R, kRtol, kAtol, kEscape);
}

// r u'/u at r = R for the solution decaying at infinity (constant field).
double exterior_log_derivative(const RadialProblem& p) {
  const double b = std::abs(p.b);
  const double m = (p.b < 0.0) ? -p.m : p.m;
  const double turning = std::sqrt(2.0 * std::max(m, 0.0) / b);
  const double r_max = std::max(p.R, turning) + 12.0 / std::sqrt(b);
  // Decaying branch: r u'/u = -b r^2/2 + (m - 1) + O(r^-2).
  const double v_seed = -0.5 * b * r_max * r_max + (m - 1.0);
  auto rhs = [&](double r, double v) {
    const double w = std::abs(m - 0.5 * b * r * r);
    return (w - v) * (w + v) / r;
  };
  const auto res = detail::dopri5(rhs, r_max, v_seed, p.R, kRtol, kAtol);
  if (!std::isfinite(res.y) || res.y > 0.0) {
    std::ostringstream os;
    os << "exterior mode m=" << p.m << " lost the decaying branch (r u'/u=" << res.y << ")";
    throw Error(ErrorKind::SeedFailure, os.str());
  }
  return res.y;
}

struct ModeValue {
  double value;
  int m;
};

DtNSpectrum assemble(std::vector<ModeValue> values, int count, int center, int window,
                     double R, double b, const char* method) {
  if (count < 1 || count > static_cast<int>(values.size())) {
    std::ostringstream os;
    os << "requested " << count << " eigenvalues from " << values.size() << " modes";
    throw Error(ErrorKind::WindowTooSmall, os.str());
  }
  const double lo_edge = values.front().value, hi_edge = values.back().value;
  std::stable_sort(values.begin(), values.end(), [](const ModeValue& x, const ModeValue& y) {
    return x.value < y.value || (x.value == y.value && x.m < y.m);
  });
  const double last = values[count - 1].value;
  if (!(lo_edge > last && hi_edge > last)) {
    std::ostringstream os;
    os << "mode window " << center << " +- " << window << " too small: edge values " << lo_edge
       << ", " << hi_edge << " vs eigenvalue " << count << " = " << last;
    throw Error(ErrorKind::WindowTooSmall, os.str());
  }
  DtNSpectrum s;
  for (int i = 0; i < count; ++i) {
    s.eigenvalues.push_back(values[i].value);
    s.labels.push_back(values[i].m);
  }
  s.meta.b = b;
  s.meta.R = R;
  s.meta.method = method;
  s.meta.tolerance = kRtol;
  s.meta.mode_window = window;
  return s;
}

}  // namespace

bool RadialField::is_constant() const {
  return coeffs.size() == 1 && coeffs[0] == 1.0;
}

double RadialField::beta(double r) const {
  double v = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) v = v * r + coeffs[k];
  return v;
}

double RadialField::potential(double r) const {
  // (1/r) int_0^r c_k s^{k+1} ds = sum c_k r^{k+1} / (k + 2)
  double v = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) v = v * r + coeffs[k] / (k + 2.0);
  return v * r;
}

int mode_cap(double R, double b) {
  return 200 + static_cast<int>(std::ceil(std::abs(b) * R * R));
}

int default_mode_window(double R, double b) {
  return static_cast<int>(std::ceil(3.0 * std::sqrt(std::abs(b)) * std::max(1.0, R))) + 10;
}

int mode_center(double R, double b, const RadialField& field) {
  return static_cast<int>(std::lround(b * R * field.potential(R)));
}

double dtn_disk_mode(const RadialProblem& p) {
  check_problem(p);
  if (p.side == Side::Exterior) {
    if (!p.field.is_constant()) {
      throw Error(ErrorKind::OutOfRange, "exterior disk supports the constant field only");
    }
    if (p.b == 0.0) return std::abs(p.m) / p.R;
    return -exterior_log_derivative(p) / p.R;
  }
  if (p.b == 0.0) return std::abs(p.m) / p.R;
  const auto res = interior_log_derivative(p, 0.0);
  if (res.escaped) {
    // V >= 0 keeps the regular solution positive; reaching here is a solver fault.
    throw Error(ErrorKind::NonConvergence, "interior D-to-N solution changed sign");
  }
  return res.y / p.R;
}

DtNSpectrum dtn_disk_spectrum(double R, double b, int count, int mode_window,
                              const RadialField& field, int workers) {
  const int center = mode_center(R, b, field);
  const int n = 2 * mode_window + 1;
  auto values = parallel_map(
      n,
      [&](int i) {
        const int m = center - mode_window + i;
        return ModeValue{dtn_disk_mode({R, b, m, Side::Interior, field}), m};
      },
      workers);
  return assemble(std::move(values), count, center, mode_window, R, b, "disk-interior");
}

DtNSpectrum dtn_disk_exterior(double R, double b, int count, int mode_window, int workers) {
  const int center = mode_center(R, b);
  const int n = 2 * mode_window + 1;
  auto values = parallel_map(
      n,
      [&](int i) {
        const int m = center - mode_window + i;
        return ModeValue{dtn_disk_mode({R, b, m, Side::Exterior}), m};
      },
      workers);
  return assemble(std::move(values), count, center, mode_window, R, b, "disk-exterior");
}

double robin_disk_mode(const RadialProblem& p, double gamma) {
  check_problem(p);
  if (p.side != Side::Interior) {
    throw Error(ErrorKind::OutOfRange, "Robin modes are computed on the interior only");
  }
  const double target = -std::sqrt(std::abs(p.b)) * gamma * p.R;
  // Decreasing in mu; a zero of u inside the disk means mu is past the root.
  auto mismatch = [&](double mu) {
    const auto res = interior_log_derivative(p, mu);
    return res.escaped ? -kEscape : res.y - target;
  };
  const double scale = 1.0 + std::abs(p.b) + std::abs(p.b) * gamma * gamma;
  double lo = -scale, hi = scale;
  int guard = 0;
  while (mismatch(lo) <= 0.0) {
    hi = lo;
    lo *= 2.0;
    if (++guard > 60) throw Error(ErrorKind::NonConvergence, "robin_disk_mode: no lower bracket");
  }
  while (mismatch(hi) >= 0.0) {
    lo = hi;
    hi = 2.0 * std::abs(hi) + 1.0;
    if (++guard > 120) throw Error(ErrorKind::NonConvergence, "robin_disk_mode: no upper bracket");
  }
  return specfun::find_root_x(mismatch, lo, hi, 1e-14 * (1.0 + std::abs(lo) + std::abs(hi))).root;
}

double robin_disk_eigenvalue(double R, double b, int j, double gamma, int workers) {
  const int window = default_mode_window(R, b);
  const int center = mode_center(R, b);
  if (j < 1 || j > 2 * window + 1) {
    throw Error(ErrorKind::OutOfRange, "robin_disk_eigenvalue: index outside the mode window");
  }
  auto values = parallel_map(
      2 * window + 1,
      [&](int i) {
        return robin_disk_mode({R, b, center - window + i, Side::Interior}, gamma);
      },
      workers);
  std::nth_element(values.begin(), values.begin() + (j - 1), values.end());
  return values[j - 1];
}

double gamma_crossing(double R, double b, int j, int workers) {
  if (!(b > 0.0)) throw Error(ErrorKind::OutOfRange, "gamma_crossing needs b > 0");
  auto g = [&](double gamma) { return robin_disk_eigenvalue(R, b, j, gamma, workers); };
  // Neumann (gamma = 0) is positive for b > 0; push gamma down until negative.
  double hi = 0.0, lo = -1.0;
  for (int k = 0; g(lo) >= 0.0; ++k) {
    hi = lo;
    lo *= 2.0;
    if (k > 30) throw Error(ErrorKind::NoSignChange, "gamma_crossing: no negative bracket");
  }
  return specfun::find_root(g, lo, hi, 1e-10).root;
}

}  // namespace magdtn::diskexact
