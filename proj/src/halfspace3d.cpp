#include "magdtn/halfspace3d.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "magdtn/error.hpp"
#include "magdtn/model1d.hpp"
#include "magdtn/parallel.hpp"
#include "magdtn/schur_eigs.hpp"
#include "magdtn/specfun.hpp"

namespace magdtn::halfspace3d {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kTailLimit = 1e-8;

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi + 1e-14)) {
    std::ostringstream os;
    os << "theta=" << theta << " outside [0, pi/2]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
}

}  // namespace

AngleModelResult solve_angle_problem(double theta, double tau, const Truncation& t, double x2_shift,
                                     double x2_half_width, std::uint64_t seed) {
  check_theta(theta);
  if (!(t.L >= 12.0) || t.N < 200) throw Error(ErrorKind::OutOfRange, "half-space truncation needs L >= 12, N >= 200");
  const double W = x2_half_width > 0.0 ? x2_half_width : t.L;
  const int n1 = t.N;
  const double h1 = t.L / n1;
  const int n2 = std::max(2, static_cast<int>(std::lround(2.0 * W / h1)));
  const double h2 = 2.0 * W / n2;
  const double c = std::cos(theta), s = std::sin(theta);

  // Unknowns: columns i = 1..n1 first, then the x1 = 0 column.
  const Eigen::Index rows = n2 + 1;
  const Eigen::Index ni = static_cast<Eigen::Index>(n1) * rows;
  auto index = [&](int i, int k) -> Eigen::Index {
    return i == 0 ? ni + k : static_cast<Eigen::Index>(i - 1) * rows + k;
  };
  auto x2_of = [&](int k) { return -W + x2_shift + k * h2; };

  // Five-point finite-volume form with dual-cell weights; the natural
  // condition on every edge comes from the halved boundary cells.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(ni + rows) * 5);
  auto edge = [&](Eigen::Index p, Eigen::Index q, double w) {
    trip.emplace_back(p, p, w);
    trip.emplace_back(q, q, w);
    trip.emplace_back(p, q, -w);
    trip.emplace_back(q, p, -w);
  };
  Eigen::VectorXd area(ni + rows);
  for (int i = 0; i <= n1; ++i) {
    const double fi = (i == 0 || i == n1) ? 0.5 : 1.0;
    for (int k = 0; k <= n2; ++k) {
      const double fk = (k == 0 || k == n2) ? 0.5 : 1.0;
      const Eigen::Index p = index(i, k);
      const double v = tau + c * i * h1 - s * x2_of(k);
      area(p) = fi * fk * h1 * h2;
      trip.emplace_back(p, p, area(p) * v * v);
      if (i < n1) edge(p, index(i + 1, k), fk * h2 / h1);
      if (k < n2) edge(p, index(i, k + 1), fi * h1 / h2);
    }
  }
  Eigen::SparseMatrix<double> form(ni + rows, ni + rows);
  form.setFromTriplets(trip.begin(), trip.end());
  Eigen::VectorXd mass(rows);
  for (int k = 0; k <= n2; ++k) mass(k) = (k == 0 || k == n2) ? 0.5 * h2 : h2;

  const ShiftInvertSchur<double> solver(form, ni, mass);
  const auto r = solver.lowest(1, seed, 1e-10, true);
  const Eigen::VectorXd& u = r.vectors.front();

  double total = 0.0, tail = 0.0;
  for (int i = 0; i <= n1; ++i) {
    for (int k = 0; k <= n2; ++k) {
      const Eigen::Index p = index(i, k);
      const double w = area(p) * u(p) * u(p);
      total += w;
      const double x1 = i * h1, x2 = k * h2;
      // A custom strip width is used only where x2 separates exactly.
      const bool x2_edge = x2_half_width <= 0.0 && (x2 < 1.0 || x2 > 2.0 * W - 1.0);
      if (x1 > t.L - 1.0 || x2_edge) tail += w;
    }
  }
  AngleModelResult res;
  res.theta = theta;
  res.tau = tau;
  res.lambda = r.eigenvalues.front();
  res.truncation = t;
  res.lower_bound = lower_bound_g(std::min(theta, kHalfPi));
  res.tail_mass = total > 0.0 ? tail / total : 0.0;
  res.truncation_warning = res.tail_mass > kTailLimit;
  return res;
}

AngleModelResult lambda_dn_theta(double theta, const Truncation& t, std::uint64_t seed) {
  check_theta(theta);
  if (theta > 0.0) return solve_angle_problem(theta, 0.0, t, 0.0, 0.0, seed);

  // At theta = 0 the potential does not depend on x2 and the x2-constant
  // mode is exact, so a narrow strip carries the 2D consistency run.
  const double ahat = model1d::constants().alpha_hat;
  auto at = [&](double tau) { return solve_angle_problem(0.0, tau, t, 0.0, 1.0, seed); };
  const auto m = specfun::minimize_scalar([&](double tau) { return at(tau).lambda; }, -ahat - 0.5,
                                          -ahat + 0.5, 1e-5);
  AngleModelResult best = at(m.x);
  best.consistency_lambda = best.lambda;
  best.lambda = ahat;
  best.lower_bound = lower_bound_g(0.0);
  return best;
}

double lower_bound_g(double theta) {
  check_theta(theta);
  const double ahat = model1d::constants().alpha_hat;
  const double c = std::max(0.0, std::cos(theta)), s = std::sin(theta);
  return ahat * std::pow(c, 2.5) + s * s;
}

FieldAngle theta_from_field(const Eigen::Vector3d& H, const Eigen::Vector3d& nu) {
  const double norm = H.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::ZeroField, "magnetic field vanishes at the sample");
  if (std::abs(nu.norm() - 1.0) > 1e-12) throw Error(ErrorKind::OutOfRange, "normal is not a unit vector");
  const double sine = std::min(1.0, std::abs(H.dot(nu)) / norm);
  return {std::asin(sine), norm};
}

SurfaceSample SurfaceSample::make(int id, const Eigen::Vector3d& H, const Eigen::Vector3d& nu) {
  const FieldAngle a = theta_from_field(H, nu);
  SurfaceSample s;
  s.id = id;
  s.normal = nu;
  s.field_vector = H;
  s.field_norm = a.field_norm;
  s.theta = a.theta;
  return s;
}

AngleTable::AngleTable(std::vector<double> theta, std::vector<double> lambda)
    : theta_(std::move(theta)), lambda_(std::move(lambda)) {
  const size_t n = theta_.size();
  if (n < 2 || lambda_.size() != n) throw Error(ErrorKind::InsufficientData, "angle table needs matching nodes");
  for (size_t i = 1; i < n; ++i) {
    if (!(theta_[i] > theta_[i - 1])) throw Error(ErrorKind::InsufficientData, "angle table nodes must increase");
  }
  // Fritsch-Carlson slopes.
  std::vector<double> delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) delta[i] = (lambda_[i + 1] - lambda_[i]) / (theta_[i + 1] - theta_[i]);
  slope_.assign(n, 0.0);
  // Three-point end slopes, limited to keep the end intervals monotone.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) m = 3.0 * d0;
    return m;
  };
  if (n == 2) {
    slope_[0] = slope_[1] = delta[0];
  } else {
    slope_[0] = end_slope(theta_[1] - theta_[0], theta_[2] - theta_[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(theta_[n - 1] - theta_[n - 2], theta_[n - 2] - theta_[n - 3], delta[n - 2], delta[n - 3]);
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      slope_[i] = 0.0;
    } else {
      const double h0 = theta_[i] - theta_[i - 1], h1 = theta_[i + 1] - theta_[i];
      const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
      slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
}

double AngleTable::operator()(double theta) const {
  if (theta <= theta_.front()) return lambda_.front();
  if (theta >= theta_.back()) return lambda_.back();
  const size_t i = std::upper_bound(theta_.begin(), theta_.end(), theta) - theta_.begin() - 1;
  const double h = theta_[i + 1] - theta_[i], t = (theta - theta_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * lambda_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
         (-2 * t3 + 3 * t2) * lambda_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

AngleTable build_angle_table(int nodes, const Truncation& t, int workers, std::vector<AngleModelResult>* details) {
  if (nodes < 2) throw Error(ErrorKind::InsufficientData, "angle table needs at least two nodes");
  auto results = parallel_map(
      nodes, [&](int i) { return lambda_dn_theta(kHalfPi * i / (nodes - 1), t); }, workers);
  std::vector<double> theta, lambda;
  for (const auto& r : results) {
    theta.push_back(r.theta);
    lambda.push_back(r.lambda);
  }
  if (details) *details = std::move(results);
  return AngleTable(std::move(theta), std::move(lambda));
}

double leading_3d(const std::vector<SurfaceSample>& samples, double b, const AngleTable& table) {
  if (samples.empty()) throw Error(ErrorKind::EmptySamples, "leading_3d needs at least one surface sample");
  if (table.theta().size() < 33 || table.theta().front() > 0.0 || table.theta().back() < kHalfPi - 1e-12) {
    throw Error(ErrorKind::InsufficientData, "angle table must cover [0, pi/2] with at least 33 nodes");
  }
  if (!(b >= 0.0)) throw Error(ErrorKind::OutOfRange, "leading_3d needs b >= 0");
  double best = INFINITY;
  for (const auto& s : samples) best = std::min(best, table(s.theta) * std::sqrt(s.field_norm));
  return std::sqrt(b) * best;
}

}  // namespace magdtn::halfspace3d
