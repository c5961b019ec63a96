#ifndef MAGDTN_HALFSPACE3D_HPP
#define MAGDTN_HALFSPACE3D_HPP

// The half-space angular model. For a unit field making the angle
// pi/2 - theta with the normal, a Fourier transform along the field-free
// tangential direction leaves the real quotient
//
//   lambda(theta, tau) = inf  int |grad u|^2 + (tau + cos(theta) x1 - sin(theta) x2)^2 |u|^2
//                             ------------------------------------------------------------
//                                            int |u(0, x2)|^2 dx2
//
// on the half-plane x1 > 0. For theta > 0 a shift in x2 removes tau. It is
// computed on (0, L) x (-L, L) with natural conditions on the artificial
// edges, as the lowest Schur-complement eigenvalue on the x1 = 0 edge.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace magdtn::halfspace3d {

struct Truncation {
  double L = 16.0;
  int N = 400;  // cells across (0, L); the x2 window (-L, L) gets 2N
};

struct AngleModelResult {
  double theta = 0;
  double tau = 0;
  double lambda = 0;
  Truncation truncation;
  double lower_bound = 0;  // g(theta)
  /// Share of the eigenfunction's mass within distance 1 of the artificial
  /// edges; above 1e-8 the result carries truncation_warning.
  double tail_mass = 0;
  bool truncation_warning = false;
  /// theta = 0 only: the 2D solver minimized over tau, for comparison with
  /// the returned one-dimensional value.
  double consistency_lambda = 0;
};

/// Lowest eigenvalue of the truncated 2D problem at fixed (theta, tau).
/// `x2_shift` translates the x2 window to (-L + shift, L + shift).
/// `x2_half_width` overrides the window half-width (defaults to L).
AngleModelResult solve_angle_problem(double theta, double tau, const Truncation& t, double x2_shift = 0.0,
                                     double x2_half_width = 0.0, std::uint64_t seed = 1);

/// lambda^DN(theta) for theta in [0, pi/2]. theta = 0 returns ahat with a
/// 2D consistency run minimized over tau.
AngleModelResult lambda_dn_theta(double theta, const Truncation& t = {}, std::uint64_t seed = 1);

/// g(theta) = ahat cos(theta)^{5/2} + sin(theta)^2.
double lower_bound_g(double theta);

struct FieldAngle {
  double theta;
  double field_norm;
};

/// theta = arcsin(|<H, nu>| / |H|) in [0, pi/2]. Throws ZeroField, OutOfRange.
FieldAngle theta_from_field(const Eigen::Vector3d& H, const Eigen::Vector3d& nu);

struct SurfaceSample {
  int id = 0;
  Eigen::Vector3d normal = Eigen::Vector3d::UnitX();
  Eigen::Vector3d field_vector = Eigen::Vector3d::UnitY();
  double field_norm = 1.0;
  double theta = 0.0;

  static SurfaceSample make(int id, const Eigen::Vector3d& H, const Eigen::Vector3d& nu);
};

/// lambda^DN on a node grid over [0, pi/2], interpolated by a monotone
/// piecewise cubic (Fritsch-Carlson).
class AngleTable {
 public:
  AngleTable(std::vector<double> theta, std::vector<double> lambda);

  double operator()(double theta) const;
  const std::vector<double>& theta() const { return theta_; }
  const std::vector<double>& lambda() const { return lambda_; }

 private:
  std::vector<double> theta_, lambda_, slope_;
};

/// Solves lambda_dn_theta on `nodes` equispaced angles, in parallel.
AngleTable build_angle_table(int nodes, const Truncation& t = {}, int workers = 0,
                             std::vector<AngleModelResult>* details = nullptr);

/// sqrt(b) min_k lambda(theta_k) |B_k|^{1/2}. Throws EmptySamples,
/// InsufficientData (fewer than 33 table nodes or incomplete coverage).
double leading_3d(const std::vector<SurfaceSample>& samples, double b, const AngleTable& table);

}  // namespace magdtn::halfspace3d

#endif  // MAGDTN_HALFSPACE3D_HPP
