#ifndef MAGDTN_DOMAIN2D_HPP
#define MAGDTN_DOMAIN2D_HPP

// Star-shaped planar domains r(phi) and the discrete magnetic D-to-N map.
//
// The domain is mapped from the unit disk by x = rho r(phi) (cos phi, sin phi).
// On a tensor grid in (rho, phi), graded toward rho = 1, the form
// int |(-i grad - b A) u|^2 dx is discretized with exact link phases
// exp(i b int A.dl), so the matrix is Hermitian, nonnegative and exactly
// gauge covariant. The D-to-N eigenvalues are those of the Schur complement
// on the rho = 1 ring against a lumped arc-length mass.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "magdtn/spectrum.hpp"

namespace magdtn::domain2d {

enum class RadiusKind { Fourier, Ellipse };

/// r and its first two derivatives at one angle.
struct RadiusJet {
  double r = 0;
  double r1 = 0;
  double r2 = 0;
};

struct DomainSpec {
  RadiusKind kind = RadiusKind::Fourier;
  /// r(phi) = sum_k cos_coeffs[k] cos(k phi) + sin_coeffs[k] sin(k phi).
  std::vector<double> cos_coeffs{1.0};
  std::vector<double> sin_coeffs;
  /// Semi-axes along x and y for RadiusKind::Ellipse.
  double semi_x = 1.0;
  double semi_y = 1.0;

  // Derived by build_domain / build_ellipse.
  double perimeter = 0;
  double area = 0;
  double kappa_max = 0;
  double kappa_argmax = 0;  // polar angle of the maximum
  double k2 = 0;            // -d^2 kappa / ds^2 at the maximum
  bool unique_max = false;  // single global maximum with k2 > 0
  std::vector<double> phi_samples;
  std::vector<double> kappa_samples;

  RadiusJet jet(double phi) const;
  double radius(double phi) const { return jet(phi).r; }
  double curvature(double phi) const;
  /// Physical point of the reference coordinates (rho, phi).
  Eigen::Vector2d point(double rho, double phi) const;
  double max_radius() const;
  double min_radius() const;
};

/// Fourier radius. sin_coeffs[0] must be zero. Throws InvalidBoundary.
DomainSpec build_domain(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs = {},
                        int samples = 4096);

/// Ellipse with semi-axes a (x) and b (y) in its polar form.
DomainSpec build_ellipse(double a, double b, int samples = 4096);

/// The same domain dilated by `factor`.
DomainSpec scaled(const DomainSpec& d, double factor);

enum class FieldKind { Constant, Radial, Custom };

struct FieldSpec {
  using PotentialFn = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;
  using ScalarFn = std::function<double(const Eigen::Vector2d&)>;

  FieldKind kind = FieldKind::Constant;
  /// Radial profile B(x) = sum_k c_k |x|^k.
  std::vector<double> radial_coeffs;
  PotentialFn potential_fn;
  ScalarFn field_fn;

  /// B = 1 with A0(x) = (-x2, x1) / 2.
  static FieldSpec constant();
  /// Rotationally symmetric B(|x|) = sum_k c_k |x|^k in the transverse gauge.
  static FieldSpec radial(std::vector<double> coeffs);
  static FieldSpec custom(PotentialFn potential, ScalarFn field);
  /// A + grad(phi), same field.
  FieldSpec gauge_shifted(PotentialFn grad_phi) const;

  Eigen::Vector2d potential(const Eigen::Vector2d& x) const;
  double field(const Eigen::Vector2d& x) const;
};

/// Minimum of |B| over the sampled boundary of the domain.
double min_boundary_field(const DomainSpec& d, const FieldSpec& f);

struct GridOperator {
  /// Hermitian form matrix; interior unknowns first, then the boundary ring.
  Eigen::SparseMatrix<std::complex<double>> form;
  Eigen::Index n_interior = 0;
  Eigen::Index n_boundary = 0;
  /// Arc-length weights of the boundary unknowns.
  Eigen::VectorXd boundary_mass;
  /// Cell-area weights of every unknown (for loads).
  Eigen::VectorXd area_weights;
  /// Reference radii of the rings (rho_0 = 0 is the centre) and angles.
  std::vector<double> rho;
  int n_angles = 0;
  double h = 0;
  double b = 0;
  double perimeter = 0;
};

/// Grid parameters: radial and tangential steps are s = h min(1, 2/sqrt|b|)
/// within the collar of width 10/sqrt|b|, grading geometrically to h inside.
GridOperator assemble(const DomainSpec& d, const FieldSpec& f, double b, double h);

/// Smallest `count` D-to-N eigenvalues of the grid operator.
DtNSpectrum dtn_schur_eigs(const GridOperator& op, int count, std::uint64_t seed = 1);

/// (1/|boundary|) int |A_Omega|^2 from the Dirichlet problem Lap psi = 1.
double weak_field_coefficient(const DomainSpec& d, double h);

/// 2 c_*(k2) b^{-1/4}. Throws AssumptionViolation unless the curvature
/// maximum is unique and non-degenerate.
double splitting_gap_prediction(const DomainSpec& d, double b);

}  // namespace magdtn::domain2d

#endif  // MAGDTN_DOMAIN2D_HPP
