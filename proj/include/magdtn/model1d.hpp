#ifndef MAGDTN_MODEL1D_HPP
#define MAGDTN_MODEL1D_HPP

// Half-line model operators. The Robin harmonic oscillator
//
//   -u'' + (t - xi)^2 u = mu u  on (0, inf),   u'(0) = gamma u(0),
//
// its lowest eigenvalue mu(gamma, xi), the minimized curve Theta(gamma), the
// boundary profile f_* of the half-plane D-to-N ground state, and the
// coefficients of the Robin large-field expansion built from them.

namespace magdtn::model1d {

struct ModelConstants {
  double alpha;          // -alpha is the negative zero of D_{1/2}
  double alpha_hat;      // alpha / sqrt(2)
  double theta0;         // Theta(0), the de Gennes constant
  double gamma0;         // unique zero of Theta
  double c1_at_gamma0;   // C1(gamma0)
  double norm_fstar_sq;  // int f_*^2
};

struct RobinEigenResult {
  double gamma;
  double xi;
  double mu;
  double boundary_value_sq;  // |u(0)|^2 for the L^2(0, inf)-normalized ground state
};

/// Moments of the half-plane profile f_*. All integrals run over (0, inf).
struct FStarMoments {
  double m0;        // int f^2
  double c1;        // int (t - a) f^2
  double c2;        // int (t - a)^2 f^2
  double c3;        // int (t - a)^3 f^2
  double c3_cubed;  // int (t - a)^3 f^3
  double ff;        // int f' f
  double tfp;       // int t f'^2
  double energy;    // int f'^2 + (t - a)^2 f^2
};

/// Lowest Robin eigenvalue for gamma in [-3, 3], xi in [-5, 5], located as the
/// first root of the parabolic-cylinder secular equation
///   sqrt(2) D'_{(mu-1)/2}(-sqrt(2) xi) = gamma D_{(mu-1)/2}(-sqrt(2) xi).
/// The boundary value of the normalized eigenfunction is included.
RobinEigenResult mu(double gamma, double xi);

/// Eigenvalue only; skips the normalization integral.
double mu_value(double gamma, double xi);

/// Theta(gamma) = min_xi mu(gamma, xi).
double theta(double gamma);

/// Argmin of xi -> mu(gamma, xi), cross-checked against sqrt(Theta + gamma^2).
/// Throws ConsistencyFailure when they differ by more than 1e-5.
double xi_of_gamma(double gamma);

/// Theta'(gamma) = |u_gamma(0)|^2.
double theta_prime(double gamma);

/// f_*(t) = D_{-1/2}(sqrt(2) t - alpha) / D_{-1/2}(-alpha), t in [0, 20].
double f_star(double t);
double f_star_prime(double t);

FStarMoments f_star_moments();

/// C1(gamma) = (1 - gamma xi(gamma)) |u_gamma(0)|^2 / 3.
double C1(double gamma);

/// Second xi-derivative of mu at xi(gamma): five-point differences at h and
/// h/2 combined by one Richardson step.
double d2mu_dxi2(double gamma, double h = 1e-3);

/// C2(gamma) = sqrt(k2 C1(gamma) d2mu_dxi2(gamma)) / 2.
double C2(double gamma, double k2, double h = 1e-3);

/// Splitting constant c_* = C2(-alpha_hat, k2) / Theta'(-alpha_hat).
double splitting_c_star(double k2, double h = 1e-3);

/// Computed once and cached; safe to call from any thread.
const ModelConstants& constants();

}  // namespace magdtn::model1d

#endif  // MAGDTN_MODEL1D_HPP
