#ifndef MAGDTN_DISKEXACT_HPP
#define MAGDTN_DISKEXACT_HPP

// Exact per-mode D-to-N and Robin spectra of the disk (and its exterior) in a
// rotationally symmetric magnetic field. Each angular mode e^{i m theta}
// reduces the problem to the radial equation
//
//   -u'' - u'/r + (m/r - b a(r))^2 u = mu u,
//
// where a(r) = (1/r) int_0^r beta(s) s ds is the tangential potential of the
// field B(r) = beta(r). It is solved for the logarithmic derivative r u'/u.

#include <vector>

#include "magdtn/spectrum.hpp"

namespace magdtn::diskexact {

enum class Side { Interior, Exterior };

/// Field profile beta(r) = sum_k c_k r^k. The constant unit field is {1}.
struct RadialField {
  std::vector<double> coeffs{1.0};

  static RadialField constant() { return {}; }
  static RadialField polynomial(std::vector<double> c) { return {std::move(c)}; }

  bool is_constant() const;
  double beta(double r) const;
  /// Tangential potential a(r) = (1/r) int_0^r beta(s) s ds.
  double potential(double r) const;
};

struct RadialProblem {
  double R = 1.0;
  double b = 0.0;
  int m = 0;
  Side side = Side::Interior;
  RadialField field = RadialField::constant();
};

/// Largest |m| accepted for radius R and field strength b. The minimizing
/// mode sits near the enclosed flux b R a(R), so the cap grows with it.
int mode_cap(double R, double b);

/// Default half-width of the mode window: ceil(3 sqrt(|b|) max(1, R)) + 10.
int default_mode_window(double R, double b);

/// Centre of the mode window, round(b R a(R)).
int mode_center(double R, double b, const RadialField& field = {});

/// D-to-N eigenvalue of mode m: u'(R)/u(R) for the regular interior solution,
/// -u'(R)/u(R) for the decaying exterior one. Exterior problems accept only
/// the constant field.
double dtn_disk_mode(const RadialProblem& p);

/// The `count` smallest mode values over |m - mode_center| <= mode_window,
/// sorted with their modes. Throws WindowTooSmall unless both window-edge
/// modes exceed the count-th value.
DtNSpectrum dtn_disk_spectrum(double R, double b, int count, int mode_window,
                              const RadialField& field = {}, int workers = 0);

DtNSpectrum dtn_disk_exterior(double R, double b, int count, int mode_window, int workers = 0);

/// Lowest eigenvalue of the interior mode-m problem with the Robin condition
/// u'(R) = -sqrt(b) gamma u(R), by shooting in mu.
double robin_disk_mode(const RadialProblem& p, double gamma);

/// j-th smallest Robin eigenvalue over the default mode window.
double robin_disk_eigenvalue(double R, double b, int j, double gamma, int workers = 0);

/// Root gamma_j(b) of gamma -> robin_disk_eigenvalue(R, b, j, gamma).
double gamma_crossing(double R, double b, int j, int workers = 0);

}  // namespace magdtn::diskexact

#endif  // MAGDTN_DISKEXACT_HPP
