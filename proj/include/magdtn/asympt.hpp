#ifndef MAGDTN_ASYMPT_HPP
#define MAGDTN_ASYMPT_HPP

// Asymptotic expansions as finite sums of powers of b, with every
// coefficient taken from model1d at runtime, and the comparison of computed
// sweeps against them.

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace magdtn::asympt {

enum class PredictionKind {
  Leading2D,
  TwoTerm2D,
  Variable2D,
  ThreeD,
  Splitting,
  WeakField,
  RobinThreeTerm,
  RobinCrossing,
};

const char* to_string(PredictionKind kind);

struct Term {
  double exponent;
  double coefficient;
};

/// Scalars a prediction was built from; unused entries stay NaN.
struct PredictionInputs {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  double kappa_max = kUnset;
  double k2 = kUnset;
  double min_boundary_B = kUnset;
  double weak_field_coefficient = kUnset;
  double gamma = kUnset;
  int j = 0;
};

struct AsymptoticPrediction {
  PredictionKind kind = PredictionKind::Leading2D;
  double b = 0.0;
  std::vector<Term> terms;  // exponents strictly decreasing
  double value = 0.0;
  PredictionInputs inputs;

  /// Sum of the terms at another b.
  double evaluate(double at) const;
  /// True when the expansion describes b -> 0 rather than b -> infinity.
  bool small_b() const { return kind == PredictionKind::WeakField; }
};

/// ahat b^{1/2}.
AsymptoticPrediction leading_2d(double b);
/// ahat b^{1/2} - ((ahat^2 + 1)/3) kappa_max.
AsymptoticPrediction two_term_2d(double b, double kappa_max);
/// ahat (min over the boundary of |B|)^{1/2} b^{1/2}.
AsymptoticPrediction leading_variable_2d(double b, double min_boundary_B);
/// coefficient b^{1/2}, with coefficient = min over the surface of lambda(theta) |B|^{1/2}.
AsymptoticPrediction leading_3d(double b, double coefficient);
/// Robin eigenvalue b Theta(gamma) - b^{1/2} C1(gamma) kappa_max + (2j - 1) b^{1/4} C2(gamma).
AsymptoticPrediction robin_three_term(double gamma, double b, double kappa_max, double k2, int j);
/// 2 c_*(k2) b^{-1/4}.
AsymptoticPrediction splitting_gap(double b, double k2);
/// coefficient b^2.
AsymptoticPrediction weak_field(double b, double coefficient);

/// Zero crossing of the Robin expansion in gamma:
/// -ahat + ((ahat^2 + 1)/3) kappa_max b^{-1/2} - (2j - 1) c_*(k2) b^{-3/4}.
AsymptoticPrediction gamma_crossing_expansion(double b, double kappa_max, double k2, int j);
/// Root gamma of robin_three_term(gamma, b, ...) = 0 near -ahat. Throws
/// NoSignChange when b is too small for a crossing in [-ahat - 1, -ahat + 1].
double robin_three_term_root(double b, double kappa_max, double k2, int j);

using PredictionBuilder = std::function<AsymptoticPrediction(double b)>;

struct ComparisonReport {
  std::string kind;
  std::vector<double> b;
  std::vector<double> computed;
  std::vector<double> predicted;
  std::vector<double> residuals;         // computed - predicted
  std::vector<double> scaled_residuals;  // residual * b^{-expected exponent}
  double expected_exponent = 0.0;
  double slack = 1.5;
  double head_max = 0.0;  // largest |scaled residual| in the first half of the approach
  double tail_max = 0.0;  // same over the second half
  bool pass = false;
};

/// The sweep must be sorted in b with at least two points. The approach to
/// the asymptotic limit runs towards large b, or towards small b for
/// small-b expansions. PASS when tail_max <= slack * head_max.
ComparisonReport compare(const std::vector<std::pair<double, double>>& sweep, const PredictionBuilder& builder,
                         double expected_exponent, double slack = 1.5);

}  // namespace magdtn::asympt

#endif  // MAGDTN_ASYMPT_HPP
