#include "magdtn/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "magdtn/error.hpp"
#include "magdtn/model1d.hpp"
#include "magdtn/specfun.hpp"

namespace magdtn::asympt {
namespace {

AsymptoticPrediction make(PredictionKind kind, double b, std::vector<Term> terms, PredictionInputs inputs) {
  AsymptoticPrediction p;
  p.kind = kind;
  p.b = b;
  p.terms = std::move(terms);
  p.inputs = inputs;
  p.value = p.evaluate(b);
  return p;
}

void require_positive_b(double b, const char* what) {
  if (!(b > 0.0)) {
    std::ostringstream os;
    os << what << " needs b > 0, got " << b;
    throw Error(ErrorKind::OutOfRange, os.str());
  }
}

double curvature_coefficient() {
  const double a = model1d::constants().alpha_hat;
  return (a * a + 1.0) / 3.0;
}

}  // namespace

const char* to_string(PredictionKind kind) {
  switch (kind) {
    case PredictionKind::Leading2D: return "leading2D";
    case PredictionKind::TwoTerm2D: return "twoTerm2D";
    case PredictionKind::Variable2D: return "variable2D";
    case PredictionKind::ThreeD: return "threeD";
    case PredictionKind::Splitting: return "splitting";
    case PredictionKind::WeakField: return "weakField";
    case PredictionKind::RobinThreeTerm: return "robinThreeTerm";
    case PredictionKind::RobinCrossing: return "robinCrossing";
  }
  return "unknown";
}

double AsymptoticPrediction::evaluate(double at) const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coefficient * (t.exponent == 0.0 ? 1.0 : std::pow(at, t.exponent));
  return sum;
}

AsymptoticPrediction leading_2d(double b) {
  require_positive_b(b, "leading_2d");
  return make(PredictionKind::Leading2D, b, {{0.5, model1d::constants().alpha_hat}}, {});
}

AsymptoticPrediction two_term_2d(double b, double kappa_max) {
  require_positive_b(b, "two_term_2d");
  PredictionInputs in;
  in.kappa_max = kappa_max;
  return make(PredictionKind::TwoTerm2D, b,
              {{0.5, model1d::constants().alpha_hat}, {0.0, -curvature_coefficient() * kappa_max}}, in);
}

AsymptoticPrediction leading_variable_2d(double b, double min_boundary_B) {
  require_positive_b(b, "leading_variable_2d");
  if (!(min_boundary_B > 0.0)) throw Error(ErrorKind::OutOfRange, "boundary field must be positive");
  PredictionInputs in;
  in.min_boundary_B = min_boundary_B;
  return make(PredictionKind::Variable2D, b, {{0.5, model1d::constants().alpha_hat * std::sqrt(min_boundary_B)}},
              in);
}

AsymptoticPrediction leading_3d(double b, double coefficient) {
  require_positive_b(b, "leading_3d");
  return make(PredictionKind::ThreeD, b, {{0.5, coefficient}}, {});
}

AsymptoticPrediction robin_three_term(double gamma, double b, double kappa_max, double k2, int j) {
  require_positive_b(b, "robin_three_term");
  if (j < 1) throw Error(ErrorKind::OutOfRange, "robin_three_term needs j >= 1");
  if (!(k2 > 0.0)) throw Error(ErrorKind::OutOfRange, "robin_three_term needs k2 > 0");
  PredictionInputs in;
  in.kappa_max = kappa_max;
  in.k2 = k2;
  in.gamma = gamma;
  in.j = j;
  return make(PredictionKind::RobinThreeTerm, b,
              {{1.0, model1d::theta(gamma)},
               {0.5, -model1d::C1(gamma) * kappa_max},
               {0.25, (2.0 * j - 1.0) * model1d::C2(gamma, k2)}},
              in);
}

AsymptoticPrediction splitting_gap(double b, double k2) {
  require_positive_b(b, "splitting_gap");
  if (!(k2 > 0.0)) throw Error(ErrorKind::AssumptionViolation, "splitting gap needs k2 > 0");
  PredictionInputs in;
  in.k2 = k2;
  return make(PredictionKind::Splitting, b, {{-0.25, 2.0 * model1d::splitting_c_star(k2)}}, in);
}

AsymptoticPrediction weak_field(double b, double coefficient) {
  if (!(b >= 0.0)) throw Error(ErrorKind::OutOfRange, "weak_field needs b >= 0");
  PredictionInputs in;
  in.weak_field_coefficient = coefficient;
  return make(PredictionKind::WeakField, b, {{2.0, coefficient}}, in);
}

AsymptoticPrediction gamma_crossing_expansion(double b, double kappa_max, double k2, int j) {
  require_positive_b(b, "gamma_crossing_expansion");
  if (j < 1) throw Error(ErrorKind::OutOfRange, "gamma_crossing_expansion needs j >= 1");
  PredictionInputs in;
  in.kappa_max = kappa_max;
  in.k2 = k2;
  in.j = j;
  return make(PredictionKind::RobinCrossing, b,
              {{0.0, -model1d::constants().alpha_hat},
               {-0.5, curvature_coefficient() * kappa_max},
               {-0.75, -(2.0 * j - 1.0) * model1d::splitting_c_star(k2)}},
              in);
}

double robin_three_term_root(double b, double kappa_max, double k2, int j) {
  const double g0 = -model1d::constants().alpha_hat;
  auto f = [&](double g) { return robin_three_term(g, b, kappa_max, k2, j).value; };
  return specfun::find_root_x(f, g0 - 1.0, g0 + 1.0, 1e-13).root;
}

ComparisonReport compare(const std::vector<std::pair<double, double>>& sweep, const PredictionBuilder& builder,
                         double expected_exponent, double slack) {
  if (sweep.size() < 2) throw Error(ErrorKind::InsufficientData, "compare needs at least two sweep points");
  for (size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i].first > sweep[i - 1].first)) throw Error(ErrorKind::InsufficientData, "sweep must increase in b");
  }
  ComparisonReport r;
  r.expected_exponent = expected_exponent;
  r.slack = slack;
  bool small_b = false;
  for (const auto& [b, lambda] : sweep) {
    const auto p = builder(b);
    small_b = p.small_b();
    r.kind = to_string(p.kind);
    const double res = lambda - p.value;
    r.b.push_back(b);
    r.computed.push_back(lambda);
    r.predicted.push_back(p.value);
    r.residuals.push_back(res);
    r.scaled_residuals.push_back(res * std::pow(b, -expected_exponent));
  }
  // Order the scaled residuals along the approach to the limit.
  std::vector<double> path(r.scaled_residuals);
  if (small_b) std::reverse(path.begin(), path.end());
  const size_t half = path.size() / 2;
  for (size_t i = 0; i < path.size(); ++i) {
    double& slot = i < half ? r.head_max : r.tail_max;
    slot = std::max(slot, std::abs(path[i]));
  }
  r.pass = r.tail_max <= slack * r.head_max;
  return r;
}

}  // namespace magdtn::asympt
