#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "magdtn/asympt.hpp"
#include "magdtn/diskexact.hpp"
#include "magdtn/domain2d.hpp"
#include "magdtn/error.hpp"
#include "magdtn/halfspace3d.hpp"
#include "magdtn/model1d.hpp"
#include "magdtn/parallel.hpp"

namespace magdtn::cli {
namespace {

using json = nlohmann::json;

const std::set<std::string> kCommands = {"constants", "theta-curve", "disk", "domain",
                                         "halfspace", "weakfield",   "compare"};

// ---------------------------------------------------------------- validation

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + where + "." + item.key() + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + where + "." + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer_or(const json& obj, const std::string& key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError("'" + where + "." + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) throw ConfigError("'" + where + "' must be a number or a non-empty list");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("'" + where + "' entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

const json& section(const json& config, const std::string& key) {
  static const json empty = json::object();
  return config.contains(key) ? config.at(key) : empty;
}

std::vector<double> b_values(const json& config) {
  if (!config.contains("b")) throw ConfigError("missing key 'b'");
  const json& b = config.at("b");
  if (b.is_object()) {
    check_keys(b, {"start", "stop", "count"}, "b");
    const double start = number(b, "start", "b"), stop = number(b, "stop", "b");
    const int count = integer_or(b, "count", "b", 0);
    if (!(start > 0.0 && stop > start) || count < 2) {
      throw ConfigError("geometric b range needs 0 < start < stop and count >= 2");
    }
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(start * std::pow(stop / start, double(k) / (count - 1)));
    out.back() = stop;
    return out;
  }
  const auto out = number_list(b, "b");
  for (double x : out) {
    if (!std::isfinite(x)) throw ConfigError("b values must be finite");
  }
  return out;
}

void validate_domain(const json& d) {
  check_keys(d, {"cos", "sin", "ellipse", "samples", "side"}, "domain");
  if (d.contains("ellipse") == d.contains("cos")) throw ConfigError("domain needs exactly one of 'cos' or 'ellipse'");
  if (d.contains("ellipse")) {
    const auto e = number_list(d.at("ellipse"), "domain.ellipse");
    if (e.size() != 2 || !(e[0] > 0.0 && e[1] > 0.0)) throw ConfigError("domain.ellipse must be [a, b] with a, b > 0");
    if (d.contains("sin")) throw ConfigError("domain.sin applies to Fourier radii only");
  } else {
    number_list(d.at("cos"), "domain.cos");
    if (d.contains("sin")) number_list(d.at("sin"), "domain.sin");
  }
  if (integer_or(d, "samples", "domain", 4096) < 64) throw ConfigError("domain.samples must be at least 64");
  if (d.contains("side")) {
    const json& s = d.at("side");
    if (!s.is_string() || (s != "interior" && s != "exterior")) {
      throw ConfigError("domain.side must be \"interior\" or \"exterior\"");
    }
  }
}

void validate_monomials(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError("'" + where + "' must be a list of [px, py, coefficient]");
  for (const auto& m : v) {
    if (!m.is_array() || m.size() != 3 || !m[0].is_number_integer() || !m[1].is_number_integer() ||
        !m[2].is_number() || m[0].get<int>() < 0 || m[1].get<int>() < 0) {
      throw ConfigError("'" + where + "' entries must be [px, py, coefficient] with integer powers >= 0");
    }
  }
}

void validate_field(const json& f) {
  check_keys(f, {"kind", "coeffs", "potential"}, "field");
  if (!f.contains("kind") || !f.at("kind").is_string()) throw ConfigError("field.kind must be a string");
  const std::string kind = f.at("kind");
  if (kind == "constant") {
    if (f.contains("coeffs") || f.contains("potential")) throw ConfigError("constant field takes no parameters");
  } else if (kind == "radial") {
    if (!f.contains("coeffs")) throw ConfigError("radial field needs 'field.coeffs'");
    number_list(f.at("coeffs"), "field.coeffs");
    if (f.contains("potential")) throw ConfigError("radial field takes no potential");
  } else if (kind == "custom") {
    if (!f.contains("potential")) throw ConfigError("custom field needs 'field.potential'");
    const json& p = f.at("potential");
    check_keys(p, {"a1", "a2"}, "field.potential");
    if (p.contains("a1")) validate_monomials(p.at("a1"), "field.potential.a1");
    if (p.contains("a2")) validate_monomials(p.at("a2"), "field.potential.a2");
    if (f.contains("coeffs")) throw ConfigError("custom field takes no radial coefficients");
  } else {
    throw ConfigError("field.kind must be constant, radial or custom");
  }
}

const std::set<std::string> kPredictions = {"leading2D",  "twoTerm2D", "variable2D",    "threeD",
                                            "splitting", "weakField", "robinThreeTerm"};

void validate_compare(const json& c) {
  check_keys(c, {"input", "column", "prediction", "exponent", "kappa_max", "k2", "min_boundary_B", "coefficient",
                 "gamma", "j"},
             "compare");
  if (!c.contains("input") || !c.at("input").is_string()) throw ConfigError("compare.input must be a path");
  if (!c.contains("prediction") || !c.at("prediction").is_string() || !kPredictions.count(c.at("prediction"))) {
    throw ConfigError("compare.prediction must name a prediction kind");
  }
  number(c, "exponent", "compare");
  if (c.contains("column") && !c.at("column").is_string()) throw ConfigError("compare.column must be a string");
  const std::string kind = c.at("prediction");
  auto need = [&](const char* key) { number(c, key, "compare"); };
  if (kind == "twoTerm2D") need("kappa_max");
  if (kind == "variable2D") need("min_boundary_B");
  if (kind == "threeD" || kind == "weakField") need("coefficient");
  if (kind == "splitting") need("k2");
  if (kind == "robinThreeTerm") {
    need("gamma");
    need("kappa_max");
    need("k2");
    if (integer_or(c, "j", "compare", 1) < 1) throw ConfigError("compare.j must be >= 1");
  }
}

// Circle radius when the Fourier radius has no angular terms.
double circle_radius(const json& d) {
  if (d.contains("ellipse")) throw ConfigError("disk command needs a circular domain");
  const auto c = number_list(d.at("cos"), "domain.cos");
  const auto s = d.contains("sin") ? number_list(d.at("sin"), "domain.sin") : std::vector<double>{};
  const bool round = std::all_of(c.begin() + 1, c.end(), [](double x) { return x == 0.0; }) &&
                     std::all_of(s.begin(), s.end(), [](double x) { return x == 0.0; });
  if (!round || !(c[0] > 0.0)) throw ConfigError("disk command needs domain.cos = [R] with R > 0");
  return c[0];
}

// ---------------------------------------------------------------- builders

domain2d::DomainSpec make_domain(const json& d) {
  const int samples = integer_or(d, "samples", "domain", 4096);
  if (d.contains("ellipse")) {
    const auto e = number_list(d.at("ellipse"), "domain.ellipse");
    return domain2d::build_ellipse(e[0], e[1], samples);
  }
  return domain2d::build_domain(number_list(d.at("cos"), "domain.cos"),
                                d.contains("sin") ? number_list(d.at("sin"), "domain.sin") : std::vector<double>{},
                                samples);
}

struct Monomial {
  int px, py;
  double c;
};

std::vector<Monomial> monomials(const json& p, const char* key) {
  std::vector<Monomial> out;
  if (!p.contains(key)) return out;
  for (const auto& m : p.at(key)) out.push_back({m[0].get<int>(), m[1].get<int>(), m[2].get<double>()});
  return out;
}

double poly(const std::vector<Monomial>& ms, double x, double y) {
  double s = 0.0;
  for (const auto& m : ms) s += m.c * std::pow(x, m.px) * std::pow(y, m.py);
  return s;
}

// d/dx (axis 0) or d/dy (axis 1) of a monomial sum.
double dpoly(const std::vector<Monomial>& ms, double x, double y, int axis) {
  double s = 0.0;
  for (const auto& m : ms) {
    if (axis == 0 && m.px > 0) s += m.c * m.px * std::pow(x, m.px - 1) * std::pow(y, m.py);
    if (axis == 1 && m.py > 0) s += m.c * m.py * std::pow(x, m.px) * std::pow(y, m.py - 1);
  }
  return s;
}

domain2d::FieldSpec make_field(const json& f) {
  const std::string kind = f.value("kind", "constant");
  if (kind == "radial") return domain2d::FieldSpec::radial(number_list(f.at("coeffs"), "field.coeffs"));
  if (kind == "custom") {
    const auto a1 = monomials(f.at("potential"), "a1"), a2 = monomials(f.at("potential"), "a2");
    return domain2d::FieldSpec::custom(
        [a1, a2](const Eigen::Vector2d& x) -> Eigen::Vector2d {
          return {poly(a1, x.x(), x.y()), poly(a2, x.x(), x.y())};
        },
        [a1, a2](const Eigen::Vector2d& x) { return dpoly(a2, x.x(), x.y(), 0) - dpoly(a1, x.x(), x.y(), 1); });
  }
  return domain2d::FieldSpec::constant();
}

int resolve_workers(const json& config) {
  if (std::getenv("MAGDTN_WORKERS")) return default_workers();
  return config.contains("workers") ? config.at("workers").get<int>() : default_workers();
}

// ---------------------------------------------------------------- output

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const {
    std::ostringstream os;
    os << "schema=1\n";
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
      os << "\n";
    }
    return os.str();
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "schema=1") throw ConfigError("'" + path + "' is not a schema=1 CSV");
  Csv csv;
  if (!std::getline(in, line)) throw ConfigError("'" + path + "' has no header");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) csv.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    for (std::string cell; std::getline(rs, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("'" + path + "' has a non-numeric cell '" + cell + "'");
      }
    }
    if (row.size() != csv.header.size()) throw ConfigError("'" + path + "' has a ragged row");
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

size_t column_index(const Csv& csv, const std::string& name) {
  const auto it = std::find(csv.header.begin(), csv.header.end(), name);
  if (it == csv.header.end()) throw ConfigError("input has no column '" + name + "'");
  return static_cast<size_t>(it - csv.header.begin());
}

void emit(const json& config, const std::string& text, std::ostream& out) {
  const json& o = section(config, "output");
  if (o.contains("path")) {
    std::ofstream f(o.at("path").get<std::string>(), std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + o.at("path").get<std::string>() + "'");
    f << text;
    if (!f) throw ConfigError("write failed for '" + o.at("path").get<std::string>() + "'");
  } else {
    out << text;
  }
}

// ---------------------------------------------------------------- commands

Csv spectrum_csv(const std::vector<double>& bs, const std::vector<DtNSpectrum>& spectra, int count) {
  Csv csv;
  csv.header.push_back("b");
  for (int j = 1; j <= count; ++j) csv.header.push_back("lambda" + std::to_string(j));
  for (int j = 1; j <= count; ++j) csv.header.push_back("mode" + std::to_string(j));
  for (size_t i = 0; i < bs.size(); ++i) {
    std::vector<double> row{bs[i]};
    for (int j = 0; j < count; ++j) row.push_back(spectra[i].eigenvalues.at(j));
    for (int j = 0; j < count; ++j) row.push_back(spectra[i].labels.at(j));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string cmd_theta_curve(const json& config) {
  const json& d = section(config, "discretization");
  const double gmin = number(d, "gmin", "discretization"), gmax = number(d, "gmax", "discretization");
  const int steps = integer_or(d, "steps", "discretization", 101);
  if (!(gmin >= -3.0 && gmax <= 3.0 && gmin < gmax)) throw ConfigError("theta-curve needs -3 <= gmin < gmax <= 3");
  if (steps < 2) throw ConfigError("theta-curve needs steps >= 2");
  const auto rows = parallel_map(
      steps,
      [&](int i) {
        const double g = i + 1 == steps ? gmax : gmin + (gmax - gmin) * i / (steps - 1);
        return std::vector<double>{g, model1d::theta(g), model1d::xi_of_gamma(g), model1d::theta_prime(g)};
      },
      resolve_workers(config));
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] < rows[i - 1][1] - 1e-9) {
      throw Error(ErrorKind::ConsistencyFailure, "theta curve is not monotone near gamma=" + format_number(rows[i][0]));
    }
  }
  Csv csv{{"gamma", "theta", "xi", "theta_prime"}, rows};
  return csv.str();
}

std::string cmd_disk(const json& config) {
  const json& dom = section(config, "domain");
  if (!config.contains("domain")) throw ConfigError("disk command needs 'domain'");
  const double R = circle_radius(dom);
  const bool exterior = dom.value("side", "interior") == "exterior";
  const json& fld = section(config, "field");
  const std::string kind = fld.value("kind", "constant");
  if (kind == "custom") throw ConfigError("disk command accepts constant or radial fields");
  if (exterior && kind != "constant") throw ConfigError("exterior disk accepts the constant field only");
  const auto field = kind == "radial" ? diskexact::RadialField::polynomial(number_list(fld.at("coeffs"), "field.coeffs"))
                                      : diskexact::RadialField::constant();
  const auto bs = b_values(config);
  const json& d = section(config, "discretization");
  const int count = integer_or(d, "count", "discretization", 3);
  if (count < 1) throw ConfigError("discretization.count must be >= 1");
  const int window = integer_or(d, "mode_window", "discretization", 0);
  if (window < 0) throw ConfigError("discretization.mode_window must be >= 0");
  const auto spectra = parallel_map(
      static_cast<int>(bs.size()),
      [&](int i) {
        const int w = window > 0 ? window : diskexact::default_mode_window(R, bs[i]);
        return exterior ? diskexact::dtn_disk_exterior(R, bs[i], count, w, 1)
                        : diskexact::dtn_disk_spectrum(R, bs[i], count, w, field, 1);
      },
      resolve_workers(config));
  return spectrum_csv(bs, spectra, count).str();
}

std::string cmd_domain(const json& config, const RunOptions& opts) {
  if (!config.contains("domain")) throw ConfigError("domain command needs 'domain'");
  if (section(config, "domain").contains("side")) throw ConfigError("domain.side applies to the disk command only");
  const auto dom = make_domain(config.at("domain"));
  const auto field = make_field(section(config, "field"));
  const auto bs = b_values(config);
  const json& d = section(config, "discretization");
  const double h = number(d, "h", "discretization");
  const int count = integer_or(d, "count", "discretization", 3);
  if (count < 1) throw ConfigError("discretization.count must be >= 1");
  const auto spectra = parallel_map(
      static_cast<int>(bs.size()),
      [&](int i) { return domain2d::dtn_schur_eigs(domain2d::assemble(dom, field, bs[i], h), count, opts.seed); },
      resolve_workers(config));
  return spectrum_csv(bs, spectra, count).str();
}

std::string cmd_halfspace(const json& config, const RunOptions& opts, std::ostream& err) {
  const json& d = section(config, "discretization");
  const int steps = integer_or(d, "theta_steps", "discretization", 17);
  if (steps < 2) throw ConfigError("discretization.theta_steps must be >= 2");
  halfspace3d::Truncation t;
  t.L = number_or(d, "L", "discretization", t.L);
  t.N = integer_or(d, "N", "discretization", t.N);
  if (!(t.L >= 12.0) || t.N < 200) throw ConfigError("half-space truncation needs L >= 12 and N >= 200");
  const auto results = parallel_map(
      steps,
      [&](int i) {
        const double theta = i + 1 == steps ? 0.5 * std::numbers::pi : 0.5 * std::numbers::pi * i / (steps - 1);
        return halfspace3d::lambda_dn_theta(theta, t, opts.seed);
      },
      resolve_workers(config));
  Csv csv{{"theta", "lambda", "g", "Lbox", "N"}, {}};
  for (const auto& r : results) {
    csv.rows.push_back({r.theta, r.lambda, r.lower_bound, t.L, double(t.N)});
    if (r.truncation_warning) {
      err << json{{"warning", "truncation"}, {"theta", r.theta}, {"tail_mass", r.tail_mass}}.dump() << "\n";
    }
  }
  return csv.str();
}

std::string cmd_weakfield(const json& config) {
  if (!config.contains("domain")) throw ConfigError("weakfield command needs 'domain'");
  if (section(config, "domain").contains("side")) throw ConfigError("domain.side applies to the disk command only");
  const auto dom = make_domain(config.at("domain"));
  const json& d = section(config, "discretization");
  if (!d.contains("h")) throw ConfigError("missing key 'discretization.h'");
  const auto hs = number_list(d.at("h"), "discretization.h");
  const auto coeffs = parallel_map(
      static_cast<int>(hs.size()), [&](int i) { return domain2d::weak_field_coefficient(dom, hs[i]); },
      resolve_workers(config));
  json doc = {{"schema", 1}, {"command", "weakfield"}, {"perimeter", dom.perimeter}, {"area", dom.area},
              {"h", hs},     {"coefficient", coeffs}};
  // Predictions use the finest mesh.
  const size_t finest = static_cast<size_t>(std::min_element(hs.begin(), hs.end()) - hs.begin());
  json pred = json::array();
  if (config.contains("b")) {
    for (double b : b_values(config)) {
      pred.push_back({{"b", b}, {"value", asympt::weak_field(b, coeffs[finest]).value}});
    }
  }
  doc["predictions"] = pred;
  return doc.dump(2) + "\n";
}

std::string cmd_compare(const json& config, int& exit_code) {
  if (!config.contains("compare")) throw ConfigError("compare command needs 'compare'");
  const json& c = config.at("compare");
  const Csv csv = read_csv(c.at("input"));
  const std::string column = c.value("column", "lambda1");
  const size_t ib = column_index(csv, "b");
  std::vector<std::pair<double, double>> sweep;
  for (const auto& r : csv.rows) {
    const double v = column == "gap" ? r[column_index(csv, "lambda2")] - r[column_index(csv, "lambda1")]
                                     : r[column_index(csv, column)];
    sweep.emplace_back(r[ib], v);
  }
  const std::string kind = c.at("prediction");
  auto get = [&](const char* key) { return c.contains(key) ? c.at(key).get<double>() : 0.0; };
  const double kappa = get("kappa_max"), k2 = get("k2"), minB = get("min_boundary_B"), coef = get("coefficient"),
               gamma = get("gamma");
  const int j = integer_or(c, "j", "compare", 1);
  const asympt::PredictionBuilder builder = [=](double b) {
    if (kind == "twoTerm2D") return asympt::two_term_2d(b, kappa);
    if (kind == "variable2D") return asympt::leading_variable_2d(b, minB);
    if (kind == "threeD") return asympt::leading_3d(b, coef);
    if (kind == "splitting") return asympt::splitting_gap(b, k2);
    if (kind == "weakField") return asympt::weak_field(b, coef);
    if (kind == "robinThreeTerm") return asympt::robin_three_term(gamma, b, kappa, k2, j);
    return asympt::leading_2d(b);
  };
  const double slack = number_or(section(config, "tolerances"), "slack", "tolerances", 1.5);
  if (!(slack >= 1.0)) throw ConfigError("tolerances.slack must be >= 1");
  for (size_t i = 1; i < sweep.size(); ++i) {
    if (!(sweep[i].first > sweep[i - 1].first)) throw ConfigError("compare input must be sorted in b");
  }
  if (sweep.size() < 2) throw ConfigError("compare input needs at least two rows");
  const auto r = asympt::compare(sweep, builder, c.at("exponent").get<double>(), slack);
  exit_code = r.pass ? kExitOk : kExitNumerical;
  const json doc = {{"schema", 1},
                    {"command", "compare"},
                    {"prediction", r.kind},
                    {"column", column},
                    {"expected_exponent", r.expected_exponent},
                    {"slack", r.slack},
                    {"b", r.b},
                    {"computed", r.computed},
                    {"predicted", r.predicted},
                    {"residuals", r.residuals},
                    {"scaled_residuals", r.scaled_residuals},
                    {"head_max", r.head_max},
                    {"tail_max", r.tail_max},
                    {"verdict", r.pass ? "PASS" : "FAIL"}};
  return doc.dump(2) + "\n";
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void validate(const json& config) {
  check_keys(config,
             {"command", "domain", "field", "b", "discretization", "output", "tolerances", "workers", "compare"},
             "config");
  if (!config.contains("command") || !config.at("command").is_string() || !kCommands.count(config.at("command"))) {
    throw ConfigError("'command' must be one of constants, theta-curve, disk, domain, halfspace, weakfield, compare");
  }
  if (config.contains("domain")) validate_domain(config.at("domain"));
  if (config.contains("field")) validate_field(config.at("field"));
  if (config.contains("b")) b_values(config);
  if (config.contains("discretization")) {
    const json& d = config.at("discretization");
    check_keys(d, {"h", "L", "N", "count", "mode_window", "theta_steps", "gmin", "gmax", "steps"},
               "discretization");
    if (d.contains("h")) {
      for (double h : number_list(d.at("h"), "discretization.h")) {
        if (!(h > 0.0)) throw ConfigError("discretization.h must be positive");
      }
    }
    for (const char* k : {"N", "count", "mode_window", "theta_steps", "steps"}) integer_or(d, k, "discretization", 0);
    for (const char* k : {"L", "gmin", "gmax"}) number_or(d, k, "discretization", 0.0);
  }
  if (config.contains("output")) {
    check_keys(config.at("output"), {"path"}, "output");
    if (config.at("output").contains("path") && !config.at("output").at("path").is_string()) {
      throw ConfigError("output.path must be a string");
    }
  }
  if (config.contains("tolerances")) {
    check_keys(config.at("tolerances"), {"slack"}, "tolerances");
    number_or(config.at("tolerances"), "slack", "tolerances", 1.5);
  }
  if (config.contains("workers")) {
    if (!config.at("workers").is_number_integer() || config.at("workers").get<int>() < 1) {
      throw ConfigError("'workers' must be a positive integer");
    }
  }
  if (config.contains("compare")) validate_compare(config.at("compare"));
}

json constants_report(bool& failed) {
  const auto& k = model1d::constants();
  const auto m = model1d::f_star_moments();
  const double a = k.alpha_hat;
  const double cstar = -m.tfp - a * m.c2;
  json checks = json::array(), failures = json::array();
  auto check = [&](const char* name, double value, double reference, double tol, const char* anchor) {
    const bool pass = std::abs(value - reference) <= tol;
    checks.push_back({{"name", name},
                      {"value", value},
                      {"reference", reference},
                      {"tolerance", tol},
                      {"anchor", anchor},
                      {"pass", pass}});
    if (!pass) failures.push_back(name);
  };
  check("alpha", k.alpha, 0.7649508673, 1e-9, "printed value of the negative zero of D_{1/2}");
  check("theta0", k.theta0, 0.590106, 1e-5, "printed de Gennes constant");
  check("gamma0", k.gamma0, -a, 1e-8, "zero of Theta equals -alpha_hat");
  check("norm_fstar_sq", k.norm_fstar_sq, 0.6861814388, 1e-8, "printed L2 norm squared of f_*");
  check("moment_c1", m.c1, 0.0, 1e-8, "first centred moment vanishes");
  check("moment_c2", m.c2, a / 4.0, 1e-8, "second centred moment is alpha_hat/4");
  check("moment_ff", m.ff, -0.5, 1e-8, "int f' f = -1/2");
  check("moment_tfp", m.tfp, 1.0 / 3.0 + a * a / 12.0, 1e-8, "int t f'^2 = 1/3 + alpha_hat^2/12");
  check("energy", m.energy, a, 1e-8, "quadratic form equals alpha_hat");
  check("curvature_constant", cstar, -(a * a + 1.0) / 3.0, 1e-8, "C_* = -(alpha_hat^2 + 1)/3");
  failed = !failures.empty();
  return {{"schema", 1},
          {"command", "constants"},
          {"alpha", k.alpha},
          {"alpha_hat", a},
          {"theta0", k.theta0},
          {"gamma0", k.gamma0},
          {"c1_at_gamma0", k.c1_at_gamma0},
          {"norm_fstar_sq", k.norm_fstar_sq},
          {"moments",
           {{"m0", m.m0},
            {"c1", m.c1},
            {"c2", m.c2},
            {"c3", m.c3},
            {"c3_cubed", m.c3_cubed},
            {"ff", m.ff},
            {"tfp", m.tfp},
            {"energy", m.energy}}},
          {"curvature_constant", cstar},
          {"checks", checks},
          {"failures", failures}};
}

int run(const json& config, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const std::string cmd = config.at("command");
    int code = kExitOk;
    std::string text;
    if (cmd == "constants") {
      bool failed = false;
      text = constants_report(failed).dump(2) + "\n";
      if (failed) code = kExitNumerical;
    } else if (cmd == "theta-curve") {
      text = cmd_theta_curve(config);
    } else if (cmd == "disk") {
      text = cmd_disk(config);
    } else if (cmd == "domain") {
      text = cmd_domain(config, opts);
    } else if (cmd == "halfspace") {
      text = cmd_halfspace(config, opts, err);
    } else if (cmd == "weakfield") {
      text = cmd_weakfield(config);
    } else {
      text = cmd_compare(config, code);
    }
    emit(config, text, out);
    return code;
  } catch (const ConfigError& e) {
    err << error_json("InvalidConfig", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << error_json("InvalidConfig", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    const bool input = e.kind() == ErrorKind::InvalidConfig || e.kind() == ErrorKind::InvalidBoundary;
    err << error_json(to_string(e.kind()), e.what()).dump() << "\n";
    return input ? kExitConfig : kExitNumerical;
  }
}

}  // namespace magdtn::cli
