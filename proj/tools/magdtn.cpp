// magdtn: command-line front end. Each subcommand builds a schema-1 run
// configuration from its flags; `run` reads one from a JSON file.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli.hpp"

using nlohmann::json;

namespace {

void put_output(json& config, const std::string& path) {
  if (!path.empty()) config["output"] = {{"path", path}};
}

void put_domain(json& config, const std::vector<double>& cos, const std::vector<double>& sin,
                const std::vector<double>& ellipse) {
  if (!ellipse.empty()) {
    config["domain"] = {{"ellipse", ellipse}};
  } else {
    config["domain"] = {{"cos", cos.empty() ? std::vector<double>{1.0} : cos}};
    if (!sin.empty()) config["domain"]["sin"] = sin;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic Dirichlet-to-Neumann spectra"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::optional<int> workers;
  app.add_option("--seed", seed, "Eigensolver starting-vector seed")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (MAGDTN_WORKERS takes precedence)")->check(CLI::PositiveNumber);

  json config;
  std::string output;

  auto* constants = app.add_subcommand("constants", "Model constants and f_* moments as JSON");
  constants->add_option("-o,--output", output, "Output path");

  auto* curve = app.add_subcommand("theta-curve", "CSV of Theta(gamma), xi(gamma), Theta'(gamma)");
  double gmin = -1.5, gmax = 1.0;
  int steps = 101;
  curve->add_option("--gmin", gmin)->capture_default_str();
  curve->add_option("--gmax", gmax)->capture_default_str();
  curve->add_option("--steps", steps, "Number of gamma values")->capture_default_str();
  curve->add_option("-o,--output", output, "Output path");

  auto* disk = app.add_subcommand("disk", "Exact disk spectra over a b sweep");
  double radius = 1.0;
  std::vector<double> bs;
  int count = 3, window = 0;
  bool exterior = false;
  std::vector<double> radial;
  disk->add_option("--R", radius, "Disk radius")->capture_default_str();
  disk->add_option("--b", bs, "Field strengths")->delimiter(',')->required();
  disk->add_option("--count", count, "Eigenvalues per b")->capture_default_str();
  disk->add_option("--mode-window", window, "Half-width of the mode window (0 = automatic)");
  disk->add_flag("--exterior", exterior, "Exterior of the disk");
  disk->add_option("--radial", radial, "Radial field coefficients c_k of sum c_k r^k")->delimiter(',');
  disk->add_option("-o,--output", output, "Output path");

  auto* domain = app.add_subcommand("domain", "Grid spectra on a star-shaped domain");
  std::vector<double> cos_c, sin_c, ellipse;
  double h = 0.1;
  std::string field = "constant";
  std::vector<double> coeffs;
  domain->add_option("--cos", cos_c, "Cosine radius coefficients")->delimiter(',');
  domain->add_option("--sin", sin_c, "Sine radius coefficients (first entry 0)")->delimiter(',');
  domain->add_option("--ellipse", ellipse, "Semi-axes a,b")->delimiter(',')->expected(2);
  domain->add_option("--field", field, "constant or radial")->check(CLI::IsMember({"constant", "radial"}));
  domain->add_option("--coeffs", coeffs, "Radial field coefficients")->delimiter(',');
  domain->add_option("--b", bs, "Field strengths")->delimiter(',')->required();
  domain->add_option("--h", h, "Mesh size")->capture_default_str();
  domain->add_option("--count", count, "Eigenvalues per b")->capture_default_str();
  domain->add_option("-o,--output", output, "Output path");

  auto* half = app.add_subcommand("halfspace", "Half-space angular model over [0, pi/2]");
  int theta_steps = 17, cells = 400;
  double box = 16.0;
  half->add_option("--theta-steps", theta_steps, "Number of angles")->capture_default_str();
  half->add_option("--L", box, "Box size")->capture_default_str();
  half->add_option("--N", cells, "Cells across (0, L)")->capture_default_str();
  half->add_option("-o,--output", output, "Output path");

  auto* weak = app.add_subcommand("weakfield", "Weak-field coefficient of a domain");
  std::vector<double> hs;
  weak->add_option("--cos", cos_c, "Cosine radius coefficients")->delimiter(',');
  weak->add_option("--sin", sin_c, "Sine radius coefficients (first entry 0)")->delimiter(',');
  weak->add_option("--ellipse", ellipse, "Semi-axes a,b")->delimiter(',')->expected(2);
  weak->add_option("--h", hs, "Mesh sizes")->delimiter(',')->required();
  weak->add_option("--b", bs, "Field strengths for predictions")->delimiter(',');
  weak->add_option("-o,--output", output, "Output path");

  auto* cmp = app.add_subcommand("compare", "Compare a spectrum CSV with an expansion");
  std::string input, prediction, column = "lambda1";
  double exponent = 0.0, slack = 1.5;
  std::optional<double> kappa, k2, min_b, coefficient, gamma;
  int j = 1;
  cmp->add_option("--input", input, "schema=1 spectrum CSV")->required();
  cmp->add_option("--prediction", prediction, "Prediction kind")->required();
  cmp->add_option("--exponent", exponent, "Expected remainder exponent")->required();
  cmp->add_option("--column", column, "Column to compare, or 'gap'")->capture_default_str();
  cmp->add_option("--kappa-max", kappa);
  cmp->add_option("--k2", k2);
  cmp->add_option("--min-B", min_b);
  cmp->add_option("--coefficient", coefficient);
  cmp->add_option("--gamma", gamma);
  cmp->add_option("--j", j)->capture_default_str();
  cmp->add_option("--slack", slack)->capture_default_str();
  cmp->add_option("-o,--output", output, "Output path");

  auto* run = app.add_subcommand("run", "Run a JSON configuration");
  std::string config_path;
  run->add_option("config", config_path, "Configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return magdtn::cli::kExitConfig;
  }

  if (*constants) {
    config = {{"command", "constants"}};
  } else if (*curve) {
    config = {{"command", "theta-curve"}, {"discretization", {{"gmin", gmin}, {"gmax", gmax}, {"steps", steps}}}};
  } else if (*disk) {
    config = {{"command", "disk"}, {"domain", {{"cos", {radius}}}}, {"b", bs}, {"discretization", {{"count", count}}}};
    if (exterior) config["domain"]["side"] = "exterior";
    if (window > 0) config["discretization"]["mode_window"] = window;
    if (!radial.empty()) config["field"] = {{"kind", "radial"}, {"coeffs", radial}};
  } else if (*domain) {
    config = {{"command", "domain"}, {"b", bs}, {"discretization", {{"h", h}, {"count", count}}}};
    put_domain(config, cos_c, sin_c, ellipse);
    config["field"] = {{"kind", field}};
    if (field == "radial") config["field"]["coeffs"] = coeffs;
  } else if (*half) {
    config = {{"command", "halfspace"}, {"discretization", {{"theta_steps", theta_steps}, {"L", box}, {"N", cells}}}};
  } else if (*weak) {
    config = {{"command", "weakfield"}, {"discretization", {{"h", hs}}}};
    put_domain(config, cos_c, sin_c, ellipse);
    if (!bs.empty()) config["b"] = bs;
  } else if (*cmp) {
    json c = {{"input", input}, {"prediction", prediction}, {"exponent", exponent}, {"column", column}, {"j", j}};
    if (kappa) c["kappa_max"] = *kappa;
    if (k2) c["k2"] = *k2;
    if (min_b) c["min_boundary_B"] = *min_b;
    if (coefficient) c["coefficient"] = *coefficient;
    if (gamma) c["gamma"] = *gamma;
    config = {{"command", "compare"}, {"compare", c}, {"tolerances", {{"slack", slack}}}};
  } else {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << json{{"error", "InvalidConfig"}, {"message", "cannot read '" + config_path + "'"}}.dump() << "\n";
      return magdtn::cli::kExitConfig;
    }
    try {
      config = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << json{{"error", "InvalidConfig"}, {"message", e.what()}}.dump() << "\n";
      return magdtn::cli::kExitConfig;
    }
  }
  if (!*run) put_output(config, output);
  if (workers && config.is_object()) config["workers"] = *workers;

  magdtn::cli::RunOptions opts;
  opts.seed = seed;
  return magdtn::cli::run(config, opts, std::cout, std::cerr);
}
