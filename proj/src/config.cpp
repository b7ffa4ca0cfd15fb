#include "lane_emden/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lane_emden {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& value, const std::string& key, int line) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "' has non-numeric value '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("line " + std::to_string(line) + ": trailing characters in '" +
                      value + "' for key '" + key + "'");
  }
  return out;
}

std::vector<double> parse_list(std::string value, const std::string& key, int line) {
  for (char& c : value) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(tok, key, line));
  if (out.empty()) {
    throw ConfigError("line " + std::to_string(line) + ": empty list for key '" +
                      key + "'");
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                    "' expects a boolean, got '" + value + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  std::set<std::pair<std::string, std::string>> seen;

  std::string domain_type;
  double ball_r = std::numeric_limits<double>::quiet_NaN();
  double ell_a = std::numeric_limits<double>::quiet_NaN();
  double ell_b = std::numeric_limits<double>::quiet_NaN();

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ConfigError("line " + std::to_string(line) + ": malformed section '" +
                          s + "'");
      }
      section = s.substr(1, s.size() - 2);
      if (section != "domain" && section != "solver" && section != "verify" &&
          section != "output") {
        throw ConfigError("line " + std::to_string(line) + ": unknown section '" +
                          section + "'");
      }
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": key outside a section");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty key or value");
    }
    if (!seen.insert({section, key}).second) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key +
                        "' in section [" + section + "]");
    }

    if (section == "domain") {
      if (key == "type") domain_type = value;
      else if (key == "R") ball_r = parse_number(value, key, line);
      else if (key == "a") ell_a = parse_number(value, key, line);
      else if (key == "b") ell_b = parse_number(value, key, line);
      else if (key == "samples_file") config.curve_file = value;
      else throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                             key + "' in [domain]");
    } else if (section == "solver") {
      if (key == "h") config.h = parse_number(value, key, line);
      else if (key == "p") config.p = parse_number(value, key, line);
      else if (key == "p_list") config.p_list = parse_list(value, key, line);
      else if (key == "tol_fix") config.solver.tol_fix = parse_number(value, key, line);
      else if (key == "tol_lin") config.solver.tol_lin = parse_number(value, key, line);
      else if (key == "max_outer")
        config.solver.max_outer = static_cast<int>(parse_number(value, key, line));
      else if (key == "omega") config.solver.omega = parse_number(value, key, line);
      else if (key == "omega_super")
        config.solver.omega_super = parse_number(value, key, line);
      else if (key == "continuation")
        config.solver.continuation = parse_bool(value, key, line);
      else if (key == "continuation_step")
        config.solver.continuation_step = parse_number(value, key, line);
      else throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                             key + "' in [solver]");
    } else if (section == "verify") {
      if (key == "exclusion_margin")
        config.verify.exclusion_margin = parse_number(value, key, line);
      else if (key == "delta") config.verify.delta = parse_number(value, key, line);
      else if (key == "level_fractions")
        config.verify.level_fractions = parse_list(value, key, line);
      else if (key == "epsilon_def_scale")
        config.verify.eps_def_scale = parse_number(value, key, line);
      else if (key == "tau_kappa")
        config.verify.tau_kappa = parse_number(value, key, line);
      else throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                             key + "' in [verify]");
    } else {  // output
      if (key == "dir") config.out_dir = value;
      else if (key == "seed")
        config.seed = static_cast<std::uint64_t>(parse_number(value, key, line));
      else if (key == "quiet") config.quiet = parse_bool(value, key, line);
      else throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                             key + "' in [output]");
    }
  }

  // assemble the domain
  if (domain_type.empty() || domain_type == "ball") {
    if (std::isfinite(ball_r)) {
      if (!(ball_r > 0 && ball_r < M_PI)) {
        throw ConfigError("ball radius R must lie in (0, pi), got " +
                          std::to_string(ball_r));
      }
      config.domain = GeodesicBall{{0, 0, -1}, ball_r};
    }
  } else if (domain_type == "ellipse") {
    if (!std::isfinite(ell_a) || !std::isfinite(ell_b)) {
      throw ConfigError("ellipse domain needs both a and b");
    }
    config.domain = SphericalEllipse{ell_a, ell_b};
  } else if (domain_type == "curve") {
    if (config.curve_file.empty()) {
      throw ConfigError("curve domain needs samples_file");
    }
    config.domain = PlanarConvexCurve{};
  } else {
    throw ConfigError("unknown domain type '" + domain_type + "'");
  }

  // global validation
  if (!(config.h > 0 && config.h <= 0.2)) {
    throw ConfigError("h must lie in (0, 0.2], got " + std::to_string(config.h));
  }
  if (std::isfinite(config.p) && config.p < 0) {
    throw ConfigError("p must be nonnegative, got " + std::to_string(config.p));
  }
  for (const double p : config.p_list) {
    if (p < 0) throw ConfigError("p_list entries must be nonnegative");
  }
  if (!(config.solver.tol_fix > 0) || !(config.solver.tol_lin > 0)) {
    throw ConfigError("solver tolerances must be positive");
  }
  if (config.solver.max_outer <= 0) {
    throw ConfigError("max_outer must be positive");
  }
  if (!(config.verify.delta > 0)) {
    throw ConfigError("verify delta must be positive");
  }
  for (const double f : config.verify.level_fractions) {
    if (!(f > 0 && f < 1)) {
      throw ConfigError("level fractions must lie in (0, 1)");
    }
  }
  return config;
}

DomainSpec materialize_domain(const RunConfig& config) {
  if (!std::holds_alternative<PlanarConvexCurve>(config.domain)) {
    return config.domain;
  }
  std::ifstream in(config.curve_file);
  if (!in) {
    throw ConfigError("cannot open samples_file '" + config.curve_file + "'");
  }
  PlanarConvexCurve curve;
  double x, y;
  while (in >> x >> y) curve.samples.push_back({x, y});
  if (curve.samples.size() < 3) {
    throw ConfigError("samples_file '" + config.curve_file +
                      "' holds fewer than 3 points");
  }
  return curve;
}

}  // namespace lane_emden
