#include <fcntl.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lane_emden/config.hpp"
#include "lane_emden/oracle.hpp"
#include "lane_emden/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lane_emden;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_operational = 1;
constexpr int exit_verdict = 2;
constexpr int exit_config = 64;

// One run per output directory; the lock is dropped on exit.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) : path_(dir / ".lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      throw Error("output directory is locked by another run: " + path_.string());
    }
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::close(fd_);
      ::unlink(path_.c_str());
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

json solve_report_json(const SolveReport& report) {
  json j;
  j["schema_version"] = 1;
  j["p"] = report.p;
  j["max_value"] = report.max_value;
  j["iterations"] = report.iterations;
  j["residual_norm"] = report.residual_norm;
  if (std::isfinite(report.lambda)) j["lambda"] = report.lambda;
  j["uncertified"] = report.uncertified;
  return j;
}

struct Cli {
  std::string config_path;
  std::string out_dir;
  double p = std::numeric_limits<double>::quiet_NaN();
  double h = std::numeric_limits<double>::quiet_NaN();
  bool quiet = false;
  bool experimental = false;
};

RunConfig load_config(const Cli& cli) {
  RunConfig config;
  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path);
    if (!in) throw ConfigError("cannot open config file '" + cli.config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = parse_config(buffer.str());
  }
  if (!cli.out_dir.empty()) config.out_dir = cli.out_dir;
  if (std::isfinite(cli.p)) {
    if (cli.p < 0) throw ConfigError("p must be nonnegative");
    config.p = cli.p;
  }
  if (std::isfinite(cli.h)) {
    if (!(cli.h > 0 && cli.h <= 0.2)) throw ConfigError("h must lie in (0, 0.2]");
    config.h = cli.h;
  }
  if (cli.quiet) config.quiet = true;
  config.solver.experimental = cli.experimental;
  if (!config.solver.experimental) {
    if ((std::isfinite(config.p) && config.p > 3)) {
      throw ConfigError("p > 3 needs --experimental-p");
    }
    for (const double p : config.p_list) {
      if (p > 3) throw ConfigError("p_list beyond 3 needs --experimental-p");
    }
  }
  return config;
}

double require_p(const RunConfig& config) {
  if (!std::isfinite(config.p)) {
    throw ConfigError("this subcommand needs p (config [solver] p or --p)");
  }
  return config.p;
}

int run_command(const std::string& command, const Cli& cli) {
  const RunConfig config = load_config(cli);
  const DomainSpec domain = materialize_domain(config);

  fs::create_directories(config.out_dir);
  DirLock lock(config.out_dir);
  const fs::path out(config.out_dir);
  auto log = [&](const std::string& line) {
    if (!config.quiet) std::cout << line << "\n";
  };

  if (command == "mesh") {
    const TriangleMesh mesh = build_mesh(domain, config.h);
    std::ostringstream text;
    write_mesh(text, mesh);
    write_file(out / "mesh.txt", text.str());
    const MeshQuality q = mesh_quality(mesh);
    log("mesh: " + std::to_string(mesh.n_vertices()) + " vertices, " +
        std::to_string(mesh.n_triangles()) + " triangles, min angle " +
        std::to_string(q.min_angle_deg) + " deg");
    return exit_ok;
  }

  if (command == "solve" || command == "eigen") {
    const TriangleMesh mesh = build_mesh(domain, config.h);
    Solver solver(mesh, config.solver);
    ScalarField field;
    SolveReport report;
    if (command == "eigen") {
      EigenResult e = solver.eigen();
      field = e.u1;
      report = e.report;
      log("lambda1 = " + std::to_string(e.lambda1));
    } else {
      auto [u, r] = solver.solve(require_p(config));
      field = std::move(u);
      report = r;
      log("max u = " + std::to_string(report.max_value) + " after " +
          std::to_string(report.iterations) + " iterations");
    }
    std::ostringstream csv;
    write_field_csv(csv, field);
    write_file(out / (command == "eigen" ? "eigenfunction.csv" : "field.csv"),
               csv.str());
    write_file(out / (command == "eigen" ? "eigen_report.json" : "solve_report.json"),
               solve_report_json(report).dump(2) + "\n");
    return exit_ok;
  }

  if (command == "verify") {
    const ConvexityReport convexity = check_uniform_convexity(domain, 512,
                                                              config.verify.tau_kappa);
    if (convexity.verdict == ConvexityVerdict::not_convex) {
      std::cerr << "NotConvex: boundary geodesic curvature reaches "
                << convexity.kappa_min << "; domain gate failed before solving\n";
      return exit_operational;
    }
    const TriangleMesh mesh = build_mesh(domain, config.h);
    Solver solver(mesh, config.solver);
    auto [u, solve_report] = solver.solve(require_p(config));
    VerifyOptions vopts = config.verify;
    vopts.seed = config.seed;
    const VerificationReport report =
        run_verification(mesh, u, config.p, convexity, vopts);
    write_file(out / "report.json", report_to_json(report));
    std::ostringstream levels;
    write_levels_csv(levels, report.level_set_results);
    write_file(out / "levels.csv", levels.str());
    std::ostringstream csv;
    write_field_csv(csv, u);
    write_file(out / "field.csv", csv.str());
    write_file(out / "solve_report.json", solve_report_json(solve_report).dump(2) + "\n");
    log(std::string("verification ") + (report.pass ? "PASS" : "FAIL") +
        ", definiteness = " + to_string(report.definiteness));
    for (const auto& failure : report.failures) log("  failed: " + failure);
    return report.pass ? exit_ok : exit_verdict;
  }

  if (command == "sweep") {
    if (config.p_list.empty()) {
      throw ConfigError("sweep needs p_list in the config");
    }
    const TriangleMesh mesh = build_mesh(domain, config.h);
    Solver solver(mesh, config.solver);
    const std::vector<SweepEntry> entries = solver.sweep(config.p_list);
    json j;
    j["schema_version"] = 1;
    j["lambda1"] = solver.eigen().lambda1;
    j["entries"] = json::array();
    for (const auto& e : entries) {
      json je;
      je["p"] = e.p;
      je["converged"] = e.converged;
      if (e.converged) {
        je["D"] = e.D;
        je["iterations"] = e.report.iterations;
        je["max_value"] = e.report.max_value;
        je["residual_norm"] = e.report.residual_norm;
      } else {
        je["error"] = e.error;
      }
      j["entries"].push_back(je);
      log("p = " + std::to_string(e.p) +
          (e.converged ? " D = " + std::to_string(e.D) : " failed: " + e.error));
    }
    write_file(out / "sweep.json", j.dump(2) + "\n");
    return exit_ok;
  }

  if (command == "oracle") {
    if (!std::holds_alternative<GeodesicBall>(domain)) {
      throw ConfigError("the oracle subcommand needs a geodesic-ball domain");
    }
    const double R = std::get<GeodesicBall>(domain).radius;
    const double p = require_p(config);
    const RadialSolution radial =
        p == 0.0 ? torsion_closed_form(R) : radial_shoot(R, p);
    std::ostringstream csv;
    write_radial_csv(csv, radial);
    write_file(out / "radial.csv", csv.str());

    const TriangleMesh mesh = build_mesh(domain, config.h);
    Solver solver(mesh, config.solver);
    auto [u, report] = solver.solve(p);
    const CompareResult cmp = compare(u, radial, {0, 0});
    json j;
    j["schema_version"] = 1;
    j["p"] = p;
    j["R"] = R;
    j["center_value"] = radial.u.front();
    if (std::isfinite(radial.lambda)) j["lambda"] = radial.lambda;
    j["fem_max"] = report.max_value;
    j["sup_err"] = cmp.sup_err;
    j["l2_err"] = cmp.l2_err;
    j["rel_sup_err"] = cmp.rel_sup_err;
    write_file(out / "oracle_report.json", j.dump(2) + "\n");
    log("rel_sup_err = " + std::to_string(cmp.rel_sup_err));
    return exit_ok;
  }

  throw Error("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lane-Emden Dirichlet problems on convex domains of the unit sphere"};
  app.set_help_flag("--help", "print usage");  // frees -h for the mesh size
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--config", cli.config_path, "configuration file");
  app.add_option("--out", cli.out_dir, "output directory (overrides config)");
  app.add_option("--p", cli.p, "exponent (overrides config)");
  app.add_option("--h", cli.h, "target edge length (overrides config)");
  app.add_flag("--quiet", cli.quiet, "suppress progress output");
  app.add_flag("--experimental-p", cli.experimental,
               "allow p > 3 (results uncertified)");
  for (const char* name : {"mesh", "solve", "eigen", "verify", "sweep", "oracle"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, cli);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_operational;
  }
}
