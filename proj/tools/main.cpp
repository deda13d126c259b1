// Scenario-driven front end: exterior | operators | simulate | sweep | verify.
//
// Exit codes: 0 success, 2 input error, 3 runtime numerical failure,
// 4 verification or slope-window failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "bisim/scenario.hpp"
#include "bisim/verify.hpp"

namespace {

using namespace bisim;

std::string outputPath(const Scenario& sc, const std::string& file) {
  std::string dir = sc.outputDir;
  if (const char* env = std::getenv("BISIM_OUTPUT_DIR")) dir = env;
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / file).string();
}

void printMat(const std::string& name, const Mat3& M) {
  std::cout << name << " =\n";
  for (int i = 0; i < 3; ++i) {
    std::cout << "  ";
    for (int j = 0; j < 3; ++j) std::cout << format_double(M(i, j)) << (j < 2 ? " " : "\n");
  }
}

int cmdExterior(const std::string& shapeSpec, int N) {
  Shape shape = parse_shape(shapeSpec);
  ExteriorConstants c = exterior_constants(shape, N);
  std::cout << "shape: " << shape.describe() << "\n"
            << "capacity Cap = " << format_double(c.cap) << "\n"
            << "potential level C0 = " << format_double(c.C0) << "\n"
            << "conformal center zeta = (" << format_double(c.zeta.x()) << ", "
            << format_double(c.zeta.y()) << ")\n"
            << "zeta dual-formula gap = "
            << format_double((c.zeta - c.zetaDual).norm()) << "\n";
  printMat("added inertia M_a", c.MaExt);
  std::cout << "added-mass asymmetry = " << format_double(c.addedMassAsym)
            << "\n";
  return 0;
}

int cmdOperators(const Scenario& sc) {
  BoundedSolver solver(sc.body(), sc.outer(), sc.Nbody, sc.Nouter, sc.eps);
  BoundedSolver::Snapshot s = solver.solve(Placement::fromQ(sc.q0, sc.eps));
  std::cout << "C_eps = " << format_double(s.circ.C) << "\n";
  printMat("M_a", s.Ma);
  std::cout << "E = (" << format_double(s.E(0)) << ", " << format_double(s.E(1))
            << ", " << format_double(s.E(2)) << ")\n"
            << "B = (" << format_double(s.B(0)) << ", " << format_double(s.B(1))
            << ", " << format_double(s.B(2)) << ")\n"
            << "separation = " << format_double(s.separation) << "\n"
            << "solver residual = " << format_double(s.circ.residual) << "\n";
  return 0;
}

int cmdSimulate(const Scenario& sc, const std::string& limitMode) {
  if (!limitMode.empty()) {
    Shape outer = sc.outer();
    if (outer.kind() != Shape::Kind::Circle)
      throw ConfigError("limit systems need a circular outer boundary");
    DiskRouth routh(outer.radiusA());
    Vec2 h0(sc.q0(1), sc.q0(2));
    PointTrajectory traj;
    if (limitMode == "point-vortex") {
      traj = integrate_point_vortex(h0, sc.gamma, routh, sc.T, sc.dt);
    } else if (limitMode == "massive-vortex") {
      traj = integrate_massive_vortex(h0, Vec2(sc.p0(1), sc.p0(2)), sc.m,
                                      sc.gamma, routh, sc.T, sc.dt);
    } else {
      throw ConfigError("unknown limit system '" + limitMode + "'");
    }
    std::string path = outputPath(sc, "limit_trajectory.csv");
    std::ofstream out(path);
    out << "t,h1,h2,l1,l2,energy\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i)
      out << format_double(traj.t[i]) << ',' << format_double(traj.h[i].x())
          << ',' << format_double(traj.h[i].y()) << ','
          << format_double(traj.l[i].x()) << ',' << format_double(traj.l[i].y())
          << ',' << format_double(traj.energy[i]) << '\n';
    std::cout << "wrote " << path << " (" << traj.t.size() << " samples)\n";
    return 0;
  }

  FullDynamics dyn(sc.body(), sc.outer(), sc.Nbody, sc.Nouter, sc.eps);
  BodyState s0;
  s0.q = sc.q0;
  s0.p = sc.p0;
  SimParams params;
  params.dt = sc.dt;
  params.T = sc.T;
  params.deltaStop = sc.deltaStop;
  params.gamma = sc.gamma;
  params.regime = sc.massRegime();
  params.recordEvery = sc.recordEvery;
  Trajectory traj = dyn.integrate(s0, params);

  std::string path = outputPath(sc, "trajectory.csv");
  write_trajectory_csv(path, traj);
  const char* reason = traj.termination == Termination::TimeReached
                           ? "time-reached"
                           : (traj.termination == Termination::CollisionGuard
                                  ? "collision-guard"
                                  : "solver-failure");
  std::cout << "wrote " << path << " (" << traj.samples.size()
            << " samples)\n"
            << "termination: " << reason << "\n"
            << "max energy drift: " << format_double(traj.maxEnergyDrift())
            << "\n"
            << "min separation: " << format_double(traj.minSeparation())
            << "\n";
  if (traj.termination == Termination::SolverFailure) {
    std::cerr << "solver failure: " << traj.message << "\n";
    return 3;
  }
  return 0;
}

int cmdSweep(const Scenario& sc, const std::string& which) {
  SweepConfig cfg;
  cfg.epsGrid = sc.epsGrid;
  cfg.Nbody = sc.Nbody;
  cfg.Nouter = sc.Nouter;
  std::vector<SweepResult> results;
  bool windowsPass = true;

  auto report = [&](const SweepResult& r, double lo, double hi) {
    bool ok = r.slope >= lo && r.slope <= hi;
    std::cout << r.label << ": slope " << format_double(r.slope) << " window ["
              << lo << ", " << hi << "] " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) windowsPass = false;
    results.push_back(r);
  };

  if (which == "capacity") {
    report(capacity_sweep(sc.body(), sc.outer(), sc.q0, cfg), 1.8, 2.2);
  } else if (which == "added-mass") {
    report(added_mass_sweep(sc.body(), sc.outer(), sc.q0, cfg), 1.8, 2.2);
  } else if (which == "force") {
    Shape outer = sc.outer();
    if (outer.kind() != Shape::Kind::Circle)
      throw ConfigError("force sweep needs a circular outer boundary");
    ForceSweep fs = force_sweep(sc.body(), outer.radiusA(), sc.q0, cfg);
    report(fs.eLeading, 0.8, 1.2);
    report(fs.eFirst, 1.8, 2.2);
    report(fs.bLeading, 0.8, 1.2);
    report(fs.bFirst, 1.8, 2.2);
    std::cout << "B first component at finest eps: "
              << format_double(fs.b1AtFinest) << "\n";
  } else if (which == "case-i" || which == "case-ii") {
    Shape outer = sc.outer();
    if (outer.kind() != Shape::Kind::Circle)
      throw ConfigError("convergence runs need a circular outer boundary");
    ConvergenceConfig cc;
    cc.epsGrid = sc.epsGrid;
    cc.Ncurve = sc.Nbody;
    cc.T = sc.T;
    cc.dt = sc.dt;
    Vec2 h0(sc.q0(1), sc.q0(2));
    ConvergenceResult res =
        which == "case-i"
            ? convergence_case_i(sc.body(), outer.radiusA(), h0,
                                 Vec2(sc.p0(1), sc.p0(2)), sc.gamma, sc.m, sc.J,
                                 cc)
            : convergence_case_ii(sc.body(), outer.radiusA(), h0, sc.gamma,
                                  sc.m, sc.J, sc.alpha, cc);
    results.push_back(res.distance);
    std::cout << res.distance.label << ": slope "
              << format_double(res.distance.slope) << ", monotone "
              << (res.distance.monotone ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < cc.epsGrid.size(); ++i)
      std::cout << "  eps " << format_double(cc.epsGrid[i]) << ": sup |h - h_lim| "
                << format_double(res.distance.value[i]) << ", sup eps|omega| "
                << format_double(res.epsOmegaSup[i]) << ", windowed-vel gap "
                << format_double(res.windowVelErr[i]) << "\n";
    if (!res.distance.monotone) windowsPass = false;
  } else {
    std::cerr << "unknown sweep '" << which << "'\n";
    return 2;
  }

  std::string path = outputPath(sc, "sweep_" + which + ".csv");
  write_sweep_csv(path, results);
  std::cout << "wrote " << path << "\n";
  return windowsPass ? 0 : 4;
}

int cmdVerify(const Scenario& sc, bool list, double tolScale) {
  if (list) {
    std::cout << "identity catalog:\n"
              << "  E-equals-half-DC        force field vs capacity gradient\n"
              << "  christoffel-split       connection vs rotation+boundary split\n"
              << "  skew-symmetry           gyroscopic structure of the connection\n"
              << "  lamb-exchange           normal/tangential exchange integrals\n"
              << "  zeta-dual-formula       conformal center vs contour integral\n"
              << "  mdagger-symmetrization  added-mass perp symmetrization\n"
              << "  scaling-added-inertia   dilation covariance of added inertia\n"
              << "  scaling-christoffel     dilation covariance of the connection\n"
              << "  scaling-force-ext       dilation covariance of the lift force\n";
    return 0;
  }
  VerifyOptions opts;
  opts.eps = sc.eps;
  opts.seed = sc.seed;
  opts.Nbody = sc.Nbody;
  opts.Nouter = sc.Nouter;
  opts.tolScale = tolScale;
  std::vector<CheckResult> checks = identity_suite(sc.body(), sc.outer(), opts);
  std::vector<CheckResult> scaling = scaling_suite(sc.body(), 256, 0.5, tolScale);
  checks.insert(checks.end(), scaling.begin(), scaling.end());
  bool ok = true;
  for (const CheckResult& c : checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  residual "
              << format_double(c.residual) << "  tol " << format_double(c.tol)
              << "\n";
    if (!c.pass) ok = false;
  }
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-integral rigid-body-in-fluid simulator"};
  app.require_subcommand(1);

  std::string configPath, shapeSpec = "circle:1", limitMode, sweepWhich;
  int Next = 512;
  bool listIdentities = false;
  double tolScale = 1.0;

  // flag overrides applied on top of the config file
  std::map<std::string, std::string> overrides;
  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--config", configPath, "scenario config file");
    cmd->add_option_function<std::string>(
        "--set",
        [&](const std::string& kv) {
          auto eq = kv.find('=');
          if (eq == std::string::npos)
            throw CLI::ValidationError("--set expects section.key=value");
          overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
        },
        "override a config entry (section.key=value), repeatable")
        ->take_all();
  };

  CLI::App* exterior = app.add_subcommand("exterior", "shape constants in the unbounded plane");
  exterior->add_option("--shape", shapeSpec, "body shape spec");
  exterior->add_option("-N", Next, "quadrature nodes");

  CLI::App* operators = app.add_subcommand("operators", "one-shot bounded-domain solve report");
  addCommon(operators);

  CLI::App* simulate = app.add_subcommand("simulate", "integrate the rigid-body ODE");
  addCommon(simulate);
  simulate->add_option("--limit", limitMode, "run a limit system instead: point-vortex | massive-vortex");

  CLI::App* sweep = app.add_subcommand("sweep", "shrink-limit sweeps");
  addCommon(sweep);
  sweep->add_option("which", sweepWhich, "capacity | added-mass | force | case-i | case-ii")->required();

  CLI::App* verify = app.add_subcommand("verify", "structural identity suite");
  addCommon(verify);
  verify->add_flag("--list", listIdentities, "print the identity catalog");
  verify->add_option("--tol-scale", tolScale, "multiply all tolerances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::map<std::string, std::string> kv;
    if (!configPath.empty()) kv = bisim::read_config(configPath);
    for (const auto& [k, v] : overrides) kv[k] = v;
    bisim::Scenario sc = bisim::scenario_from_config(kv);

    if (exterior->parsed()) return cmdExterior(shapeSpec, Next);
    if (operators->parsed()) return cmdOperators(sc);
    if (simulate->parsed()) return cmdSimulate(sc, limitMode);
    if (sweep->parsed()) return cmdSweep(sc, sweepWhich);
    if (verify->parsed()) return cmdVerify(sc, listIdentities, tolScale);
  } catch (const bisim::ConfigError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const bisim::InvalidShape& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const bisim::SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
