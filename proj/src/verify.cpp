#include "bisim/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bisim {

namespace {

// maximum Lamb-identity residual over field pairs built from the exterior
// equilibrium and Kirchhoff solutions on the given curve (centered frame)
double lambResidualMax(const DiscreteCurve& c) {
  ExteriorEquilibrium eq = solve_exterior_equilibrium(c);
  ExteriorKirchhoff kirch = solve_exterior_kirchhoff(c);
  std::vector<std::vector<Vec2>> fields;
  // equilibrium perp-gradient: tangential, H = -density * tau
  std::vector<Vec2> H(c.N);
  for (int i = 0; i < c.N; ++i) H[i] = -eq.density(i) * c.tau[i];
  fields.push_back(H);
  for (int j = 0; j < 3; ++j) {
    std::vector<Vec2> g(c.N);
    for (int i = 0; i < c.N; ++i)
      g[i] = kirch.bodyDn(j, i) * c.n[i] + kirch.bodyDtau(j, i) * c.tau[i];
    fields.push_back(std::move(g));
  }
  double worst = 0.0;
  for (const auto& u : fields)
    for (const auto& v : fields)
      for (int j = 1; j <= 3; ++j)
        worst = std::max(worst, lamb_residual(c, u, v, Vec2::Zero(), j));
  return worst;
}

}  // namespace

std::vector<CheckResult> identity_suite(const Shape& body, const Shape& outer,
                                        const VerifyOptions& opts) {
  BoundedSolver solver(body, outer, opts.Nbody, opts.Nouter, opts.eps);
  const DiscreteCurve& outerCurve = solver.outerCurve();
  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> uAngle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> uUnit(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double rE = 0.0, rGamma = 0.0, rSkew = 0.0, rLamb = 0.0;

  auto MaAt = [&](const Vec3& q) { return solver.addedMassAt(q); };

  for (int s = 0; s < opts.samples; ++s) {
    // rejection-sample a placement with clearance from the outer boundary
    Vec3 q;
    for (;;) {
      q = Vec3(uAngle(rng), uUnit(rng), uUnit(rng));
      Placement pl = Placement::fromQ(q, opts.eps);
      DiscreteCurve placed = place(solver.refBody(), pl);
      if (separation(placed, outerCurve) >= opts.minSeparation) break;
    }
    Vec3 p(gauss(rng), gauss(rng), gauss(rng));

    BoundedSolver::Snapshot snap = solver.solve(Placement::fromQ(q, opts.eps));

    // E = 1/2 D_q C by central differences
    const double step = 1e-4;
    Vec3 dC;
    for (int i = 0; i < 3; ++i) {
      Vec3 qp = q, qm = q;
      qp(i) += step;
      qm(i) -= step;
      dC(i) = (solver.capacityAt(qp) - solver.capacityAt(qm)) / (2.0 * step);
    }
    rE = std::max(rE, (snap.E - 0.5 * dC).cwiseAbs().maxCoeff());

    // Christoffel contraction: finite-difference oracle vs boundary split
    Vec3 gFd = christoffel_fd(MaAt, q, p);
    Vec3 gSplit = solver.christoffelSplit(snap, p);
    rGamma = std::max(rGamma,
                      (gFd - gSplit).norm() / std::max(1e-12, gFd.norm()));

    rSkew = std::max(rSkew, skew_symmetry_residual(MaAt, q, p));

    // Lamb exchange identity on the placed body in the centered frame
    DiscreteCurve placed =
        place(solver.refBody(), Placement{q(0), Vec2::Zero(), opts.eps});
    rLamb = std::max(rLamb, lambResidualMax(placed));
  }

  // shape-level dual formulas
  ExteriorConstants ext = exterior_constants(body, 512);
  double rZeta = (ext.zeta - ext.zetaDual).norm();
  double rMdag = (ext.Mdagger - 0.5 * (ext.Mbar + ext.Mbar.transpose())).norm();

  const double ts = opts.tolScale;
  std::vector<CheckResult> out;
  auto add = [&](std::string name, double res, double tol) {
    out.push_back({std::move(name), res, tol * ts, res < tol * ts});
  };
  add("E-equals-half-DC", rE, 1e-5);
  add("christoffel-split", rGamma, 1e-4);
  add("skew-symmetry", rSkew, 1e-5);
  add("lamb-exchange", rLamb, 1e-8);
  add("zeta-dual-formula", rZeta, 1e-8);
  add("mdagger-symmetrization", rMdag, 1e-10);
  return out;
}

std::vector<CheckResult> scaling_suite(const Shape& body, int N, double lambda,
                                       double tolScale) {
  ExteriorConstants c1 = exterior_constants(body, N);
  ExteriorConstants cl = exterior_constants(body.scaled(lambda), N);
  Mat3 Il = iEps(lambda);

  double rMa = (cl.MaExt - lambda * lambda * Il * c1.MaExt * Il).norm();

  double rGamma = 0.0, rForce = 0.0;
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < 5; ++s) {
    double theta = gauss(rng);
    Vec3 p(gauss(rng), gauss(rng), gauss(rng));
    Vec3 phat = Il * p;
    Vec3 gl = christoffel_ext_closed(cl, theta, p);
    Vec3 g1 = lambda * (Il * christoffel_ext_closed(c1, theta, phat));
    rGamma = std::max(rGamma, (gl - g1).norm());
    Vec3 fl = force_ext(cl, theta, p, 1.0);
    Vec3 f1 = Il * force_ext(c1, theta, phat, 1.0);
    rForce = std::max(rForce, (fl - f1).norm());
  }

  std::vector<CheckResult> out;
  auto add = [&](std::string name, double res, double tol) {
    out.push_back({std::move(name), res, tol * tolScale, res < tol * tolScale});
  };
  add("scaling-added-inertia", rMa, 1e-9);
  add("scaling-christoffel", rGamma, 1e-9);
  add("scaling-force-ext", rForce, 1e-9);
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace bisim
