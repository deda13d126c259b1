#include "bisim/asymptotics.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace bisim {

namespace {

constexpr double kPi = std::numbers::pi;

std::unique_ptr<RouthEvaluator> routhFor(const Shape& outer, int N) {
  if (outer.kind() == Shape::Kind::Circle)
    return std::make_unique<DiskRouth>(outer.radiusA());
  return std::make_unique<BemRouth>(discretize(outer, N, Orientation::Outer));
}

void finish(SweepResult& r) {
  r.slope = loglog_slope(r.eps, r.residual);
  r.monotone = true;
  for (std::size_t i = 1; i < r.residual.size(); ++i)
    if (r.residual[i] >= r.residual[i - 1]) r.monotone = false;
}

}  // namespace

double loglog_slope(const std::vector<double>& eps,
                    const std::vector<double>& r) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (r[i] <= 0.0) continue;
    double x = std::log(eps[i]), y = std::log(r[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult capacity_sweep(const Shape& body, const Shape& outer, const Vec3& q,
                           const SweepConfig& cfg) {
  SweepResult out;
  out.label = "capacity";
  ExteriorConstants ext = exterior_constants(body, cfg.Nexterior);
  auto routh = routhFor(outer, cfg.Nouter);
  const double theta = q(0);
  const Vec2 h(q(1), q(2));
  const Vec2 zetaTheta = rot2(theta) * ext.zeta;
  for (double eps : cfg.epsGrid) {
    BoundedSolver solver(body, outer, cfg.Nbody, cfg.Nouter, eps);
    double measured = solver.capacityAt(q);
    double model = std::log(eps) / (2.0 * kPi) + ext.C0 +
                   2.0 * routh->psiOmega(h) +
                   2.0 * eps * routh->psiC(h, zetaTheta);
    out.eps.push_back(eps);
    out.value.push_back(measured);
    out.model.push_back(model);
    out.residual.push_back(std::abs(measured - model));
  }
  finish(out);
  return out;
}

SweepResult added_mass_sweep(const Shape& body, const Shape& outer,
                             const Vec3& q, const SweepConfig& cfg) {
  SweepResult out;
  out.label = "added-mass";
  ExteriorConstants ext = exterior_constants(body, cfg.Nexterior);
  Mat3 limit = ma_ext_rotated(ext, q(0));
  for (double eps : cfg.epsGrid) {
    BoundedSolver solver(body, outer, cfg.Nbody, cfg.Nouter, eps);
    Mat3 Ma = solver.addedMassAt(q);
    Mat3 inv = iEps(eps).inverse();
    Mat3 rescaled = inv * Ma * inv / (eps * eps);
    double dev = (rescaled - limit).norm();
    out.eps.push_back(eps);
    out.value.push_back(dev);
    out.model.push_back(0.0);
    out.residual.push_back(dev);
  }
  finish(out);
  return out;
}

ForceSweep force_sweep(const Shape& body, double R, const Vec3& q,
                       const SweepConfig& cfg) {
  ForceSweep out;
  out.eLeading.label = "force-E-leading";
  out.eFirst.label = "force-E-first";
  out.bLeading.label = "force-B-leading";
  out.bFirst.label = "force-B-first";

  ExteriorConstants ext = exterior_constants(body, cfg.Nexterior);
  Shape outer = Shape::circle(R);
  DiskRouth routh(R);
  const double theta = q(0);
  const Vec2 h(q(1), q(2));
  const Vec2 zetaTheta = rot2(theta) * ext.zeta;
  const Vec2 uOm = routh.uOmega(h);
  const Vec2 uc = routh.uC(h, zetaTheta);
  const Mat2 MdagTheta = mdagger_rotated(ext, theta);
  Mat2 hess;
  routh.psi0Hess(h, &hess);

  const Vec3 E0 = e0_limit(uOm, zetaTheta);
  const Vec3 E1 = e1_a_limit(uOm, MdagTheta) +
                  e1_b_limit(hess, theta, ext.sigmaS) +
                  e1_c_limit(zetaTheta, uc);
  const Vec3 Bext = b_ext(ext, theta);
  const Vec3 B1 = b1_limit(MdagTheta, uOm);

  for (double eps : cfg.epsGrid) {
    BoundedSolver solver(body, outer, cfg.Nbody, cfg.Nouter, eps);
    BoundedSolver::Snapshot s = solver.solve(Placement::fromQ(q, eps));
    Vec3 eResc = iEps(eps).inverse() * s.E;
    Vec3 bResc = iEps(eps) * s.B / eps;

    double rE0 = (eResc - E0).norm();
    double rE1 = (eResc - E0 - eps * E1).norm();
    double rB0 = (bResc - Bext).norm();
    double rB1 = (bResc - Bext - eps * B1).norm();

    out.eLeading.eps.push_back(eps);
    out.eLeading.value.push_back(eResc.norm());
    out.eLeading.model.push_back(E0.norm());
    out.eLeading.residual.push_back(rE0);

    out.eFirst.eps.push_back(eps);
    out.eFirst.value.push_back(eResc.norm());
    out.eFirst.model.push_back((E0 + eps * E1).norm());
    out.eFirst.residual.push_back(rE1);

    out.bLeading.eps.push_back(eps);
    out.bLeading.value.push_back(bResc(0));
    out.bLeading.model.push_back(Bext(0));
    out.bLeading.residual.push_back(rB0);

    out.bFirst.eps.push_back(eps);
    out.bFirst.value.push_back(bResc(0));
    out.bFirst.model.push_back((Bext + eps * B1)(0));
    out.bFirst.residual.push_back(rB1);

    out.b1AtFinest = bResc(0);
  }
  finish(out.eLeading);
  finish(out.eFirst);
  finish(out.bLeading);
  finish(out.bFirst);
  return out;
}

namespace {

// sup_t |h^eps(t) - h_limit(t)| by nearest-sample lookup on the limit grid
double supDistance(const Trajectory& run, const PointTrajectory& limit,
                   double dtLimit) {
  double worst = 0.0;
  for (const Sample& s : run.samples) {
    auto idx = static_cast<std::size_t>(std::llround(s.t / dtLimit));
    idx = std::min(idx, limit.h.size() - 1);
    Vec2 h(s.q(1), s.q(2));
    worst = std::max(worst, (h - limit.h[idx]).norm());
  }
  return worst;
}

double supEpsOmega(const Trajectory& run, double eps) {
  double worst = 0.0;
  for (const Sample& s : run.samples)
    worst = std::max(worst, eps * std::abs(s.p(0)));
  return worst;
}

// sliding-window means of the translational velocity against gamma uOmega
// along the limit orbit
double windowVelocityError(const Trajectory& run, const RouthEvaluator& routh,
                           double gamma, const PointTrajectory& limit,
                           double dtLimit, double window) {
  if (run.samples.size() < 2) return 0.0;
  double worst = 0.0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < run.samples.size(); ++hi) {
    double tHi = run.samples[hi].t;
    while (run.samples[lo].t < tHi - window) ++lo;
    if (tHi - run.samples[lo].t < 0.5 * window) continue;  // warm-up
    Vec2 mean = Vec2::Zero();
    for (std::size_t k = lo; k <= hi; ++k)
      mean += run.samples[k].p.tail<2>();
    mean /= static_cast<double>(hi - lo + 1);
    double tMid = 0.5 * (tHi + run.samples[lo].t);
    auto idx = static_cast<std::size_t>(std::llround(tMid / dtLimit));
    idx = std::min(idx, limit.h.size() - 1);
    Vec2 target = gamma * routh.uOmega(limit.h[idx]);
    worst = std::max(worst, (mean - target).norm());
  }
  return worst;
}

ConvergenceResult runConvergence(const Shape& body, double R, const Vec2& h0,
                                 const Vec2& l0, double gamma,
                                 const MassRegime& regime,
                                 const ConvergenceConfig& cfg,
                                 PointTrajectory limit) {
  ConvergenceResult out;
  out.limit = std::move(limit);
  out.distance.label = "trajectory-distance";
  DiskRouth routh(R);
  Shape outer = Shape::circle(R);
  for (double eps : cfg.epsGrid) {
    FullDynamics dyn(body, outer, cfg.Ncurve, cfg.Ncurve, eps);
    BodyState s0;
    s0.q = Vec3(0.0, h0.x(), h0.y());
    s0.p = Vec3(0.0, l0.x(), l0.y());
    SimParams params;
    params.dt = cfg.dt;
    params.T = cfg.T;
    params.gamma = gamma;
    params.regime = regime;
    params.recordEvery = cfg.recordEvery;
    Trajectory run = dyn.integrate(s0, params);
    double dist = supDistance(run, out.limit, cfg.dtLimit);
    out.distance.eps.push_back(eps);
    out.distance.value.push_back(dist);
    out.distance.model.push_back(0.0);
    out.distance.residual.push_back(dist);
    out.epsOmegaSup.push_back(supEpsOmega(run, eps));
    out.windowVelErr.push_back(windowVelocityError(
        run, routh, gamma, out.limit, cfg.dtLimit, cfg.window));
    out.runs.push_back(std::move(run));
  }
  finish(out.distance);
  return out;
}

}  // namespace

ConvergenceResult convergence_case_i(const Shape& body, double R,
                                     const Vec2& h0, const Vec2& l0,
                                     double gamma, double m, double J1,
                                     const ConvergenceConfig& cfg) {
  DiskRouth routh(R);
  PointTrajectory limit =
      integrate_massive_vortex(h0, l0, m, gamma, routh, cfg.T, cfg.dtLimit);
  MassRegime regime;
  regime.kind = MassRegime::Kind::CaseI;
  regime.m = m;
  regime.J = J1;
  return runConvergence(body, R, h0, l0, gamma, regime, cfg, std::move(limit));
}

ConvergenceResult convergence_case_ii(const Shape& body, double R,
                                      const Vec2& h0, double gamma, double m1,
                                      double J1, double alpha,
                                      const ConvergenceConfig& cfg) {
  DiskRouth routh(R);
  PointTrajectory limit =
      integrate_point_vortex(h0, gamma, routh, cfg.T, cfg.dtLimit);
  MassRegime regime;
  regime.kind = MassRegime::Kind::CaseII;
  regime.m = m1;
  regime.J = J1;
  regime.alpha = alpha;
  // well-prepared initial velocity: start on the limit field
  Vec2 l0 = gamma * routh.uOmega(h0);
  return runConvergence(body, R, h0, l0, gamma, regime, cfg, std::move(limit));
}

}  // namespace bisim
