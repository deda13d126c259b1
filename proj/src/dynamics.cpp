#include "bisim/dynamics.hpp"

#include <cmath>

namespace bisim {

double Trajectory::maxEnergyDrift() const {
  if (samples.empty()) return 0.0;
  double e0 = samples.front().energy;
  double worst = 0.0;
  for (const auto& s : samples)
    worst = std::max(worst, std::abs(s.energy - e0));
  return worst / std::max(1e-300, std::abs(e0));
}

double Trajectory::minSeparation() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) m = std::min(m, s.separation);
  return m;
}

Vec3 FullDynamics::accel(const Vec3& q, const Vec3& p, double gamma,
                         const MassRegime& regime,
                         BoundedSolver::Snapshot* snapOut) const {
  BoundedSolver::Snapshot s = solver_.solve(Placement::fromQ(q, solver_.eps()));
  double eps = solver_.eps();
  Mat3 Mg = Mat3::Zero();
  Mg(0, 0) = regime.inertiaAt(eps);
  Mg(1, 1) = Mg(2, 2) = regime.massAt(eps);
  Mat3 M = Mg + s.Ma;
  Vec3 Gamma = solver_.christoffelSplit(s, p);
  Vec3 F = force_total(p, s.E, s.B, gamma);
  Vec3 pdot = M.ldlt().solve(F - Gamma);
  if (snapOut) *snapOut = std::move(s);
  return pdot;
}

Trajectory FullDynamics::integrate(const BodyState& s0,
                                   const SimParams& params) const {
  Trajectory traj;
  // default guard distance: three node spacings of the coarser curve, where
  // the cross-curve quadrature is still accurate
  const DiscreteCurve& outer = solver_.outerCurve();
  double outerSpacing = outer.totalLength() / outer.N;
  double deltaStop =
      params.deltaStop > 0.0
          ? params.deltaStop
          : 3.0 * std::max(solver_.bodyNodeSpacing(), outerSpacing);
  Vec3 q = s0.q, p = s0.p;
  double t = s0.t;
  const double eps = solver_.eps();
  const int nSteps = static_cast<int>(std::llround((params.T - s0.t) / params.dt));

  auto record = [&](const BoundedSolver::Snapshot& snap, const Vec3& pc) {
    Mat3 Mg = Mat3::Zero();
    Mg(0, 0) = params.regime.inertiaAt(eps);
    Mg(1, 1) = Mg(2, 2) = params.regime.massAt(eps);
    Sample smp;
    smp.t = t;
    smp.q = q;
    smp.p = pc;
    smp.C = snap.circ.C;
    smp.energy = energy(Mg + snap.Ma, pc, snap.circ.C, params.gamma);
    smp.separation = snap.separation;
    traj.samples.push_back(smp);
  };

  try {
    for (int step = 0; step <= nSteps; ++step) {
      BoundedSolver::Snapshot snap;
      Vec3 a1 = accel(q, p, params.gamma, params.regime, &snap);
      if (step % params.recordEvery == 0 || step == nSteps) record(snap, p);
      if (snap.separation <= deltaStop) {
        traj.termination = Termination::CollisionGuard;
        traj.message = "separation reached the collision guard";
        return traj;
      }
      if (step == nSteps) break;

      const double h = params.dt;
      // classic RK4; the boundary system is re-solved at every stage
      Vec3 k1q = p, k1p = a1;
      Vec3 k2q = p + 0.5 * h * k1p;
      Vec3 k2p = accel(q + 0.5 * h * k1q, k2q, params.gamma, params.regime);
      Vec3 k3q = p + 0.5 * h * k2p;
      Vec3 k3p = accel(q + 0.5 * h * k2q, k3q, params.gamma, params.regime);
      Vec3 k4q = p + h * k3p;
      Vec3 k4p = accel(q + h * k3q, k4q, params.gamma, params.regime);
      q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
      p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      t += h;
    }
    traj.termination = Termination::TimeReached;
  } catch (const std::exception& e) {
    traj.termination = Termination::SolverFailure;
    traj.message = e.what();
  }
  return traj;
}

Vec3 ExteriorDynamics::accel(double theta, const Vec3& p) const {
  Mat3 M = ma_ext_rotated(c_, theta);
  M(0, 0) += J_;
  M(1, 1) += m_;
  M(2, 2) += m_;
  Vec3 Gamma = christoffel_ext_closed(c_, theta, p);
  Vec3 F = force_ext(c_, theta, p, gamma_);
  return M.ldlt().solve(F - Gamma);
}

double ExteriorDynamics::kineticEnergy(double theta, const Vec3& p) const {
  Mat3 M = ma_ext_rotated(c_, theta);
  M(0, 0) += J_;
  M(1, 1) += m_;
  M(2, 2) += m_;
  return 0.5 * p.dot(M * p);
}

Trajectory ExteriorDynamics::integrate(const BodyState& s0, double T,
                                       double dt) const {
  Trajectory traj;
  Vec3 q = s0.q, p = s0.p;
  double t = s0.t;
  const int nSteps = static_cast<int>(std::llround((T - s0.t) / dt));
  for (int step = 0; step <= nSteps; ++step) {
    Sample smp;
    smp.t = t;
    smp.q = q;
    smp.p = p;
    smp.C = 0.0;
    smp.separation = std::numeric_limits<double>::infinity();
    smp.energy = kineticEnergy(q(0), p);
    traj.samples.push_back(smp);
    if (step == nSteps) break;
    Vec3 k1q = p, k1p = accel(q(0), p);
    Vec3 k2q = p + 0.5 * dt * k1p;
    Vec3 k2p = accel(q(0) + 0.5 * dt * k1q(0), k2q);
    Vec3 k3q = p + 0.5 * dt * k2p;
    Vec3 k3p = accel(q(0) + 0.5 * dt * k2q(0), k3q);
    Vec3 k4q = p + dt * k3p;
    Vec3 k4p = accel(q(0) + dt * k3q(0), k4q);
    q += (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    p += (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    t += dt;
  }
  return traj;
}

PointTrajectory integrate_massive_vortex(const Vec2& h0, const Vec2& l0, double m,
                                         double gamma, const RouthEvaluator& routh,
                                         double T, double dt) {
  PointTrajectory traj;
  Vec2 h = h0, l = l0;
  double t = 0.0;
  const int nSteps = static_cast<int>(std::llround(T / dt));
  auto lrhs = [&](const Vec2& hh, const Vec2& ll) -> Vec2 {
    return (gamma / m) * perp(ll - gamma * routh.uOmega(hh));
  };
  for (int step = 0; step <= nSteps; ++step) {
    traj.t.push_back(t);
    traj.h.push_back(h);
    traj.l.push_back(l);
    traj.energy.push_back(0.5 * m * l.squaredNorm() -
                          gamma * gamma * routh.psiOmega(h));
    if (step == nSteps) break;
    Vec2 k1h = l, k1l = lrhs(h, l);
    Vec2 k2h = l + 0.5 * dt * k1l, k2l = lrhs(h + 0.5 * dt * k1h, k2h);
    Vec2 k3h = l + 0.5 * dt * k2l, k3l = lrhs(h + 0.5 * dt * k2h, k3h);
    Vec2 k4h = l + dt * k3l, k4l = lrhs(h + dt * k3h, k4h);
    h += (dt / 6.0) * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    l += (dt / 6.0) * (k1l + 2.0 * k2l + 2.0 * k3l + k4l);
    t += dt;
  }
  return traj;
}

PointTrajectory integrate_point_vortex(const Vec2& h0, double gamma,
                                       const RouthEvaluator& routh, double T,
                                       double dt) {
  PointTrajectory traj;
  Vec2 h = h0;
  double t = 0.0;
  const int nSteps = static_cast<int>(std::llround(T / dt));
  auto rhs = [&](const Vec2& hh) -> Vec2 { return gamma * routh.uOmega(hh); };
  for (int step = 0; step <= nSteps; ++step) {
    traj.t.push_back(t);
    traj.h.push_back(h);
    traj.l.push_back(rhs(h));
    traj.energy.push_back(gamma * gamma * routh.psiOmega(h));
    if (step == nSteps) break;
    Vec2 k1 = rhs(h);
    Vec2 k2 = rhs(h + 0.5 * dt * k1);
    Vec2 k3 = rhs(h + 0.5 * dt * k2);
    Vec2 k4 = rhs(h + dt * k3);
    h += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
  }
  return traj;
}

}  // namespace bisim
