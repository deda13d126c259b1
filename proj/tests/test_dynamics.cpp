#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bisim/dynamics.hpp"

using namespace bisim;
constexpr double kPi = std::numbers::pi;

TEST_CASE("point-vortex integrator: circular orbit oracle") {
  const double R = 1.0, gamma = 1.0;
  const Vec2 h0(0.5, 0.0);
  DiskRouth routh(R);
  const double period = 4.0 * kPi * kPi * (R * R - h0.squaredNorm()) / gamma;
  PointTrajectory traj = integrate_point_vortex(h0, gamma, routh, period, 1e-4);

  double r0 = h0.norm(), e0 = traj.energy.front();
  double maxR = 0.0, maxE = 0.0;
  for (std::size_t i = 0; i < traj.h.size(); ++i) {
    maxR = std::max(maxR, std::abs(traj.h[i].norm() - r0));
    maxE = std::max(maxE, std::abs(traj.energy[i] - e0));
  }
  CHECK(maxR < 1e-9);
  CHECK(maxE / std::abs(e0) < 1e-10);

  // measure the period from the return angle of the final sample
  Vec2 hT = traj.h.back();
  double angle = std::atan2(hT.y(), hT.x());
  double speed = gamma * routh.uOmega(h0).norm() / h0.norm();  // angular rate
  double periodError = std::abs(angle) / speed;
  CHECK(periodError / period < 1e-4);
}

TEST_CASE("massive-vortex integrator conserves its energy") {
  DiskRouth routh(1.0);
  PointTrajectory traj = integrate_massive_vortex(
      Vec2(0.3, 0.0), Vec2(0.0, 0.2), 1.0, 1.0, routh, 3.0, 1e-3);
  double e0 = traj.energy.front();
  for (double e : traj.energy) CHECK(std::abs(e - e0) < 1e-8 * std::abs(e0));
}

TEST_CASE("exterior dynamics: Kutta-Joukowski gyration of a disk") {
  ExteriorConstants c = exterior_constants(Shape::circle(1.0), 128);
  ExteriorDynamics dyn(c, 1.0, 1.0, 2.0);
  BodyState s0;
  s0.p = Vec3(0.0, 0.5, 0.0);
  Trajectory traj = dyn.integrate(s0, 5.0, 1e-3);
  double e0 = traj.samples.front().energy;
  for (const Sample& s : traj.samples) {
    // speed is preserved by the gyroscopic lift
    CHECK(s.p.tail<2>().norm() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(std::abs(s.energy - e0) < 1e-10);
  }
  // gyration frequency gamma / (m + pi a^2)
  double omega = 2.0 / (1.0 + kPi);
  Vec2 lT = traj.samples.back().p.tail<2>();
  Vec2 expected = rot2(omega * 5.0) * Vec2(0.5, 0.0);
  CHECK((lT - expected).norm() < 1e-6);
}

TEST_CASE("full dynamics conserves energy on a short run") {
  FullDynamics dyn(Shape::circle(1.0), Shape::circle(1.0), 64, 64, 0.3);
  BodyState s0;
  s0.p = Vec3(0.0, 0.3, 0.0);
  SimParams params;
  params.dt = 1e-3;
  params.T = 1.0;
  params.gamma = 1.0;
  params.recordEvery = 10;
  Trajectory traj = dyn.integrate(s0, params);
  CHECK(traj.termination == Termination::TimeReached);
  CHECK(traj.maxEnergyDrift() < 1e-8);
}

TEST_CASE("collision guard stops a body aimed at the wall") {
  FullDynamics dyn(Shape::circle(1.0), Shape::circle(1.0), 64, 64, 0.3);
  BodyState s0;
  s0.p = Vec3(0.0, 0.5, 0.0);
  SimParams params;
  params.dt = 2e-3;
  params.T = 10.0;
  params.gamma = 0.0;  // no lift: straight line into the wall
  Trajectory traj = dyn.integrate(s0, params);
  CHECK(traj.termination == Termination::CollisionGuard);
  // guard distance: three spacings of the coarser curve (outer, N=64)
  CHECK(traj.minSeparation() < 3.0 * 2.0 * std::numbers::pi / 64.0);
}

TEST_CASE("rotation symmetry: gyration direction flips with circulation") {
  FullDynamics dyn(Shape::circle(1.0), Shape::circle(1.0), 64, 64, 0.3);
  SimParams params;
  params.dt = 2e-3;
  params.T = 0.5;
  params.recordEvery = 250;
  BodyState s0;
  s0.p = Vec3(0.0, 0.2, 0.0);
  params.gamma = 1.0;
  Vec2 hPlus = dyn.integrate(s0, params).samples.back().q.tail<2>();
  params.gamma = -1.0;
  Vec2 hMinus = dyn.integrate(s0, params).samples.back().q.tail<2>();
  CHECK(hPlus.x() == doctest::Approx(hMinus.x()).epsilon(1e-9));
  CHECK(hPlus.y() == doctest::Approx(-hMinus.y()).epsilon(1e-9));
}
