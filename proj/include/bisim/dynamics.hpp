#pragma once

// Time integration of the rigid-body ODE: the full bounded-domain system, the
// unbounded-plane system, and the two vanishing-body limit systems.

#include <string>
#include <vector>

#include "bisim/fluid_quantities.hpp"

namespace bisim {

struct BodyState {
  double t = 0.0;
  Vec3 q = Vec3::Zero();  // (theta, h1, h2)
  Vec3 p = Vec3::Zero();  // (omega, l1, l2)
};

enum class Termination { TimeReached, CollisionGuard, SolverFailure };

struct Sample {
  double t;
  Vec3 q, p;
  double energy, C, separation;
};

struct Trajectory {
  std::vector<Sample> samples;
  Termination termination = Termination::TimeReached;
  std::string message;

  double maxEnergyDrift() const;  // max |E - E0| / |E0|
  double minSeparation() const;
};

enum class Scheme { RK4Fixed, RK45Adaptive };

struct SimParams {
  Scheme scheme = Scheme::RK4Fixed;
  double dt = 1e-3;
  double tolerance = 1e-9;  // RK45 local error target
  double T = 10.0;
  double deltaStop = 0.0;  // 0: use 3x body node spacing
  double gamma = 1.0;
  MassRegime regime;
  int recordEvery = 1;
};

// Full system: M(q) p' + <Gamma(q), p, p> = F(q, p), q' = p.
class FullDynamics {
 public:
  FullDynamics(const Shape& body, const Shape& outer, int Nbody, int Nouter,
               double eps)
      : solver_(body, outer, Nbody, Nouter, eps) {}

  const BoundedSolver& solver() const { return solver_; }

  // acceleration from a fresh boundary solve at q
  Vec3 accel(const Vec3& q, const Vec3& p, double gamma,
             const MassRegime& regime,
             BoundedSolver::Snapshot* snapOut = nullptr) const;

  Trajectory integrate(const BodyState& s0, const SimParams& params) const;

 private:
  BoundedSolver solver_;
};

// Unbounded plane: closed-form coefficients, no boundary solve at runtime.
class ExteriorDynamics {
 public:
  ExteriorDynamics(ExteriorConstants constants, double m, double J, double gamma)
      : c_(std::move(constants)), m_(m), J_(J), gamma_(gamma) {}

  Vec3 accel(double theta, const Vec3& p) const;
  double kineticEnergy(double theta, const Vec3& p) const;
  Trajectory integrate(const BodyState& s0, double T, double dt) const;

 private:
  const ExteriorConstants c_;
  double m_, J_, gamma_;
};

// Limit system of the heavy regime: m h'' = gamma (h' - gamma uOmega(h))-perp.
struct PointTrajectory {
  std::vector<double> t;
  std::vector<Vec2> h;
  std::vector<Vec2> l;
  std::vector<double> energy;
};

PointTrajectory integrate_massive_vortex(const Vec2& h0, const Vec2& l0, double m,
                                         double gamma, const RouthEvaluator& routh,
                                         double T, double dt);

// Point-vortex limit: h' = gamma uOmega(h).
PointTrajectory integrate_point_vortex(const Vec2& h0, double gamma,
                                       const RouthEvaluator& routh, double T,
                                       double dt);

}  // namespace bisim
