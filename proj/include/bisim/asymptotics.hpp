#pragma once

// Shrink-limit experiments: sweeps over the body scale that compare measured
// quantities against their expansion models, and trajectory-convergence runs
// against the two limit systems.

#include <string>
#include <vector>

#include "bisim/dynamics.hpp"

namespace bisim {

struct SweepResult {
  std::string label;
  std::vector<double> eps;       // strictly decreasing grid
  std::vector<double> value;     // measured quantity
  std::vector<double> model;     // expansion model prediction
  std::vector<double> residual;  // |value - model|
  double slope = 0.0;            // log-log slope of residual vs eps
  bool monotone = false;         // residual strictly decreasing over the grid
};

// least-squares slope of ln(r) against ln(eps)
double loglog_slope(const std::vector<double>& eps,
                    const std::vector<double>& r);

struct SweepConfig {
  std::vector<double> epsGrid{0.2, 0.1, 0.05, 0.025};
  int Nbody = 128;
  int Nouter = 128;
  int Nexterior = 256;
};

// C^eps against (1/2pi) ln eps + C0 + 2 psiOmega(h) + 2 eps psiC(q).
SweepResult capacity_sweep(const Shape& body, const Shape& outer, const Vec3& q,
                           const SweepConfig& cfg);

// || eps^-2 Ieps^-1 Ma^eps Ieps^-1 - Ma_ext(theta) ||.
SweepResult added_mass_sweep(const Shape& body, const Shape& outer,
                             const Vec3& q, const SweepConfig& cfg);

struct ForceSweep {
  SweepResult eLeading;  // || Ieps^-1 E - E0 ||, order eps
  SweepResult eFirst;    // after subtracting eps E1, order eps^2
  SweepResult bLeading;  // || eps^-1 Ieps B - Bext(theta) ||, order eps
  SweepResult bFirst;    // after subtracting eps B1, order eps^2
  double b1AtFinest = 0.0;  // first component of eps^-1 Ieps B at smallest eps
};

// requires a circular outer boundary (closed-form stream derivatives)
ForceSweep force_sweep(const Shape& body, double R, const Vec3& q,
                       const SweepConfig& cfg);

struct ConvergenceResult {
  SweepResult distance;               // sup_t |h^eps - h_limit|
  std::vector<double> epsOmegaSup;    // sup_t eps |omega^eps|
  std::vector<double> windowVelErr;   // sup over windows of |mean(l) - gamma uOmega(h_lim)|
  PointTrajectory limit;
  std::vector<Trajectory> runs;       // sorted by the eps grid
};

struct ConvergenceConfig {
  std::vector<double> epsGrid{0.1, 0.05, 0.025};
  int Ncurve = 96;
  double T = 5.0;
  double dt = 1e-3;
  double dtLimit = 1e-4;
  double window = 0.5;  // sliding-window width for the velocity diagnostic
  int recordEvery = 5;
};

// heavy regime: m^eps = m, J^eps = eps^2 J1; limit m h'' = gamma perp(h' - gamma uOmega)
ConvergenceResult convergence_case_i(const Shape& body, double R,
                                     const Vec2& h0, const Vec2& l0,
                                     double gamma, double m, double J1,
                                     const ConvergenceConfig& cfg);

// light regime: m^eps = eps^alpha m1, J^eps = eps^(alpha+2) J1; limit h' = gamma uOmega
ConvergenceResult convergence_case_ii(const Shape& body, double R,
                                      const Vec2& h0, double gamma, double m1,
                                      double J1, double alpha,
                                      const ConvergenceConfig& cfg);

}  // namespace bisim
