// Acceptance harness: one pass/fail line per criterion, exit 0 iff all pass.
//
// Each criterion is self-contained and pins its own geometry, discretization,
// tolerances, and (where relevant) runtime budget.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>

#include "bisim/asymptotics.hpp"
#include "bisim/verify.hpp"

using namespace bisim;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void line(int id, bool pass, const std::string& what,
          const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion-%d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// 1. concentric annulus, body radius eps=0.1 in the unit disk:
//    C = ln(eps)/(2 pi) = -ln(10)/(2 pi)
void criterion1() {
  Timer t;
  BoundedSolver solver(Shape::circle(1.0), Shape::circle(1.0), 256, 256, 0.1);
  double C = solver.capacityAt(Vec3::Zero());
  double exact = -std::log(10.0) / (2.0 * kPi);
  double rel = std::abs(C - exact) / std::abs(exact);
  double sec = t.seconds();
  line(1, rel < 1e-8 && sec < 5.0, "annulus condenser capacity",
       fmt("rel=%.2e tol=1e-8, %.2f s budget 5 s", rel, sec));
}

// 2. exterior-plane constants against the circle and ellipse closed forms
void criterion2() {
  double a = 1.3;
  ExteriorConstants circ = exterior_constants(Shape::circle(a), 512);
  Mat3 maCircle = Mat3::Zero();
  maCircle(1, 1) = maCircle(2, 2) = kPi * a * a;
  double rCirc = std::max(std::abs(circ.cap - a),
                          (circ.MaExt - maCircle).cwiseAbs().maxCoeff());

  ExteriorConstants ell = exterior_constants(Shape::ellipse(2.0, 1.0), 512);
  Mat3 maEll = Mat3::Zero();
  maEll(0, 0) = kPi * 9.0 / 8.0;   // rotation: pi (a^2 - b^2)^2 / 8
  maEll(1, 1) = kPi;               // along the major axis: pi b^2
  maEll(2, 2) = 4.0 * kPi;         // along the minor axis: pi a^2
  double rCap = std::abs(ell.cap - 1.5);
  double rMa = (ell.MaExt - maEll).cwiseAbs().maxCoeff();

  bool pass = rCirc < 1e-8 && rCap < 1e-8 && rMa < 1e-6;
  line(2, pass, "exterior constants: circle and ellipse(2,1)",
       fmt("circle=%.2e tol=1e-8, ellipse cap=%.2e tol=1e-8, "
           "ellipse Ma=%.2e tol=1e-6",
           rCirc, rCap, rMa));
}

// 3. conformal center: boundary-moment formula vs complex contour integral
void criterion3() {
  ExteriorConstants c = exterior_constants(
      Shape::fourierStar(1.0, {{2, 0.12, 0.0}, {3, 0.08, 0.05}}), 512);
  double r = (c.zeta - c.zetaDual).norm();
  line(3, r < 1e-8, "conformal-center dual formulas on a fourier star",
       fmt("diff=%.2e tol=1e-8, |zeta|=%.3f", r, c.zeta.norm()));
}

// 4. randomized identity suite at eps=0.3: capacity gradient, Christoffel
//    split, skew symmetry, Lamb residuals, conjugate-moment symmetrization
void criterion4() {
  Timer t;
  VerifyOptions opts;  // 10 samples, fixed seed, N=128
  auto checks =
      identity_suite(Shape::fourierStar(1.0, {{3, 0.08, 0.05}}),
                     Shape::circle(1.0), opts);
  double sec = t.seconds();
  std::string worst;
  bool pass = true;
  for (const auto& c : checks) {
    if (!c.pass) {
      pass = false;
      worst += (worst.empty() ? "" : ", ") + c.name;
    }
  }
  pass = pass && sec < 120.0;
  line(4, pass, "identity suite at 10 seeded placements",
       pass ? fmt("%zu checks, %.1f s budget 120 s", checks.size(), sec)
            : fmt("failing: %s, %.1f s", worst.c_str(), sec));
}

// 5. full-system energy conservation on a T=10 run, plus fourth-order decay
//    of the drift under dt halving (mass chosen small so that the truncation
//    error sits above the roundoff floor of the boundary solves)
void criterion5() {
  FullDynamics dyn(Shape::circle(1.0), Shape::circle(1.0), 64, 64, 0.3);
  BodyState s0;
  s0.q = Vec3(0.0, 0.2, 0.0);
  s0.p = Vec3(0.0, 0.3, 0.0);
  SimParams params;
  params.T = 10.0;
  params.gamma = 1.0;
  params.recordEvery = 100;
  params.regime.m = 0.01;
  params.regime.J = 1.0;

  params.dt = 1e-3;
  Trajectory coarse = dyn.integrate(s0, params);
  params.dt = 5e-4;
  Trajectory fine = dyn.integrate(s0, params);

  bool finished = coarse.termination == Termination::TimeReached &&
                  fine.termination == Termination::TimeReached;
  double d1 = coarse.maxEnergyDrift();
  double d2 = fine.maxEnergyDrift();
  double ratio = d1 / d2;
  bool pass = finished && d1 < 1e-6 && ratio >= 8.0;
  line(5, pass, "energy conservation and dt-halving gain",
       fmt("drift=%.2e tol=1e-6, halving gain=%.1fx need 8x", d1, ratio));
}

// 6. exact dilation covariance of the exterior-plane objects
void criterion6() {
  auto checks = scaling_suite(
      Shape::fourierStar(1.0, {{2, 0.1, 0.0}, {3, 0.06, 0.03}}), 256, 0.5);
  bool pass = all_pass(checks);
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.residual);
  line(6, pass, "dilation covariance of inertia, Christoffel, force",
       fmt("worst residual=%.2e tol=1e-9", worst));
}

// 7. capacity remainder after the four-term model on an asymmetric body
void criterion7() {
  SweepConfig cfg;  // grid {0.2, 0.1, 0.05, 0.025}
  SweepResult r = capacity_sweep(
      Shape::fourierStar(1.0, {{2, 0.12, 0.0}, {3, 0.08, 0.05}}),
      Shape::circle(1.0), Vec3(0.3, 0.25, -0.1), cfg);
  bool pass = r.slope > 1.8 && r.slope < 2.2;
  line(7, pass, "capacity-model remainder order on an asymmetric body",
       fmt("slope=%.3f window [1.8, 2.2]", r.slope));
}

// 8. added-mass remainder order; force-field leading order; normalized
//    rotational component of the rescaled B field at eps=0.025
void criterion8() {
  SweepConfig cfgMa;  // grid {0.2, 0.1, 0.05, 0.025}
  SweepResult ma = added_mass_sweep(Shape::ellipse(1.0, 0.5),
                                    Shape::circle(1.0), Vec3(0.4, 0.2, 0.1),
                                    cfgMa);

  SweepConfig cfgF;
  cfgF.epsGrid = {0.05, 0.025, 0.0125, 0.00625};
  ForceSweep fs = force_sweep(
      Shape::fourierStar(1.0, {{2, 0.25, 0.0}, {3, 0.1, 0.06}}), 3.0,
      Vec3(0.3, 0.9, 0.3), cfgF);
  double b1At025 = 0.0;
  for (std::size_t i = 0; i < fs.bLeading.eps.size(); ++i)
    if (std::abs(fs.bLeading.eps[i] - 0.025) < 1e-12)
      b1At025 = fs.bLeading.value[i];

  bool pass = ma.slope > 1.8 && ma.slope < 2.2 && fs.eLeading.slope > 0.8 &&
              fs.eLeading.slope < 1.2 && std::abs(b1At025 + 1.0) < 1e-3;
  line(8, pass, "added-mass and force-field expansion orders",
       fmt("Ma slope=%.3f window [1.8, 2.2], E slope=%.3f window [0.8, 1.2], "
           "B1(0.025)=%.6f tol 1e-3 of -1",
           ma.slope, fs.eLeading.slope, b1At025));
}

// 9. point-vortex orbit oracle in the unit disk and energy conservation of
//    both limit integrators
void criterion9() {
  const double R = 1.0, gamma = 1.0;
  const Vec2 h0(0.5, 0.0);
  DiskRouth routh(R);
  const double period = 4.0 * kPi * kPi * (R * R - h0.squaredNorm()) / gamma;
  PointTrajectory pv = integrate_point_vortex(h0, gamma, routh, period, 1e-4);

  double maxR = 0.0, maxEii = 0.0;
  for (std::size_t i = 0; i < pv.h.size(); ++i) {
    maxR = std::max(maxR, std::abs(pv.h[i].norm() - h0.norm()));
    maxEii = std::max(maxEii, std::abs(pv.energy[i] - pv.energy.front()));
  }
  double relEii = maxEii / std::abs(pv.energy.front());
  // period from the return angle of the final sample
  Vec2 hT = pv.h.back();
  double rate = gamma * routh.uOmega(h0).norm() / h0.norm();
  double relPeriod = std::abs(std::atan2(hT.y(), hT.x())) / rate / period;

  PointTrajectory mv = integrate_massive_vortex(
      Vec2(0.3, 0.0), Vec2(0.0, 0.2), 1.0, gamma, routh, 3.0, 1e-3);
  double maxEi = 0.0;
  for (double e : mv.energy)
    maxEi = std::max(maxEi, std::abs(e - mv.energy.front()));
  double relEi = maxEi / std::abs(mv.energy.front());

  bool pass = maxR < 1e-9 && relPeriod < 1e-4 && relEii < 1e-8 && relEi < 1e-8;
  line(9, pass, "point-vortex orbit oracle and limit-integrator energies",
       fmt("radius=%.1e tol=1e-9, period rel=%.1e tol=1e-4, "
           "E(ii)=%.1e E(i)=%.1e tol=1e-8",
           maxR, relPeriod, relEii, relEi));
}

// 10. trajectory convergence to the limit systems as the body shrinks;
//     windowed velocity tracking is reported as a diagnostic only
void criterion10() {
  Timer t2;
  ConvergenceConfig cfg2;  // grid {0.1, 0.05, 0.025}, T=5
  ConvergenceResult caseII = convergence_case_ii(
      Shape::circle(1.0), 1.0, Vec2(0.5, 0.0), 1.0, 1.0, 1.0, 2.0, cfg2);
  double sec2 = t2.seconds();

  Timer t1;
  ConvergenceConfig cfg1;
  cfg1.T = 3.0;
  ConvergenceResult caseI =
      convergence_case_i(Shape::circle(1.0), 1.0, Vec2(0.5, 0.0),
                         Vec2(0.0, 0.2), 1.0, 1.0, 1.0, cfg1);
  double sec1 = t1.seconds();

  auto decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] >= v[i - 1]) return false;
    return true;
  };
  bool pass = decreasing(caseII.distance.value) &&
              caseII.distance.value.back() < 0.05 &&
              decreasing(caseI.distance.value) && sec2 < 1800.0 &&
              sec1 < 1800.0;
  line(10, pass, "shrink-limit trajectory convergence (both regimes)",
       fmt("case-ii dist=[%.4f, %.4f, %.4f] final tol 0.05, "
           "case-i dist=[%.4f, %.4f, %.4f], %.0f+%.0f s budget 1800 s each",
           caseII.distance.value[0], caseII.distance.value[1],
           caseII.distance.value[2], caseI.distance.value[0],
           caseI.distance.value[1], caseI.distance.value[2], sec2, sec1));
  std::printf(
      "  diagnostic: case-ii windowed velocity gap=[%.4f, %.4f, %.4f], "
      "eps*omega sup=[%.2e, %.2e, %.2e]\n",
      caseII.windowVelErr[0], caseII.windowVelErr[1], caseII.windowVelErr[2],
      caseII.epsOmegaSup[0], caseII.epsOmegaSup[1], caseII.epsOmegaSup[2]);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "PASS" : "FAIL",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
