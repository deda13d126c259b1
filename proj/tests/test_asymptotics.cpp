#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bisim/asymptotics.hpp"

using namespace bisim;

TEST_CASE("log-log slope fit") {
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  std::vector<double> r;
  for (double e : eps) r.push_back(3.0 * e * e);
  CHECK(loglog_slope(eps, r) == doctest::Approx(2.0).epsilon(1e-12));
  r.clear();
  for (double e : eps) r.push_back(0.7 * e);
  CHECK(loglog_slope(eps, r) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("capacity sweep on the concentric annulus is exact") {
  SweepConfig cfg;
  SweepResult r =
      capacity_sweep(Shape::circle(1.0), Shape::circle(1.0), Vec3::Zero(), cfg);
  for (double res : r.residual) CHECK(res < 1e-8);
}

TEST_CASE("capacity sweep on an off-center disk body has a quadratic remainder") {
  SweepConfig cfg;
  SweepResult r = capacity_sweep(Shape::circle(1.0), Shape::circle(1.0),
                                 Vec3(0.0, 0.3, 0.1), cfg);
  CHECK(r.slope > 1.8);
  CHECK(r.slope < 2.2);
}

TEST_CASE("corrector term upgrades the asymmetric-body capacity remainder") {
  Shape star = Shape::fourierStar(1.0, {{2, 0.12, 0.0}, {3, 0.08, 0.05}});
  SweepConfig cfg;
  SweepResult withCorrector =
      capacity_sweep(star, Shape::circle(1.0), Vec3(0.3, 0.25, -0.1), cfg);
  CHECK(withCorrector.slope > 1.8);
  CHECK(withCorrector.slope < 2.2);
}

TEST_CASE("added-mass sweep for an ellipse body") {
  SweepConfig cfg;
  SweepResult r = added_mass_sweep(Shape::ellipse(1.0, 0.5), Shape::circle(1.0),
                                   Vec3(0.4, 0.2, 0.1), cfg);
  CHECK(r.slope > 1.8);
  CHECK(r.slope < 2.2);
}

TEST_CASE("force sweep: leading orders and the B normalization") {
  // the leading-order windows need the first-order coefficients to dominate
  // the quadratic remainder over the grid: mode-2 content keeps the
  // anisotropic coefficients nonzero, a roomy domain knocks one power off
  // the remainder (one more derivative of the Routh function), and the grid
  // starts small enough for the linear term to win at every point
  Shape star = Shape::fourierStar(1.0, {{2, 0.25, 0.0}, {3, 0.1, 0.06}});
  SweepConfig cfg;
  cfg.epsGrid = {0.05, 0.025, 0.0125, 0.00625};
  ForceSweep fs = force_sweep(star, 3.0, Vec3(0.3, 0.9, 0.3), cfg);
  CHECK(fs.eLeading.slope > 0.8);
  CHECK(fs.eLeading.slope < 1.2);
  CHECK(fs.eFirst.slope > 1.8);
  CHECK(fs.eFirst.slope < 2.2);
  CHECK(fs.bLeading.slope > 0.8);
  CHECK(fs.bLeading.slope < 1.2);
  CHECK(std::abs(fs.b1AtFinest + 1.0) < 1e-3);
}

TEST_CASE("case-ii convergence trend on a short horizon") {
  ConvergenceConfig cfg;
  cfg.epsGrid = {0.1, 0.05};
  cfg.T = 1.0;
  cfg.dt = 1e-3;
  cfg.Ncurve = 64;
  ConvergenceResult res = convergence_case_ii(Shape::circle(1.0), 1.0,
                                              Vec2(0.5, 0.0), 1.0, 1.0, 1.0,
                                              2.0, cfg);
  REQUIRE(res.distance.value.size() == 2);
  CHECK(res.distance.value[1] < res.distance.value[0]);
  CHECK(res.distance.value[1] < 0.05);
}
