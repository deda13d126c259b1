#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bisim/scenario.hpp"

using namespace bisim;

TEST_CASE("shape spec parsing") {
  CHECK(parse_shape("circle:0.7").kind() == Shape::Kind::Circle);
  CHECK(parse_shape("ellipse:2,1").radiusA() == doctest::Approx(2.0));
  Shape star = parse_shape("fourier-star:1;3,0.08,0.05;4,0.05,0");
  CHECK(star.kind() == Shape::Kind::FourierStar);
  CHECK_THROWS_AS(parse_shape("square:1"), ConfigError);
  CHECK_THROWS_AS(parse_shape("circle:abc"), ConfigError);
  CHECK_THROWS_AS(parse_shape("ellipse:2"), ConfigError);
}

TEST_CASE("config parsing with sections, comments, and overrides") {
  auto dir = std::filesystem::temp_directory_path() / "bisim_test_cfg";
  std::filesystem::create_directories(dir);
  auto path = (dir / "scenario.cfg").string();
  {
    std::ofstream out(path);
    out << "# scenario file\n"
        << "[body]\n"
        << "shape = ellipse:1.5,0.8\n"
        << "eps = 0.25\n"
        << "[outer]\n"
        << "shape = circle:1\n"
        << "[dynamics]\n"
        << "gamma = 2.5   # trailing comment\n"
        << "q0 = 0.1, 0.2, -0.3\n"
        << "p0 = 0, 0.4, 0\n"
        << "regime = case-ii\n"
        << "alpha = 1.5\n"
        << "[sweep]\n"
        << "eps_grid = 0.2, 0.1, 0.05\n";
  }
  auto kv = read_config(path);
  Scenario sc = scenario_from_config(kv);
  CHECK(sc.bodySpec == "ellipse:1.5,0.8");
  CHECK(sc.eps == doctest::Approx(0.25));
  CHECK(sc.gamma == doctest::Approx(2.5));
  CHECK(sc.q0.isApprox(Vec3(0.1, 0.2, -0.3)));
  CHECK(sc.p0(1) == doctest::Approx(0.4));
  CHECK(sc.regime == "case-ii");
  CHECK(sc.massRegime().kind == MassRegime::Kind::CaseII);
  CHECK(sc.massRegime().alpha == doctest::Approx(1.5));
  REQUIRE(sc.epsGrid.size() == 3);
  CHECK(sc.epsGrid[2] == doctest::Approx(0.05));

  // flag-style override on top of the file
  kv["dynamics.gamma"] = "1.0";
  CHECK(scenario_from_config(kv).gamma == doctest::Approx(1.0));

  CHECK_THROWS_AS(read_config((dir / "missing.cfg").string()), ConfigError);
}

TEST_CASE("CSV output is deterministic and round-trips") {
  Trajectory traj;
  for (int i = 0; i < 3; ++i) {
    Sample s;
    s.t = 1e-3 * i;
    s.q = Vec3(0.1 * i, 0.2, 0.3);
    s.p = Vec3(0.0, 1.0 / 3.0, -2.0 / 7.0);
    s.energy = -0.123456789012345678;
    s.C = -0.5;
    s.separation = 0.7;
    traj.samples.push_back(s);
  }
  auto dir = std::filesystem::temp_directory_path() / "bisim_test_csv";
  std::filesystem::create_directories(dir);
  auto p1 = (dir / "a.csv").string();
  auto p2 = (dir / "b.csv").string();
  write_trajectory_csv(p1, traj);
  write_trajectory_csv(p2, traj);
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().substr(0, 49) ==
        "t,theta,h1,h2,omega,l1,l2,energy,C_eps,separation");

  // shortest-round-trip formatting preserves the value exactly
  double v = 1.0 / 3.0;
  CHECK(std::stod(format_double(v)) == v);
}
