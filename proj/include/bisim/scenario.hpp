#pragma once

// Scenario configuration (flat key-value file with [section] tables), shape
// string parsing, and deterministic CSV emission for the command-line tool.

#include <map>
#include <string>
#include <vector>

#include "bisim/asymptotics.hpp"

namespace bisim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "circle:1", "ellipse:2,1", "fourier-star:1;3,0.08,0.05;4,0.05,0"
// (fourier-star: mean radius, then k,cosAmp,sinAmp triples)
Shape parse_shape(const std::string& spec);

struct Scenario {
  std::string bodySpec = "circle:1";
  std::string outerSpec = "circle:1";
  double eps = 0.1;
  Vec3 q0 = Vec3::Zero();
  Vec3 p0 = Vec3::Zero();
  double gamma = 1.0;
  std::string regime = "fixed";  // fixed | case-i | case-ii
  double m = 1.0;
  double J = 1.0;
  double alpha = 2.0;
  double dt = 1e-3;
  double T = 10.0;
  double deltaStop = 0.0;
  int recordEvery = 1;
  int Nbody = 128;
  int Nouter = 128;
  std::vector<double> epsGrid{0.2, 0.1, 0.05, 0.025};
  std::string outputDir = ".";
  unsigned seed = 20240817;

  Shape body() const { return parse_shape(bodySpec); }
  Shape outer() const { return parse_shape(outerSpec); }
  MassRegime massRegime() const;
};

// section.key -> value map from a config file; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path);
Scenario scenario_from_config(const std::map<std::string, std::string>& kv);

// deterministic shortest round-trip formatting
std::string format_double(double v);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepResult>& results);

}  // namespace bisim
