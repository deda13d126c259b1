#pragma once

// Randomized identity suite and algebraic scaling checks, shared by the CLI
// front end and the acceptance tests.

#include <string>
#include <vector>

#include "bisim/fluid_quantities.hpp"

namespace bisim {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  double eps = 0.3;
  int samples = 10;
  unsigned seed = 20240817;
  int Nbody = 128;
  int Nouter = 128;
  double minSeparation = 0.1;
  double tolScale = 1.0;  // multiplies every tolerance (for demo failures)
};

// Randomized structural identities of the bounded-domain solver plus the
// shape-level dual-formula checks. Residuals are maxima over the samples.
std::vector<CheckResult> identity_suite(const Shape& body, const Shape& outer,
                                        const VerifyOptions& opts);

// Exact scale covariance of the exterior-plane objects under dilation.
std::vector<CheckResult> scaling_suite(const Shape& body, int N,
                                       double lambda = 0.5,
                                       double tolScale = 1.0);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace bisim
