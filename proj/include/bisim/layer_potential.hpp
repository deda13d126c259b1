#pragma once

// Discrete single-layer machinery on closed curves: Nystrom matrices with a
// Kress-type product quadrature for the periodic log singularity, coupled
// body+outer solves (circulation and Kirchhoff-conjugate problems), and the
// exterior-plane problems on the body curve alone.
//
// Matrix convention: all operators act on "charge" vectors q_i = w_i * p_i
// where p is the boundary density. This keeps self-matrices symmetric and
// turns flux constraints into plain sums.

#include <Eigen/Dense>
#include <optional>

#include "bisim/geometry.hpp"

namespace bisim {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Single-layer potential at the curve's own nodes (log singularity handled by
// the Kress/Martensen split). Symmetric.
MatX sl_self_matrix(const DiscreteCurve& c);

// Plain trapezoid single-layer matrix between distinct curves.
MatX sl_cross_matrix(const DiscreteCurve& source, const DiscreteCurve& target);

// Fluid-side normal derivative of the single layer at the curve's own nodes:
// adjoint-double-layer part (smooth kernel) plus the +p/2 jump toward the
// fluid side (the side opposite the stored normal's target region).
MatX sl_dn_self_matrix(const DiscreteCurve& c);

// Normal derivative at target nodes of the single layer on a distinct source.
MatX sl_dn_cross_matrix(const DiscreteCurve& source, const DiscreteCurve& target);

// Off-curve evaluation (value, gradient, Hessian) of SL[charge] at x.
struct PointEval {
  double value = 0.0;
  Vec2 grad = Vec2::Zero();
  Mat2 hess = Mat2::Zero();
};
PointEval eval_sl(const DiscreteCurve& source, const VecX& charge, const Vec2& x);

// Spectral antiderivative of equispaced samples of a zero-mean 2pi-periodic
// function; returns node values with zero mean.
VecX periodic_antiderivative(const VecX& f);

// ---------------------------------------------------------------------------
// Coupled solves on body + outer boundary

struct CirculationSolution {
  double C = 0.0;       // potential level on the body
  VecX bodyDensity;     // = dpsi/dn on the body (normal out of the fluid)
  VecX outerDensity;
  VecX bodyCharge, outerCharge;
  double residual = 0.0;
};

struct KirchhoffSolution {
  // row j-1 holds the trace for potential j = 1,2,3
  MatX bodyDtau;   // dphi_j/dtau at body nodes
  MatX outerDtau;  // dphi_j/dtau at outer nodes
  MatX bodyPhi;    // phi_j at body nodes, zero arclength mean
  Vec3 c = Vec3::Zero();  // conjugate Dirichlet constants
  double conjugacyResidual = 0.0;  // worst net tangential circulation
};

// Assembles the square system (charges on both curves + one constant) once
// and shares the factorization between the circulation and the three
// Kirchhoff right-hand sides at the same configuration.
class CoupledOperator {
 public:
  // Self matrices may be supplied from a cache (they are rigid-motion
  // invariant at fixed scale); otherwise they are assembled here.
  CoupledOperator(const DiscreteCurve& placedBody, const DiscreteCurve& outer,
                  const MatX* bodySelf = nullptr, const MatX* outerSelf = nullptr);

  // SL = C on body (C unknown), SL = 0 on outer, total body charge = -1.
  CirculationSolution circulation() const;

  // Conjugate Dirichlet problems for the Kirchhoff potentials at q=(theta,h).
  KirchhoffSolution kirchhoff(double theta, const Vec2& h) const;

  const DiscreteCurve& body() const { return body_; }
  const DiscreteCurve& outer() const { return outer_; }
  double residual(const VecX& solution, const VecX& rhs) const;

 private:
  // solves with body Dirichlet data g (plus unknown constant), outer data 0,
  // prescribed total body charge
  VecX solveOne(const VecX& bodyData, double bodyFlux, double* resOut) const;

  DiscreteCurve body_, outer_;
  MatX system_;
  Eigen::PartialPivLU<MatX> lu_;
  MatX dnBodyFromBody_, dnBodyFromOuter_;    // fluid-side d/dn at body nodes
  MatX dnOuterFromOuter_, dnOuterFromBody_;  // fluid-side d/dn at outer nodes
};

// ---------------------------------------------------------------------------
// Exterior-plane problems on the body curve alone

struct ExteriorEquilibrium {
  double C = 0.0;    // constant boundary value, flux -1
  double cap = 0.0;  // logarithmic capacity exp(2 pi C)
  VecX density;      // equilibrium density = dpsi/dn
  VecX charge;
  double residual = 0.0;
};

struct ExteriorKirchhoff {
  MatX bodyPhi;    // phi_j at nodes, zero arclength mean (rows j = 1..3)
  MatX bodyDtau;   // dphi_j/dtau
  MatX bodyDn;     // dphi_j/dn (equals the rigid traces K_j analytically)
  MatX conjPhiBar; // conjugate trace values K1bar etc. minus nothing: phibar_j nodes
  MatX conjDnBar;  // fluid-side dphibar_j/dn
  Vec3 c = Vec3::Zero();  // decay constants
};

ExteriorEquilibrium solve_exterior_equilibrium(const DiscreteCurve& body);
ExteriorKirchhoff solve_exterior_kirchhoff(const DiscreteCurve& body);

// ---------------------------------------------------------------------------
// Interior Dirichlet solver on the outer curve (for the Kirchhoff-Routh
// objects in general domains)

class InteriorDirichlet {
 public:
  InteriorDirichlet(const DiscreteCurve& outer, const MatX* outerSelf = nullptr);
  // solve SL[charge] = g at the outer nodes; returns an evaluator handle
  VecX solve(const VecX& g) const;
  PointEval evaluate(const VecX& charge, const Vec2& x) const;
  const DiscreteCurve& curve() const { return outer_; }

 private:
  DiscreteCurve outer_;
  Eigen::PartialPivLU<MatX> lu_;
  double kernelScale_ = 1.0;
};

}  // namespace bisim
