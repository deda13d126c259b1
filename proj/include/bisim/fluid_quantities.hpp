#pragma once

// Inertia matrices, Christoffel contractions, force fields, energies,
// exterior-plane shape constants, and Kirchhoff-Routh objects, all built from
// boundary traces.

#include <functional>
#include <memory>

#include "bisim/geometry.hpp"
#include "bisim/layer_potential.hpp"

namespace bisim {

using Mat3K = Eigen::Matrix<double, 3, Eigen::Dynamic>;

// (M_a)_{jk} = integral over the body of phi_j K_k ds; symmetrized by
// averaging, the measured asymmetry is reported through *asym if given.
Mat3 added_mass(const MatX& bodyPhi, const Mat3K& K, const VecX& w,
                double* asym = nullptr);

// Christoffel contraction from the solid rotation:
// -(0, P_a) x p - omega M_a (0, perp(l)), P_a = translational rows of M_a p.
Vec3 christoffel_S(const Mat3& Ma, const Vec3& p);

// Outer-boundary Christoffel contraction from the tangential Kirchhoff
// traces on the outer curve.
Vec3 christoffel_boundary(const MatX& outerDtau, const Mat3K& Kouter,
                          const VecX& wOuter, const Vec3& p);

// Central-difference Christoffel oracle built from an added-mass evaluator
// over q = (theta, h1, h2).
Vec3 christoffel_fd(const std::function<Mat3(const Vec3&)>& MaAt, const Vec3& q,
                    const Vec3& p, double step = 1e-4);

// E = -1/2 integral |dpsi/dn|^2 K ds over the body.
Vec3 force_E(const VecX& bodyDn, const Mat3K& K, const VecX& w);

// B = integral (dpsi/dn) (K x dphi/dtau) ds over the body.
Vec3 force_B(const VecX& bodyDn, const Mat3K& K, const MatX& bodyDtau,
             const VecX& w);

// F = gamma^2 E + gamma p x B.
Vec3 force_total(const Vec3& p, const Vec3& E, const Vec3& B, double gamma);

// Total energy 1/2 M p.p - 1/2 gamma^2 C.
double energy(const Mat3& M, const Vec3& p, double C, double gamma);

// ---------------------------------------------------------------------------

// Shape-only constants of the body in the unbounded plane.
struct ExteriorConstants {
  double cap = 0.0;        // logarithmic capacity
  double C0 = 0.0;         // constant potential level, C0 = (1/2pi) ln cap
  Vec2 zeta = Vec2::Zero();      // conformal center (boundary moment)
  Vec2 zetaDual = Vec2::Zero();  // same object via the complex contour integral
  Mat3 MaExt = Mat3::Zero();     // added inertia in the plane
  double mSharp = 0.0;           // rotational entry of MaExt
  Vec2 mu = Vec2::Zero();        // coupling column
  Mat2 Mflat = Mat2::Zero();     // translational block
  Mat2 Mdagger = Mat2::Zero();   // traceless symmetric part of Mflat * perp
  Mat2 Mbar = Mat2::Zero();      // conjugate-trace moment matrix
  Mat2 sigma = Mat2::Zero();     // capacity variance
  Mat2 sigmaS = Mat2::Zero();    // its symmetric part
  Mat2 T2 = Mat2::Zero();        // second moment of the equilibrium density
  double addedMassAsym = 0.0;
  ExteriorEquilibrium eq;
  ExteriorKirchhoff kirch;
  DiscreteCurve curve;
};

ExteriorConstants exterior_constants(const Shape& shape, int N);

// rotation conjugations
Mat3 ma_ext_rotated(const ExteriorConstants& c, double theta);
Mat2 mdagger_rotated(const ExteriorConstants& c, double theta);
Vec2 zeta_rotated(const ExteriorConstants& c, double theta);

// closed-form exterior-plane Christoffel contraction
// (-perp(l).Mdag_theta perp(l), omega^2 perp(mu_theta) - 2 omega Mdag_theta l)
Vec3 christoffel_ext_closed(const ExteriorConstants& c, double theta, const Vec3& p);

// B field of the unbounded plane: (-1, perp(zeta_theta))
Vec3 b_ext(const ExteriorConstants& c, double theta);

// F of the unbounded plane: gamma p x B
Vec3 force_ext(const ExteriorConstants& c, double theta, const Vec3& p, double gamma);

// ---------------------------------------------------------------------------
// Kirchhoff-Routh stream function and corrector velocity

class RouthEvaluator {
 public:
  virtual ~RouthEvaluator() = default;
  virtual double psiOmega(const Vec2& h) const = 0;
  virtual Vec2 uOmega(const Vec2& h) const = 0;
  // Hessian of psi0(h, .) at x = h (needed for the first-order force term);
  // returns false when unavailable (general-domain mode)
  virtual bool psi0Hess(const Vec2& h, Mat2* out) const = 0;
  // psi_c(q) = D_h psiOmega(h) . zeta_theta and u_c = perp-grad of it
  virtual double psiC(const Vec2& h, const Vec2& zetaTheta) const;
  virtual Vec2 uC(const Vec2& h, const Vec2& zetaTheta) const;
};

// closed forms by the method of images in a centered disk of radius R
class DiskRouth : public RouthEvaluator {
 public:
  explicit DiskRouth(double R) : R_(R) {}
  double psiOmega(const Vec2& h) const override;
  Vec2 uOmega(const Vec2& h) const override;
  bool psi0Hess(const Vec2& h, Mat2* out) const override;
  double psiC(const Vec2& h, const Vec2& zetaTheta) const override;
  Vec2 uC(const Vec2& h, const Vec2& zetaTheta) const override;

 private:
  double R_;
};

// general domains via the interior single-layer Dirichlet solver
class BemRouth : public RouthEvaluator {
 public:
  explicit BemRouth(const DiscreteCurve& outer);
  double psiOmega(const Vec2& h) const override;
  Vec2 uOmega(const Vec2& h) const override;
  bool psi0Hess(const Vec2&, Mat2*) const override { return false; }
  // full two-point function (symmetric in its arguments)
  double psi0(const Vec2& h, const Vec2& x) const;

 private:
  InteriorDirichlet solver_;
};

// first-order force-field coefficients of the shrink expansion
Vec3 e0_limit(const Vec2& uOm, const Vec2& zetaTheta);
Vec3 e1_a_limit(const Vec2& uOm, const Mat2& MdagTheta);
Vec3 e1_b_limit(const Mat2& psi0Hess, double theta, const Mat2& sigmaS);
Vec3 e1_c_limit(const Vec2& zetaTheta, const Vec2& uc);
Vec3 b1_limit(const Mat2& MdagTheta, const Vec2& uOm);

// ---------------------------------------------------------------------------
// One-stop solver for a body in a bounded domain at fixed scale.

struct MassRegime {
  enum class Kind { Fixed, CaseI, CaseII } kind = Kind::Fixed;
  double m = 1.0;   // m (Fixed, CaseI) or m^1 (CaseII)
  double J = 1.0;   // J (Fixed) or J^1 (CaseI, CaseII)
  double alpha = 2.0;  // CaseII exponent

  // genuine inertia at scale eps
  double massAt(double eps) const;
  double inertiaAt(double eps) const;
};

class BoundedSolver {
 public:
  BoundedSolver(const Shape& body, const Shape& outer, int Nbody, int Nouter,
                double eps);

  struct Snapshot {
    Placement q;
    DiscreteCurve placedBody;
    Mat3K Kbody, Kouter;
    CirculationSolution circ;
    KirchhoffSolution kirch;
    Mat3 Ma;
    Vec3 E, B;
    double separation = 0.0;
  };

  Snapshot solve(const Placement& q) const;
  Mat3 addedMassAt(const Vec3& q) const;
  double capacityAt(const Vec3& q) const;  // C^eps(q) only
  Vec3 christoffelSplit(const Snapshot& s, const Vec3& p) const;

  double eps() const { return eps_; }
  const DiscreteCurve& outerCurve() const { return outer_; }
  const DiscreteCurve& refBody() const { return refBody_; }
  double bodyNodeSpacing() const;

 private:
  CoupledOperator makeOperator(const Placement& q) const;

  DiscreteCurve refBody_, outer_;
  MatX bodySelf_, outerSelf_;  // unit-kernel self matrices (rigid invariant)
  double eps_;
};

// Identity-suite residuals (structural checks of the force/inertia objects)
double lamb_residual(const DiscreteCurve& c, const std::vector<Vec2>& u,
                     const std::vector<Vec2>& v, const Vec2& h, int j);
double skew_symmetry_residual(const std::function<Mat3(const Vec3&)>& MaAt,
                              const Vec3& q, const Vec3& p, double step = 1e-4);

}  // namespace bisim
