#include "bisim/layer_potential.hpp"

#include <cmath>
#include <numbers>

namespace bisim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Martensen/Kussmaul quadrature weights for the periodic log kernel
// ln(4 sin^2((t-s)/2)), tabulated by index difference.
VecX kressWeights(int N) {
  VecX R(N);
  const int n = N / 2;
  for (int k = 0; k < N; ++k) {
    double d = kTwoPi * k / N;
    double sum = 0.0;
    for (int m = 1; m < n; ++m) sum += std::cos(m * d) / m;
    R(k) = -(4.0 * kPi / N) * sum - (4.0 * kPi / (N * N)) * std::cos(n * d);
  }
  return R;
}

// choose the kernel length scale so that the outer curve's effective
// logarithmic capacity stays well below 1: the one-curve operator is singular
// at capacity one, and a dilation folded into the fundamental solution moves
// it away without touching the geometry
double kernelScaleFor(const DiscreteCurve& outer) {
  double r = 0.0;
  for (const auto& x : outer.x) r = std::max(r, x.norm());
  return 2.0 * r;
}

}  // namespace

MatX sl_self_matrix_scaled(const DiscreteCurve& c, double L) {
  const int N = c.N;
  const VecX R = kressWeights(N);
  MatX A(N, N);
  const double chargeScale = N / kTwoPi;  // charges q_i = w_i p_i = speed_i p_i 2pi/N
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      int k = (i - j + N) % N;
      double logPart = -(0.25 / kPi) * R(k) * chargeScale;
      double smooth;
      if (i == j) {
        smooth = -(0.5 / kPi) * std::log(c.speed(i) / L);
      } else {
        double d2 = (c.x[i] - c.x[j]).squaredNorm();
        double s = 2.0 * std::sin(kPi * k / N);  // |2 sin((t_i-t_j)/2)|
        smooth = -(0.25 / kPi) * std::log(d2 / (L * L * s * s));
      }
      A(i, j) = logPart + smooth;
    }
  }
  return A;
}

MatX sl_self_matrix(const DiscreteCurve& c) { return sl_self_matrix_scaled(c, 1.0); }

MatX sl_cross_matrix_scaled(const DiscreteCurve& source, const DiscreteCurve& target,
                            double L) {
  MatX A(target.N, source.N);
  for (int i = 0; i < target.N; ++i)
    for (int j = 0; j < source.N; ++j) {
      double d = (target.x[i] - source.x[j]).norm();
      if (d < 1e-12) throw SolverError("coincident nodes across distinct curves");
      A(i, j) = -(0.5 / kPi) * std::log(d / L);
    }
  return A;
}

MatX sl_cross_matrix(const DiscreteCurve& source, const DiscreteCurve& target) {
  return sl_cross_matrix_scaled(source, target, 1.0);
}

MatX sl_dn_self_matrix(const DiscreteCurve& c) {
  const int N = c.N;
  MatX D(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j) {
        // smooth diagonal limit of the adjoint double-layer kernel plus the
        // jump toward the fluid side
        double kii = (0.25 / kPi) * c.ddx[i].dot(c.n[i]) / (c.speed(i) * c.speed(i));
        D(i, j) = kii + 0.5 / c.w(i);
      } else {
        Vec2 r = c.x[i] - c.x[j];
        D(i, j) = -(0.5 / kPi) * r.dot(c.n[i]) / r.squaredNorm();
      }
    }
  }
  return D;
}

MatX sl_dn_cross_matrix(const DiscreteCurve& source, const DiscreteCurve& target) {
  MatX D(target.N, source.N);
  for (int i = 0; i < target.N; ++i)
    for (int j = 0; j < source.N; ++j) {
      Vec2 r = target.x[i] - source.x[j];
      D(i, j) = -(0.5 / kPi) * r.dot(target.n[i]) / r.squaredNorm();
    }
  return D;
}

PointEval eval_sl(const DiscreteCurve& source, const VecX& charge, const Vec2& x) {
  PointEval e;
  for (int j = 0; j < source.N; ++j) {
    Vec2 r = x - source.x[j];
    double r2 = r.squaredNorm();
    e.value += -(0.25 / kPi) * std::log(r2) * charge(j);
    e.grad += -(0.5 / kPi) / r2 * charge(j) * r;
    Mat2 h = Mat2::Identity() / r2 - 2.0 * (r * r.transpose()) / (r2 * r2);
    e.hess += -(0.5 / kPi) * charge(j) * h;
  }
  return e;
}

VecX periodic_antiderivative(const VecX& f) {
  const int N = static_cast<int>(f.size());
  const int n = N / 2;
  VecX g = f.array() - f.mean();
  // trigonometric interpolation coefficients by direct sums, then termwise
  // antiderivative
  VecX F = VecX::Zero(N);
  for (int k = 1; k <= n; ++k) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < N; ++i) {
      double t = kTwoPi * i * k / N;
      a += g(i) * std::cos(t);
      b += g(i) * std::sin(t);
    }
    a *= 2.0 / N;
    b *= 2.0 / N;
    if (k == n) { a *= 0.5; b = 0.0; }
    for (int i = 0; i < N; ++i) {
      double t = kTwoPi * i * k / N;
      F(i) += (a * std::sin(t) - b * std::cos(t)) / k;
    }
  }
  return F;
}

// ---------------------------------------------------------------------------

CoupledOperator::CoupledOperator(const DiscreteCurve& placedBody,
                                 const DiscreteCurve& outer, const MatX* bodySelf,
                                 const MatX* outerSelf)
    : body_(placedBody), outer_(outer) {
  const int Ns = body_.N, No = outer_.N;
  const double L = kernelScaleFor(outer_);
  const double shift = (0.5 / kPi) * std::log(L);

  MatX Ass = bodySelf ? (*bodySelf + MatX::Constant(Ns, Ns, shift))
                      : sl_self_matrix_scaled(body_, L);
  MatX Aoo = outerSelf ? (*outerSelf + MatX::Constant(No, No, shift))
                       : sl_self_matrix_scaled(outer_, L);
  MatX Aso = sl_cross_matrix_scaled(outer_, body_, L);  // outer charges -> body nodes
  MatX Aos = sl_cross_matrix_scaled(body_, outer_, L);  // body charges -> outer nodes

  const int M = Ns + No + 1;
  system_ = MatX::Zero(M, M);
  system_.block(0, 0, Ns, Ns) = Ass;
  system_.block(0, Ns, Ns, No) = Aso;
  system_.block(0, Ns + No, Ns, 1) = -VecX::Ones(Ns);
  system_.block(Ns, 0, No, Ns) = Aos;
  system_.block(Ns, Ns, No, No) = Aoo;
  system_.block(Ns + No, 0, 1, Ns) = Eigen::RowVectorXd::Ones(Ns);
  lu_.compute(system_);

  dnBodyFromBody_ = sl_dn_self_matrix(body_);
  dnBodyFromOuter_ = sl_dn_cross_matrix(outer_, body_);
  dnOuterFromOuter_ = sl_dn_self_matrix(outer_);
  dnOuterFromBody_ = sl_dn_cross_matrix(body_, outer_);
}

double CoupledOperator::residual(const VecX& u, const VecX& rhs) const {
  return (system_ * u - rhs).norm() / std::max(1.0, rhs.norm());
}

VecX CoupledOperator::solveOne(const VecX& bodyData, double bodyFlux,
                               double* resOut) const {
  const int Ns = body_.N, No = outer_.N;
  VecX rhs = VecX::Zero(Ns + No + 1);
  rhs.head(Ns) = bodyData;
  rhs(Ns + No) = bodyFlux;
  VecX u = lu_.solve(rhs);
  double res = residual(u, rhs);
  if (res > 1e-11) throw SolverError("coupled single-layer solve residual too large");
  if (resOut) *resOut = res;
  return u;
}

CirculationSolution CoupledOperator::circulation() const {
  const int Ns = body_.N, No = outer_.N;
  CirculationSolution sol;
  VecX u = solveOne(VecX::Zero(Ns), -1.0, &sol.residual);
  sol.bodyCharge = u.head(Ns);
  sol.outerCharge = u.segment(Ns, No);
  sol.C = u(Ns + No);
  sol.bodyDensity = sol.bodyCharge.array() / body_.w.array();
  sol.outerDensity = sol.outerCharge.array() / outer_.w.array();
  return sol;
}

KirchhoffSolution CoupledOperator::kirchhoff(double theta, const Vec2& h) const {
  const int Ns = body_.N, No = outer_.N;
  const Mat2 R = rot2(theta);

  // conjugate Dirichlet data on the placed body
  MatX data(3, Ns);
  for (int i = 0; i < Ns; ++i) {
    Vec2 d = body_.x[i] - h;
    Vec2 Y = R.transpose() * d;
    data(0, i) = 0.5 * d.squaredNorm();
    data(1, i) = -Y.y();
    data(2, i) = Y.x();
  }

  // fluid-side normal derivative of each conjugate on both boundaries
  MatX dnBarBody(3, Ns), dnBarOuter(3, No);
  KirchhoffSolution sol;
  sol.c.setZero();
  for (int j = 0; j < 3; ++j) {
    VecX u = solveOne(data.row(j).transpose(), 0.0, nullptr);
    VecX qS = u.head(Ns), qO = u.segment(Ns, No);
    sol.c(j) = u(Ns + No);
    dnBarBody.row(j) = (dnBodyFromBody_ * qS + dnBodyFromOuter_ * qO).transpose();
    dnBarOuter.row(j) = (dnOuterFromOuter_ * qO + dnOuterFromBody_ * qS).transpose();
  }

  // mix the translational conjugates by R(theta) before taking traces:
  // the conjugate of phi_j is the theta-rotation of the solved triple
  auto mix = [&R](MatX& m) {
    for (int i = 0; i < m.cols(); ++i) {
      Vec2 v(m(1, i), m(2, i));
      v = R * v;
      m(1, i) = v.x();
      m(2, i) = v.y();
    }
  };
  mix(dnBarBody);
  mix(dnBarOuter);

  sol.bodyDtau = -dnBarBody;
  sol.outerDtau = -dnBarOuter;

  // phi_j on the body by spectral integration of dphi/dtau; net circulation
  // should vanish (single-valuedness), recorded as a quality metric
  sol.conjugacyResidual = 0.0;
  sol.bodyPhi.resize(3, Ns);
  for (int j = 0; j < 3; ++j) {
    VecX g = sol.bodyDtau.row(j).transpose();
    sol.conjugacyResidual =
        std::max(sol.conjugacyResidual, std::abs(g.dot(body_.w)));
    sol.conjugacyResidual = std::max(
        sol.conjugacyResidual,
        std::abs((sol.outerDtau.row(j).transpose().cwiseProduct(outer_.w)).sum()));
    VecX dphidt = g.cwiseProduct(body_.speed);
    VecX phi = periodic_antiderivative(dphidt);
    phi.array() -= phi.dot(body_.w) / body_.w.sum();
    sol.bodyPhi.row(j) = phi.transpose();
  }
  // the net tangential circulation measures cross-curve quadrature quality;
  // it degrades smoothly as the curves approach, so only a gross violation
  // (well past the collision-guard regime) aborts the solve
  if (sol.conjugacyResidual > 1e-6)
    throw SolverError("conjugacy violation: nonzero tangential circulation");
  return sol;
}

// ---------------------------------------------------------------------------

ExteriorEquilibrium solve_exterior_equilibrium(const DiscreteCurve& body) {
  const int N = body.N;
  MatX A = sl_self_matrix(body);
  MatX S = MatX::Zero(N + 1, N + 1);
  S.block(0, 0, N, N) = A;
  S.block(0, N, N, 1) = -VecX::Ones(N);
  S.block(N, 0, 1, N) = Eigen::RowVectorXd::Ones(N);
  VecX rhs = VecX::Zero(N + 1);
  rhs(N) = -1.0;
  Eigen::PartialPivLU<MatX> lu(S);
  VecX u = lu.solve(rhs);
  ExteriorEquilibrium sol;
  sol.residual = (S * u - rhs).norm();
  if (sol.residual > 1e-9) throw SolverError("exterior equilibrium solve failed");
  sol.charge = u.head(N);
  sol.C = u(N);
  sol.cap = std::exp(kTwoPi * sol.C);
  sol.density = sol.charge.array() / body.w.array();
  return sol;
}

ExteriorKirchhoff solve_exterior_kirchhoff(const DiscreteCurve& body) {
  const int N = body.N;
  MatX A = sl_self_matrix(body);
  MatX S = MatX::Zero(N + 1, N + 1);
  S.block(0, 0, N, N) = A;
  S.block(0, N, N, 1) = -VecX::Ones(N);
  S.block(N, 0, 1, N) = Eigen::RowVectorXd::Ones(N);
  Eigen::PartialPivLU<MatX> lu(S);
  MatX dn = sl_dn_self_matrix(body);

  ExteriorKirchhoff sol;
  sol.bodyPhi.resize(3, N);
  sol.bodyDtau.resize(3, N);
  sol.bodyDn.resize(3, N);
  sol.conjPhiBar.resize(3, N);
  sol.conjDnBar.resize(3, N);

  for (int j = 0; j < 3; ++j) {
    VecX rhs = VecX::Zero(N + 1);
    for (int i = 0; i < N; ++i) {
      const Vec2& x = body.x[i];
      rhs(i) = (j == 0) ? 0.5 * x.squaredNorm() : (j == 1 ? -x.y() : x.x());
    }
    VecX u = lu.solve(rhs);
    if ((S * u - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm()))
      throw SolverError("exterior Kirchhoff solve failed");
    VecX q = u.head(N);
    sol.c(j) = u(N);
    VecX dnBar = dn * q;
    sol.conjDnBar.row(j) = dnBar.transpose();
    sol.conjPhiBar.row(j) = rhs.head(N).transpose().array() + sol.c(j);
    sol.bodyDtau.row(j) = -dnBar.transpose();
    VecX dphidt = (-dnBar).cwiseProduct(body.speed);
    VecX phi = periodic_antiderivative(dphidt);
    phi.array() -= phi.dot(body.w) / body.w.sum();
    sol.bodyPhi.row(j) = phi.transpose();
  }
  // the Neumann trace of phi_j is the rigid trace K_j (exact identity of the
  // conjugate construction)
  sol.bodyDn = rigid_traces(body, Vec2::Zero());
  return sol;
}

// ---------------------------------------------------------------------------

InteriorDirichlet::InteriorDirichlet(const DiscreteCurve& outer, const MatX* outerSelf)
    : outer_(outer) {
  const double L = kernelScaleFor(outer_);
  const double shift = (0.5 / kPi) * std::log(L);
  MatX A = outerSelf ? (*outerSelf + MatX::Constant(outer_.N, outer_.N, shift))
                     : sl_self_matrix_scaled(outer_, L);
  lu_.compute(A);
  kernelScale_ = L;
}

VecX InteriorDirichlet::solve(const VecX& g) const {
  VecX q = lu_.solve(g);
  return q;
}

PointEval InteriorDirichlet::evaluate(const VecX& charge, const Vec2& x) const {
  PointEval e = eval_sl(outer_, charge, x);
  // constant kernel offset: -(1/2pi) ln(1/L) * total charge
  e.value += (0.5 / kPi) * std::log(kernelScale_) * charge.sum();
  return e;
}

}  // namespace bisim
