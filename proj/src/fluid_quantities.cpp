#include "bisim/fluid_quantities.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace bisim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const Mat2 kPerpMat = (Mat2() << 0.0, -1.0, 1.0, 0.0).finished();
}  // namespace

Mat3 added_mass(const MatX& bodyPhi, const Mat3K& K, const VecX& w, double* asym) {
  Mat3 M = Mat3::Zero();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      M(j, k) = (bodyPhi.row(j).transpose().cwiseProduct(K.row(k).transpose()))
                    .dot(w);
  double a = (M - M.transpose()).norm();
  if (asym) *asym = a;
  return 0.5 * (M + M.transpose());
}

Vec3 christoffel_S(const Mat3& Ma, const Vec3& p) {
  Vec3 Map = Ma * p;
  Vec3 withPa(0.0, Map(1), Map(2));
  Vec2 l = p.tail<2>();
  Vec3 lperp3(0.0, -l.y(), l.x());
  return -vcross(withPa, p) - p(0) * (Ma * lperp3);
}

Vec3 christoffel_boundary(const MatX& outerDtau, const Mat3K& Kouter,
                          const VecX& wOuter, const Vec3& p) {
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < wOuter.size(); ++i) {
    Vec3 dphi = outerDtau.col(i);
    Vec3 K = Kouter.col(i);
    double dp = dphi.dot(p);
    out += wOuter(i) * (dphi * (K.dot(p)) * dp - 0.5 * K * dp * dp);
  }
  return out;
}

Vec3 christoffel_fd(const std::function<Mat3(const Vec3&)>& MaAt, const Vec3& q,
                    const Vec3& p, double step) {
  Mat3 dM[3];
  for (int i = 0; i < 3; ++i) {
    Vec3 qp = q, qm = q;
    qp(i) += step;
    qm(i) -= step;
    dM[i] = (MaAt(qp) - MaAt(qm)) / (2.0 * step);
  }
  Vec3 out;
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        s += (dM[i](k, j) - 0.5 * dM[k](i, j)) * p(i) * p(j);
    out(k) = s;
  }
  return out;
}

Vec3 force_E(const VecX& bodyDn, const Mat3K& K, const VecX& w) {
  Vec3 E = Vec3::Zero();
  for (int i = 0; i < w.size(); ++i)
    E += -0.5 * w(i) * bodyDn(i) * bodyDn(i) * K.col(i);
  return E;
}

Vec3 force_B(const VecX& bodyDn, const Mat3K& K, const MatX& bodyDtau,
             const VecX& w) {
  Vec3 B = Vec3::Zero();
  for (int i = 0; i < w.size(); ++i)
    B += w(i) * bodyDn(i) * vcross(K.col(i), bodyDtau.col(i));
  return B;
}

Vec3 force_total(const Vec3& p, const Vec3& E, const Vec3& B, double gamma) {
  return gamma * gamma * E + gamma * vcross(p, B);
}

double energy(const Mat3& M, const Vec3& p, double C, double gamma) {
  return 0.5 * p.dot(M * p) - 0.5 * gamma * gamma * C;
}

// ---------------------------------------------------------------------------

ExteriorConstants exterior_constants(const Shape& shape, int N) {
  ExteriorConstants c;
  c.curve = discretize(shape, N, Orientation::Body);
  c.eq = solve_exterior_equilibrium(c.curve);
  c.kirch = solve_exterior_kirchhoff(c.curve);
  c.cap = c.eq.cap;
  c.C0 = c.eq.C;

  // conformal center: minus the first moment of the equilibrium density
  c.zeta.setZero();
  for (int i = 0; i < N; ++i) c.zeta -= c.eq.charge(i) * c.curve.x[i];

  // the same vector as the complex contour integral int z (H1 - i H2) dz,
  // with (H1, H2) the perp-gradient of the equilibrium stream function,
  // tangential on the curve: H = -density * tau
  std::complex<double> zdual(0.0, 0.0);
  for (int i = 0; i < N; ++i) {
    const Vec2& x = c.curve.x[i];
    Vec2 H = -c.eq.density(i) * c.curve.tau[i];
    std::complex<double> z(x.x(), x.y());
    std::complex<double> Hc(H.x(), -H.y());
    std::complex<double> dz(c.curve.tau[i].x(), c.curve.tau[i].y());
    zdual += z * Hc * dz * c.curve.w(i);
  }
  c.zetaDual = Vec2(zdual.real(), zdual.imag());

  Mat3K K = rigid_traces(c.curve, Vec2::Zero());
  c.MaExt = added_mass(c.kirch.bodyPhi, K, c.curve.w, &c.addedMassAsym);
  c.mSharp = c.MaExt(0, 0);
  c.mu = c.MaExt.block<2, 1>(1, 0);
  c.Mflat = c.MaExt.block<2, 2>(1, 1);
  Mat2 MP = c.Mflat * kPerpMat;
  c.Mdagger = 0.5 * (MP + MP.transpose());

  // conjugate-trace moment matrix
  c.Mbar.setZero();
  for (int i = 0; i < N; ++i) {
    Vec2 a(c.kirch.conjPhiBar(1, i), c.kirch.conjPhiBar(2, i));
    Vec2 b(c.kirch.conjDnBar(2, i), -c.kirch.conjDnBar(1, i));
    c.Mbar += c.curve.w(i) * (a * b.transpose());
  }

  // capacity variance and equilibrium second moment
  c.sigma.setZero();
  c.T2.setZero();
  for (int i = 0; i < N; ++i) {
    const Vec2& x = c.curve.x[i];
    c.sigma += c.eq.charge(i) * (x * perp(x).transpose());
    c.T2 += c.eq.charge(i) * (x * x.transpose());
  }
  c.sigma += c.zeta * perp(c.zeta).transpose();
  c.sigmaS = 0.5 * (c.sigma + c.sigma.transpose());
  return c;
}

Mat3 ma_ext_rotated(const ExteriorConstants& c, double theta) {
  Mat3 R = rot3(theta);
  return R * c.MaExt * R.transpose();
}

Mat2 mdagger_rotated(const ExteriorConstants& c, double theta) {
  Mat2 R = rot2(theta);
  return R * c.Mdagger * R.transpose();
}

Vec2 zeta_rotated(const ExteriorConstants& c, double theta) {
  return rot2(theta) * c.zeta;
}

Vec3 christoffel_ext_closed(const ExteriorConstants& c, double theta, const Vec3& p) {
  Mat2 Mdag = mdagger_rotated(c, theta);
  Vec2 mu = rot2(theta) * c.mu;
  double w = p(0);
  Vec2 l = p.tail<2>();
  Vec3 out;
  out(0) = -perp(l).dot(Mdag * perp(l));
  out.tail<2>() = w * w * perp(mu) - 2.0 * w * (Mdag * l);
  return out;
}

Vec3 b_ext(const ExteriorConstants& c, double theta) {
  Vec3 B;
  B(0) = -1.0;
  B.tail<2>() = perp(zeta_rotated(c, theta));
  return B;
}

Vec3 force_ext(const ExteriorConstants& c, double theta, const Vec3& p,
               double gamma) {
  return gamma * vcross(p, b_ext(c, theta));
}

// ---------------------------------------------------------------------------

double RouthEvaluator::psiC(const Vec2& h, const Vec2& zetaTheta) const {
  const double d = 1e-5;
  Vec2 g;
  g.x() = (psiOmega(h + Vec2(d, 0)) - psiOmega(h - Vec2(d, 0))) / (2 * d);
  g.y() = (psiOmega(h + Vec2(0, d)) - psiOmega(h - Vec2(0, d))) / (2 * d);
  return g.dot(zetaTheta);
}

Vec2 RouthEvaluator::uC(const Vec2& h, const Vec2& zetaTheta) const {
  const double d = 1e-4;
  Vec2 g;
  g.x() = (psiC(h + Vec2(d, 0), zetaTheta) - psiC(h - Vec2(d, 0), zetaTheta)) / (2 * d);
  g.y() = (psiC(h + Vec2(0, d), zetaTheta) - psiC(h - Vec2(0, d), zetaTheta)) / (2 * d);
  return perp(g);
}

double DiskRouth::psiOmega(const Vec2& h) const {
  return (0.25 / kPi) * std::log(R_ / (R_ * R_ - h.squaredNorm()));
}

Vec2 DiskRouth::uOmega(const Vec2& h) const {
  return perp(h) / (kTwoPi * (R_ * R_ - h.squaredNorm()));
}

bool DiskRouth::psi0Hess(const Vec2& h, Mat2* out) const {
  // psi0(h,.) extends G(.-h) from the boundary; by images its value is
  // -(1/2pi) ln(|h| |x - h*| / R) with h* the inverse point
  double h2 = h.squaredNorm();
  if (h2 < 1e-14) {
    out->setZero();
    return true;
  }
  Vec2 hstar = (R_ * R_ / h2) * h;
  Vec2 d = h - hstar;
  double d2 = d.squaredNorm();
  *out = -(0.5 / kPi) * (Mat2::Identity() / d2 - 2.0 * (d * d.transpose()) / (d2 * d2));
  return true;
}

double DiskRouth::psiC(const Vec2& h, const Vec2& zetaTheta) const {
  return h.dot(zetaTheta) / (kTwoPi * (R_ * R_ - h.squaredNorm()));
}

Vec2 DiskRouth::uC(const Vec2& h, const Vec2& zetaTheta) const {
  double denom = R_ * R_ - h.squaredNorm();
  Vec2 grad = zetaTheta / (kTwoPi * denom) +
              h.dot(zetaTheta) * (2.0 * h) / (kTwoPi * denom * denom);
  return perp(grad);
}

BemRouth::BemRouth(const DiscreteCurve& outer) : solver_(outer) {}

double BemRouth::psi0(const Vec2& h, const Vec2& x) const {
  const DiscreteCurve& c = solver_.curve();
  VecX g(c.N);
  for (int i = 0; i < c.N; ++i)
    g(i) = -(0.5 / kPi) * std::log((c.x[i] - h).norm());
  VecX q = solver_.solve(g);
  return solver_.evaluate(q, x).value;
}

double BemRouth::psiOmega(const Vec2& h) const { return 0.5 * psi0(h, h); }

Vec2 BemRouth::uOmega(const Vec2& h) const {
  const double d = 1e-4;
  Vec2 g;
  g.x() = (psiOmega(h + Vec2(d, 0)) - psiOmega(h - Vec2(d, 0))) / (2 * d);
  g.y() = (psiOmega(h + Vec2(0, d)) - psiOmega(h - Vec2(0, d))) / (2 * d);
  return perp(g);
}

Vec3 e0_limit(const Vec2& uOm, const Vec2& zetaTheta) {
  Vec3 out;
  out(0) = -uOm.dot(zetaTheta);
  out.tail<2>() = -perp(uOm);
  return out;
}

Vec3 e1_a_limit(const Vec2& uOm, const Mat2& MdagTheta) {
  return Vec3(perp(uOm).dot(MdagTheta * perp(uOm)), 0.0, 0.0);
}

Vec3 e1_b_limit(const Mat2& psi0Hess, double theta, const Mat2& sigmaS) {
  // conjugating a traceless symmetric matrix by rot2(theta) equals the plain
  // product rot2(2 theta) * sigmaS; verified against the theta-derivative of
  // the condenser capacity
  Mat2 M = rot2(2.0 * theta) * sigmaS;
  return Vec3(-psi0Hess.cwiseProduct(M).sum(), 0.0, 0.0);
}

Vec3 e1_c_limit(const Vec2& zetaTheta, const Vec2& uc) {
  Vec3 out;
  out(0) = -zetaTheta.dot(uc);
  out.tail<2>() = -perp(uc);
  return out;
}

Vec3 b1_limit(const Mat2& MdagTheta, const Vec2& uOm) {
  Vec3 out = Vec3::Zero();
  out.tail<2>() = -2.0 * (MdagTheta * perp(uOm));
  return out;
}

// ---------------------------------------------------------------------------

double MassRegime::massAt(double eps) const {
  switch (kind) {
    case Kind::Fixed:
    case Kind::CaseI:
      return m;
    case Kind::CaseII:
      return std::pow(eps, alpha) * m;
  }
  return m;
}

double MassRegime::inertiaAt(double eps) const {
  switch (kind) {
    case Kind::Fixed:
      return J;
    case Kind::CaseI:
      return eps * eps * J;
    case Kind::CaseII:
      return std::pow(eps, alpha) * eps * eps * J;
  }
  return J;
}

BoundedSolver::BoundedSolver(const Shape& body, const Shape& outer, int Nbody,
                             int Nouter, double eps)
    : refBody_(discretize(body, Nbody, Orientation::Body)),
      outer_(discretize(outer, Nouter, Orientation::Outer)),
      eps_(eps) {
  // self matrices are invariant under rigid placement at fixed scale
  DiscreteCurve scaledBody = place(refBody_, Placement{0.0, Vec2::Zero(), eps_});
  bodySelf_ = sl_self_matrix(scaledBody);
  outerSelf_ = sl_self_matrix(outer_);
}

double BoundedSolver::bodyNodeSpacing() const {
  return eps_ * refBody_.totalLength() / refBody_.N;
}

CoupledOperator BoundedSolver::makeOperator(const Placement& q) const {
  Placement qq = q;
  qq.epsilon = eps_;
  DiscreteCurve placed = place(refBody_, qq);
  return CoupledOperator(placed, outer_, &bodySelf_, &outerSelf_);
}

BoundedSolver::Snapshot BoundedSolver::solve(const Placement& q) const {
  Snapshot s;
  s.q = q;
  s.q.epsilon = eps_;
  CoupledOperator op = makeOperator(q);
  s.placedBody = op.body();
  s.Kbody = rigid_traces(s.placedBody, q.h);
  s.Kouter = rigid_traces(outer_, q.h);
  s.circ = op.circulation();
  s.kirch = op.kirchhoff(q.theta, q.h);
  s.Ma = added_mass(s.kirch.bodyPhi, s.Kbody, s.placedBody.w);
  s.E = force_E(s.circ.bodyDensity, s.Kbody, s.placedBody.w);
  s.B = force_B(s.circ.bodyDensity, s.Kbody, s.kirch.bodyDtau, s.placedBody.w);
  s.separation = separation(s.placedBody, outer_);
  return s;
}

Mat3 BoundedSolver::addedMassAt(const Vec3& q) const {
  Placement p = Placement::fromQ(q, eps_);
  CoupledOperator op = makeOperator(p);
  KirchhoffSolution k = op.kirchhoff(p.theta, p.h);
  Mat3K K = rigid_traces(op.body(), p.h);
  return added_mass(k.bodyPhi, K, op.body().w);
}

double BoundedSolver::capacityAt(const Vec3& q) const {
  Placement p = Placement::fromQ(q, eps_);
  return makeOperator(p).circulation().C;
}

Vec3 BoundedSolver::christoffelSplit(const Snapshot& s, const Vec3& p) const {
  return christoffel_S(s.Ma, p) +
         christoffel_boundary(s.kirch.outerDtau, s.Kouter, outer_.w, p);
}

// ---------------------------------------------------------------------------

double lamb_residual(const DiscreteCurve& c, const std::vector<Vec2>& u,
                     const std::vector<Vec2>& v, const Vec2& h, int j) {
  Mat3K K = rigid_traces(c, h);
  std::vector<Vec2> xi = rigid_fields(c, h, j);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < c.N; ++i) {
    lhs += c.w(i) * u[i].dot(v[i]) * K(j - 1, i);
    rhs += c.w(i) * xi[i].dot(u[i].dot(c.n[i]) * v[i] + v[i].dot(c.n[i]) * u[i]);
  }
  return std::abs(lhs - rhs);
}

double skew_symmetry_residual(const std::function<Mat3(const Vec3&)>& MaAt,
                              const Vec3& q, const Vec3& p, double step) {
  Mat3 dM[3];
  for (int i = 0; i < 3; ++i) {
    Vec3 qp = q, qm = q;
    qp(i) += step;
    qm(i) -= step;
    dM[i] = (MaAt(qp) - MaAt(qm)) / (2.0 * step);
  }
  Mat3 DMp = Mat3::Zero();  // (DM . p)_{kj}
  for (int i = 0; i < 3; ++i) DMp += dM[i] * p(i);
  Mat3 S;  // S_{kj} = sum_i Gamma^k_{ij} p_i
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        s += 0.5 * (dM[i](k, j) + dM[j](k, i) - dM[k](i, j)) * p(i);
      S(k, j) = s;
    }
  Mat3 A = 0.5 * DMp - S;
  return (A + A.transpose()).norm();
}

}  // namespace bisim
