#pragma once

// Body and domain shapes, rigid placements, and quadrature-ready discrete
// curves for the boundary-integral solvers.
//
// Conventions: n = tau-perp with perp(v) = (-v.y, v.x); the normal points out
// of the fluid, i.e. into the solid on a body curve and out of the domain on
// the outer curve. The tangent runs counterclockwise on a body curve and
// clockwise on the outer curve.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace bisim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline Mat2 rot2(double theta) {
  Mat2 R;
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

// blockdiag(1, R(theta)) acting on (scalar, vector) triples
inline Mat3 rot3(double theta) {
  Mat3 R = Mat3::Identity();
  R.block<2, 2>(1, 1) = rot2(theta);
  return R;
}

// I_eps = diag(eps, 1, 1)
inline Mat3 iEps(double eps) {
  Mat3 m = Mat3::Identity();
  m(0, 0) = eps;
  return m;
}

// cross product on (scalar, vector) velocity triples:
// (w_a, l_a) x (w_b, l_b) = (perp(l_a).l_b, w_a perp(l_b) - w_b perp(l_a))
inline Vec3 vcross(const Vec3& a, const Vec3& b) {
  Vec2 la = a.tail<2>(), lb = b.tail<2>();
  Vec3 out;
  out(0) = perp(la).dot(lb);
  out.tail<2>() = a(0) * perp(lb) - b(0) * perp(la);
  return out;
}

struct InvalidShape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FourierMode {
  int k = 0;
  double cosAmp = 0.0;
  double sinAmp = 0.0;
};

// Smooth simple closed curve given analytically; the enclosed region's
// centroid is moved to the origin at construction.
class Shape {
 public:
  enum class Kind { Circle, Ellipse, FourierStar };

  static Shape circle(double radius);
  static Shape ellipse(double a, double b);  // semi-axes, a >= b
  static Shape fourierStar(double meanRadius, std::vector<FourierMode> modes);

  Kind kind() const { return kind_; }
  double radiusA() const { return a_; }
  double radiusB() const { return b_; }

  // Uniform dilation about the origin.
  Shape scaled(double lambda) const;

  // position and first/second parameter derivatives at t in [0, 2pi)
  Vec2 pos(double t) const;
  Vec2 dpos(double t) const;
  Vec2 ddpos(double t) const;

  std::string describe() const;

 private:
  Shape() = default;
  void centerCentroid();

  Kind kind_ = Kind::Circle;
  double a_ = 1.0, b_ = 1.0;
  double meanRadius_ = 1.0;
  std::vector<FourierMode> modes_;
  Vec2 centroidShift_ = Vec2::Zero();
};

// Body configuration q = (theta, h) together with the scale factor.
struct Placement {
  double theta = 0.0;
  Vec2 h = Vec2::Zero();
  double epsilon = 1.0;

  Vec3 q() const { return Vec3(theta, h.x(), h.y()); }
  static Placement fromQ(const Vec3& q, double eps) {
    return Placement{q(0), Vec2(q(1), q(2)), eps};
  }
};

enum class Orientation { Body, Outer };

struct DiscreteCurve {
  int N = 0;
  Orientation orientation = Orientation::Body;
  std::vector<Vec2> x;       // nodes
  std::vector<Vec2> tau;     // unit tangents
  std::vector<Vec2> n;       // unit normals, n = perp(tau)
  VecX w;                    // arclength quadrature weights
  VecX speed;                // |x'(t)| at nodes (parameter speed)
  VecX kappa;                // signed curvature
  std::vector<Vec2> ddx;     // second parameter derivative (for kernel limits)

  double totalLength() const { return w.sum(); }
};

// Equispaced-in-parameter discretization; N even, >= 8.
DiscreteCurve discretize(const Shape& shape, int N, Orientation orientation);

// Rigid placement x -> eps R(theta) x + h of a body curve.
DiscreteCurve place(const DiscreteCurve& curve, const Placement& q);

// Normal traces of the rigid velocity fields at the curve nodes:
// K1 = perp(x - h) . n, K2 = n1, K3 = n2. Rows are j = 1..3.
// Also usable on the outer curve (with the outer normals).
Eigen::Matrix<double, 3, Eigen::Dynamic> rigid_traces(const DiscreteCurve& curve,
                                                      const Vec2& h);

// xi_j node values: xi_1 = perp(x - h), xi_2 = e1, xi_3 = e2.
std::vector<Vec2> rigid_fields(const DiscreteCurve& curve, const Vec2& h, int j);

// Minimum distance between two curves, refined by one local subdivision pass.
double separation(const DiscreteCurve& body, const DiscreteCurve& outer);

}  // namespace bisim
