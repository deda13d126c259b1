#include "bisim/geometry.hpp"

#include <cmath>
#include <numbers>

namespace bisim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Shape Shape::circle(double radius) {
  if (!(radius > 0.0)) throw InvalidShape("circle radius must be positive");
  Shape s;
  s.kind_ = Kind::Circle;
  s.a_ = s.b_ = radius;
  return s;
}

Shape Shape::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidShape("ellipse semi-axes must be positive");
  if (a < b) std::swap(a, b);
  Shape s;
  s.kind_ = Kind::Ellipse;
  s.a_ = a;
  s.b_ = b;
  return s;
}

Shape Shape::fourierStar(double meanRadius, std::vector<FourierMode> modes) {
  if (!(meanRadius > 0.0)) throw InvalidShape("star mean radius must be positive");
  Shape s;
  s.kind_ = Kind::FourierStar;
  s.meanRadius_ = meanRadius;
  s.modes_ = std::move(modes);
  // radial function must stay positive (sample densely)
  for (int i = 0; i < 4096; ++i) {
    double t = kTwoPi * i / 4096.0;
    double r = meanRadius;
    for (const auto& m : s.modes_)
      r += m.cosAmp * std::cos(m.k * t) + m.sinAmp * std::sin(m.k * t);
    if (r <= 0.05 * meanRadius)
      throw InvalidShape("star amplitudes too large: radius not positive");
  }
  s.centerCentroid();
  return s;
}

Shape Shape::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidShape("scale factor must be positive");
  Shape s = *this;
  s.a_ *= lambda;
  s.b_ *= lambda;
  s.meanRadius_ *= lambda;
  for (auto& m : s.modes_) {
    m.cosAmp *= lambda;
    m.sinAmp *= lambda;
  }
  s.centroidShift_ *= lambda;
  return s;
}

Vec2 Shape::pos(double t) const {
  switch (kind_) {
    case Kind::Circle:
      return Vec2(a_ * std::cos(t), a_ * std::sin(t));
    case Kind::Ellipse:
      return Vec2(a_ * std::cos(t), b_ * std::sin(t));
    case Kind::FourierStar: {
      double r = meanRadius_;
      for (const auto& m : modes_)
        r += m.cosAmp * std::cos(m.k * t) + m.sinAmp * std::sin(m.k * t);
      return Vec2(r * std::cos(t), r * std::sin(t)) - centroidShift_;
    }
  }
  return Vec2::Zero();
}

Vec2 Shape::dpos(double t) const {
  switch (kind_) {
    case Kind::Circle:
      return Vec2(-a_ * std::sin(t), a_ * std::cos(t));
    case Kind::Ellipse:
      return Vec2(-a_ * std::sin(t), b_ * std::cos(t));
    case Kind::FourierStar: {
      double r = meanRadius_, dr = 0.0;
      for (const auto& m : modes_) {
        r += m.cosAmp * std::cos(m.k * t) + m.sinAmp * std::sin(m.k * t);
        dr += m.k * (-m.cosAmp * std::sin(m.k * t) + m.sinAmp * std::cos(m.k * t));
      }
      return Vec2(dr * std::cos(t) - r * std::sin(t),
                  dr * std::sin(t) + r * std::cos(t));
    }
  }
  return Vec2::Zero();
}

Vec2 Shape::ddpos(double t) const {
  switch (kind_) {
    case Kind::Circle:
      return Vec2(-a_ * std::cos(t), -a_ * std::sin(t));
    case Kind::Ellipse:
      return Vec2(-a_ * std::cos(t), -b_ * std::sin(t));
    case Kind::FourierStar: {
      double r = meanRadius_, dr = 0.0, ddr = 0.0;
      for (const auto& m : modes_) {
        double c = std::cos(m.k * t), s = std::sin(m.k * t);
        r += m.cosAmp * c + m.sinAmp * s;
        dr += m.k * (-m.cosAmp * s + m.sinAmp * c);
        ddr += -m.k * m.k * (m.cosAmp * c + m.sinAmp * s);
      }
      double c = std::cos(t), s = std::sin(t);
      return Vec2(ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s);
    }
  }
  return Vec2::Zero();
}

void Shape::centerCentroid() {
  // boundary-integral centroid of the enclosed region (before the shift)
  centroidShift_.setZero();
  const int M = 4096;
  double area = 0.0;
  Vec2 moment = Vec2::Zero();
  for (int i = 0; i < M; ++i) {
    double t = kTwoPi * i / M;
    Vec2 x = pos(t), dx = dpos(t);
    area += 0.5 * (x.x() * dx.y() - x.y() * dx.x());
    moment.x() += 0.5 * x.x() * x.x() * dx.y();
    moment.y() += -0.5 * x.y() * x.y() * dx.x();
  }
  area *= kTwoPi / M;
  moment *= kTwoPi / M;
  if (!(area > 0.0)) throw InvalidShape("curve must be positively oriented and simple");
  centroidShift_ = moment / area;
}

std::string Shape::describe() const {
  switch (kind_) {
    case Kind::Circle:
      return "circle(r=" + std::to_string(a_) + ")";
    case Kind::Ellipse:
      return "ellipse(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    case Kind::FourierStar:
      return "fourier-star(r0=" + std::to_string(meanRadius_) + "," +
             std::to_string(modes_.size()) + " modes)";
  }
  return "?";
}

DiscreteCurve discretize(const Shape& shape, int N, Orientation orientation) {
  if (N < 8 || N % 2 != 0) throw InvalidShape("node count must be even and >= 8");
  DiscreteCurve c;
  c.N = N;
  c.orientation = orientation;
  c.x.resize(N);
  c.tau.resize(N);
  c.n.resize(N);
  c.ddx.resize(N);
  c.w.resize(N);
  c.speed.resize(N);
  c.kappa.resize(N);
  const double dt = kTwoPi / N;
  // counterclockwise for body curves, clockwise (t -> -t) for the outer curve
  const double sgn = (orientation == Orientation::Body) ? 1.0 : -1.0;
  for (int i = 0; i < N; ++i) {
    double t = sgn * dt * i;
    Vec2 x = shape.pos(t);
    Vec2 dx = sgn * shape.dpos(t);        // traversal derivative d/d(i dt)
    Vec2 ddx = shape.ddpos(t);            // chain rule: sgn^2 = 1
    double sp = dx.norm();
    c.x[i] = x;
    c.speed(i) = sp;
    c.tau[i] = dx / sp;
    c.n[i] = perp(c.tau[i]);
    c.ddx[i] = ddx;
    c.w(i) = sp * dt;
    c.kappa(i) = (dx.x() * ddx.y() - dx.y() * ddx.x()) / (sp * sp * sp);
  }
  return c;
}

DiscreteCurve place(const DiscreteCurve& curve, const Placement& q) {
  DiscreteCurve c = curve;
  const Mat2 R = rot2(q.theta);
  const double eps = q.epsilon;
  for (int i = 0; i < c.N; ++i) {
    c.x[i] = eps * (R * curve.x[i]) + q.h;
    c.tau[i] = R * curve.tau[i];
    c.n[i] = R * curve.n[i];
    c.ddx[i] = eps * (R * curve.ddx[i]);
  }
  c.w *= eps;
  c.speed *= eps;
  c.kappa /= eps;
  return c;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> rigid_traces(const DiscreteCurve& curve,
                                                      const Vec2& h) {
  Eigen::Matrix<double, 3, Eigen::Dynamic> K(3, curve.N);
  for (int i = 0; i < curve.N; ++i) {
    K(0, i) = perp(curve.x[i] - h).dot(curve.n[i]);
    K(1, i) = curve.n[i].x();
    K(2, i) = curve.n[i].y();
  }
  return K;
}

std::vector<Vec2> rigid_fields(const DiscreteCurve& curve, const Vec2& h, int j) {
  std::vector<Vec2> out(curve.N);
  for (int i = 0; i < curve.N; ++i) {
    if (j == 1)
      out[i] = perp(curve.x[i] - h);
    else if (j == 2)
      out[i] = Vec2(1.0, 0.0);
    else
      out[i] = Vec2(0.0, 1.0);
  }
  return out;
}

double separation(const DiscreteCurve& body, const DiscreteCurve& outer) {
  double best = std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < body.N; ++i)
    for (int j = 0; j < outer.N; ++j) {
      double d = (body.x[i] - outer.x[j]).norm();
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  // one local subdivision pass: quadratic patches around the best node pair
  auto patchPoint = [](const DiscreteCurve& c, int i, double s) {
    int im = (i - 1 + c.N) % c.N, ip = (i + 1) % c.N;
    // quadratic interpolation through x[im], x[i], x[ip] at s in [-1, 1]
    return 0.5 * s * (s - 1.0) * c.x[im] + (1.0 - s * s) * c.x[i] +
           0.5 * s * (s + 1.0) * c.x[ip];
  };
  for (int a = -16; a <= 16; ++a)
    for (int b = -16; b <= 16; ++b) {
      Vec2 p = patchPoint(body, bi, a / 16.0);
      Vec2 q = patchPoint(outer, bj, b / 16.0);
      best = std::min(best, (p - q).norm());
    }
  return best;
}

}  // namespace bisim
