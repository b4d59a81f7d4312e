#include "circlering/plane.hpp"

#include <algorithm>

#include "parse_util.hpp"

namespace circlering {

Point::Point(Element x_, Element y_) : x(std::move(x_)), y(std::move(y_)) {
  if (!(x.field() == y.field()))
    throw Error(ErrorCode::DescriptorMismatch, "point coordinates live in different fields");
}

Point parse_point(const Field& field, std::string_view text) {
  auto [xs, ys] = parse::split_pair(text);
  return Point(field.parse_element(xs), field.parse_element(ys));
}

Point origin(const Field& field) { return Point(field.zero(), field.zero()); }

Circle::Circle(Point center, Element radius)
    : center_(std::move(center)), radius_(std::move(radius)) {
  if (!(center_.field() == radius_.field()))
    throw Error(ErrorCode::DescriptorMismatch, "circle center and radius live in different fields");
  if (radius_.is_zero()) throw Error(ErrorCode::ZeroRadius, "circle radius must be nonzero");
}

bool Circle::contains(const Point& p) const {
  return squared_distance(p, center_) == radius_.square();
}

void Circle::require_on_circle(const Point& p) const {
  if (!contains(p))
    throw Error(ErrorCode::PointNotOnCircle, "point " + p.to_string() + " is not on the circle");
}

RotationParams::RotationParams(Element a, Element b) : a_(std::move(a)), b_(std::move(b)) {
  if (!(a_.field() == b_.field()))
    throw Error(ErrorCode::DescriptorMismatch, "rotation parameters live in different fields");
  if (!(a_.square() + b_.square()).is_one())
    throw Error(ErrorCode::InvalidRotationParams, "rotation parameters need a^2 + b^2 = 1");
}

Element squared_distance(const Point& p, const Point& q) {
  return (p.x - q.x).square() + (p.y - q.y).square();
}

Point translate(const Point& p, const Point& by) { return Point(p.x + by.x, p.y + by.y); }

Point rotate(const Point& p, const RotationParams& params, const Point& around) {
  const Element dx = p.x - around.x;
  const Element dy = p.y - around.y;
  const Element& a = params.a();
  const Element& b = params.b();
  return Point(around.x + a * dx + b * dy, around.y - b * dx + a * dy);
}

RotationParams rotation_between(const Point& p, const Point& q, const Circle& circle) {
  circle.require_on_circle(p);
  circle.require_on_circle(q);
  const Point& m = circle.center();
  const Element p1 = p.x - m.x, p2 = p.y - m.y;
  const Element q1 = q.x - m.x, q2 = q.y - m.y;
  const Element r2 = circle.radius().square();
  return RotationParams((q1 * p1 + q2 * p2) / r2, (q1 * p2 - q2 * p1) / r2);
}

Point point_from_parameter(const Circle& circle, const CircleParameter& t) {
  const Point& m = circle.center();
  const Element& r = circle.radius();
  if (std::holds_alternative<PointAtInfinity>(t)) return Point(m.x, m.y + r);
  const Element& s = std::get<Element>(t);
  if (!(s.field() == circle.field()))
    throw Error(ErrorCode::DescriptorMismatch, "parameter lives in a different field");
  if (circle.field().characteristic() == 2) return Point(m.x + s, m.y + s + r);
  const Element denom = s.square() + s.field().one();
  if (denom.is_zero())
    throw Error(ErrorCode::ParameterSquaresToMinusOne,
                "parameter " + s.to_string() + " squares to -1");
  const Element two = s.field().element(2);
  return Point(m.x + two * s * r / denom, m.y + r * (s.square() - s.field().one()) / denom);
}

std::vector<Point> enumerate_circle(const Circle& circle) {
  const Field& f = circle.field();
  if (!f.is_finite())
    throw Error(ErrorCode::InfiniteField, "the circle over Q has infinitely many points");
  std::vector<Point> points;
  points.reserve(circle_size(f));
  const bool char2 = f.characteristic() == 2;
  // Outside characteristic 2 the parameter t = infinity is the only point the secant
  // family misses; in characteristic 2 it coincides with t = 0.
  if (!char2) points.push_back(point_from_parameter(circle, PointAtInfinity{}));
  const Element minus_one = -f.one();
  for (const Element& t : f.elements()) {
    if (!char2 && t.square() == minus_one) continue;
    points.push_back(point_from_parameter(circle, t));
  }
  std::sort(points.begin(), points.end());
  return points;
}

RationalPointStream::RationalPointStream(Circle circle, Strategy strategy)
    : circle_(std::move(circle)), strategy_(strategy) {
  if (circle_.field().kind() != FieldKind::Rationals)
    throw Error(ErrorCode::WrongFieldKind, "rational point streams need a circle over Q");
}

CircleParameter RationalPointStream::peek_parameter() const {
  const Field& f = circle_.field();
  if (strategy_ == Strategy::PythagoreanFamily) {
    const Rational n(static_cast<long>(n_));
    return f.element((n - n.inverse()) / Rational(2));
  }
  if (step_ == 0) return PointAtInfinity{};
  if (step_ == 1) return f.zero();
  if (step_ % 2 == 0) {
    CalkinWilf copy = sweep_;
    return f.element(copy.next());
  }
  return f.element(-pending_);
}

Point RationalPointStream::next() {
  const CircleParameter t = peek_parameter();
  if (strategy_ == Strategy::PythagoreanFamily) {
    ++n_;
  } else {
    if (step_ >= 2 && step_ % 2 == 0) pending_ = sweep_.next();
    ++step_;
  }
  return point_from_parameter(circle_, t);
}

bool all_distances_vanish(const Circle& circle) {
  return circle.field().characteristic() == 2;
}

bool has_vanishing_distance_pair(const Circle& circle) {
  const auto points = enumerate_circle(circle);
  if (all_distances_vanish(circle)) return points.size() >= 2;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (squared_distance(points[i], points[j]).is_zero()) return true;
  return false;
}

}  // namespace circlering
