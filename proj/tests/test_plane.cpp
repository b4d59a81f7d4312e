#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "circlering/plane.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace circlering;
using testing::code_of;

namespace {

Point pt(const Field& f, const char* text) { return parse_point(f, text); }

std::vector<std::string> texts(const std::vector<Point>& points) {
  std::vector<std::string> out;
  for (const Point& p : points) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST_CASE("squared distances") {
  const Field f5 = Field::prime(5), f7 = Field::prime(7), q = Field::rationals();
  CHECK(squared_distance(pt(f5, "1,2"), pt(f5, "2,4")).is_zero());
  // (8/5 - 2)^2 + (6/5)^2 = 4/25 + 36/25; not a rational square.
  CHECK(squared_distance(pt(q, "8/5,6/5"), pt(q, "2,0")) == q.parse_element("8/5"));
  CHECK(!squared_distance(pt(q, "8/5,6/5"), pt(q, "2,0")).is_square());
  CHECK(squared_distance(pt(f7, "0,1"), pt(f7, "0,6")) == f7.element(4));
  CHECK(squared_distance(pt(f7, "0,1"), pt(f7, "1,0")) == f7.element(2));
  CHECK(squared_distance(pt(f7, "0,1"), pt(f7, "2,2")) == f7.element(5));
  CHECK(code_of([&] { squared_distance(pt(f5, "1,2"), pt(f7, "1,2")); }) ==
        ErrorCode::DescriptorMismatch);
}

TEST_CASE("circle construction") {
  const Field f7 = Field::prime(7);
  CHECK(code_of([&] { Circle(origin(f7), f7.zero()); }) == ErrorCode::ZeroRadius);
  const Circle c(origin(f7), f7.one());
  CHECK(c.contains(pt(f7, "2,2")));
  CHECK(!c.contains(pt(f7, "3,3")));
  CHECK(code_of([&] { c.require_on_circle(pt(f7, "3,3")); }) == ErrorCode::PointNotOnCircle);
}

TEST_CASE("translations and rotations") {
  const Field f7 = Field::prime(7);
  const RotationParams quarter(f7.zero(), f7.one());
  CHECK(rotate(pt(f7, "0,1"), quarter, origin(f7)) == pt(f7, "1,0"));
  const RotationParams id(f7.one(), f7.zero());
  CHECK(rotate(pt(f7, "3,5"), id, pt(f7, "2,6")) == pt(f7, "3,5"));
  CHECK(translate(pt(f7, "3,5"), pt(f7, "6,6")) == pt(f7, "2,4"));
  CHECK(code_of([&] { RotationParams(f7.one(), f7.one()); }) == ErrorCode::InvalidRotationParams);
}

TEST_CASE("isometries preserve squared distances") {
  const Field f = Field::prime(13);
  // All rotation parameters of F_13: the points of the unit circle.
  const auto params = enumerate_circle(Circle(origin(f), f.one()));
  auto rnd = [&] { return f.element(oracle::uniform(0, 12), 0); };
  for (int i = 0; i < 2000; ++i) {
    const Point p(rnd(), rnd()), q(rnd(), rnd()), m(rnd(), rnd()), by(rnd(), rnd());
    const Point& ab = params[oracle::uniform(0, params.size() - 1)];
    const RotationParams theta(ab.x, ab.y);
    CHECK(squared_distance(rotate(p, theta, m), rotate(q, theta, m)) == squared_distance(p, q));
    CHECK(squared_distance(translate(p, by), translate(q, by)) == squared_distance(p, q));
  }
}

TEST_CASE("rotation between two circle points") {
  const Field f13 = Field::prime(13), f7 = Field::prime(7);
  const Circle u13(origin(f13), f13.one()), u7(origin(f7), f7.one());
  const RotationParams same = rotation_between(pt(f13, "2,6"), pt(f13, "2,6"), u13);
  CHECK(same.a() == f13.one());
  CHECK(same.b().is_zero());
  // The matrix [[a, b], [-b, a]] takes (1,0) to (a, -b), so reaching (0,1) needs b = -1.
  const RotationParams q = rotation_between(pt(f13, "1,0"), pt(f13, "0,1"), u13);
  CHECK(q.a().to_string() == "0");
  CHECK(q.b().to_string() == "12");
  const RotationParams r = rotation_between(pt(f7, "1,0"), pt(f7, "2,2"), u7);
  CHECK(r.a().to_string() == "2");
  CHECK(r.b().to_string() == "5");
  CHECK(rotate(pt(f7, "1,0"), r, origin(f7)) == pt(f7, "2,2"));
  CHECK(code_of([&] { rotation_between(pt(f7, "1,0"), pt(f7, "3,3"), u7); }) ==
        ErrorCode::PointNotOnCircle);
}

TEST_CASE("rotation between is an exact transitivity witness") {
  for (const char* d : {"Fp:7", "Fp:11", "Fp:13", "Fp2:3,x^2+1", "Fp2:5,x^2+3"}) {
    const Field f = Field::parse(d);
    for (const Circle& c : {Circle(origin(f), f.one()), Circle(pt(f, "1,2"), f.element(2))}) {
      const auto points = enumerate_circle(c);
      for (const Point& p : points)
        for (const Point& q : points)
          CHECK(rotate(p, rotation_between(p, q, c), c.center()) == q);
    }
  }
}

TEST_CASE("parametrization") {
  const Field f7 = Field::prime(7), q = Field::rationals(), f13 = Field::prime(13);
  const Circle c7(origin(f7), f7.one());
  CHECK(point_from_parameter(c7, f7.element(2)) == pt(f7, "5,2"));
  const Circle shifted(pt(f7, "3,4"), f7.element(2));
  CHECK(point_from_parameter(shifted, PointAtInfinity{}) == pt(f7, "3,6"));
  CHECK(point_from_parameter(Circle(origin(q), q.one()), q.one()) == pt(q, "1,0"));
  CHECK(code_of([&] { point_from_parameter(Circle(origin(f13), f13.one()), f13.element(5)); }) ==
        ErrorCode::ParameterSquaresToMinusOne);
  const Field f4 = Field::quadratic(2);
  const Circle c4(pt(f4, "1,a"), f4.one());
  for (const Element& t : f4.elements()) CHECK(c4.contains(point_from_parameter(c4, t)));
}

TEST_CASE("distance formula along the parametrization") {
  for (u64 p : {11, 13, 101, 1009}) {
    const Field f = Field::prime(p);
    for (int i = 0; i < 200; ++i) {
      const Element r = f.element(oracle::uniform(1, p - 1), 0);
      const Circle c(Point(f.element(oracle::uniform(0, p - 1), 0), f.element(3)), r);
      const Element t1 = f.element(oracle::uniform(0, p - 1), 0);
      const Element t2 = f.element(oracle::uniform(0, p - 1), 0);
      const Element n1 = t1.square() + f.one(), n2 = t2.square() + f.one();
      if (n1.is_zero() || n2.is_zero()) continue;
      const Point a = point_from_parameter(c, t1), b = point_from_parameter(c, t2);
      const Element four_r2 = f.element(4) * r.square();
      CHECK(squared_distance(a, b) == four_r2 * (t1 - t2).square() / (n1 * n2));
      CHECK(squared_distance(a, point_from_parameter(c, PointAtInfinity{})) == four_r2 / n1);
    }
  }
}

TEST_CASE("golden circle enumerations") {
  const Field f7 = Field::prime(7);
  CHECK(texts(enumerate_circle(Circle(origin(f7), f7.one()))) ==
        std::vector<std::string>{"(0,1)", "(0,6)", "(1,0)", "(2,2)", "(2,5)", "(5,2)", "(5,5)",
                                 "(6,0)"});
  const Field f13 = Field::prime(13);
  CHECK(texts(enumerate_circle(Circle(pt(f13, "7,11"), f13.element(6)))) ==
        std::vector<std::string>{"(0,11)", "(1,11)", "(4,10)", "(4,12)", "(6,1)", "(6,8)",
                                 "(7,4)", "(7,5)", "(8,1)", "(8,8)", "(10,10)", "(10,12)"});
  // (4,1) does not satisfy x^2 + y^2 = 1 over F_5; the fourth point is (0,4).
  const Field f5 = Field::prime(5);
  CHECK(texts(enumerate_circle(Circle(origin(f5), f5.one()))) ==
        std::vector<std::string>{"(0,1)", "(0,4)", "(1,0)", "(4,0)"});
  CHECK_THROWS_AS(enumerate_circle(Circle(origin(Field::rationals()), Field::rationals().one())),
                  Error);
}

TEST_CASE("enumeration agrees with a scan of the plane") {
  auto compare = [](const Field& f, const oracle::Gf& g, const Element& r, const Point& m) {
    const auto mine = enumerate_circle(Circle(m, r));
    const auto theirs =
        oracle::circle(g, {m.x.c0(), m.x.c1()}, {m.y.c0(), m.y.c1()}, {r.c0(), r.c1()});
    REQUIRE(mine.size() == theirs.size());
    for (std::size_t i = 0; i < mine.size(); ++i) {
      CHECK(mine[i].x.c0() == theirs[i].first.first);
      CHECK(mine[i].x.c1() == theirs[i].first.second);
      CHECK(mine[i].y.c0() == theirs[i].second.first);
      CHECK(mine[i].y.c1() == theirs[i].second.second);
    }
    CHECK(mine.size() == circle_size(f));
  };
  for (u64 p : odd_primes(3, 31)) {
    const Field f = Field::prime(p);
    for (u64 r = 1; r < p; r += 3) compare(f, {p}, f.element(r, 0), Point(f.element(2), f.one()));
  }
  for (const char* d : {"Fp2:2,x^2+x+1", "Fp2:3,x^2+1", "Fp2:5,x^2+3", "Fp2:7,x^2+1"}) {
    const Field f = Field::parse(d);
    const auto [c0, c1] = f.modulus_polynomial();
    const oracle::Gf g{f.characteristic(), 2, c0, c1};
    for (const char* r : {"1", "a", "1+a"}) compare(f, g, f.parse_element(r), origin(f));
  }
}

TEST_CASE("circle cardinality formula") {
  for (u64 p : odd_primes(3, 200)) {
    const Field f = Field::prime(p);
    for (u64 r : {u64{1}, p - 1, (p + 1) / 2}) {
      const auto points = enumerate_circle(Circle(Point(f.one(), f.element(5)), f.element(r, 0)));
      CHECK(points.size() == (p % 4 == 1 ? p - 1 : p + 1));
      CHECK(std::adjacent_find(points.begin(), points.end()) == points.end());
    }
  }
  CHECK(enumerate_circle(Circle(origin(Field::quadratic(2)), Field::quadratic(2).one())).size() == 4);
  for (u64 p : odd_primes(3, 50)) {
    const Field f = Field::quadratic(p);
    const Circle c(origin(f), f.element(1, 1));
    const auto points = enumerate_circle(c);
    CHECK(points.size() == f.size() - 1);
    for (const Point& x : points) CHECK(c.contains(x));
  }
}

TEST_CASE("characteristic two: every distance on a circle vanishes") {
  for (const Field& f : {Field::prime(2), Field::quadratic(2)}) {
    for (const Element& r : f.elements()) {
      if (r.is_zero()) continue;
      const Circle c(origin(f), r);
      const auto points = enumerate_circle(c);
      CHECK(points.size() == f.size());
      for (const Point& a : points)
        for (const Point& b : points) CHECK(squared_distance(a, b).is_zero());
      CHECK(all_distances_vanish(c));
      CHECK(has_vanishing_distance_pair(c));
    }
  }
}

TEST_CASE("no vanishing distances in odd characteristic") {
  for (u64 p : {3, 5, 7, 11, 13, 29}) {
    const Field f = Field::prime(p);
    const Circle c(origin(f), f.one());
    CHECK(!has_vanishing_distance_pair(c));
    CHECK(!all_distances_vanish(c));
  }
  const Field f49 = Field::parse("Fp2:7,x^2+1");
  CHECK(!has_vanishing_distance_pair(Circle(origin(f49), f49.parse_element("a"))));
}

TEST_CASE("rational point stream") {
  const Field q = Field::rationals();
  const Circle c(pt(q, "1/2,-3"), q.parse_element("5/3"));
  RationalPointStream stream(c);
  auto t = stream.peek_parameter();
  CHECK(std::get<Element>(t).is_zero());
  CHECK(stream.next() == pt(q, "1/2,-14/3"));
  t = stream.peek_parameter();
  const Element t2 = std::get<Element>(t);
  CHECK(t2 == q.parse_element("3/4"));
  CHECK((t2.square() + q.one()) == q.parse_element("25/16"));
  std::set<Point> seen;
  RationalPointStream fresh(c);
  for (int i = 0; i < 100; ++i) {
    const Point p = fresh.next();
    CHECK(c.contains(p));
    seen.insert(p);
  }
  CHECK(seen.size() == 100);

  RationalPointStream sweep(c, RationalPointStream::Strategy::FullSweep);
  CHECK(sweep.next() == pt(q, "1/2,-4/3"));  // the marker point (m1, m2 + r)
  std::set<Point> swept;
  for (int i = 0; i < 200; ++i) {
    const Point p = sweep.next();
    CHECK(c.contains(p));
    swept.insert(p);
  }
  CHECK(swept.size() == 200);
  CHECK_THROWS_AS(RationalPointStream(Circle(origin(Field::prime(7)), Field::prime(7).one())), Error);
}
