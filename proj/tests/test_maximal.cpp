#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "circlering/maximal.hpp"
#include "support/expect.hpp"
#include "support/oracles.hpp"

using namespace circlering;
using testing::code_of;

namespace {

Point pt(const Field& f, const char* text) { return parse_point(f, text); }

oracle::Gf gf(const Field& f) {
  if (f.kind() == FieldKind::Prime) return {f.characteristic()};
  const auto [c0, c1] = f.modulus_polynomial();
  return {f.characteristic(), 2, c0, c1};
}

oracle::Gf::E raw(const Element& e) { return {e.c0(), e.c1()}; }
oracle::Pt raw(const Point& p) { return {raw(p.x), raw(p.y)}; }

std::vector<std::string> texts(const std::vector<Point>& points) {
  std::vector<std::string> out;
  for (const Point& p : points) out.push_back(p.to_string());
  return out;
}

std::set<std::string> element_texts(const std::vector<PerfectDistanceReport>& reports) {
  std::set<std::string> out;
  for (const auto& r : reports) out.insert(r.q.to_string());
  return out;
}

bool pairwise_rational(const Circle& c, const std::vector<Point>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (!is_rational_distance(c, points[i], points[j])) return false;
  return true;
}

std::set<std::string> distances_within(const std::vector<Point>& points) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      out.insert(squared_distance(points[i], points[j]).to_string());
  return out;
}

const Field& f49() {
  static const Field f = Field::parse("Fp2:7,x^2+1");
  return f;
}

}  // namespace

TEST_CASE("rational distances") {
  const Field f7 = Field::prime(7);
  const Circle c(origin(f7), f7.one());
  CHECK(is_rational_distance(c, pt(f7, "0,1"), pt(f7, "1,0")));
  CHECK(!is_rational_distance(c, pt(f7, "0,1"), pt(f7, "2,2")));
  CHECK(code_of([&] { is_rational_distance(c, pt(f7, "0,1"), pt(f7, "3,3")); }) ==
        ErrorCode::PointNotOnCircle);

  const Circle u49(origin(f49()), f49().one());
  const Point seed = pt(f49(), "a+4,5a+2");
  int at_three = 0;
  for (const Point& p : enumerate_circle(u49)) {
    if (squared_distance(seed, p) != f49().element(3)) continue;
    ++at_three;
    CHECK(!is_rational_distance(u49, seed, p));
  }
  CHECK(at_three > 0);
  // 2 is a square of F_7, so a point at squared distance 2 is at rational distance.
  for (const Point& p : enumerate_circle(u49))
    if (squared_distance(seed, p) == f49().element(2)) CHECK(is_rational_distance(u49, seed, p));
}

TEST_CASE("circular point sets validate their points") {
  const Field f7 = Field::prime(7);
  const Circle c(origin(f7), f7.one());
  CHECK(code_of([&] { CircularPointSet(c, {pt(f7, "0,1"), pt(f7, "2,2")}); }) ==
        ErrorCode::NotCircularPointSet);
  CHECK(code_of([&] { CircularPointSet(c, {pt(f7, "3,3")}); }) == ErrorCode::PointNotOnCircle);
  const CircularPointSet s(c, {pt(f7, "1,0"), pt(f7, "0,1"), pt(f7, "1,0")});
  CHECK(s.size() == 2);
  CHECK(s.points().front() == pt(f7, "0,1"));
  CHECK(s.contains(pt(f7, "1,0")));
}

TEST_CASE("prime field partition: golden examples") {
  const Field f7 = Field::prime(7);
  const auto [c1, c2] = partition_prime_field_circle(Circle(origin(f7), f7.one()));
  // The class holding (m1, m2 + r) is returned second.
  CHECK(texts(c1.points()) == std::vector<std::string>{"(2,2)", "(2,5)", "(5,2)", "(5,5)"});
  CHECK(texts(c2.points()) == std::vector<std::string>{"(0,1)", "(0,6)", "(1,0)", "(6,0)"});
  CHECK(distances_within(c1.points()) == std::set<std::string>{"2", "4"});
  CHECK(distances_within(c2.points()) == std::set<std::string>{"2", "4"});
  for (const Point& a : c1.points())
    for (const Point& b : c2.points()) CHECK(!squared_distance(a, b).is_prime_square());

  const Field f13 = Field::prime(13);
  const auto [d1, d2] = partition_prime_field_circle(Circle(pt(f13, "7,11"), f13.element(6)));
  CHECK(d1.size() == 6);
  CHECK(d2.size() == 6);
  CHECK(distances_within(d1.points()) == std::set<std::string>{"1", "10", "4"});
  CHECK(distances_within(d2.points()) == std::set<std::string>{"1", "10", "4"});

  const Field f3 = Field::prime(3);
  const auto [e1, e2] = partition_prime_field_circle(Circle(origin(f3), f3.one()));
  CHECK(e1.size() == 2);
  CHECK(e2.size() == 2);

  CHECK(code_of([] {
          partition_prime_field_circle(Circle(origin(Field::prime(2)), Field::prime(2).one()));
        }) == ErrorCode::WrongFieldKind);
  CHECK(code_of([] { partition_prime_field_circle(Circle(origin(f49()), f49().one())); }) ==
        ErrorCode::WrongFieldKind);
}

TEST_CASE("prime field partition agrees with the rationality graph") {
  for (u64 p : odd_primes(3, 200)) {
    const Field f = Field::prime(p);
    const auto g = gf(f);
    const u64 step = p <= 47 ? 1 : p / 5;
    for (u64 r = 1; r < p; r += step) {
      const Circle c(Point(f.element(3), f.element(1)), f.element(r, 0));
      const auto [c1, c2] = partition_prime_field_circle(c);
      const u64 expected = p % 4 == 1 ? (p - 1) / 2 : (p + 1) / 2;
      CHECK(c1.size() == expected);
      CHECK(c2.size() == expected);
      CHECK(c2.contains(point_from_parameter(c, PointAtInfinity{})));
      std::vector<oracle::Pt> all;
      std::vector<int> side;
      for (const Point& x : c1.points()) all.push_back(raw(x)), side.push_back(1);
      for (const Point& x : c2.points()) all.push_back(raw(x)), side.push_back(2);
      const auto graph = oracle::rational_graph(g, all);
      bool ok = true;
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
          if (i != j && graph[i][j] != (side[i] == side[j])) ok = false;
      CHECK_MESSAGE(ok, "p=" << p << " r=" << r);
    }
  }
}

TEST_CASE("rational circle cosets") {
  const Field q = Field::rationals();
  const Circle c(origin(q), q.one());
  std::vector<CircleParameter> sample{q.zero(), q.parse_element("3/4"), q.parse_element("4/3"),
                                      PointAtInfinity{}};
  auto groups = partition_rational_circle_points(c, sample);
  REQUIRE(groups.size() == 1);
  CHECK(groups.begin()->first == 1);
  CHECK(groups.begin()->second.size() == 4);

  sample.push_back(q.one());
  sample.push_back(q.parse_element("1/7"));  // 1/49 + 1 = 50/49, class 2
  sample.push_back(q.parse_element("2"));    // 5
  groups = partition_rational_circle_points(c, sample);
  REQUIRE(groups.size() == 3);
  CHECK(groups.at(2).size() == 2);
  CHECK(groups.at(5).size() == 1);
  CHECK(groups.at(1).contains(pt(q, "0,1")));
  for (const auto& [cls, set] : groups) CHECK(pairwise_rational(c, set.points()));
  // Across classes the distance is not a rational square.
  CHECK(!is_rational_distance(c, groups.at(1).points()[0], groups.at(2).points()[0]));
}

TEST_CASE("algebraic condition") {
  const Field f7 = Field::prime(7), f5 = Field::prime(5);
  const Circle c7(origin(f7), f7.one()), c5(origin(f5), f5.one());
  CHECK(check_acp(c7, f7.element(2)));
  CHECK(!check_acp(c7, f7.element(1)));
  CHECK(check_acp(c5, f5.element(4)));
  const auto report = classify_distance(c5, f5.element(4));
  CHECK(report.is_rational);
  CHECK(report.satisfies_acp);
  CHECK(!report.is_perfect);
  CHECK(!report.witness);
}

TEST_CASE("perfect distances: golden examples") {
  const Field f7 = Field::prime(7), f5 = Field::prime(5), q = Field::rationals();
  CHECK(element_texts(perfect_distances(Circle(origin(f7), f7.one()))) ==
        std::set<std::string>{"2", "4"});
  CHECK(perfect_distances(Circle(origin(f5), f5.one())).empty());

  const Circle c2(origin(q), q.element(2));
  const auto reports = perfect_distances(c2);
  const Element target = q.parse_element("144/25");
  const auto hit = std::find_if(reports.begin(), reports.end(),
                                [&](const auto& r) { return r.q == target; });
  REQUIRE(hit != reports.end());
  CHECK(std::find_if(reports.begin(), reports.end(), [&](const auto& r) {
          return r.q == q.element(16);
        }) != reports.end());
  for (const auto& r : reports) {
    REQUIRE(r.witness);
    const auto& [a, b, w] = *r.witness;
    CHECK(squared_distance(a, b) == r.q);
    CHECK(pairwise_rational(c2, {a, b, w}));
    CHECK(std::set<Point>{a, b, w}.size() == 3);
  }
  CHECK(code_of([] {
          perfect_distances(Circle(origin(Field::prime(2)), Field::prime(2).one()));
        }) == ErrorCode::WrongFieldKind);
}

TEST_CASE("perfect distances agree with the triangle oracle") {
  auto compare = [](const Field& f, const Element& r) {
    const Circle c(origin(f), r);
    const auto g = gf(f);
    std::vector<oracle::Pt> points;
    for (const Point& p : enumerate_circle(c)) points.push_back(raw(p));
    std::set<oracle::Gf::E> mine;
    for (const auto& report : perfect_distances(c)) {
      mine.insert(raw(report.q));
      REQUIRE(report.witness);
      const auto& [a, b, w] = *report.witness;
      CHECK(squared_distance(a, b) == report.q);
      CHECK(pairwise_rational(c, {a, b, w}));
    }
    CHECK_MESSAGE(mine == oracle::triangle_distances(g, points),
                  f.to_string() << " r=" << r.to_string());
  };
  for (u64 p : odd_primes(3, 31)) {
    const Field f = Field::prime(p);
    for (u64 r = 1; r < p; ++r) compare(f, f.element(r, 0));
  }
  for (const char* d : {"Fp2:3,x^2+1", "Fp2:5,x^2+3", "Fp2:7,x^2+1"}) {
    const Field f = Field::parse(d);
    for (const char* r : {"1", "2", "a", "1+a"}) compare(f, f.parse_element(r));
  }
}

TEST_CASE("no triangle when the squared radius leaves the prime field") {
  for (u64 p : {3, 5, 7, 11}) {
    const Field f = Field::quadratic(p);
    for (const Element& r : f.elements()) {
      if (r.is_zero() || r.square().in_prime_subfield()) continue;
      const Circle c(origin(f), r);
      CHECK(perfect_distances(c).empty());
      std::vector<oracle::Pt> points;
      for (const Point& x : enumerate_circle(c)) points.push_back(raw(x));
      CHECK(oracle::triangle_distances(gf(f), points).empty());
    }
  }
}

TEST_CASE("q_r is invariant under t -> -t and t -> r^2/t") {
  for (u64 p : {11, 13, 101}) {
    const Field f = Field::prime(p);
    for (u64 ri = 1; ri < 10; ++ri) {
      const Element r = f.element(ri, 0);
      for (const Element& t : f.elements()) {
        if (t.is_zero() || (t.square() + r.square()).is_zero()) continue;
        const Element q = q_r(r, t);
        CHECK(q_r(r, -t) == q);
        CHECK(q_r(r, r.square() / t) == q);
      }
    }
  }
  const Field f13 = Field::prime(13);
  CHECK(code_of([&] { q_r(f13.one(), f13.element(5)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("points at a perfect distance") {
  const Field f7 = Field::prime(7), f13 = Field::prime(13);
  const Circle c7(origin(f7), f7.one());
  CHECK(texts(points_at_distance(c7, pt(f7, "0,6"), f7.element(2))) ==
        std::vector<std::string>{"(1,0)", "(6,0)"});
  CHECK(texts(points_at_distance(c7, pt(f7, "0,6"), f7.element(4))) ==
        std::vector<std::string>{"(0,1)"});
  CHECK(code_of([&] { points_at_distance(c7, pt(f7, "0,6"), f7.element(1)); }) ==
        ErrorCode::NotPerfect);

  const Circle c13(pt(f13, "7,11"), f13.element(6));
  const auto [violet, blue] = partition_prime_field_circle(c13);
  const auto found = points_at_distance(c13, pt(f13, "7,5"), f13.element(4));
  CHECK(texts(found) == std::vector<std::string>{"(6,1)", "(8,1)"});
  const bool same_class = violet.contains(pt(f13, "7,5"));
  for (const Point& x : found) CHECK((same_class ? violet : blue).contains(x));
}

TEST_CASE("extension property: a perfect pair always completes to a triangle") {
  for (u64 p : {7, 11, 13, 17, 29}) {
    const Field f = Field::prime(p);
    for (u64 ri : {u64{1}, u64{2}, p - 1}) {
      const Circle c(origin(f), f.element(ri, 0));
      const auto points = enumerate_circle(c);
      std::set<Element> perfect;
      for (const auto& rep : perfect_distances(c)) perfect.insert(rep.q);
      for (const Point& a : points)
        for (const Point& b : points) {
          if (a == b || !perfect.count(squared_distance(a, b))) continue;
          const bool extends = std::any_of(points.begin(), points.end(), [&](const Point& w) {
            return w != a && w != b && is_rational_distance(c, a, w) &&
                   is_rational_distance(c, b, w);
          });
          CHECK(extends);
        }
      // Every point at a perfect distance from a base is found, and nothing else.
      for (const Element& q : perfect) {
        const Point& base = points.front();
        std::vector<Point> scan;
        for (const Point& x : points)
          if (squared_distance(base, x) == q) scan.push_back(x);
        CHECK(points_at_distance(c, base, q) == scan);
      }
    }
  }
}

TEST_CASE("growing maximal sets") {
  const Circle u49(origin(f49()), f49().one());
  const auto grown = grow_maximal_set(u49, pt(f49(), "a+4,5a+2"));
  CHECK(grown.set.size() == 4);
  CHECK(grown.radius_squared_in_prime_field);
  CHECK(pairwise_rational(u49, grown.set.points()));

  const Field f7 = Field::prime(7);
  CHECK(texts(grow_maximal_set(Circle(origin(f7), f7.one()), pt(f7, "0,1")).set.points()) ==
        std::vector<std::string>{"(0,1)", "(0,6)", "(1,0)", "(6,0)"});

  const Field f4 = Field::quadratic(2);
  CHECK(grow_maximal_set(Circle(origin(f4), f4.one()), pt(f4, "1,0")).set.size() == 4);

  const Field f9 = Field::parse("Fp2:3,x^2+1");
  const auto outside = grow_maximal_set(Circle(origin(f9), f9.parse_element("1+a")),
                                        pt(f9, "1+a,0"));
  CHECK(!outside.radius_squared_in_prime_field);
  CHECK(outside.set.size() <= 2);
}

TEST_CASE("maximal sets over the rationals") {
  const Field q = Field::rationals();
  const Circle c(origin(q), q.one());
  MaximalOptions options;
  options.rational_prefix = 40;
  auto grown = grow_maximal_set(c, pt(q, "1,0"), options);
  REQUIRE(grown.stream);
  CHECK(grown.set.size() == 40);
  CHECK(pairwise_rational(c, grown.set.points()));
  // Squares of rotations are at rational distance from the identity (1,0).
  for (u64 n = 1; n < 30; ++n) {
    const Element t = q.element(Rational(mpz_class(n), mpz_class(n + 2)));
    const Point p = point_from_parameter(c, t);
    const Element a = p.x, b = p.y;
    const Point sq(a * a - b * b, q.element(2) * a * b);
    CHECK(is_rational_distance(c, pt(q, "1,0"), sq));
  }
  std::vector<Point> more;
  for (int i = 0; i < 60; ++i) more.push_back(grown.stream->next());
  CHECK(pairwise_rational(c, more));
  CHECK(std::set<Point>(more.begin(), more.end()).size() == more.size());

  const Circle shifted(pt(q, "1/2,1/3"), q.parse_element("5/7"));
  RationalMaximalStream s(shifted, pt(q, "1/2,-8/21"));
  std::vector<Point> seq;
  for (int i = 0; i < 30; ++i) seq.push_back(s.next());
  CHECK(seq.front() == pt(q, "1/2,-8/21"));
  CHECK(pairwise_rational(shifted, seq));
}

TEST_CASE("e-maximal sets") {
  const Circle u49(origin(f49()), f49().one());
  const auto sets = enumerate_emaximal_sets(u49, pt(f49(), "a+4,5a+2"));
  REQUIRE(sets.size() == 3);
  CHECK(sets[0].size() == 4);
  CHECK(sets[0].status() == MaximalityStatus::CMaximal);
  CHECK(sets[1].size() == 2);
  CHECK(sets[2].size() == 2);
  CHECK(sets[1].status() == MaximalityStatus::EMaximal);

  const Field f7 = Field::prime(7), f3 = Field::prime(3);
  const auto s7 = enumerate_emaximal_sets(Circle(origin(f7), f7.one()), pt(f7, "0,1"));
  REQUIRE(s7.size() == 1);
  CHECK(s7[0].size() == 4);
  for (const Point& seed : enumerate_circle(Circle(origin(f3), f3.one()))) {
    const auto s3 = enumerate_emaximal_sets(Circle(origin(f3), f3.one()), seed);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].size() == 2);
  }
  MaximalOptions tiny;
  tiny.clique_cap = 10;
  CHECK(code_of([&] { enumerate_emaximal_sets(u49, pt(f49(), "a+4,5a+2"), tiny); }) ==
        ErrorCode::CircleTooLarge);
  const Field q = Field::rationals();
  CHECK(code_of([&] { enumerate_emaximal_sets(Circle(origin(q), q.one()), pt(q, "1,0")); }) ==
        ErrorCode::InfiniteField);
}

TEST_CASE("e-maximal sets agree with the clique oracle") {
  for (const char* d : {"Fp:5", "Fp:7", "Fp:13", "Fp2:3,x^2+1", "Fp2:5,x^2+3", "Fp2:7,x^2+1"}) {
    const Field f = Field::parse(d);
    for (const char* r : {"1", "2", "a"}) {
      if (f.kind() == FieldKind::Prime && std::string(r) == "a") continue;
      const Circle c(origin(f), f.parse_element(r));
      const auto points = enumerate_circle(c);
      std::vector<oracle::Pt> raw_points;
      for (const Point& x : points) raw_points.push_back(raw(x));
      const auto graph = oracle::rational_graph(gf(f), raw_points);
      for (std::size_t v : {std::size_t{0}, points.size() / 2}) {
        std::set<std::vector<std::string>> theirs, mine;
        for (const auto& clique : oracle::maximal_cliques_with(graph, v)) {
          std::vector<std::string> s;
          for (std::size_t i : clique) s.push_back(points[i].to_string());
          theirs.insert(s);
        }
        for (const auto& set : enumerate_emaximal_sets(c, points[v])) mine.insert(texts(set.points()));
        CHECK_MESSAGE(mine == theirs, d << " r=" << r);
      }
    }
  }
}

TEST_CASE("cardinality table") {
  const Field f49c = f49();
  CHECK(cmaximal_cardinality(f49c.one()).to_string() == "4");
  const Field f9 = Field::parse("Fp2:3,x^2+1");
  CHECK(classify_radius(f9.parse_element("a")) == RadiusClass::SquareInPrimeField);
  CHECK(cmaximal_cardinality(f9.parse_element("a")).to_string() == "2");
  const Field q = Field::rationals();
  CHECK(cmaximal_cardinality(q.one()).kind == CardinalityAnswer::Kind::CountablyInfinite);
  CHECK(cmaximal_cardinality(Field::quadratic(2).one()).value == 4);
  CHECK(cmaximal_cardinality(Field::prime(13).element(3)).value == 6);
  CHECK(cmaximal_cardinality(Field::prime(11).element(3)).value == 6);
  const auto outside = cmaximal_cardinality(Field::parse("Fp2:5,x^2+3").parse_element("1+a"));
  CHECK(outside.kind == CardinalityAnswer::Kind::AtMostTwo);
}

TEST_CASE("table instances match the grown sets and the clique oracle") {
  for (const Element& r : table_instances()) {
    const TableRecord rec = verify_table_instance(r);
    CHECK_MESSAGE(rec.match, r.field().to_string() << " r=" << r.to_string());
    const Field f = r.field();
    if (f.size() > 49) continue;
    std::vector<oracle::Pt> points;
    for (const Point& x : enumerate_circle(Circle(origin(f), r))) points.push_back(raw(x));
    const std::size_t best = oracle::max_clique_size(oracle::rational_graph(gf(f), points));
    if (rec.expected.kind == CardinalityAnswer::Kind::Finite)
      CHECK(best == rec.expected.value);
    else
      CHECK(best <= 2);
  }
}

TEST_CASE("prime field theorem records") {
  for (u64 p : {3, 5, 7, 13, 97}) {
    const auto rec = verify_prime_theorem(p, true);
    CHECK(rec.match);
    CHECK(rec.graph_checked);
    CHECK(rec.radii_checked == p - 1);
    CHECK(rec.class_sizes == std::vector<u64>{rec.expected_class_size});
  }
}

TEST_CASE("uniformity") {
  const Field f7 = Field::prime(7), f13 = Field::prime(13), f5 = Field::prime(5);
  CHECK(check_uniformity(Circle(origin(f7), f7.one())));
  CHECK(check_uniformity(Circle(pt(f13, "7,11"), f13.element(6))));
  std::vector<Point> parabola;
  for (const Element& x : f5.elements()) parabola.emplace_back(x, x.square());
  CHECK(!check_uniformity(parabola));
  CHECK(code_of([&] { check_uniformity(Circle(origin(f49()), f49().one()), 10); }) ==
        ErrorCode::CircleTooLarge);
}

TEST_CASE("mod 4 orbit count") {
  const auto r13 = verify_mod4_instance(13, 1);
  CHECK(r13.admissible == 10);
  CHECK(r13.orbits_of_two == 1);
  CHECK(r13.orbits_of_four == 2);
  CHECK(r13.sqrt_minus_one);
  CHECK(r13.match);
  const auto r7 = verify_mod4_instance(7, 1);
  CHECK(r7.admissible == 6);
  CHECK(!r7.sqrt_minus_one);
  CHECK(r7.match);
  const auto r9 = verify_mod4_instance(3, 2);
  CHECK(r9.size == 9);
  CHECK(r9.sqrt_minus_one);
  CHECK(r9.match);
  for (auto [p, k] : odd_prime_powers(400)) {
    const auto rec = verify_mod4_instance(p, k);
    CHECK(rec.match);
    CHECK(rec.sqrt_minus_one == (rec.size % 4 == 1));
  }
  CHECK(odd_prime_powers(30) == std::vector<std::pair<u64, unsigned>>{
                                    {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {17, 1},
                                    {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1}});
}
