#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cremona/errors.hpp"
#include "cremona/jonquieres.hpp"

using namespace cremona;

namespace {

const ProjPoint E1(1, 0, 0), E2(0, 1, 0), E3(0, 0, 1);

int sum_sq(const BaseLocus& b) {
  int s = 0;
  for (const auto& w : b) s += w.multiplicity * w.multiplicity;
  return s;
}

}  // namespace

TEST_CASE("homaloidal data of sigma") {
  JonquieresData j = jonquieres_homaloidal(Word{{QuadraticProper::sigma()}});
  CHECK(j.degree == 2);
  CHECK(j.p0_multiplicity == 1);
  CHECK(j.simple.size() == 2);
  CHECK(jonquieres_homaloidal(Word{{LinearMap::identity()}}).degree == 1);
  CHECK_THROWS_AS(jonquieres_homaloidal(Word{{quadratic_from_points(E2, E3, ProjPoint(1, 1, 1))}}), CremonaError);
}

TEST_CASE("cubic de Jonquieres map from two quadratics") {
  TrackedMap s = TrackedMap::quadratic(QuadraticProper::sigma());
  TrackedMap q = jonquieres_quadratic(BubblePoint(ProjPoint(1, 2, 3)), BubblePoint(ProjPoint(2, -1, 5)));
  TrackedMap c = compose_tracked(q, s);
  CHECK(c.degree() == 3);
  JonquieresData j = jonquieres_data(c);
  CHECK(j.p0_multiplicity == 2);
  CHECK(j.simple.size() == 4);
  CHECK(sum_sq(j.all()) == 8);
  // Tracking agrees with the common zeros of the triple.
  BaseLocus direct = find_base_points(c.map.triple());
  REQUIRE(direct.size() == c.base.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(direct[i].point == c.base[i].point);
    CHECK(direct[i].multiplicity == c.base[i].multiplicity);
  }
}

TEST_CASE("quadratic maps through infinitely near clusters") {
  BubblePoint a(E1, {Direction::at(2)});
  TrackedMap t = jonquieres_quadratic(a, BubblePoint(ProjPoint(1, 1, 1)));
  CHECK(t.degree() == 2);
  CHECK(is_jonquieres(t.map.triple()));
  CHECK(system_multiplicity(t.map.triple(), a) == 1);
  BubblePoint b(E1, {Direction::at(2), Direction::at(5)});
  TrackedMap u = jonquieres_quadratic(a, b);
  CHECK(u.degree() == 2);
  CHECK(system_multiplicity(u.map.triple(), b) == 1);
  // Three points on a line do not define a quadratic map.
  CHECK_THROWS_AS(quadratic_through({BubblePoint(E1), BubblePoint(E2), BubblePoint(ProjPoint(1, 1, 0))}),
                  CremonaError);
}

TEST_CASE("line cases") {
  JonquieresData j = jonquieres_homaloidal(Word{{QuadraticProper::sigma()}});
  CHECK(classify_line_case(j, default_line()) == LineCase::TypeB);
  CHECK(classify_line_case(j, ProjLine(0, 1, -1)) == LineCase::TypeA);
  CHECK_THROWS_AS(classify_line_case(j, ProjLine(1, 0, 0)), CremonaError);
}

TEST_CASE("heavy points") {
  JonquieresData j = jonquieres_homaloidal(Word{{QuadraticProper::sigma()}});
  // A general line through [1:0:0].
  HomPoly l = HomPoly::linear(0, 2, 3);
  auto [q1, q2] = select_heavy_points(j, l, false);
  CHECK(multiplicity_at(l, BubblePoint(E1)) + multiplicity_at(l, q1) + multiplicity_at(l, q2) >= 1);
  CHECK_THROWS_AS(select_heavy_points(j, l, true), CremonaError);
}
