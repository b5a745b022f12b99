#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cremona/bubble.hpp"
#include "cremona/errors.hpp"

using namespace cremona;

namespace {

const ProjPoint E1(1, 0, 0), E2(0, 1, 0), E3(0, 0, 1);

LinearMap rows(std::initializer_list<long> r) {
  std::array<Scalar, 9> a;
  int i = 0;
  for (long v : r) a[i++] = v;
  return LinearMap::from_rows(a);
}

HomPoly mono(int a, int b, int c, long k = 1) { return HomPoly::monomial({a, b, c}, Scalar(k)); }

int total(const BaseLocus& b) {
  int s = 0;
  for (const auto& w : b) s += w.multiplicity;
  return s;
}

}  // namespace

TEST_CASE("contraction depth of short words") {
  ProjLine l = default_line();
  CHECK(contraction_depth(RationalMap(sigma_triple()), l).depth == 0);
  // A sends L to z = 0, which sigma contracts to e3.
  LinearMap a = rows({1, 0, 0, 0, 0, 1, 1, -1, 0});
  Word w{{QuadraticProper::sigma(), a}};
  ContractionProfile p = contraction_depth(w, l);
  CHECK(p.depth == 1);
  REQUIRE(p.center);
  CHECK(p.center->base == E3);
  CHECK(p.center->proper());
}

TEST_CASE("pushing points through sigma") {
  // [1:1:0] lies on the contracted line z = 0; its image is the direction x = y at e3.
  PushResult r = push_bubble_point(BubblePoint(ProjPoint(1, 1, 0)), sigma_triple());
  REQUIRE(std::holds_alternative<BubblePoint>(r));
  BubblePoint b = std::get<BubblePoint>(r);
  CHECK(b.base == E3);
  REQUIRE(b.level() == 1);
  CHECK(b.tower[0] == Direction::at(1));

  // The exceptional line over a base point is sent to a line.
  PushResult e = push_bubble_point(BubblePoint(E1), sigma_triple());
  REQUIRE(std::holds_alternative<ExceptionalCurve>(e));
  Implicit img = implicitize(std::get<ExceptionalCurve>(e).image);
  CHECK(img.equation.degree() == 1);
  CHECK(img.equation == HomPoly::var(0));

  // A point in the first neighbourhood of e1 goes to a proper point of x = 0.
  PushResult f = push_bubble_point(BubblePoint(E1, {Direction::at(2)}), sigma_triple());
  REQUIRE(std::holds_alternative<BubblePoint>(f));
  BubblePoint g = std::get<BubblePoint>(f);
  CHECK(g.proper());
  CHECK(is_zero(g.base[0]));

  CHECK(push_bubble_point(BubblePoint(E3, {Direction::at(5)}), LinearMap::diag(1, 2, 1)) ==
        BubblePoint(E3, {Direction::at(10)}));
}

TEST_CASE("multiplicities") {
  HomPoly cusp = mono(0, 2, 1) - mono(3, 0, 0);
  CHECK(multiplicity_at(cusp, BubblePoint(E3)) == 2);
  CHECK(multiplicity_at(cusp, BubblePoint(E3, {Direction::at(0)})) == 1);
  CHECK(multiplicity_at(cusp, BubblePoint(E3, {Direction::at(1)})) == 0);
  CHECK(multiplicity_at(cusp, BubblePoint(ProjPoint(1, 1, 1))) == 1);
  // Tacnode y^2 z^2 = x^4 has two infinitely near double points.
  HomPoly tac = mono(0, 2, 2) - mono(4, 0, 0);
  CHECK(multiplicity_at(tac, BubblePoint(E3)) == 2);
  CHECK(multiplicity_at(tac, BubblePoint(E3, {Direction::at(0)})) == 2);
  CHECK(multiplicity_at(tac, BubblePoint(E3, {Direction::at(0), Direction::at(1)})) == 1);

  // The cusp parametrized as (s^2 t : s^3 : t^3).
  ParamCurve c = reduce({BinaryForm(3, UniPoly({Scalar(0), Scalar(0), Scalar(1)})),
                         BinaryForm(3, UniPoly({Scalar(0), Scalar(0), Scalar(0), Scalar(1)})),
                         BinaryForm(3, UniPoly({Scalar(1)}))});
  CHECK(multiplicity_at(c, BubblePoint(E3)) == 2);
  CHECK(multiplicity_at(c, BubblePoint(E3, {Direction::at(0)})) == 1);
  CHECK(multiplicity_at(c, BubblePoint(E3, {Direction::at_infinity()})) == 0);

  CHECK(system_multiplicity(sigma_triple(), BubblePoint(E1)) == 1);
  CHECK(system_multiplicity(sigma_triple(), BubblePoint(E1, {Direction::at(3)})) == 0);
}

TEST_CASE("base points") {
  BaseLocus s = find_base_points(sigma_triple());
  REQUIRE(s.size() == 3);
  CHECK(s[0].point == E3);
  CHECK(noether_holds(2, s));

  // A quadratic map with an infinitely near base point: (x^2 : xy : y^2 + xz).
  Triple q{mono(2, 0, 0), mono(1, 1, 0), mono(0, 2, 0) + mono(1, 0, 1)};
  BaseLocus b = find_base_points(q);
  CHECK(b.size() == 3);
  CHECK(total(b) == 3);
  CHECK(b[0].point == E3);
  CHECK(b[1].point.level() == 1);

  // A cubic de Jonquieres map: base points e1 (double) and four simple points.
  RationalMap sig(sigma_triple());
  LinearMap a = rows({1, 0, 0, 1, 1, 0, 2, 1, 1});
  RationalMap cub = compose(sig, compose(RationalMap(a), sig));
  BaseLocus c = find_base_points(cub.triple());
  CHECK(cub.degree() >= 3);
  CHECK(noether_holds(cub.degree(), c));

  CHECK(common_zeros(sigma_triple()).size() == 3);
}

TEST_CASE("forms through clusters") {
  BaseLocus cl{{BubblePoint(E1), 1}, {BubblePoint(E2), 1}, {BubblePoint(E3), 1}};
  CHECK(forms_through(2, cl).size() == 3);
  BaseLocus cl2{{BubblePoint(E3), 1}, {BubblePoint(E3, {Direction::at(0)}), 1}, {BubblePoint(E1), 1}};
  auto f = forms_through(2, cl2);
  CHECK(f.size() == 3);
  for (const auto& g : f) CHECK(multiplicity_at(g, BubblePoint(E3, {Direction::at(0)})) >= 1);
}

TEST_CASE("depth transition") {
  QuadraticProper q = quadratic_from_points(E1, E2, E3);
  ContractionProfile p;
  p.depth = 1;
  p.center = BubblePoint(E3);
  CHECK(depth_transition(p, q) == 0);
  p.center = BubblePoint(ProjPoint(1, 1, 0));
  CHECK(depth_transition(p, q) == 2);
  p.center = BubblePoint(ProjPoint(1, 2, 3));
  CHECK(depth_transition(p, q) == 1);
  p.depth = 2;
  p.center = BubblePoint(E3, {Direction::at(0)});
  p.tangent = Direction::at(0);
  CHECK(depth_transition(p, q) == 2);
  p.center = BubblePoint(E3, {Direction::at(1)});
  p.tangent = Direction::at(1);
  CHECK(depth_transition(p, q) == 1);
  CHECK(direction_towards(E3, E1) == Direction::at(0));
  CHECK(direction_towards(E3, E2) == Direction::at_infinity());
}
