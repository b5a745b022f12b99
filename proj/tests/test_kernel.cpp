#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cremona/errors.hpp"
#include "cremona/kernel.hpp"

using namespace cremona;

namespace {

const HomPoly X = HomPoly::var(0), Y = HomPoly::var(1), Z = HomPoly::var(2);

BinaryForm form(int n, std::vector<Scalar> c) { return BinaryForm(n, UniPoly(std::move(c))); }

// s^i t^(n-i) as a binary form.
BinaryForm mono(int n, int i) { return form(n, [&] {
  std::vector<Scalar> v(i + 1);
  v[i] = 1;
  return v;
}()); }

ParamCurve curve(BinaryForm a, BinaryForm b, BinaryForm c) { return reduce({a, b, c}); }

// F(c(s,t)) computed term by term.
bool vanishes_on(const HomPoly& f, const ParamCurve& c) { return substitute(f, c.coords).is_zero(); }

}  // namespace

TEST_CASE("normalize_triple") {
  auto r = normalize_triple({X * Y, X * Z, X * X});
  CHECK(r.removed_degree == 1);
  CHECK(r.triple[0] == Y);
  CHECK(r.triple[1] == Z);
  CHECK(r.triple[2] == X);

  auto s = normalize_triple({Y * Z, X * Z, X * Y});
  CHECK(s.removed_degree == 0);
  CHECK(s.triple[0] == Y * Z);

  auto id = normalize_triple({X * X, X * Y, X * Z});
  CHECK(id.removed_degree == 1);
  CHECK(id.triple[0] == X);
  CHECK(id.triple[1] == Y);
  CHECK(id.triple[2] == Z);

  // Joint scaling and idempotence.
  auto q = normalize_triple({Scalar(1, 2) * X * Y, Scalar(-3, 4) * Y * Y, HomPoly(2)});
  auto q2 = normalize_triple(q.triple);
  CHECK(q2.removed_degree == 0);
  CHECK(q2.triple[0] == q.triple[0]);
  CHECK(q.triple[0] == Scalar(2) * X);
  CHECK(q.triple[1] == Scalar(-3) * Y);

  CHECK_THROWS_AS(normalize_triple({HomPoly(2), HomPoly(2), HomPoly(2)}), CremonaError);
}

TEST_CASE("param curve reduction of the example (st, st, s^2)") {
  auto c = curve(mono(2, 1), mono(2, 1), mono(2, 2));
  CHECK(c.degree() == 1);
  CHECK(c.coords[0] == mono(1, 0));
  CHECK(c.coords[2] == mono(1, 1));
}

TEST_CASE("implicitize") {
  auto line = curve(mono(1, 1), mono(1, 1), mono(1, 0));  // (s, s, t)
  auto f = implicitize(line);
  CHECK(f.equation == X - Y);
  CHECK(f.multiplicity == 1);

  auto conic = curve(mono(2, 2), mono(2, 1), mono(2, 0));  // (s^2, st, t^2)
  auto g = implicitize(conic);
  // Oracle: the conic is xz - y^2 up to sign.
  CHECK(((g.equation == X * Z - Y * Y) || (g.equation == Y * Y - X * Z)));
  CHECK(vanishes_on(g.equation, conic));

  auto sigma_line = curve(mono(1, 0), mono(1, 0), mono(1, 1));  // (t, t, s)
  CHECK(implicitize(sigma_line).equation == X - Y);

  // A doubly covered line: (s^2, s^2, t^2).
  auto dbl = curve(mono(2, 2), mono(2, 2), mono(2, 0));
  auto h = implicitize(dbl);
  CHECK(h.equation == X - Y);
  CHECK(h.multiplicity == 2);

  // Nodal cubic (t(s^2 - t^2), s(s^2 - t^2), t^3).
  auto cubic = curve(form(3, {-1, 0, 1}), form(3, {0, -1, 0, 1}), mono(3, 0));
  auto k = implicitize(cubic);
  CHECK(k.equation.degree() == 3);
  CHECK(vanishes_on(k.equation, cubic));

  auto point = curve(mono(0, 0), mono(0, 0), mono(0, 0));
  CHECK_THROWS_AS(implicitize(point), CremonaError);
}

TEST_CASE("chart_substitute") {
  // Line y = x through [0:0:1] lifted with slope 1 stays a curve meeting u = 0 at v = 0.
  auto diag = curve(mono(1, 1), mono(1, 1), mono(1, 0));  // (s, s, t)
  Chart ch = Chart::at_proper({Scalar(0), Scalar(0), Scalar(1)});
  auto lifted = chart_substitute(diag, ch, Direction::at(1));
  CHECK(lifted.degree() == 1);
  // Strict transform: v' = Y/X - 1 = 0, so the image is the line x1 = 0.
  CHECK(lifted.coords[1].is_zero());

  // Smooth conic y = x^2 through the origin lifts to a curve meeting E at slope 0.
  auto parab = curve(form(2, {0, 1}), form(2, {0, 0, 1}), mono(2, 0));  // (s t, s^2, t^2)
  auto l2 = chart_substitute(parab, ch, Direction::at(0));
  // In the chart, (u, v) = (s/t, s/t): the diagonal line.
  CHECK(implicitize(l2).equation == X - Y);

  auto off = curve(mono(1, 1), mono(1, 0), mono(1, 1));  // (s, t, s): misses [0:0:1]
  CHECK_THROWS_AS(chart_substitute(off, ch, Direction::at(0)), CremonaError);

  // Blowing down recovers the original curve: (u, v) -> (u, u(v + 1)).
  auto down = reduce({lifted.coords[0] * lifted.coords[2],
                      lifted.coords[0] * (lifted.coords[1] + lifted.coords[2]),
                      lifted.coords[2] * lifted.coords[2]});
  CHECK(implicitize(down).equation == X - Y);
}

TEST_CASE("nullspace") {
  MatrixQ m(2, 3);
  m << 1, 2, 3, 2, 4, 6;
  auto k = nullspace(m);
  CHECK(k.cols() == 2);
  MatrixQ prod = m * k;
  for (Eigen::Index i = 0; i < prod.size(); ++i) CHECK(prod(i) == 0);
}
