#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cremona/errors.hpp"
#include "cremona/maps.hpp"

using namespace cremona;

namespace {

const ProjPoint E1(1, 0, 0), E2(0, 1, 0), E3(0, 0, 1);

LinearMap rows(std::initializer_list<long> r) {
  std::array<Scalar, 9> a;
  int i = 0;
  for (long v : r) a[i++] = v;
  return LinearMap::from_rows(a);
}

// Pointwise evaluation of a word at a point, applying factors one at a time.
std::optional<ProjPoint> eval_word(const Word& w, ProjPoint p) {
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    auto q = factor_map(*it)(p);
    if (!q) return std::nullopt;
    p = *q;
  }
  return p;
}

}  // namespace

TEST_CASE("sigma is an involution") {
  Word w{{QuadraticProper::sigma(), QuadraticProper::sigma()}};
  CHECK(compose_word(w) == RationalMap());
  CHECK(compose_word(w).degree() == 1);
}

TEST_CASE("degrees of short words") {
  Word diag{{QuadraticProper::sigma(), LinearMap::diag(1, 1, 2), QuadraticProper::sigma()}};
  CHECK(compose_word(diag).degree() == 1);
  Word gen{{QuadraticProper::sigma(), rows({1, 2, 3, 0, 1, -1, 2, 0, 1}), QuadraticProper::sigma()}};
  RationalMap m = compose_word(gen);
  CHECK(m.degree() == 4);
  for (const auto& p : {ProjPoint(2, 3, 5), ProjPoint(-1, 7, 4), ProjPoint(3, 1, -2)}) {
    auto a = m(p), b = eval_word(gen, p);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
  }
  CHECK(compose(m, m.inverse()) == RationalMap());
}

TEST_CASE("finite orders") {
  RationalMap s(sigma_triple());
  RationalMap a = compose(s, RationalMap(mu1()));
  RationalMap cur;
  for (int k = 0; k < 3; ++k) cur = compose(a, cur);
  CHECK(cur == RationalMap());
  RationalMap b = compose(s, RationalMap(mu2()));
  cur = RationalMap();
  for (int k = 1; k <= 6; ++k) {
    cur = compose(b, cur);
    if (k < 6) CHECK_FALSE(cur == RationalMap());
  }
  CHECK(cur == RationalMap());
}

TEST_CASE("quadratic maps from base points") {
  ProjPoint b1(1, 2, 3), b2(0, 1, -1), b3(2, 1, 1);
  QuadraticProper q = quadratic_from_points(b1, b2, b3);
  auto bp = q.base_points();
  CHECK(bp[0] == b1);
  CHECK(bp[1] == b2);
  CHECK(bp[2] == b3);
  for (const auto& p : bp) CHECK_FALSE(q.map()(p).has_value());
  // The line through b2, b3 is contracted to the first inverse base point.
  ParamCurve img = restrict_to_line(q.triple(), line_through(b2, b3));
  CHECK(img.is_constant());
  CHECK(compose(q.map(), q.inverse().map()) == RationalMap());
  CHECK_THROWS_AS(quadratic_from_points(E1, E2, ProjPoint(1, 1, 0)), CremonaError);

  QuadraticProper c = to_quadratic_proper(RationalMap(q.triple()), bp);
  CHECK(c.map() == q.map());
}

TEST_CASE("compose_shared2") {
  QuadraticProper q1 = quadratic_from_points(E1, E2, E3);
  QuadraticProper q2 = quadratic_from_points(E1, E2, ProjPoint(1, 1, 1));
  SharedComposition s = compose_shared2(q1, q2);
  CHECK(s.proper);
  CHECK(s.tau.degree() == 2);
  REQUIRE(s.canonical);
  CHECK(s.canonical->map() == compose(q2.map(), q1.inverse().map()));

  // A third point on a line through two base points of q1 gives an
  // infinitely near base point.
  QuadraticProper q3 = quadratic_from_points(E1, E2, ProjPoint(1, 0, 1));
  SharedComposition t = compose_shared2(q1, q3);
  CHECK_FALSE(t.proper);
  CHECK(t.tau.degree() == 2);
  CHECK(t.tau == compose(q3.map(), q1.inverse().map()));
}

TEST_CASE("stabilizer membership") {
  ProjLine l = default_line();
  CHECK(is_dec_member(RationalMap(sigma_triple()), l));
  CHECK(is_dec_member(RationalMap(mu1()), l));
  CHECK_FALSE(is_dec_member(RationalMap(LinearMap::diag(1, 2, 1)), l));
  // sigma o A contracts L when A sends L to z = 0.
  RationalMap c = compose(RationalMap(sigma_triple()), RationalMap(rows({1, 0, 0, 0, 0, 1, 1, -1, 0})));
  CHECK(restrict_to_line(c, l).is_constant());
  CHECK_FALSE(is_dec_member(c, l));
}

TEST_CASE("de Jonquieres maps") {
  CHECK(is_jonquieres(sigma_triple()));
  CHECK_FALSE(is_jonquieres(quadratic_from_points(E2, E3, ProjPoint(1, 1, 1)).triple()));
  RationalMap f = compose(RationalMap(rows({0, 1, 0, 1, 0, 0, 0, 0, 1})), RationalMap(sigma_triple()));
  CHECK_FALSE(is_jonquieres(f.triple()));
  LinearMap a = pencil_correction(f);
  CHECK(is_jonquieres(compose(RationalMap(a), f).triple()));
}

TEST_CASE("line transport and exchange") {
  ProjLine from(1, 2, 3), to = default_line();
  LinearMap a = line_transport(from, to);
  CHECK(a.image(from) == to);
  ProjPoint p(1, 2, 3), q(4, -1, 0);
  LinearMap e = exchange_points(p, q);
  CHECK(e(p) == q);
  CHECK(e(q) == p);
}
