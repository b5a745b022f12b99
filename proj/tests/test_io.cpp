#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cremona/errors.hpp"
#include "cremona/io.hpp"

using namespace cremona;

TEST_CASE("scalars and polynomials") {
  CHECK(to_json(Scalar(-3, 4)) == "-3/4");
  CHECK(scalar_from_json(Json("6/8")) == Scalar(3, 4));
  CHECK(scalar_from_json(Json(5)) == 5);
  CHECK_THROWS_AS(scalar_from_json(Json("x")), CremonaError);
  HomPoly f = HomPoly::monomial({2, 0, 1}, Scalar(1, 2)) - HomPoly::monomial({0, 1, 2}, 7);
  Json j = to_json(f);
  CHECK(poly_from_json(j) == f);
  CHECK(parse_json(R"([{"exp":[1,0,0],"coeff":"2"}])") == Json::array({{{"exp", {1, 0, 0}}, {"coeff", "2"}}}));
  CHECK_THROWS_AS(parse_json("{"), CremonaError);
}

TEST_CASE("words") {
  LinearMap a = LinearMap::from_rows({1, 2, 0, 0, 1, 1, 1, 0, 3});
  QuadraticProper q{mu1(), a};
  Triple raw{HomPoly::monomial({2, 0, 0}), HomPoly::monomial({1, 1, 0}),
             HomPoly::monomial({0, 2, 0}) + HomPoly::monomial({1, 0, 1})};
  Word w{{a, q, RationalMap(raw)}};
  Word back = word_from_json(to_json(w));
  REQUIRE(back.size() == 3);
  CHECK(std::get<LinearMap>(back.factors[0]) == a);
  CHECK(std::get<QuadraticProper>(back.factors[1]).alpha == mu1());
  CHECK(compose_word(back) == compose_word(w));
  CHECK_THROWS_AS(word_from_json(parse_json(R"({"factors":[{"linear":["1","2","3","2","4","6","0","0","1"]}]})")),
                  CremonaError);
}

TEST_CASE("bubble points and certificates") {
  BubblePoint b(ProjPoint(0, 0, 1), {Direction::at(Scalar(2, 3)), Direction::at_infinity()});
  CHECK(bubble_from_json(to_json(b)) == b);
  Certificate c = decompose_full(Word{{QuadraticProper::sigma()}}, default_line(), 4);
  Certificate d = certificate_from_json(to_json(c));
  CHECK(d.seed == 4);
  CHECK(d.output.size() == c.output.size());
  CHECK(verify_certificate(d).ok);
  CHECK(to_json(d) == to_json(c));
  CHECK(to_json(std::vector<Generator>{{Generator::P}, {Generator::Diag, 2, 1}}).dump() ==
        R"([{"P":true},{"diag":["2","1"]}])");
}
