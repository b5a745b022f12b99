#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cremona/errors.hpp"
#include "cremona/rewrite.hpp"

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

RationalMap product(const std::vector<QuadraticProper>& app) {
  RationalMap m;
  for (const auto& q : app) m = compose(q.map(), m);
  return m;
}

RationalMap product(const std::vector<TrackedMap>& app) {
  RationalMap m;
  for (const auto& q : app) m = compose(q.map, m);
  return m;
}

// B sends L to z = 0, which sigma contracts.
const LinearMap B = rows({1, 0, 0, 0, 0, 1, 1, -1, 0});

Word contracting_word() {
  return Word{{B.inverse(), QuadraticProper::sigma(), LinearMap::diag(1, 2, 3), QuadraticProper::sigma(), B}};
}

}  // namespace

TEST_CASE("factor_linear") {
  auto p = factor_linear(swap_xy());
  REQUIRE(p.size() == 1);
  CHECK(p[0].kind == Generator::P);
  std::vector<Generator> a5{{Generator::Diag, Scalar(-1, 5), 1}, {Generator::Mu2}, {Generator::Diag, 5, 1}};
  CHECK(expand_a(5) == a5);
  CHECK(generator_product(a5) == elementary_a(5));
  CHECK(factor_linear(LinearMap::identity()).empty());
  for (const auto& m : {rows({2, 1, 3, 1, 2, 3, 4, 5, 6}), rows({0, 1, 1, 1, 0, 1, 0, 0, 1}),
                        rows({1, 0, 0, 0, 1, 0, 0, 0, 7}), rows({3, -1, 0, 1, 1, 0, 0, 2, 5})}) {
    auto g = factor_linear(m);
    CHECK(generator_product(g) == m);
    CHECK(g.size() <= 40);
  }
  CHECK_THROWS_AS(factor_linear(LinearMap::diag(1, 2, 1)), CremonaError);
}

TEST_CASE("conjugating a quadratic map to sigma") {
  Sampler s(1);
  Conjugation c = conjugate_to_sigma(QuadraticProper::sigma(), default_line(), s);
  CHECK(c.alpha == LinearMap::identity());
  CHECK(c.beta == LinearMap::identity());
  // A quadratic map preserving L with base points e3, [1:2:0], [0:1:4].
  QuadraticProper q = quadratic_from_points(E3, ProjPoint(1, 2, 0), ProjPoint(0, 1, 4));
  LinearMap fix = line_transport(image_line(q.triple(), default_line()), default_line());
  QuadraticProper r{fix * q.alpha, q.beta};
  REQUIRE(is_dec_member(r.map(), default_line()));
  Conjugation d = conjugate_to_sigma(r, default_line(), s);
  CHECK(compose(RationalMap(d.beta), compose(r.map(), RationalMap(d.alpha))) == RationalMap(sigma_triple()));
}

TEST_CASE("decontraction") {
  ProjLine l = default_line();
  Word w = absorb_linears(contracting_word());
  CHECK(w.size() == 2);
  std::vector<int> d = prefix_depths(w, l);
  CHECK(d == std::vector<int>{1, 0});
  Sampler s(3);
  Word v = decontract(w, l, s);
  for (int x : prefix_depths(v, l)) CHECK(x == 0);
  CHECK(compose_word(v) == compose_word(w));
  CHECK(rewrite_trace().decontract.back().first == 0);

  DJWord dj = to_jonquieres_form(Word{{QuadraticProper::sigma()}}, l);
  REQUIRE(dj.alpha.size() == 2);
  CHECK(dj.alpha[0] == LinearMap::identity());
  CHECK_THROWS_AS(to_jonquieres_form(w, l), CremonaError);
}

TEST_CASE("normalizing images to lines") {
  ProjLine l = default_line();
  Sampler s(5);
  // A moves L to a general line, which sigma sends to a conic through e1, e2, e3;
  // A2 keeps a conic through three points with e3 replaced.
  LinearMap a = rows({1, 2, 0, 0, 1, 1, 1, 0, 3});
  LinearMap a2 = pgl3_from_4points({E1, E2, ProjPoint(4, 6, 3), ProjPoint(1, 1, 1)}, {E1, E2, E3, ProjPoint(1, 1, 1)});
  Word w{{QuadraticProper::sigma(), a2, QuadraticProper::sigma(), a, QuadraticProper::sigma()}};
  LinearMap fix = line_transport(image_line(compose_word(w).triple(), l), l);
  Word u{{fix, QuadraticProper::sigma(), a2, QuadraticProper::sigma(), a, QuadraticProper::sigma()}};
  REQUIRE(is_dec_member(compose_word(u), l));
  DJWord dj = to_jonquieres_form(absorb_linears(u), l);
  auto before = dj.images(l);
  int dmax = 0;
  for (const auto& c : before) dmax = std::max(dmax, c.degree());
  CHECK(dmax == 2);
  DJWord n = dj_normalize(dj, l, s);
  for (const auto& c : n.images(l)) CHECK(c.degree() == 1);
  CHECK(compose_word(n.word()) == compose_word(u));
  CHECK(rewrite_trace().normalize_descent);
}

TEST_CASE("splitting de Jonquieres maps along a line") {
  Sampler s(7);
  int seen_a = 0, seen_b = 0;
  TrackedMap sg = TrackedMap::quadratic(QuadraticProper::sigma());
  for (const auto& a : {rows({1, 1, 0, 0, 1, 0, 0, 1, 2}), rows({1, 0, 1, 0, 2, 1, 0, 1, 1}),
                        rows({1, 2, 3, 0, 1, 0, 0, 0, 1}), rows({1, 0, 0, 0, 1, 1, 0, 2, 1}),
                        rows({1, 1, 1, 0, 1, 2, 0, 1, 3})}) {
    TrackedMap rho = compose_tracked(sg, compose_tracked(a, sg));
    for (const ProjLine& l : {default_line(), ProjLine(0, 1, -1), ProjLine(0, 1, -2), ProjLine(1, -1, 1)}) {
      if (rho.degree() < 3 || restrict_to_line(rho.map, l).degree() != 1) continue;
      LineCase kind = classify_line_case(jonquieres_data(rho), l);
      (kind == LineCase::TypeA ? seen_a : seen_b)++;
      std::vector<TrackedMap> parts = split_line(rho, l, s);
      CHECK(product(parts) == rho.map);
      ProjLine cur = l;
      for (const auto& p : parts) {
        CHECK(p.degree() == 2);
        CHECK(is_jonquieres(p.map.triple()));
        CHECK_NOTHROW(cur = image_line(p.map.triple(), cur));
      }
    }
  }
  CHECK(seen_a > 0);
  CHECK(seen_b > 0);
}

TEST_CASE("quadratic maps with infinitely near base points") {
  Sampler s(11);
  // One proper base point.
  RationalMap one(Triple{mono(2, 0, 0), mono(1, 1, 0), mono(0, 2, 0) + mono(1, 0, 1)});
  auto p = properize_quadratic(one, std::nullopt, s);
  CHECK(product(p) == one);
  // Two proper base points.
  RationalMap two(Triple{mono(1, 1, 0), mono(1, 0, 1), mono(0, 2, 0)});
  int proper = 0;
  for (const auto& w : find_base_points(two.triple())) proper += w.point.proper();
  CHECK(proper == 2);
  auto q = properize_quadratic(two, std::nullopt, s);
  CHECK(q.size() == 2);
  CHECK(product(q) == two);
}

TEST_CASE("full decomposition and certificates") {
  ProjLine l = default_line();
  Certificate c = decompose_full(Word{{QuadraticProper::sigma()}}, l, 1);
  CHECK(c.recomposition);
  CHECK(c.all_lines);
  REQUIRE(c.output.size() == 1);
  CHECK(verify_certificate(c).ok);

  Word mixed{{QuadraticProper::sigma(), mu1(), QuadraticProper::sigma()}};
  Certificate m = decompose_full(mixed, l, 2);
  CHECK(verify_certificate(m).ok);

  Certificate k = decompose_full(contracting_word(), l, 3);
  CHECK(k.recomposition);
  CHECK(k.all_lines);
  CHECK(k.noether);
  CHECK(verify_certificate(k).ok);

  // Another line.
  ProjLine l2(1, 2, -1);
  LinearMap t = line_transport(l2, l);
  Word conj{{t.inverse(), QuadraticProper::sigma(), mu2(), t}};
  Certificate g = decompose_full(conj, l2, 4);
  CHECK(verify_certificate(g).ok);

  Certificate forged = k;
  forged.output.factors.insert(forged.output.factors.begin(), LinearMap::diag(1, 1, 2));
  forged.prefix_lines.push_back(l);
  CHECK_FALSE(verify_certificate(forged).ok);
  CHECK_THROWS_AS(decompose_full(Word{{LinearMap::diag(1, 2, 1)}}, l, 0), CremonaError);
}
