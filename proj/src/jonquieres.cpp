#include "cremona/jonquieres.hpp"

#include <algorithm>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

BaseLocus unit_locus(const std::array<ProjPoint, 3>& pts) {
  BaseLocus b;
  for (const auto& p : pts) b.push_back({BubblePoint(p), 1});
  sort_locus(b);
  return b;
}

void add_unique(std::vector<BubblePoint>& v, const BubblePoint& p) {
  if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
}

// Pullback of a bubble point through a map given by the triple of its inverse.
std::optional<BubblePoint> pull(const BubblePoint& p, const TrackedMap& inner) {
  if (inner.degree() == 1) return push_bubble_point(p, inner.map.as_linear().inverse());
  PushResult r = push_bubble_point(p, inner.map.inverse_triple());
  if (auto* b = std::get_if<BubblePoint>(&r)) return *b;
  return std::nullopt;
}

BaseLocus weigh(const Triple& f, const std::vector<BubblePoint>& cand) {
  BaseLocus out;
  for (const auto& c : cand) {
    int m = system_multiplicity(f, c);
    if (m > 0) out.push_back({c, m});
  }
  sort_locus(out);
  return out;
}

}  // namespace

NoetherStats& noether_stats() {
  static NoetherStats s;
  return s;
}

void assert_noether(int degree, const BaseLocus& b) {
  ++noether_stats().checks;
  if (!noether_holds(degree, b)) {
    ++noether_stats().violations;
    fail(ErrorCode::InternalInconsistency, "Noether equalities fail for a tracked base locus");
  }
}

TrackedMap TrackedMap::linear(const LinearMap& a) { return {RationalMap(a), {}, {}}; }

TrackedMap TrackedMap::quadratic(const QuadraticProper& q) {
  return {q.map(), unit_locus(q.base_points()), unit_locus(q.inverse_base_points())};
}

TrackedMap TrackedMap::direct(const RationalMap& m) {
  if (m.degree() == 1) return {m, {}, {}};
  TrackedMap t{m, find_base_points(m.triple()), find_base_points(m.inverse_triple())};
  assert_noether(m.degree(), t.base);
  assert_noether(m.degree(), t.inverse_base);
  return t;
}

TrackedMap TrackedMap::of(const Factor& f) {
  if (auto* a = std::get_if<LinearMap>(&f)) return linear(*a);
  if (auto* q = std::get_if<QuadraticProper>(&f)) return quadratic(*q);
  return direct(std::get<RationalMap>(f));
}

BaseLocus push_locus(const BaseLocus& b, const LinearMap& a) {
  BaseLocus out;
  for (const auto& w : b) out.push_back({push_bubble_point(w.point, a), w.multiplicity});
  sort_locus(out);
  return out;
}

TrackedMap compose_tracked(const TrackedMap& outer, const TrackedMap& inner) {
  if (outer.degree() == 1) return compose_tracked(outer.map.as_linear(), inner);
  if (inner.degree() == 1) return compose_tracked(outer, inner.map.as_linear());
  RationalMap f = compose(outer.map, inner.map);
  if (f.degree() == 1) return {f, {}, {}};
  std::vector<BubblePoint> cand;
  for (const auto& w : inner.base) add_unique(cand, w.point);
  for (const auto& w : outer.base)
    if (auto p = pull(w.point, inner)) add_unique(cand, *p);
  std::vector<BubblePoint> icand;
  for (const auto& w : outer.inverse_base) add_unique(icand, w.point);
  TrackedMap oi = outer.inverse();
  for (const auto& w : inner.inverse_base)
    if (auto p = pull(w.point, oi)) add_unique(icand, *p);
  TrackedMap t{f, weigh(f.triple(), cand), weigh(f.inverse_triple(), icand)};
  assert_noether(f.degree(), t.base);
  assert_noether(f.degree(), t.inverse_base);
  return t;
}

TrackedMap compose_tracked(const LinearMap& outer, const TrackedMap& inner) {
  return {compose(RationalMap(outer), inner.map), inner.base, push_locus(inner.inverse_base, outer)};
}

TrackedMap compose_tracked(const TrackedMap& outer, const LinearMap& inner) {
  return {compose(outer.map, RationalMap(inner)), push_locus(outer.base, inner.inverse()), outer.inverse_base};
}

BaseLocus JonquieresData::all() const {
  BaseLocus b = simple;
  if (degree > 1) b.push_back({BubblePoint(pencil_center()), p0_multiplicity});
  sort_locus(b);
  return b;
}

const ProjPoint& pencil_center() {
  static const ProjPoint p(1, 0, 0);
  return p;
}

JonquieresData jonquieres_data(const TrackedMap& m) {
  JonquieresData j;
  j.degree = m.degree();
  if (j.degree == 1) return j;
  require(is_jonquieres(m.map.triple()), ErrorCode::NotJonquieres, "map does not preserve the pencil");
  for (const auto& w : m.base) {
    if (w.point == BubblePoint(pencil_center())) {
      j.p0_multiplicity = w.multiplicity;
    } else {
      require(w.multiplicity == 1, ErrorCode::InternalInconsistency, "de Jonquieres map with a multiple point");
      j.simple.push_back(w);
    }
  }
  require(j.p0_multiplicity == j.degree - 1 && static_cast<int>(j.simple.size()) == 2 * j.degree - 2,
          ErrorCode::InternalInconsistency, "de Jonquieres map with unexpected homaloidal type");
  assert_noether(j.degree, j.all());
  return j;
}

JonquieresData jonquieres_homaloidal(const Word& w) {
  TrackedMap cur = TrackedMap::linear(LinearMap::identity());
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) cur = compose_tracked(TrackedMap::of(*it), cur);
  return jonquieres_data(cur);
}

LineCase classify_line_case(const JonquieresData& j, const ProjLine& l) {
  ParamCurve c = l.param();
  int on0 = multiplicity_at(c, BubblePoint(pencil_center()));
  int count = 0;
  for (const auto& w : j.simple)
    if (multiplicity_at(c, w.point) > 0) ++count;
  if (on0 > 0 && count == 0) return LineCase::TypeA;
  if (on0 == 0 && count == j.degree - 1) return LineCase::TypeB;
  fail(ErrorCode::NotInDecL, "line meets the base locus in neither admissible way");
}

std::pair<BubblePoint, BubblePoint> select_heavy_points(const JonquieresData& j, const CurveMultiplicity& m,
                                                        int d, bool strict) {
  const BubblePoint p0(pencil_center());
  const int m0 = m(p0);
  const auto& s = j.simple;
  std::vector<int> ms;
  for (const auto& w : s) ms.push_back(m(w.point));
  auto near_p0 = [&](const BubblePoint& b) { return b.level() == 1 && b.base == pencil_center(); };
  int best_i = -1, best_j = -1, best_rank = 3;
  for (std::size_t a = 0; a < s.size(); ++a) {
    const BubblePoint& q1 = s[a].point;
    if (!q1.proper() && !near_p0(q1)) continue;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (a == b) continue;
      const BubblePoint& q2 = s[b].point;
      if (!q2.proper() && !near_p0(q2) && !(q2.level() >= 1 && q2.parent() == q1)) continue;
      int sum = m0 + ms[a] + ms[b];
      if (strict ? sum <= d : sum < d) continue;
      int rank = !q1.proper() + !q2.proper();
      if (rank < best_rank) {
        best_rank = rank;
        best_i = static_cast<int>(a);
        best_j = static_cast<int>(b);
      }
    }
  }
  require(best_i >= 0, ErrorCode::PreconditionViolated, "no pair of base points satisfies the inequality");
  BubblePoint q1 = s[best_i].point, q2 = s[best_j].point;
  if (ms[best_j] > ms[best_i] && !q2.infinitely_near(q1)) std::swap(q1, q2);
  return {q1, q2};
}

std::pair<BubblePoint, BubblePoint> select_heavy_points(const JonquieresData& j, const HomPoly& f, bool strict) {
  return select_heavy_points(j, [&](const BubblePoint& p) { return multiplicity_at(f, p); }, f.degree(), strict);
}

TrackedMap quadratic_through(const std::array<BubblePoint, 3>& cluster) {
  BaseLocus cl;
  for (const auto& p : cluster) cl.push_back({p, 1});
  sort_locus(cl);
  std::vector<HomPoly> forms = forms_through(2, cl);
  require(forms.size() == 3, ErrorCode::CollinearBasePoints, "cluster does not define a quadratic map");
  RationalMap m(Triple{forms[0], forms[1], forms[2]});
  require(m.degree() == 2, ErrorCode::CollinearBasePoints, "cluster does not define a quadratic map");
  for (const auto& w : cl)
    require(system_multiplicity(m.triple(), w.point) == 1, ErrorCode::InternalInconsistency,
            "quadratic map misses a base point");
  TrackedMap t{m, cl, find_base_points(m.inverse_triple())};
  assert_noether(2, t.base);
  assert_noether(2, t.inverse_base);
  return t;
}

TrackedMap jonquieres_quadratic(const BubblePoint& a, const BubblePoint& b) {
  TrackedMap q = quadratic_through({BubblePoint(pencil_center()), a, b});
  TrackedMap t = compose_tracked(pencil_correction(q.map), q);
  require(is_jonquieres(t.map.triple()), ErrorCode::InternalInconsistency, "pencil correction failed");
  return t;
}

HomPoly jacobian(const Triple& f) {
  std::array<std::array<HomPoly, 3>, 3> a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = f[i].partial(j);
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace cremona
