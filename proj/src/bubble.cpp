#include "cremona/bubble.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "cremona/errors.hpp"

namespace cremona {

BubblePoint BubblePoint::parent() const {
  require(!tower.empty(), ErrorCode::PreconditionViolated, "proper point has no parent");
  return truncated(level() - 1);
}

BubblePoint BubblePoint::child(const Direction& d) const {
  BubblePoint r = *this;
  r.tower.push_back(d);
  return r;
}

BubblePoint BubblePoint::truncated(int lvl) const {
  return BubblePoint(base, std::vector<Direction>(tower.begin(), tower.begin() + lvl));
}

bool BubblePoint::infinitely_near(const BubblePoint& a) const {
  return a.level() < level() && truncated(a.level()) == a;
}

std::string BubblePoint::str() const {
  std::string s = base.str();
  for (const auto& d : tower) s += d.infinity ? " > inf" : " > " + to_string(d.slope);
  return s;
}

bool operator<(const BubblePoint& a, const BubblePoint& b) {
  if (!(a.base == b.base)) return a.base < b.base;
  return std::lexicographical_compare(a.tower.begin(), a.tower.end(), b.tower.begin(), b.tower.end());
}

LocalFrame LocalFrame::at(const ProjPoint& p) {
  Chart ch = Chart::at_proper(p.coords());
  LocalFrame f;
  f.a = ch.a;
  f.b = ch.b;
  f.c = ch.c;
  f.p = ch.p;
  return f;
}

std::array<BiPoly, 3> LocalFrame::embed(const BiPoly& x, const BiPoly& y) const {
  std::array<BiPoly, 3> g;
  g[c] = BiPoly::constant(1);
  g[a] = BiPoly::constant(p[a]) + x;
  g[b] = BiPoly::constant(p[b]) + y;
  return g;
}

BiPoly LocalFrame::localize(const HomPoly& f) const { return substitute(f, embed(BiPoly::u(), BiPoly::v())); }

BiPoly blowup(const BiPoly& f, const Direction& d) {
  BiPoly u = BiPoly::u(), v = BiPoly::v();
  if (d.infinity) return f.substitute(u * v, u);
  return f.substitute(u, u * (v + BiPoly::constant(d.slope)));
}

Direction direction_towards(const ProjPoint& p, const ProjPoint& q) {
  LocalFrame fr = LocalFrame::at(p);
  Scalar qc = q[fr.c];
  Scalar dx = q[fr.a] - fr.p[fr.a] * qc, dy = q[fr.b] - fr.p[fr.b] * qc;
  require(!(is_zero(dx) && is_zero(dy)), ErrorCode::DegenerateLine, "points coincide");
  if (is_zero(dx)) return Direction::at_infinity();
  return Direction::at(dy / dx);
}

Germ curve_germ(const ParamCurve& c) {
  std::array<UniPoly, 3> p;
  for (int i = 0; i < 3; ++i) p[i] = c.coords[i].dehomogenized();
  // Transversal direction N = e_k with (c x c')_k nonzero.
  int k = -1;
  for (int i = 0; i < 3 && k < 0; ++i) {
    int j = (i + 1) % 3, l = (i + 2) % 3;
    UniPoly m = p[j] * p[l].derivative() - p[l] * p[j].derivative();
    if (!m.is_zero()) k = i;
  }
  require(k >= 0, ErrorCode::IsAPoint, "curve germ of a constant curve");
  Germ g;
  for (int i = 0; i < 3; ++i) g[i] = BiPoly::from_v(p[i]) + (i == k ? BiPoly::u() : BiPoly());
  return g;
}

Germ divisor_germ(const BubblePoint& p) {
  BiPoly x = BiPoly::u(), y = BiPoly::u() * BiPoly::v();
  for (int j = p.level() - 1; j >= 0; --j) {
    const Direction& d = p.tower[j];
    if (d.infinity) {
      BiPoly nx = x * y;
      y = x;
      x = nx;
    } else {
      y = x * (y + BiPoly::constant(d.slope));
    }
  }
  return LocalFrame::at(p.base).embed(x, y);
}

namespace {

struct Frac {
  BiPoly num, den;

  int ord() const { return num.is_zero() ? 1 << 20 : num.order_u() - den.order_u(); }
  void cancel() {
    int k = std::min(num.is_zero() ? den.order_u() : num.order_u(), den.order_u());
    if (k > 0) {
      num = num.divide_u(k);
      den = den.divide_u(k);
    }
  }
};

Frac quotient(const Frac& a, const Frac& b) {
  Frac r{a.num * b.den, a.den * b.num};
  r.cancel();
  return r;
}

Frac minus_constant(const Frac& a, const Scalar& c) {
  Frac r{a.num - c * a.den, a.den};
  r.cancel();
  return r;
}

UniPoly leading(const BiPoly& p) { return p.coeff_u(p.order_u()); }

UniPoly gcd_all(const std::array<UniPoly, 3>& r) {
  UniPoly g;
  for (const auto& x : r)
    if (!x.is_zero()) g = g.is_zero() ? x.monic() : gcd(g, x);
  return g;
}

}  // namespace

DivisorImage push_germ(const Germ& g, const Triple& f) {
  std::array<BiPoly, 3> r;
  int k = -1;
  for (int i = 0; i < 3; ++i) {
    r[i] = substitute(f[i], g);
    if (!r[i].is_zero()) k = k < 0 ? r[i].order_u() : std::min(k, r[i].order_u());
  }
  require(k >= 0, ErrorCode::InternalInconsistency, "germ lies in the base locus");
  std::array<UniPoly, 3> lead;
  for (int i = 0; i < 3; ++i) {
    r[i] = r[i].divide_u(k);
    lead[i] = r[i].coeff_u(0);
  }
  UniPoly h = gcd_all(lead);
  int n = 0;
  std::array<UniPoly, 3> q;
  for (int i = 0; i < 3; ++i) {
    q[i] = lead[i].is_zero() ? UniPoly() : divmod(lead[i], h).first;
    n = std::max(n, q[i].degree());
  }
  DivisorImage out;
  if (n > 0) {
    out.curve = reduce({BinaryForm(n, q[0]), BinaryForm(n, q[1]), BinaryForm(n, q[2])});
    return out;
  }
  ProjPoint b(Vec3{q[0].coeff(0), q[1].coeff(0), q[2].coeff(0)});
  LocalFrame fr = LocalFrame::at(b);
  Frac x{r[fr.a] - fr.p[fr.a] * r[fr.c], r[fr.c]};
  Frac y{r[fr.b] - fr.p[fr.b] * r[fr.c], r[fr.c]};
  x.cancel();
  y.cancel();
  std::vector<Direction> tower;
  const int cap = current_limits().max_depth;
  for (;;) {
    int vx = x.ord(), vy = y.ord();
    require(vx > 0 && vy > 0, ErrorCode::InternalInconsistency, "germ does not reach the center");
    Direction d;
    if (vx < vy) {
      d = Direction::at(0);
      y = quotient(y, x);
    } else if (vx > vy) {
      d = Direction::at_infinity();
      Frac nx = y;
      y = quotient(x, y);
      x = nx;
    } else {
      UniPoly p = leading(y.num) * leading(x.den), s = leading(y.den) * leading(x.num);
      Scalar c = p.lead() / s.lead();
      if (!(p == c * s)) break;
      d = Direction::at(c);
      y = minus_constant(quotient(y, x), c);
    }
    tower.push_back(d);
    if (static_cast<int>(tower.size()) > cap) fail(ErrorCode::ResourceLimit, "contraction depth cap exceeded");
  }
  out.center = BubblePoint(b, std::move(tower));
  return out;
}

LineImage push_line_image(const LineImage& s, const Triple& f) {
  if (s.curve) {
    ParamCurve c = cremona::apply(f, *s.curve);
    if (!c.is_constant()) return {c, {}};
    DivisorImage r = push_germ(curve_germ(*s.curve), f);
    require(!r.curve, ErrorCode::InternalInconsistency, "contracted curve pushed to a curve");
    return {std::nullopt, r.center};
  }
  DivisorImage r = push_germ(divisor_germ(s.center), f);
  if (r.curve) return {r.curve, {}};
  return {std::nullopt, r.center};
}

ContractionProfile profile_of(const LineImage& s) {
  ContractionProfile p;
  p.depth = s.depth();
  if (s.curve) {
    p.image = s.curve;
    return p;
  }
  p.center = s.center;
  if (s.center.level() >= 1) p.tangent = s.center.tower[0];
  return p;
}

ContractionProfile contraction_depth(const Word& w, const ProjLine& l) {
  LineImage s = LineImage::of(l);
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) s = push_line_image(s, factor_triple(*it));
  return profile_of(s);
}

ContractionProfile contraction_depth(const RationalMap& m, const ProjLine& l) {
  return profile_of(push_line_image(LineImage::of(l), m.triple()));
}

PushResult push_bubble_point(const BubblePoint& p, const Triple& f) {
  DivisorImage r = push_germ(divisor_germ(p), f);
  if (r.curve) return ExceptionalCurve{*r.curve};
  return r.center;
}

PushResult push_bubble_point(const BubblePoint& p, const QuadraticProper& q) {
  return push_bubble_point(p, q.triple());
}

BubblePoint push_bubble_point(const BubblePoint& p, const LinearMap& a) {
  if (p.proper()) return BubblePoint(a(p.base));
  return std::get<BubblePoint>(push_bubble_point(p, a.triple()));
}

int depth_transition(const ContractionProfile& profile, const QuadraticProper& q) {
  require(profile.depth >= 1 && profile.center, ErrorCode::PreconditionViolated,
          "depth transition needs a contracted line");
  const int k = profile.depth;
  const ProjPoint& b = profile.center->base;
  auto bp = q.base_points();
  for (int i = 0; i < 3; ++i) {
    if (!(bp[i] == b)) continue;
    if (k == 1) return 0;
    for (int j = 0; j < 3; ++j)
      if (j != i && direction_towards(b, bp[j]) == *profile.tangent) return k;
    return k - 1;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (collinear(b, bp[i], bp[j])) return k + 1;
  return k;
}

int multiplicity_at(const HomPoly& f, const BubblePoint& p) {
  require(!f.is_zero(), ErrorCode::PreconditionViolated, "zero polynomial");
  BiPoly g = LocalFrame::at(p.base).localize(f);
  int m = g.order();
  for (const auto& d : p.tower) {
    g = blowup(g, d).divide_u(m);
    m = g.order();
  }
  return m;
}

int multiplicity_at(const ParamCurve& c, const BubblePoint& p) {
  require(!c.is_constant(), ErrorCode::IsAPoint, "multiplicity of a constant curve");
  Chart ch = Chart::at_proper(p.base.coords());
  ParamCurve cur = c;
  auto through = [&](const Chart& h) {
    BinaryForm nx = cur.coords[h.a] - h.p[h.a] * cur.coords[h.c];
    BinaryForm ny = cur.coords[h.b] - h.p[h.b] * cur.coords[h.c];
    return gcd(nx, ny).degree();
  };
  for (const auto& d : p.tower) {
    if (through(ch) == 0) return 0;
    cur = chart_substitute(cur, ch, d);
    ch = Chart::on_exceptional(0);
  }
  return through(ch);
}

int system_multiplicity(const Triple& f, const BubblePoint& p) {
  LocalFrame fr = LocalFrame::at(p.base);
  std::array<BiPoly, 3> g;
  int m = -1;
  for (int i = 0; i < 3; ++i) {
    g[i] = fr.localize(f[i]);
    if (!g[i].is_zero()) m = m < 0 ? g[i].order() : std::min(m, g[i].order());
  }
  for (const auto& d : p.tower) {
    int next = -1;
    for (auto& x : g) {
      if (x.is_zero()) continue;
      x = blowup(x, d).divide_u(m);
      next = next < 0 ? x.order() : std::min(next, x.order());
    }
    m = next;
  }
  return m;
}

void sort_locus(BaseLocus& b) {
  std::sort(b.begin(), b.end(), [](const WeightedPoint& x, const WeightedPoint& y) {
    if (x.point.level() != y.point.level()) return x.point.level() < y.point.level();
    return x.point < y.point;
  });
}

bool noether_holds(int degree, const BaseLocus& b) {
  long s = 0, s2 = 0;
  for (const auto& w : b) {
    s += w.multiplicity;
    s2 += static_cast<long>(w.multiplicity) * w.multiplicity;
  }
  long e = degree;
  return s == 3 * (e - 1) && s2 == e * e - 1;
}

namespace {

int triple_degree(const Triple& f) {
  for (const auto& x : f)
    if (!x.is_zero()) return x.degree();
  return 0;
}

// Rational roots of g, failing when g has irrational roots.
std::vector<Scalar> all_rational_roots(const UniPoly& g) {
  auto roots = rational_roots(g);
  if (squarefree_part(g).degree() != static_cast<int>(roots.size()))
    fail(ErrorCode::IrrationalBasePoints, "base points are not defined over Q");
  return roots;
}

void explore(const BubblePoint& p, const std::array<BiPoly, 3>& g, int m, BaseLocus& out, int depth) {
  if (depth > current_limits().max_depth) fail(ErrorCode::ResourceLimit, "base point tower cap exceeded");
  std::array<UniPoly, 3> t;
  bool inf = true;
  for (int i = 0; i < 3; ++i) {
    t[i] = g[i].form_at_u1(m);
    if (!is_zero(t[i].coeff(m))) inf = false;
  }
  std::vector<Direction> dirs;
  for (const auto& s : all_rational_roots(gcd_all(t))) dirs.push_back(Direction::at(s));
  if (inf) dirs.push_back(Direction::at_infinity());
  for (const auto& d : dirs) {
    std::array<BiPoly, 3> h;
    int next = -1;
    for (int i = 0; i < 3; ++i) {
      if (g[i].is_zero()) continue;
      h[i] = blowup(g[i], d).divide_u(m);
      next = next < 0 ? h[i].order() : std::min(next, h[i].order());
    }
    if (next <= 0) continue;
    BubblePoint c = p.child(d);
    out.push_back({c, next});
    explore(c, h, next, out, depth + 1);
  }
}

}  // namespace

std::vector<ProjPoint> common_zeros(const Triple& f) {
  const int e = triple_degree(f);
  require(e >= 1, ErrorCode::PreconditionViolated, "constant triple");
  std::mt19937_64 rng(0xc0ffee);
  auto small = [&]() { return Scalar(static_cast<long>(rng() % 15) - 7); };
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix3 tm;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) tm(i, j) = (i == j ? Scalar(1) : Scalar(0)) + (attempt ? small() : Scalar(0));
    if (is_zero(tm.determinant())) continue;
    Triple lin = LinearMap(tm).triple();
    Triple gt;
    for (int i = 0; i < 3; ++i) gt[i] = substitute(f[i], lin);
    HomPoly g0, h;
    for (int i = 0; i < 3; ++i) {
      g0 = g0 + (small() + (i == 0 ? 11 : 0)) * gt[i];
      h = h + (small() + (i == 1 ? 13 : 0)) * gt[i];
    }
    if (g0.is_zero() || h.is_zero() || is_zero(g0.coeff(e, 0)) || is_zero(h.coeff(e, 0))) continue;
    std::vector<Vec3> found;
    // The line z = 0.
    std::array<UniPoly, 3> atinf;
    for (int i = 0; i < 3; ++i)
      atinf[i] = restrict_to_pencil(gt[i], {Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)})
                     .dehomogenized();
    UniPoly ginf = gcd_all(atinf);
    for (const auto& s : all_rational_roots(ginf)) found.push_back({s, Scalar(1), Scalar(0)});
    // The chart z = 1, eliminating x.
    const int nres = e * e + 1;
    std::vector<Scalar> ys, rs;
    for (int j = 0; j < nres; ++j) {
      Scalar y(j);
      Vec3 o{Scalar(1), Scalar(0), Scalar(0)}, q{Scalar(0), y, Scalar(1)};
      ys.push_back(y);
      rs.push_back(resultant(restrict_to_pencil(g0, o, q).dehomogenized(),
                             restrict_to_pencil(h, o, q).dehomogenized()));
    }
    UniPoly res = interpolate(ys, rs);
    if (res.is_zero()) continue;
    for (const auto& y0 : rational_roots(res)) {
      Vec3 o{Scalar(1), Scalar(0), Scalar(0)}, q{Scalar(0), y0, Scalar(1)};
      std::array<UniPoly, 3> u;
      for (int i = 0; i < 3; ++i) u[i] = restrict_to_pencil(gt[i], o, q).dehomogenized();
      UniPoly gx = gcd_all(u);
      if (gx.is_zero()) fail(ErrorCode::InternalInconsistency, "triple vanishes on a line");
      for (const auto& x0 : rational_roots(gx)) found.push_back({x0, y0, Scalar(1)});
    }
    std::vector<ProjPoint> out;
    for (const auto& v : found) {
      ProjPoint p = LinearMap(tm)(ProjPoint(v));
      for (const auto& fi : f)
        require(is_zero(fi.eval(p.coords())), ErrorCode::InternalInconsistency, "spurious common zero");
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  fail(ErrorCode::InternalInconsistency, "no admissible elimination frame");
}

BaseLocus find_base_points(const Triple& f) {
  BaseLocus out;
  if (triple_degree(f) <= 1) return out;
  for (const auto& p : common_zeros(f)) {
    LocalFrame fr = LocalFrame::at(p);
    std::array<BiPoly, 3> g;
    int m = -1;
    for (int i = 0; i < 3; ++i) {
      g[i] = fr.localize(f[i]);
      if (!g[i].is_zero()) m = m < 0 ? g[i].order() : std::min(m, g[i].order());
    }
    out.push_back({BubblePoint(p), m});
    explore(BubblePoint(p), g, m, out, 1);
  }
  sort_locus(out);
  if (!noether_holds(triple_degree(f), out))
    fail(ErrorCode::IrrationalBasePoints, "rational base points do not satisfy the Noether equalities");
  return out;
}

std::vector<HomPoly> forms_through(int degree, const BaseLocus& cluster) {
  BaseLocus cl = cluster;
  sort_locus(cl);
  std::map<BubblePoint, int> mult;
  for (const auto& w : cl) mult[w.point] = w.multiplicity;
  std::vector<HomPoly> basis;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b) basis.push_back(HomPoly::monomial({a, b, degree - a - b}));
  for (const auto& w : cl) {
    if (w.multiplicity <= 0 || basis.empty()) continue;
    const BubblePoint& p = w.point;
    LocalFrame fr = LocalFrame::at(p.base);
    std::vector<BiPoly> loc;
    for (const auto& f : basis) {
      BiPoly g = fr.localize(f);
      for (int j = 0; j < p.level(); ++j) {
        auto it = mult.find(p.truncated(j));
        require(it != mult.end(), ErrorCode::PreconditionViolated, "cluster is missing an ancestor");
        g = blowup(g, p.tower[j]).divide_u(it->second);
      }
      loc.push_back(std::move(g));
    }
    std::vector<std::pair<int, int>> conds;
    for (int a = 0; a < w.multiplicity; ++a)
      for (int b = 0; a + b < w.multiplicity; ++b) conds.push_back({a, b});
    MatrixQ m(static_cast<Eigen::Index>(conds.size()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t r = 0; r < conds.size(); ++r)
      for (std::size_t k = 0; k < basis.size(); ++k) m(r, k) = loc[k].coeff(conds[r].first, conds[r].second);
    MatrixQ ker = nullspace(m);
    std::vector<HomPoly> next;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
      HomPoly f(degree);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (!is_zero(ker(k, c))) f = f + ker(k, c) * basis[k];
      next.push_back(f.primitive());
    }
    basis = std::move(next);
  }
  return basis;
}

}  // namespace cremona
