#include "cremona/maps.hpp"

#include <random>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

Triple identity_triple() { return {HomPoly::var(0), HomPoly::var(1), HomPoly::var(2)}; }

bool is_identity_triple(const Triple& t) { return same_map(t, identity_triple()); }

std::vector<HomPoly::Exponent> monomials(int d) {
  std::vector<HomPoly::Exponent> m;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) m.push_back({a, b, d - a - b});
  return m;
}

Scalar eval_monomial(const HomPoly::Exponent& e, const Vec3& p) {
  return pow_scalar(p[0], e[0]) * pow_scalar(p[1], e[1]) * pow_scalar(p[2], e[2]);
}

}  // namespace

std::shared_ptr<RationalMap::Inverse> RationalMap::known(Triple t) {
  auto p = std::make_shared<Inverse>();
  std::call_once(p->once, [&] { p->value = std::move(t); });
  return p;
}

RationalMap::RationalMap(const LinearMap& a) : f_(a.triple()), inv_(known(a.inverse().triple())) {}

RationalMap::RationalMap(const Triple& raw, std::optional<Triple> inverse) {
  f_ = normalize_triple(raw).triple;
  inv_ = known(inverse ? normalize_triple(*inverse).triple : cremona::inverse_triple(f_));
}

const Triple& RationalMap::inverse_triple() const {
  std::call_once(inv_->once, [this] { inv_->value = inv_->make(); });
  return inv_->value;
}

RationalMap RationalMap::inverse() const { return RationalMap(inverse_triple(), known(f_)); }

std::optional<ProjPoint> RationalMap::operator()(const ProjPoint& p) const {
  Vec3 v{f_[0].eval(p.coords()), f_[1].eval(p.coords()), f_[2].eval(p.coords())};
  if (is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2])) return std::nullopt;
  return ProjPoint(v);
}

LinearMap RationalMap::as_linear() const {
  require(degree() == 1, ErrorCode::PreconditionViolated, "map is not linear");
  std::array<Scalar, 9> r;
  for (int i = 0; i < 3; ++i) {
    r[3 * i] = f_[i].coeff(1, 0);
    r[3 * i + 1] = f_[i].coeff(0, 1);
    r[3 * i + 2] = f_[i].coeff(0, 0);
  }
  return LinearMap::from_rows(r);
}

Triple compose_triples(const Triple& f, const Triple& g) {
  Triple r;
  for (int i = 0; i < 3; ++i) r[i] = substitute(f[i], g);
  int df = f[0].is_zero() ? (f[1].is_zero() ? f[2].degree() : f[1].degree()) : f[0].degree();
  int dg = g[0].is_zero() ? (g[1].is_zero() ? g[2].degree() : g[1].degree()) : g[0].degree();
  if (df == 1 || dg == 1) return scale_triple(r);
  return normalize_triple(r).triple;
}

RationalMap compose(const RationalMap& outer, const RationalMap& inner) {
  auto inv = std::make_shared<RationalMap::Inverse>();
  inv->make = [outer, inner] { return compose_triples(inner.inverse_triple(), outer.inverse_triple()); };
  return RationalMap(compose_triples(outer.f_, inner.f_), std::move(inv));
}

bool same_map(const Triple& f, const Triple& g) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(f[i] * g[j] == f[j] * g[i])) return false;
  return true;
}

Triple inverse_triple(const Triple& f) {
  int e = f[0].is_zero() ? (f[1].is_zero() ? f[2].degree() : f[1].degree()) : f[0].degree();
  auto mons = monomials(e);
  const int n = static_cast<int>(mons.size());
  std::mt19937_64 rng(0x5eed);
  std::vector<std::array<Scalar, 3>> pts;
  auto add_points = [&](int k) {
    while (k > 0) {
      Vec3 p{Scalar(static_cast<long>(rng() % 61) - 30), Scalar(static_cast<long>(rng() % 61) - 30),
             Scalar(static_cast<long>(rng() % 61) - 30)};
      Vec3 q{f[0].eval(p), f[1].eval(p), f[2].eval(p)};
      if (is_zero(q[0]) && is_zero(q[1]) && is_zero(q[2])) continue;
      pts.push_back(p);
      --k;
    }
  };
  add_points(3 * n / 2 + 4);
  for (int round = 0; round < 8; ++round) {
    MatrixQ m(3 * static_cast<Eigen::Index>(pts.size()), 3 * n);
    m.setZero();
    Eigen::Index row = 0;
    for (const auto& p : pts) {
      Vec3 q{f[0].eval(p), f[1].eval(p), f[2].eval(p)};
      std::vector<Scalar> mv(n);
      for (int k = 0; k < n; ++k) mv[k] = eval_monomial(mons[k], q);
      const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
      for (const auto& pr : pairs) {
        int i = pr[0], j = pr[1];
        for (int k = 0; k < n; ++k) {
          m(row, i * n + k) += mv[k] * p[j];
          m(row, j * n + k) -= mv[k] * p[i];
        }
        ++row;
      }
    }
    MatrixQ ker = nullspace(m);
    if (ker.cols() == 0) fail(ErrorCode::InvalidMap, "triple is not birational");
    if (ker.cols() == 1) {
      Triple g;
      for (int i = 0; i < 3; ++i) {
        g[i] = HomPoly(e);
        for (int k = 0; k < n; ++k) g[i].set(mons[k][0], mons[k][1], ker(i * n + k, 0));
      }
      g = normalize_triple(g).triple;
      require(is_identity_triple(compose_triples(g, f)), ErrorCode::InvalidMap,
              "triple is not birational");
      return g;
    }
    add_points(n);
  }
  fail(ErrorCode::InvalidMap, "triple is not birational");
}

Triple sigma_triple() {
  HomPoly x = HomPoly::var(0), y = HomPoly::var(1), z = HomPoly::var(2);
  return {y * z, x * z, x * y};
}

LinearMap mu1() { return LinearMap::from_rows({-1, 0, 1, 0, -1, 1, 0, 0, 1}); }
LinearMap mu2() { return LinearMap::from_rows({-1, 0, 0, 0, -1, 0, 1, 0, 1}); }
LinearMap swap_xy() { return LinearMap::from_rows({0, 1, 0, 1, 0, 0, 0, 0, 1}); }

Triple QuadraticProper::triple() const {
  Triple l = beta.triple();
  Triple s{l[1] * l[2], l[0] * l[2], l[0] * l[1]};
  return scale_triple(compose_triples(alpha.triple(), s));
}

RationalMap QuadraticProper::map() const { return RationalMap(triple(), inverse().triple()); }

std::array<ProjPoint, 3> QuadraticProper::base_points() const {
  LinearMap b = beta.inverse();
  return {b(ProjPoint(1, 0, 0)), b(ProjPoint(0, 1, 0)), b(ProjPoint(0, 0, 1))};
}

std::array<ProjPoint, 3> QuadraticProper::inverse_base_points() const {
  return {alpha(ProjPoint(1, 0, 0)), alpha(ProjPoint(0, 1, 0)), alpha(ProjPoint(0, 0, 1))};
}

QuadraticProper quadratic_from_points(const ProjPoint& b1, const ProjPoint& b2, const ProjPoint& b3,
                                      const std::optional<std::array<ProjPoint, 3>>& image_frame) {
  if (b1 == b2 || b1 == b3 || b2 == b3 || collinear(b1, b2, b3))
    fail(ErrorCode::CollinearBasePoints, "base points must be distinct and not collinear");
  QuadraticProper q;
  q.beta = LinearMap::from_columns(b1, b2, b3).inverse();
  if (image_frame) {
    const auto& f = *image_frame;
    if (collinear(f[0], f[1], f[2]))
      fail(ErrorCode::CollinearBasePoints, "image frame is collinear");
    q.alpha = LinearMap::from_columns(f[0], f[1], f[2]);
  }
  return q;
}

QuadraticProper inverse_quadratic(const QuadraticProper& q) { return q.inverse(); }

QuadraticProper to_quadratic_proper(const RationalMap& f, const std::array<ProjPoint, 3>& base) {
  require(f.degree() == 2, ErrorCode::PreconditionViolated, "map is not quadratic");
  QuadraticProper q = quadratic_from_points(base[0], base[1], base[2]);
  // f o beta^{-1} o sigma is linear.
  Triple s = compose_triples(q.beta.inverse().triple(), sigma_triple());
  Triple a = compose_triples(f.triple(), s);
  require(a[0].degree() == 1 || a[1].degree() == 1, ErrorCode::InternalInconsistency,
          "base points do not match the map");
  q.alpha = RationalMap(a, std::nullopt).as_linear();
  require(same_map(q.triple(), f.triple()), ErrorCode::InternalInconsistency,
          "canonical form does not reproduce the map");
  return q;
}

int Word::formal_degree() const {
  int d = 1;
  for (const auto& f : factors) d *= factor_degree(f);
  return d;
}

RationalMap factor_map(const Factor& f) {
  if (auto* a = std::get_if<LinearMap>(&f)) return RationalMap(*a);
  if (auto* q = std::get_if<QuadraticProper>(&f)) return q->map();
  return std::get<RationalMap>(f);
}

Triple factor_triple(const Factor& f) {
  if (auto* a = std::get_if<LinearMap>(&f)) return a->triple();
  if (auto* q = std::get_if<QuadraticProper>(&f)) return q->triple();
  return std::get<RationalMap>(f).triple();
}

Factor inverse_factor(const Factor& f) {
  if (auto* a = std::get_if<LinearMap>(&f)) return a->inverse();
  if (auto* q = std::get_if<QuadraticProper>(&f)) return q->inverse();
  return std::get<RationalMap>(f).inverse();
}

int factor_degree(const Factor& f) {
  if (std::holds_alternative<LinearMap>(f)) return 1;
  if (std::holds_alternative<QuadraticProper>(f)) return 2;
  return std::get<RationalMap>(f).degree();
}

bool is_linear(const Factor& f) { return factor_degree(f) == 1; }

RationalMap compose_word(const Word& w) {
  require(!w.empty(), ErrorCode::PreconditionViolated, "empty word");
  RationalMap cur;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) cur = compose(factor_map(*it), cur);
  return cur;
}

Word inverse_word(const Word& w) {
  Word r;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) r.factors.push_back(inverse_factor(*it));
  return r;
}

ParamCurve restrict_to_line(const Triple& m, const ProjLine& l) { return cremona::apply(m, l.param()); }

ParamCurve restrict_to_line(const RationalMap& m, const ProjLine& l) {
  return restrict_to_line(m.triple(), l);
}

bool is_dec_member(const RationalMap& m, const ProjLine& l) {
  ParamCurve c = restrict_to_line(m, l);
  if (c.degree() != 1) return false;
  return substitute(l.equation(), c.coords).is_zero();
}

SharedComposition compose_shared2(const QuadraticProper& q1, const QuadraticProper& q2) {
  auto b1 = q1.base_points(), b2 = q2.base_points();
  std::vector<int> shared1;
  int third2 = -1, shared = 0;
  for (int j = 0; j < 3; ++j) {
    bool hit = false;
    for (int i = 0; i < 3; ++i)
      if (b1[i] == b2[j]) {
        hit = true;
        shared1.push_back(i);
      }
    if (hit) ++shared;
    else third2 = j;
  }
  require(shared == 2, ErrorCode::PreconditionViolated, "maps must share exactly two base points");
  SharedComposition r;
  r.tau = compose(q2.map(), q1.map().inverse());
  require(r.tau.degree() == 2, ErrorCode::InternalInconsistency, "shared composition is not quadratic");
  const ProjPoint& q3 = b2[third2];
  r.proper = !collinear(q3, b1[0], b1[1]) && !collinear(q3, b1[0], b1[2]) && !collinear(q3, b1[1], b1[2]);
  if (r.proper) {
    auto a = q1.inverse_base_points();
    auto img = q1.map()(q3);
    require(img.has_value(), ErrorCode::InternalInconsistency, "third base point is a base point of q1");
    r.canonical = to_quadratic_proper(r.tau, {a[shared1[0]], a[shared1[1]], *img});
  }
  return r;
}

bool is_jonquieres(const Triple& f) {
  return (f[1].partial(0) * f[2] - f[1] * f[2].partial(0)).is_zero();
}

LinearMap pencil_correction(const RationalMap& f) {
  std::vector<ProjLine> images;
  for (long t = 0; images.size() < 2 && t < 64; ++t) {
    // Lines through [1:0:0]: z = 0 first, then y = t z.
    ProjLine l = t == 0 ? ProjLine(0, 0, 1) : ProjLine(0, 1, -(t - 1));
    ParamCurve c = restrict_to_line(f, l);
    if (c.degree() != 1) continue;
    HomPoly eq = implicitize(c).equation;
    ProjLine img(Vec3{eq.coeff(1, 0), eq.coeff(0, 1), eq.coeff(0, 0)});
    if (images.empty() || !(images[0] == img)) images.push_back(img);
  }
  require(images.size() == 2, ErrorCode::NotJonquieres, "images of the pencil are not lines");
  ProjPoint c = intersection(images[0], images[1]);
  if (c == ProjPoint(1, 0, 0)) return LinearMap::identity();
  for (const auto& [u, w] : {std::pair{ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)},
                             std::pair{ProjPoint(1, 0, 0), ProjPoint(0, 0, 1)},
                             std::pair{ProjPoint(1, 0, 0), ProjPoint(0, 1, 0)}})
    if (!collinear(c, u, w)) return LinearMap::from_columns(c, u, w).inverse();
  fail(ErrorCode::InternalInconsistency, "unreachable");
}

namespace {

const std::vector<ProjPoint>& helper_points() {
  static const std::vector<ProjPoint> pts = {
      ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1), ProjPoint(1, 1, 1),
      ProjPoint(1, 2, 3), ProjPoint(1, -1, 2), ProjPoint(2, 3, -1), ProjPoint(3, -2, 5),
      ProjPoint(1, 5, -4), ProjPoint(-3, 1, 7), ProjPoint(4, 7, 2), ProjPoint(5, -6, 1)};
  return pts;
}

}  // namespace

LinearMap line_transport(const ProjLine& from, const ProjLine& to) {
  if (from == to) return LinearMap::identity();
  auto [a, b] = from.basis();
  auto [a2, b2] = to.basis();
  for (const auto& c : helper_points()) {
    if (incidence(c, from) || incidence(c, to)) continue;
    return LinearMap::from_columns(a2, b2, c) * LinearMap::from_columns(a, b, c).inverse();
  }
  fail(ErrorCode::InternalInconsistency, "no helper point off both lines");
}

LinearMap exchange_points(const ProjPoint& p, const ProjPoint& q) {
  require(!(p == q), ErrorCode::PreconditionViolated, "points coincide");
  const auto& h = helper_points();
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const auto &a = h[i], &b = h[j];
      if (collinear(p, q, a) || collinear(p, q, b) || collinear(p, a, b) || collinear(q, a, b)) continue;
      return pgl3_from_4points({p, q, a, b}, {q, p, a, b});
    }
  fail(ErrorCode::InternalInconsistency, "no helper frame");
}

}  // namespace cremona
