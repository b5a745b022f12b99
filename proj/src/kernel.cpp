#include "cremona/kernel.hpp"

#include "cremona/errors.hpp"

namespace cremona {

MatrixQ nullspace(MatrixQ m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(r));
    Scalar inv = 1 / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  MatrixQ basis(cols, cols - static_cast<Eigen::Index>(pivot_cols.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    basis(f, k) = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) basis(pivot_cols[i], k) = -m(i, f);
    ++k;
  }
  return basis;
}

Triple scale_triple(const Triple& t) {
  Integer l = 1, g = 0;
  for (const auto& p : t)
    for (const auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& p : t)
    for (const auto& [e, c] : p.terms()) {
      Scalar v = c * l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
  require(g != 0, ErrorCode::InvalidMap, "all-zero triple");
  for (const auto& p : t)
    if (!p.is_zero()) {
      if (sgn(p.coeff(p.leading_exponent())) < 0) g = -g;
      break;
    }
  Scalar f(l, g);
  f.canonicalize();
  Triple r;
  for (int i = 0; i < 3; ++i) r[i] = f * t[i];
  return r;
}

NormalizedTriple normalize_triple(const Triple& raw) {
  bool any = false;
  int d = -1;
  for (const auto& p : raw) {
    if (p.is_zero()) continue;
    any = true;
    if (d >= 0 && p.degree() != d)
      fail(ErrorCode::InvalidMap, "components of different degree");
    d = p.degree();
  }
  require(any, ErrorCode::InvalidMap, "all-zero triple");
  HomPoly g = gcd(gcd(raw[0], raw[1]), raw[2]);
  Triple t;
  for (int i = 0; i < 3; ++i) t[i] = raw[i].is_zero() ? HomPoly(d - g.degree()) : divide_exact(raw[i], g);
  return {scale_triple(t), g.degree()};
}

Vec3 ParamCurve::at(const Scalar& s, const Scalar& t) const {
  return {coords[0].eval(s, t), coords[1].eval(s, t), coords[2].eval(s, t)};
}

Vec3 ParamCurve::constant_point() const {
  require(is_constant(), ErrorCode::InternalInconsistency, "curve is not constant");
  return {coords[0].coeff(0), coords[1].coeff(0), coords[2].coeff(0)};
}

ParamCurve reduce(const std::array<BinaryForm, 3>& raw) {
  BinaryForm g = gcd(gcd(raw[0], raw[1]), raw[2]);
  require(!g.is_zero(), ErrorCode::InvalidMap, "all-zero parametrization");
  ParamCurve c;
  int n = raw[0].degree() - g.degree();
  for (int i = 0; i < 3; ++i)
    c.coords[i] = raw[i].is_zero() ? BinaryForm::zero(n) : divide_exact(raw[i], g);
  // Scale to integer coefficients with content 1.
  Integer l = 1, h = 0;
  for (const auto& f : c.coords)
    for (const auto& x : f.dehomogenized().coeffs())
      if (!is_zero(x)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (const auto& f : c.coords)
    for (const auto& x : f.dehomogenized().coeffs()) {
      Scalar v = x * l;
      mpz_gcd(h.get_mpz_t(), h.get_mpz_t(), v.get_num_mpz_t());
    }
  for (const auto& f : c.coords)
    if (!f.is_zero()) {
      if (sgn(f.dehomogenized().lead()) < 0) h = -h;
      break;
    }
  Scalar k(l, h);
  k.canonicalize();
  for (auto& f : c.coords) f = k * f;
  return c;
}

ParamCurve line_param(const Vec3& p, const Vec3& q) {
  std::array<BinaryForm, 3> g;
  for (int i = 0; i < 3; ++i) g[i] = BinaryForm(1, UniPoly(std::vector<Scalar>{q[i], p[i]}));
  return reduce(g);
}

ParamCurve apply(const Triple& m, const ParamCurve& c) {
  std::array<BinaryForm, 3> g;
  for (int i = 0; i < 3; ++i) g[i] = substitute(m[i], c.coords);
  return reduce(g);
}

Implicit implicitize(const ParamCurve& c) {
  require(!c.is_constant(), ErrorCode::IsAPoint, "parametrization is constant");
  int n = c.degree();
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int npts = n * d + 1;
    int nmon = (d + 1) * (d + 2) / 2;
    MatrixQ m(npts, nmon);
    for (int j = 0; j < npts; ++j) {
      Scalar s(j % 2 == 0 ? j / 2 : -(j + 1) / 2);
      Vec3 pt = c.at(s, 1);
      int col = 0;
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
          m(j, col++) = pow_scalar(pt[0], a) * pow_scalar(pt[1], b) * pow_scalar(pt[2], d - a - b);
    }
    MatrixQ ker = nullspace(m);
    if (ker.cols() == 0) continue;
    require(ker.cols() == 1, ErrorCode::InternalInconsistency, "implicit equation not unique");
    HomPoly f(d);
    int col = 0;
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) f.set(a, b, ker(col++, 0));
    return {f.primitive(), n / d};
  }
  fail(ErrorCode::InternalInconsistency, "no implicit equation found");
}

Chart Chart::at_proper(const Vec3& p) {
  Chart ch;
  ch.p = p;
  ch.c = is_zero(p[0]) ? (is_zero(p[1]) ? 2 : 1) : 0;
  int k = 0;
  int others[2];
  for (int i = 0; i < 3; ++i)
    if (i != ch.c) others[k++] = i;
  ch.a = others[0];
  ch.b = others[1];
  ch.p = {p[0] / p[ch.c], p[1] / p[ch.c], p[2] / p[ch.c]};
  return ch;
}

Chart Chart::on_exceptional(const Scalar& v) {
  Chart ch;
  ch.a = 0;
  ch.b = 1;
  ch.c = 2;
  ch.p = {Scalar(0), v, Scalar(1)};
  return ch;
}

ParamCurve chart_substitute(const ParamCurve& c, const Chart& center, const Direction& dir) {
  BinaryForm nx = c.coords[center.a] - center.p[center.a] * c.coords[center.c];
  BinaryForm ny = c.coords[center.b] - center.p[center.b] * c.coords[center.c];
  if (gcd(nx, ny).degree() == 0 || c.is_constant())
    fail(ErrorCode::NotOnCenter, "curve does not pass through the blowup center");
  return reduce(chart_lift(c.coords, center, dir));
}

}  // namespace cremona
