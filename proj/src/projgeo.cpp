#include "cremona/projgeo.hpp"

#include <sstream>

#include "cremona/errors.hpp"

namespace cremona {

Vec3 normalize_vec(const Vec3& v) {
  for (int i = 0; i < 3; ++i)
    if (!is_zero(v[i])) {
      Scalar inv = 1 / v[i];
      return {v[0] * inv, v[1] * inv, v[2] * inv};
    }
  fail(ErrorCode::PreconditionViolated, "zero vector is not a projective point");
}

namespace {

Vector3 cross(const Vec3& a, const Vec3& b) {
  return Vector3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

Vec3 to_vec(const Vector3& v) { return {v(0), v(1), v(2)}; }

bool is_null(const Vector3& v) { return is_zero(v(0)) && is_zero(v(1)) && is_zero(v(2)); }

std::string triple_str(const Vec3& v) {
  return to_string(v[0]) + ":" + to_string(v[1]) + ":" + to_string(v[2]);
}

}  // namespace

ProjPoint::ProjPoint(const Vec3& coords) : c_(normalize_vec(coords)) {}

std::string ProjPoint::str() const { return "[" + triple_str(c_) + "]"; }

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  for (int i = 0; i < 3; ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

ProjLine::ProjLine(const Vec3& dual) : c_(normalize_vec(dual)) {}

std::pair<ProjPoint, ProjPoint> ProjLine::basis() const {
  // Kernel of the row c_: two independent vectors.
  std::vector<Vec3> cand{{Scalar(1), Scalar(0), Scalar(0)},
                         {Scalar(0), Scalar(1), Scalar(0)},
                         {Scalar(0), Scalar(0), Scalar(1)}};
  std::vector<Vec3> ker;
  for (const auto& e : cand) {
    Vector3 v = cross(c_, e);
    if (!is_null(v)) {
      Vec3 w = normalize_vec(to_vec(v));
      bool dup = false;
      for (const auto& k : ker) dup = dup || k == w;
      if (!dup) ker.push_back(w);
    }
    if (ker.size() == 2) break;
  }
  std::sort(ker.begin(), ker.end(), [](const Vec3& a, const Vec3& b) {
    return ProjPoint(a) < ProjPoint(b);
  });
  return {ProjPoint(ker[0]), ProjPoint(ker[1])};
}

ParamCurve ProjLine::param() const {
  auto [p, q] = basis();
  return line_param(p.coords(), q.coords());
}

std::string ProjLine::str() const { return "<" + triple_str(c_) + ">"; }

ProjLine default_line() { return ProjLine(1, -1, 0); }

bool incidence(const ProjPoint& p, const ProjLine& l) {
  return is_zero(p[0] * l[0] + p[1] * l[1] + p[2] * l[2]);
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  Vector3 v = cross(p.coords(), q.coords());
  if (is_null(v)) fail(ErrorCode::DegenerateLine, "points coincide: " + p.str());
  return ProjLine(to_vec(v));
}

ProjPoint intersection(const ProjLine& l, const ProjLine& m) {
  Vector3 v = cross(l.coords(), m.coords());
  if (is_null(v)) fail(ErrorCode::DegenerateLine, "lines coincide: " + l.str());
  return ProjPoint(to_vec(v));
}

bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
  Matrix3 m;
  m << p[0], p[1], p[2], q[0], q[1], q[2], r[0], r[1], r[2];
  return is_zero(m.determinant());
}

LinearMap::LinearMap(const Matrix3& m) : m_(m) {
  require(!is_zero(m_.determinant()), ErrorCode::InvalidMap, "singular linear map");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!is_zero(m_(i, j))) {
        Scalar inv = 1 / m_(i, j);
        m_ *= inv;
        return;
      }
}

LinearMap LinearMap::diag(const Scalar& a, const Scalar& b, const Scalar& c) {
  Matrix3 m = Matrix3::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return LinearMap(m);
}

LinearMap LinearMap::from_rows(const std::array<Scalar, 9>& r) {
  Matrix3 m;
  m << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
  return LinearMap(m);
}

LinearMap LinearMap::from_columns(const ProjPoint& c0, const ProjPoint& c1, const ProjPoint& c2) {
  Matrix3 m;
  m.col(0) = c0.vec();
  m.col(1) = c1.vec();
  m.col(2) = c2.vec();
  if (is_zero(m.determinant())) fail(ErrorCode::DegenerateFrame, "collinear frame points");
  return LinearMap(m);
}

std::array<Scalar, 9> LinearMap::rows() const {
  std::array<Scalar, 9> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[3 * i + j] = m_(i, j);
  return r;
}

LinearMap LinearMap::inverse() const { return LinearMap(Matrix3(m_.inverse())); }

ProjPoint LinearMap::operator()(const ProjPoint& p) const {
  Vector3 v = m_ * p.vec();
  return ProjPoint(to_vec(v));
}

ProjLine LinearMap::image(const ProjLine& l) const {
  Vector3 v = m_.inverse().transpose() * l.vec();
  return ProjLine(to_vec(v));
}

Triple LinearMap::triple() const {
  Triple t;
  for (int i = 0; i < 3; ++i) t[i] = HomPoly::linear(m_(i, 0), m_(i, 1), m_(i, 2));
  return t;
}

std::string LinearMap::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < 3; ++i) {
    if (i) os << "; ";
    os << to_string(m_(i, 0)) << " " << to_string(m_(i, 1)) << " " << to_string(m_(i, 2));
  }
  os << ")";
  return os.str();
}

namespace {

// The map e1, e2, e3, [1:1:1] -> p[0..3].
Matrix3 frame_matrix(const std::array<ProjPoint, 4>& p) {
  Matrix3 m;
  for (int j = 0; j < 3; ++j) m.col(j) = p[j].vec();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (collinear(p[i], p[j], p[k]))
          fail(ErrorCode::DegenerateFrame, "three frame points are collinear");
  Vector3 lambda = m.inverse() * p[3].vec();
  return m * lambda.asDiagonal();
}

}  // namespace

LinearMap pgl3_from_4points(const std::array<ProjPoint, 4>& src, const std::array<ProjPoint, 4>& dst) {
  Matrix3 a = frame_matrix(src), b = frame_matrix(dst);
  return LinearMap(Matrix3(b * a.inverse()));
}

bool is_linear_dec_member(const LinearMap& a, const ProjLine& l) {
  auto [p, q] = l.basis();
  return incidence(a(p), l) && incidence(a(q), l);
}

bool Avoidance::rejects(const ProjPoint& p) const {
  for (const auto& l : lines)
    if (incidence(p, l)) return true;
  for (const auto& q : points)
    if (p == q) return true;
  for (const auto& f : curves)
    if (is_zero(f.eval(p.coords()))) return true;
  for (const auto& f : predicates)
    if (f(p)) return true;
  return false;
}

long Sampler::integer() {
  std::uint64_t span = 2 * static_cast<std::uint64_t>(bound_) + 1;
  return static_cast<long>(rng_() % span) - bound_;
}

ProjPoint Sampler::sample(const Avoidance& avoid) {
  for (int attempt = 0; attempt < retry_limit_; ++attempt) {
    long x = integer(), y = integer(), z = integer();
    if (x == 0 && y == 0 && z == 0) continue;
    ++draws_;
    ProjPoint p(x, y, z);
    if (!avoid.rejects(p)) return p;
  }
  fail(ErrorCode::SamplingExhausted, "no admissible point within the retry limit");
}

ProjPoint Sampler::sample_on(const ProjLine& l, const Avoidance& avoid) {
  auto [p, q] = l.basis();
  for (int attempt = 0; attempt < retry_limit_; ++attempt) {
    long s = integer(), t = integer();
    if (s == 0 && t == 0) continue;
    ++draws_;
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = s * p[i] + t * q[i];
    ProjPoint r(v);
    if (!avoid.rejects(r)) return r;
  }
  fail(ErrorCode::SamplingExhausted, "no admissible point on the line within the retry limit");
}

ProjPoint sample_general_point(Sampler& s, const Avoidance& avoid) { return s.sample(avoid); }

}  // namespace cremona
