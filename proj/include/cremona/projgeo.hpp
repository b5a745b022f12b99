// Points, lines and linear maps of the projective plane over Q.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cremona/kernel.hpp"

namespace cremona {

using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Scales v so that its first nonzero entry is 1.
Vec3 normalize_vec(const Vec3& v);

class ProjPoint {
 public:
  ProjPoint() : c_{Scalar(1), Scalar(0), Scalar(0)} {}
  ProjPoint(const Vec3& coords);  // NOLINT: implicit by design
  ProjPoint(long x, long y, long z) : ProjPoint(Vec3{Scalar(x), Scalar(y), Scalar(z)}) {}

  const Vec3& coords() const { return c_; }
  const Scalar& operator[](int i) const { return c_[i]; }
  Vector3 vec() const { return Vector3(c_[0], c_[1], c_[2]); }
  std::string str() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b);

 private:
  Vec3 c_;
};

class ProjLine {
 public:
  ProjLine() : c_{Scalar(0), Scalar(0), Scalar(1)} {}
  explicit ProjLine(const Vec3& dual);
  ProjLine(long a, long b, long c) : ProjLine(Vec3{Scalar(a), Scalar(b), Scalar(c)}) {}

  const Vec3& coords() const { return c_; }
  const Scalar& operator[](int i) const { return c_[i]; }
  Vector3 vec() const { return Vector3(c_[0], c_[1], c_[2]); }
  HomPoly equation() const { return HomPoly::linear(c_[0], c_[1], c_[2]); }
  /// Two distinct points spanning the line.
  std::pair<ProjPoint, ProjPoint> basis() const;
  ParamCurve param() const;
  std::string str() const;

  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.c_ == b.c_; }

 private:
  Vec3 c_;
};

/// The line x = y.
ProjLine default_line();

bool incidence(const ProjPoint& p, const ProjLine& l);
/// Throws DegenerateLine when p = q.
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
ProjPoint intersection(const ProjLine& l, const ProjLine& m);
bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);

class LinearMap {
 public:
  LinearMap() : m_(Matrix3::Identity()) {}
  explicit LinearMap(const Matrix3& m);
  static LinearMap identity() { return LinearMap(); }
  static LinearMap diag(const Scalar& a, const Scalar& b, const Scalar& c);
  static LinearMap from_rows(const std::array<Scalar, 9>& rows);
  /// Columns are the images of e1, e2, e3.
  static LinearMap from_columns(const ProjPoint& c0, const ProjPoint& c1, const ProjPoint& c2);

  const Matrix3& matrix() const { return m_; }
  std::array<Scalar, 9> rows() const;
  LinearMap inverse() const;
  ProjPoint operator()(const ProjPoint& p) const;
  ProjLine image(const ProjLine& l) const;
  /// The triple of linear forms defining the map.
  Triple triple() const;
  std::string str() const;

  friend LinearMap operator*(const LinearMap& a, const LinearMap& b) {
    return LinearMap(Matrix3(a.m_ * b.m_));
  }
  friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.m_ == b.m_; }

 private:
  Matrix3 m_;
};

/// The unique linear map with src[i] -> dst[i]. Throws DegenerateFrame.
LinearMap pgl3_from_4points(const std::array<ProjPoint, 4>& src, const std::array<ProjPoint, 4>& dst);

/// True iff A maps L onto L.
bool is_linear_dec_member(const LinearMap& a, const ProjLine& l);

/// Conditions a sampled point must avoid.
struct Avoidance {
  std::vector<ProjLine> lines;
  std::vector<ProjPoint> points;
  std::vector<HomPoly> curves;
  std::vector<std::function<bool(const ProjPoint&)>> predicates;  // true = reject

  Avoidance& line(const ProjLine& l) { lines.push_back(l); return *this; }
  Avoidance& point(const ProjPoint& p) { points.push_back(p); return *this; }
  Avoidance& curve(const HomPoly& f) { curves.push_back(f); return *this; }
  Avoidance& reject(std::function<bool(const ProjPoint&)> f) {
    predicates.push_back(std::move(f));
    return *this;
  }
  bool rejects(const ProjPoint& p) const;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, long bound = 101, int retry_limit = 10000)
      : seed_(seed), bound_(bound), retry_limit_(retry_limit), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  long bound() const { return bound_; }
  /// Number of points drawn so far.
  std::uint64_t draws() const { return draws_; }

  ProjPoint sample(const Avoidance& avoid);
  /// A point of l, avoiding the given conditions.
  ProjPoint sample_on(const ProjLine& l, const Avoidance& avoid);
  long integer();

 private:
  std::uint64_t seed_;
  long bound_;
  int retry_limit_;
  std::mt19937_64 rng_;
  std::uint64_t draws_ = 0;
};

ProjPoint sample_general_point(Sampler& s, const Avoidance& avoid);

}  // namespace cremona
