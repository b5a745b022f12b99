// Map triples, parametrized curves, implicitization and blowup charts.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

using Vec3 = std::array<Scalar, 3>;
using Triple = std::array<HomPoly, 3>;
using MatrixQ = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Basis of the right kernel of m, one column per basis vector.
MatrixQ nullspace(MatrixQ m);

struct NormalizedTriple {
  Triple triple;
  int removed_degree = 0;
};

/// Divides out the common factor and scales jointly to integer coefficients
/// with content 1 and a positive leading coefficient in the first nonzero entry.
NormalizedTriple normalize_triple(const Triple& raw);

/// Joint scaling only, no gcd removal.
Triple scale_triple(const Triple& t);

/// A curve s, t -> [c0 : c1 : c2] with gcd-free coordinates of equal degree.
struct ParamCurve {
  std::array<BinaryForm, 3> coords;

  int degree() const { return coords[0].degree(); }
  bool is_constant() const { return degree() == 0; }
  Vec3 at(const Scalar& s, const Scalar& t) const;
  /// For constant curves, the image point.
  Vec3 constant_point() const;
};

/// Removes the common binary-form factor.
ParamCurve reduce(const std::array<BinaryForm, 3>& raw);
/// Line through p and q parametrized as s p + t q.
ParamCurve line_param(const Vec3& p, const Vec3& q);
/// The composite m(c), gcd-reduced.
ParamCurve apply(const Triple& m, const ParamCurve& c);

struct Implicit {
  HomPoly equation;
  int multiplicity = 1;  // degree of the parametrization onto its image
};

/// Irreducible equation of the image curve. Throws IsAPoint for constant curves.
Implicit implicitize(const ParamCurve& c);

/// A point on the exceptional divisor of a blowup: the slope of Y/X, or the
/// direction X = 0.
struct Direction {
  bool infinity = false;
  Scalar slope;

  static Direction at(const Scalar& s) { return {false, s}; }
  static Direction at_infinity() { return {true, Scalar(0)}; }
  friend bool operator==(const Direction& a, const Direction& b) {
    return a.infinity == b.infinity && (a.infinity || a.slope == b.slope);
  }
  friend auto operator<=>(const Direction& a, const Direction& b) {
    if (a.infinity != b.infinity) return a.infinity <=> b.infinity;
    if (a.infinity) return std::strong_ordering::equal;
    int c = cmp(a.slope, b.slope);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

/// Affine local coordinates X = x_a/x_c - p_a, Y = x_b/x_c - p_b at a point.
/// In P^2, c is the index of the first nonzero coordinate of the point; in a
/// chart plane the point is [0 : v : 1] and c = 2, so X = 0 is the previous
/// exceptional divisor.
struct Chart {
  int a = 0, b = 1, c = 2;
  Vec3 p;

  static Chart at_proper(const Vec3& normalized_point);
  static Chart on_exceptional(const Scalar& v);
};

/// Applies the blowup chart X = u, Y = u (v + slope) (or X = u v, Y = u) to a
/// projective triple, returning [u : v : 1] up to a common factor, before
/// any cancellation.
template <class T>
std::array<T, 3> chart_lift(const std::array<T, 3>& g, const Chart& ch, const Direction& dir) {
  T nx = g[ch.a] - ch.p[ch.a] * g[ch.c];
  T ny = g[ch.b] - ch.p[ch.b] * g[ch.c];
  const T& d = g[ch.c];
  if (dir.infinity) return {ny * ny, nx * d, d * ny};
  T w = ny - dir.slope * nx;
  return {nx * nx, w * d, d * nx};
}

/// Strict transform of c in the chart over center. Throws NotOnCenter when c
/// misses the center.
ParamCurve chart_substitute(const ParamCurve& c, const Chart& center, const Direction& dir);

}  // namespace cremona
