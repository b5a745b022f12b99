// Infinitely near points, contraction depth and multiplicities.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cremona/maps.hpp"

namespace cremona {

/// A proper point with a tower of blowup directions above it. Level j of
/// the tower lives on the exceptional line of the (j+1)-th blowup: the first
/// entry is a slope of Y/X in the chart of the base point, later entries are
/// slopes v/u in the chart centered at the previous point, where u = 0 is the
/// previous exceptional line ("infinity" is the direction tangent to it).
struct BubblePoint {
  ProjPoint base;
  std::vector<Direction> tower;

  BubblePoint() = default;
  BubblePoint(ProjPoint p, std::vector<Direction> t = {}) : base(std::move(p)), tower(std::move(t)) {}  // NOLINT

  int level() const { return static_cast<int>(tower.size()); }
  bool proper() const { return tower.empty(); }
  BubblePoint parent() const;
  BubblePoint child(const Direction& d) const;
  /// The point at the given level of this tower.
  BubblePoint truncated(int level) const;
  /// True iff this point lies strictly above a.
  bool infinitely_near(const BubblePoint& a) const;
  std::string str() const;

  friend bool operator==(const BubblePoint& a, const BubblePoint& b) {
    return a.base == b.base && a.tower == b.tower;
  }
  friend bool operator<(const BubblePoint& a, const BubblePoint& b);
};

/// Affine coordinates centered at a proper point.
struct LocalFrame {
  int a = 1, b = 2, c = 0;
  Vec3 p;
  static LocalFrame at(const ProjPoint& p);
  /// F in the coordinates X = x_a/x_c - p_a, Y = x_b/x_c - p_b, as a BiPoly in (u, v) = (X, Y).
  BiPoly localize(const HomPoly& f) const;
  /// The embedding (X, Y) -> P^2.
  std::array<BiPoly, 3> embed(const BiPoly& x, const BiPoly& y) const;
};

/// Substitution for one blowup: (X, Y) = (u, u (v + s)) or (u v, u).
BiPoly blowup(const BiPoly& f, const Direction& d);

/// An analytic arc (u, v) -> P^2 whose restriction to u = 0 sweeps a divisor.
using Germ = std::array<BiPoly, 3>;
Germ curve_germ(const ParamCurve& c);
/// Germ of the exceptional line obtained by blowing up p.
Germ divisor_germ(const BubblePoint& p);

/// The image of a divisor: a curve, or the exceptional line of blowing up center.
struct DivisorImage {
  std::optional<ParamCurve> curve;
  BubblePoint center;
};
DivisorImage push_germ(const Germ& g, const Triple& f);

/// Image of L after a prefix: a curve, or the exceptional line over a bubble point.
struct LineImage {
  std::optional<ParamCurve> curve;
  BubblePoint center;

  int depth() const { return curve ? 0 : center.level() + 1; }
  static LineImage of(const ProjLine& l) { return {l.param(), {}}; }
};
LineImage push_line_image(const LineImage& s, const Triple& f);

struct ContractionProfile {
  int depth = 0;
  /// When depth >= 1: the point whose blowup gives the image of L;
  /// depth = center.level() + 1.
  std::optional<BubblePoint> center;
  std::optional<Direction> tangent;
  std::optional<ParamCurve> image;
};
ContractionProfile profile_of(const LineImage& s);
ContractionProfile contraction_depth(const Word& w, const ProjLine& l);
ContractionProfile contraction_depth(const RationalMap& m, const ProjLine& l);

struct ExceptionalCurve {
  ParamCurve image;
};
using PushResult = std::variant<BubblePoint, ExceptionalCurve>;
PushResult push_bubble_point(const BubblePoint& p, const Triple& f);
PushResult push_bubble_point(const BubblePoint& p, const QuadraticProper& q);
BubblePoint push_bubble_point(const BubblePoint& p, const LinearMap& a);

/// Predicted depth of q o rho from the profile of rho.
int depth_transition(const ContractionProfile& profile, const QuadraticProper& q);

/// Multiplicity of the strict transform of F = 0 at p.
int multiplicity_at(const HomPoly& f, const BubblePoint& p);
/// Multiplicity at p of the curve parametrized (birationally) by c.
int multiplicity_at(const ParamCurve& c, const BubblePoint& p);
/// Multiplicity of the linear system spanned by the triple at p.
int system_multiplicity(const Triple& f, const BubblePoint& p);

struct WeightedPoint {
  BubblePoint point;
  int multiplicity = 0;
};
using BaseLocus = std::vector<WeightedPoint>;

/// Orders by level, then by point.
void sort_locus(BaseLocus& b);
bool noether_holds(int degree, const BaseLocus& b);
/// All base points with multiplicities, computed from the triple. Throws
/// IrrationalBasePoints when the base locus is not defined over Q.
BaseLocus find_base_points(const Triple& f);
/// Common zeros in P^2 of the three forms.
std::vector<ProjPoint> common_zeros(const Triple& f);

/// Basis of the forms of the given degree with multiplicity at least m at
/// every point of the cluster. Ancestors of every point must be listed.
std::vector<HomPoly> forms_through(int degree, const BaseLocus& cluster);

/// Direction at p of the line through p and q.
Direction direction_towards(const ProjPoint& p, const ProjPoint& q);

}  // namespace cremona
