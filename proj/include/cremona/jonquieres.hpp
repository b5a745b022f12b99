// Maps carrying their base loci, and de Jonquieres homaloidal data.
#pragma once

#include <functional>
#include <utility>

#include "cremona/bubble.hpp"

namespace cremona {

/// A birational map with the base loci of the map and of its inverse.
struct TrackedMap {
  RationalMap map;
  BaseLocus base;
  BaseLocus inverse_base;

  int degree() const { return map.degree(); }
  TrackedMap inverse() const { return {map.inverse(), inverse_base, base}; }

  static TrackedMap linear(const LinearMap& a);
  static TrackedMap quadratic(const QuadraticProper& q);
  /// Base loci from the triples themselves.
  static TrackedMap direct(const RationalMap& m);
  static TrackedMap of(const Factor& f);
};

BaseLocus push_locus(const BaseLocus& b, const LinearMap& a);
/// outer o inner; base loci of the composite are found among the base points
/// of inner and the pullbacks of those of outer, then checked against Noether.
TrackedMap compose_tracked(const TrackedMap& outer, const TrackedMap& inner);
TrackedMap compose_tracked(const LinearMap& outer, const TrackedMap& inner);
TrackedMap compose_tracked(const TrackedMap& outer, const LinearMap& inner);

struct NoetherStats {
  long checks = 0;
  long violations = 0;
};
NoetherStats& noether_stats();
/// Counts the check; throws InternalInconsistency on failure.
void assert_noether(int degree, const BaseLocus& b);

/// Homaloidal data of a map preserving the pencil through [1:0:0].
struct JonquieresData {
  int degree = 1;
  int p0_multiplicity = 0;
  /// Simple base points, in locus order.
  BaseLocus simple;

  BaseLocus all() const;
};

const ProjPoint& pencil_center();
JonquieresData jonquieres_data(const TrackedMap& m);
JonquieresData jonquieres_homaloidal(const Word& w);

enum class LineCase { TypeA, TypeB };
LineCase classify_line_case(const JonquieresData& j, const ProjLine& l);

/// Multiplicity function of a curve.
using CurveMultiplicity = std::function<int(const BubblePoint&)>;
/// Two simple base points q1, q2 with m([1:0:0]) + m(q1) + m(q2) >= d (> d when strict);
/// q1 proper or in the first neighbourhood of [1:0:0], q2 proper or in the first
/// neighbourhood of [1:0:0] or q1.
std::pair<BubblePoint, BubblePoint> select_heavy_points(const JonquieresData& j, const CurveMultiplicity& m,
                                                        int d, bool strict);
std::pair<BubblePoint, BubblePoint> select_heavy_points(const JonquieresData& j, const HomPoly& f, bool strict);

/// The quadratic de Jonquieres map with base cluster {[1:0:0], a, b}; a and b
/// are proper or infinitely near [1:0:0] or each other.
TrackedMap jonquieres_quadratic(const BubblePoint& a, const BubblePoint& b);

/// The quadratic map through three points (proper or infinitely near, ancestors first).
TrackedMap quadratic_through(const std::array<BubblePoint, 3>& cluster);

/// Jacobian determinant of a triple.
HomPoly jacobian(const Triple& f);

}  // namespace cremona
