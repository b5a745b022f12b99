// Birational maps of the plane as polynomial triples and as words of factors.
#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "cremona/projgeo.hpp"

namespace cremona {

/// A birational map given by a gcd-free triple of forms of equal degree,
/// together with the triple of its inverse.
class RationalMap {
 public:
  RationalMap() : RationalMap(LinearMap::identity()) {}
  explicit RationalMap(const LinearMap& a);
  /// Normalizes the triple; the inverse is computed when not supplied.
  explicit RationalMap(const Triple& raw, std::optional<Triple> inverse = std::nullopt);

  int degree() const { return f_[0].is_zero() ? (f_[1].is_zero() ? f_[2].degree() : f_[1].degree()) : f_[0].degree(); }
  const Triple& triple() const { return f_; }
  const Triple& inverse_triple() const;
  RationalMap inverse() const;
  /// Image of a point, or nullopt at a base point.
  std::optional<ProjPoint> operator()(const ProjPoint& p) const;
  /// The linear map when the degree is 1.
  LinearMap as_linear() const;

 private:
  // Composites compute their inverse on first use.
  struct Inverse {
    std::once_flag once;
    std::function<Triple()> make;
    Triple value;
  };
  RationalMap(Triple f, std::shared_ptr<Inverse> inv) : f_(std::move(f)), inv_(std::move(inv)) {}
  static std::shared_ptr<Inverse> known(Triple t);
  Triple f_;
  std::shared_ptr<Inverse> inv_;
  friend RationalMap compose(const RationalMap&, const RationalMap&);
};

/// outer o inner.
RationalMap compose(const RationalMap& outer, const RationalMap& inner);
/// Equality of maps: f_i g_j = f_j g_i for all i < j.
bool same_map(const Triple& f, const Triple& g);
inline bool operator==(const RationalMap& a, const RationalMap& b) {
  return same_map(a.triple(), b.triple());
}

/// Triple of the inverse map, found by linear algebra and verified.
Triple inverse_triple(const Triple& f);
/// f(g), gcd-reduced.
Triple compose_triples(const Triple& f, const Triple& g);

/// The standard quadratic involution [yz : xz : xy].
Triple sigma_triple();
LinearMap mu1();
LinearMap mu2();
LinearMap swap_xy();

/// alpha o sigma o beta, with base points beta^{-1}(e_i).
struct QuadraticProper {
  LinearMap alpha;
  LinearMap beta;

  static QuadraticProper sigma() { return {}; }
  Triple triple() const;
  RationalMap map() const;
  std::array<ProjPoint, 3> base_points() const;
  /// Base points of the inverse; the pencil through base_points()[i] is sent
  /// to the pencil through inverse_base_points()[i].
  std::array<ProjPoint, 3> inverse_base_points() const;
  QuadraticProper inverse() const { return {beta.inverse(), alpha.inverse()}; }
};

/// The quadratic map with the given base points; the base points of its
/// inverse are image_frame (default e1, e2, e3). Throws CollinearBasePoints.
QuadraticProper quadratic_from_points(const ProjPoint& b1, const ProjPoint& b2, const ProjPoint& b3,
                                      const std::optional<std::array<ProjPoint, 3>>& image_frame = std::nullopt);
QuadraticProper inverse_quadratic(const QuadraticProper& q);
/// Canonical form of a degree-2 map whose three base points are known and proper.
QuadraticProper to_quadratic_proper(const RationalMap& f, const std::array<ProjPoint, 3>& base);

/// A word factor: a linear map, a quadratic map with proper base points, or a
/// general map (raw quadratics, or composites produced by the rewriting).
using Factor = std::variant<LinearMap, QuadraticProper, RationalMap>;

/// factors[0] is applied last: the word is factors[0] o factors[1] o ... .
struct Word {
  std::vector<Factor> factors;

  std::size_t size() const { return factors.size(); }
  bool empty() const { return factors.empty(); }
  /// Factors in application order (first applied first).
  std::vector<Factor> applied_order() const { return {factors.rbegin(), factors.rend()}; }
  static Word from_applied(const std::vector<Factor>& applied) {
    return Word{{applied.rbegin(), applied.rend()}};
  }
  int formal_degree() const;
};

RationalMap factor_map(const Factor& f);
Triple factor_triple(const Factor& f);
Factor inverse_factor(const Factor& f);
int factor_degree(const Factor& f);
bool is_linear(const Factor& f);

/// Composition with gcd reduction after each factor.
RationalMap compose_word(const Word& w);
Word inverse_word(const Word& w);

/// The image of L parametrized, gcd-reduced; constant when L is contracted.
ParamCurve restrict_to_line(const Triple& m, const ProjLine& l);
ParamCurve restrict_to_line(const RationalMap& m, const ProjLine& l);
/// True iff m maps L birationally onto L.
bool is_dec_member(const RationalMap& m, const ProjLine& l);

struct SharedComposition {
  RationalMap tau;  // q2 o q1^{-1}
  bool proper = false;
  /// Canonical form when proper.
  std::optional<QuadraticProper> canonical;
};

/// q2 o q1^{-1} for quadratic maps sharing exactly two base points.
SharedComposition compose_shared2(const QuadraticProper& q1, const QuadraticProper& q2);

/// True iff f preserves the pencil of lines through [1:0:0].
bool is_jonquieres(const Triple& f);

/// A linear A with A o f in the de Jonquieres group, given that lines
/// through [1:0:0] are sent to lines through a common point.
LinearMap pencil_correction(const RationalMap& f);

/// Any linear map sending the line `from` onto the line `to`.
LinearMap line_transport(const ProjLine& from, const ProjLine& to);

/// A linear map exchanging p and q.
LinearMap exchange_points(const ProjPoint& p, const ProjPoint& q);

}  // namespace cremona
