// Rewriting words in Dec(L) into linear maps preserving L and sigma.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/jonquieres.hpp"

namespace cremona {

/// Measures recorded while rewriting.
struct RewriteTrace {
  /// (d, #prefixes at depth d) before every decontraction step, then the final value.
  std::vector<std::pair<int, int>> decontract;
  /// (D, k) at the start of every normalization step, then the final value.
  std::vector<std::pair<int, int>> normalize;
  long decontract_initial = 0;
  long normalize_initial = 0;
  bool decontract_descent = true;
  bool normalize_descent = true;
  std::vector<std::string> log;
};
RewriteTrace& rewrite_trace();

/// Contraction depth of L after every factor, in application order.
std::vector<int> prefix_depths(const Word& w, const ProjLine& l);
/// Folds linear factors into the neighbouring quadratic ones. The result has
/// only QuadraticProper factors, or is a single linear factor.
Word absorb_linears(const Word& w);

/// Rewrites a word of quadratic maps so that no prefix contracts L.
Word decontract(const Word& w, const ProjLine& l, Sampler& s);

/// alpha[m] rho[m-1] ... rho[0] alpha[0] with every rho in the de Jonquieres group.
struct DJWord {
  std::vector<LinearMap> alpha;
  std::vector<TrackedMap> rho;

  Word word() const;
  /// The image of L after each rho.
  std::vector<ParamCurve> images(const ProjLine& l) const;
};

DJWord to_jonquieres_form(const Word& w, const ProjLine& l);
/// Rewrites until every image of L after a de Jonquieres factor is a line.
DJWord dj_normalize(DJWord w, const ProjLine& l, Sampler& s);

/// Quadratic de Jonquieres factors, in application order, of a map sending l to a line.
std::vector<TrackedMap> split_line_type_b(const TrackedMap& rho, const ProjLine& l, Sampler& s);
std::vector<TrackedMap> split_line_type_a(const TrackedMap& rho, const ProjLine& l, Sampler& s);
std::vector<TrackedMap> split_line(const TrackedMap& rho, const ProjLine& l, Sampler& s);

/// Quadratic maps with proper base points, in application order, composing to rho.
/// With a line, every successive image of it is a line.
std::vector<QuadraticProper> properize_quadratic(const RationalMap& rho, const std::optional<ProjLine>& l,
                                                 Sampler& s);

/// beta o rho o alpha = sigma with alpha, beta preserving L (L must be x = y).
struct Conjugation {
  LinearMap alpha;
  LinearMap beta;
};
Conjugation conjugate_to_sigma(const QuadraticProper& rho, const ProjLine& l, Sampler& s);

/// Generators of the linear maps preserving x = y.
struct Generator {
  enum Kind { Diag, Mu1, Mu2, P } kind = Diag;
  Scalar s = 1, t = 1;  // diag(s, s, t)

  LinearMap matrix() const;
  friend bool operator==(const Generator& a, const Generator& b) {
    return a.kind == b.kind && (a.kind != Diag || (a.s == b.s && a.t == b.t));
  }
};
/// Generators whose product (left to right) equals a. Throws NotInAL.
std::vector<Generator> factor_linear(const LinearMap& a);
LinearMap generator_product(const std::vector<Generator>& g);
/// The elementary matrices with lambda in row 3 column 1, row 3 column 2, and column 3.
LinearMap elementary_a(const Scalar& lambda);
LinearMap elementary_b(const Scalar& lambda);
LinearMap elementary_c(const Scalar& lambda);
/// diag(-1/l, -1/l, 1) mu2 diag(l, l, 1).
std::vector<Generator> expand_a(const Scalar& lambda);

struct Certificate {
  std::uint64_t seed = 0;
  ProjLine line;
  /// Sends line to x = y; quadratic output factors are frame^-1 sigma frame.
  LinearMap frame;
  Word input;
  Word output;
  std::vector<ProjLine> prefix_lines;
  bool recomposition = false;
  bool all_lines = false;
  bool noether = false;
};

/// frame o w o frame^-1 with linear factors absorbed and general quadratic
/// factors replaced by quadratic maps with proper base points.
Word prepare_word(const Word& w, const LinearMap& frame, Sampler& s);
/// Records the checks tying input to output.
Certificate certify(const Word& input, const Word& output, const ProjLine& l, const LinearMap& frame,
                    std::uint64_t seed);

Certificate decompose_full(const Word& w, const ProjLine& l, std::uint64_t seed);

struct VerifyReport {
  bool ok = false;
  std::string failure;
};
VerifyReport verify_certificate(const Certificate& c);

/// The image of l under f; throws when it is not a line.
ProjLine image_line(const Triple& f, const ProjLine& l);

}  // namespace cremona
