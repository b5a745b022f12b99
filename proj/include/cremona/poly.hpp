// Polynomial types over Q: univariate, binary forms, ternary forms and
// affine bivariate polynomials used in blowup charts.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/scalar.hpp"

namespace cremona {

/// Caps that turn runaway coefficient growth into a ResourceLimit error.
struct ResourceLimits {
  int max_degree = 4096;
  std::size_t max_bits = std::size_t{1} << 20;
  int max_depth = 64;
};

ResourceLimits& current_limits();

class ScopedLimits {
 public:
  explicit ScopedLimits(const ResourceLimits& limits) : saved_(current_limits()) {
    current_limits() = limits;
  }
  ~ScopedLimits() { current_limits() = saved_; }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  ResourceLimits saved_;
};

// ---------------------------------------------------------------------------
// Univariate polynomials, coefficients stored low degree first.

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coeffs);
  static UniPoly constant(const Scalar& c);
  static UniPoly monomial(int degree, const Scalar& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[i] : Scalar(0); }
  const Scalar& lead() const { return c_.back(); }

  Scalar operator()(const Scalar& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  UniPoly primitive() const;
  /// Lowest power of the variable dividing the polynomial.
  int order() const;
  UniPoly shifted_down(int k) const;
  /// p(x) -> p(x + a)
  UniPoly taylor_shift(const Scalar& a) const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Scalar& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string str(char var = 't') const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly squarefree_part(const UniPoly& f);
Scalar resultant(const UniPoly& a, const UniPoly& b);
/// All distinct rational roots, sorted ascending.
std::vector<Scalar> rational_roots(const UniPoly& f);
/// Interpolating polynomial through (xs[i], ys[i]).
UniPoly interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys);

// ---------------------------------------------------------------------------
// Binary forms f(s, t) of a declared degree; coefficient i multiplies s^i t^(n-i).

class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(int degree, UniPoly dehomogenized);
  static BinaryForm zero(int degree) { return BinaryForm(degree, UniPoly()); }

  int degree() const { return n_; }
  bool is_zero() const { return p_.is_zero(); }
  const UniPoly& dehomogenized() const { return p_; }  // t = 1
  Scalar coeff(int i) const { return p_.coeff(i); }
  /// Multiplicity of the root t = 0, i.e. [1:0].
  int order_at_infinity() const { return p_.is_zero() ? n_ : n_ - p_.degree(); }
  Scalar eval(const Scalar& s, const Scalar& t) const;

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const Scalar& s, const BinaryForm& a);
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.n_ == b.n_ && a.p_ == b.p_;
  }

 private:
  int n_ = 0;
  UniPoly p_;
};

/// Gcd as a binary form, including common powers of t; monic in s when possible.
BinaryForm gcd(const BinaryForm& a, const BinaryForm& b);
/// Exact division; throws InternalInconsistency if b does not divide a.
BinaryForm divide_exact(const BinaryForm& a, const BinaryForm& b);

// ---------------------------------------------------------------------------
// Affine bivariate polynomials in (u, v), used for local chart computations.

class BiPoly {
 public:
  using Exponent = std::pair<int, int>;

  BiPoly() = default;
  static BiPoly constant(const Scalar& c);
  static BiPoly u();
  static BiPoly v();
  static BiPoly from_v(const UniPoly& p);

  bool is_zero() const { return t_.empty(); }
  const std::map<Exponent, Scalar>& terms() const { return t_; }
  Scalar coeff(int i, int j) const;
  void add_term(int i, int j, const Scalar& c);

  /// Largest k with u^k dividing the polynomial; -1 for zero.
  int order_u() const;
  /// Lowest total degree of a term; -1 for zero.
  int order() const;
  int total_degree() const;
  /// Coefficient of u^k as a polynomial in v.
  UniPoly coeff_u(int k) const;
  BiPoly divide_u(int k) const;
  /// Terms of total degree k, as a polynomial in v after setting u = 1.
  UniPoly form_at_u1(int k) const;

  Scalar eval(const Scalar& a, const Scalar& b) const;
  /// f(P(u, v), Q(u, v))
  BiPoly substitute(const BiPoly& p, const BiPoly& q) const;

  BiPoly operator-() const;
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const Scalar& s, const BiPoly& a);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }

 private:
  std::map<Exponent, Scalar> t_;
};

BiPoly pow(const BiPoly& p, int e);

// ---------------------------------------------------------------------------
// Homogeneous polynomials in x, y, z.

class HomPoly {
 public:
  using Exponent = std::array<int, 3>;

  HomPoly() = default;
  /// The zero polynomial of a given degree.
  explicit HomPoly(int degree);
  static HomPoly constant(const Scalar& c);
  static HomPoly var(int i);  // x, y or z
  static HomPoly linear(const Scalar& a, const Scalar& b, const Scalar& c);
  static HomPoly monomial(const Exponent& e, const Scalar& c = 1);

  int degree() const { return d_; }
  bool is_zero() const;
  std::size_t size() const { return c_.size(); }

  Scalar coeff(int a, int b) const;  // exponent (a, b, d - a - b)
  Scalar coeff(const Exponent& e) const { return coeff(e[0], e[1]); }
  void set(int a, int b, const Scalar& c);
  void add_to(int a, int b, const Scalar& c);

  /// Nonzero terms in lexicographic exponent order, highest first.
  std::vector<std::pair<Exponent, Scalar>> terms() const;
  /// Lexicographically leading nonzero exponent (x-degree first).
  Exponent leading_exponent() const;

  Scalar eval(const Scalar& x, const Scalar& y, const Scalar& z) const;
  Scalar eval(const std::array<Scalar, 3>& p) const { return eval(p[0], p[1], p[2]); }
  HomPoly partial(int var) const;

  /// Order of vanishing along z = 0 (power of z dividing the polynomial).
  int order_in(int var) const;

  HomPoly operator-() const;
  friend HomPoly operator+(const HomPoly& a, const HomPoly& b);
  friend HomPoly operator-(const HomPoly& a, const HomPoly& b);
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  friend HomPoly operator*(const Scalar& s, const HomPoly& a);
  friend bool operator==(const HomPoly& a, const HomPoly& b);

  /// Integer coefficients with gcd 1, leading coefficient positive.
  HomPoly primitive() const;
  /// Scaled so that the leading coefficient is 1.
  HomPoly monic() const;
  /// Largest coefficient bit length.
  std::size_t max_bits() const;

  std::string str() const;

 private:
  std::size_t index(int a, int b) const;
  int d_ = 0;
  std::vector<Scalar> c_{Scalar(0)};
};

HomPoly pow(const HomPoly& p, int e);

/// f(g0, g1, g2) for three forms of a common degree.
HomPoly substitute(const HomPoly& f, const std::array<HomPoly, 3>& g);
/// f(g0, g1, g2) for affine bivariate arguments.
BiPoly substitute(const HomPoly& f, const std::array<BiPoly, 3>& g);
/// f(g0(s,t), g1(s,t), g2(s,t)) for binary forms of a common degree.
BinaryForm substitute(const HomPoly& f, const std::array<BinaryForm, 3>& g);
/// Restriction of f to the line through p and q: s*p + t*q.
BinaryForm restrict_to_pencil(const HomPoly& f, const std::array<Scalar, 3>& p,
                              const std::array<Scalar, 3>& q);

/// Exact division, or nullopt if b does not divide a.
std::optional<HomPoly> try_divide(const HomPoly& a, const HomPoly& b);
HomPoly divide_exact(const HomPoly& a, const HomPoly& b);
/// Greatest common divisor up to a scalar, returned primitive.
HomPoly gcd(const HomPoly& a, const HomPoly& b);

}  // namespace cremona
