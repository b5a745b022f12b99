#include "cremona/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cremona/errors.hpp"

namespace cremona {

ResourceLimits& current_limits() {
  thread_local ResourceLimits limits;
  return limits;
}

namespace {

void check_bits(const Scalar& s) {
  if (bit_length(s) > current_limits().max_bits)
    fail(ErrorCode::ResourceLimit, "coefficient exceeds bit-length cap");
}

Integer lcm_of_denominators(const std::vector<Scalar>& cs) {
  Integer l = 1;
  for (const auto& c : cs)
    if (!is_zero(c)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

Integer gcd_of_numerators(const std::vector<Scalar>& cs) {
  Integer g = 0;
  for (const auto& c : cs)
    if (!is_zero(c)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly(std::vector<Scalar>{c}); }

UniPoly UniPoly::monomial(int degree, const Scalar& c) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && cremona::is_zero(c_.back())) c_.pop_back();
}

Scalar UniPoly::operator()(const Scalar& x) const {
  Scalar r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Scalar> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  Scalar inv = 1 / lead();
  return inv * *this;
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return {};
  Integer l = lcm_of_denominators(c_);
  std::vector<Scalar> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * l;
  Integer g = gcd_of_numerators(v);
  if (sgn(v.back()) < 0) g = -g;
  for (auto& x : v) x /= g;
  return UniPoly(std::move(v));
}

int UniPoly::order() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!cremona::is_zero(c_[i])) return static_cast<int>(i);
  return -1;
}

UniPoly UniPoly::shifted_down(int k) const {
  if (k <= 0 || is_zero()) return *this;
  if (k > degree()) return {};
  return UniPoly(std::vector<Scalar>(c_.begin() + k, c_.end()));
}

UniPoly UniPoly::taylor_shift(const Scalar& a) const {
  // Horner with the linear polynomial x + a.
  UniPoly r;
  UniPoly lin(std::vector<Scalar>{a, 1});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + UniPoly::constant(*it);
  return r;
}

UniPoly UniPoly::operator-() const {
  std::vector<Scalar> v(c_);
  for (auto& x : v) x = -x;
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (is_zero(a.c_[i])) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(v));
}

UniPoly operator*(const Scalar& s, const UniPoly& a) {
  if (is_zero(s)) return {};
  std::vector<Scalar> v(a.c_);
  for (auto& x : v) x *= s;
  return UniPoly(std::move(v));
}

std::string UniPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (cremona::is_zero(c_[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c_[i]) << ")";
    if (i > 0) os << "*" << var << "^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  require(!b.is_zero(), ErrorCode::InternalInconsistency, "division by zero polynomial");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Scalar> r(a.coeffs());
  std::vector<Scalar> q(a.degree() - b.degree() + 1);
  const auto& bc = b.coeffs();
  Scalar inv = 1 / b.lead();
  for (int i = a.degree(); i >= b.degree(); --i) {
    if (is_zero(r[i])) continue;
    Scalar f = r[i] * inv;
    q[i - b.degree()] = f;
    for (int j = 0; j <= b.degree(); ++j) r[i - b.degree() + j] -= f * bc[j];
  }
  r.resize(b.degree());
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.primitive(), y = b.primitive();
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second.primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly squarefree_part(const UniPoly& f) {
  if (f.degree() <= 0) return f;
  UniPoly g = gcd(f, f.derivative());
  return divmod(f, g).first;
}

Scalar resultant(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0) return pow_scalar(a.lead(), b.degree());
  if (b.degree() == 0) return pow_scalar(b.lead(), a.degree());
  // res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) res(b, r), r = a mod b
  UniPoly r = divmod(a, b).second;
  if (r.is_zero()) return 0;
  Scalar s = pow_scalar(b.lead(), a.degree() - r.degree()) * resultant(b, r);
  if ((a.degree() * b.degree()) % 2 == 1) s = -s;
  return s;
}

namespace {

std::vector<long> mod_coeffs(const UniPoly& f, long p) {
  std::vector<long> r;
  for (const auto& c : f.coeffs()) {
    Integer v = c.get_num() % p;
    if (v < 0) v += p;
    r.push_back(v.get_si());
  }
  return r;
}

long eval_mod(const std::vector<long>& c, long x, long p) {
  long r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = (r * x + *it) % p;
  return r;
}

long inv_mod(long a, long p) {
  Integer r, A = a, P = p;
  mpz_invert(r.get_mpz_t(), A.get_mpz_t(), P.get_mpz_t());
  return r.get_si();
}

// Degree of gcd(f, f') over F_p, f given with integer coefficients.
bool squarefree_mod(const std::vector<long>& f, long p) {
  auto trim = [](std::vector<long>& v) { while (!v.empty() && v.back() == 0) v.pop_back(); };
  std::vector<long> a = f, b;
  for (std::size_t i = 1; i < f.size(); ++i) b.push_back(static_cast<long>((f[i] * static_cast<long>(i % p)) % p));
  trim(a);
  trim(b);
  while (!b.empty()) {
    long inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
      long q = (a.back() * inv) % p;
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[shift + j] = ((a[shift + j] - q * b[j]) % p + p) % p;
      trim(a);
    }
    std::swap(a, b);
  }
  return a.size() == 1;
}

bool is_small_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<Scalar> rational_roots(const UniPoly& f_in) {
  require(!f_in.is_zero(), ErrorCode::InternalInconsistency, "roots of the zero polynomial");
  std::vector<Scalar> roots;
  int ord = f_in.order();
  if (ord > 0) roots.push_back(0);
  UniPoly f = squarefree_part(f_in.shifted_down(ord)).primitive();
  if (f.degree() >= 1) {
    Integer lc = abs(f.lead().get_num());
    Integer c0 = abs(f.coeff(0).get_num());
    UniPoly df = f.derivative();
    long p = 3;
    for (;; p += 2) {
      if (!is_small_prime(p)) continue;
      if (lc % p == 0) continue;
      if (squarefree_mod(mod_coeffs(f, p), p)) break;
    }
    auto fp = mod_coeffs(f, p);
    Integer bound = 2 * lc * c0 + 1;
    for (long r0 = 0; r0 < p; ++r0) {
      if (eval_mod(fp, r0, p) != 0) continue;
      // Newton lifting of a simple root modulo p^(2^k).
      Integer m = p, r = r0;
      while (m <= bound) {
        Integer m2 = m * m;
        Integer fr = 0, dr = 0;
        for (int i = f.degree(); i >= 0; --i) fr = (fr * r + f.coeff(i).get_num()) % m2;
        for (int i = df.degree(); i >= 0; --i) dr = (dr * r + df.coeff(i).get_num()) % m2;
        Integer dinv;
        mpz_invert(dinv.get_mpz_t(), dr.get_mpz_t(), m2.get_mpz_t());
        r = (r - fr * dinv) % m2;
        if (r < 0) r += m2;
        m = m2;
      }
      Integer cand = (lc * r) % m;
      if (cand > m / 2) cand -= m;
      Scalar x(cand, lc);
      x.canonicalize();
      if (is_zero(f(x))) roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

UniPoly interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  std::size_t n = xs.size();
  std::vector<Scalar> dd(ys);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  UniPoly r;
  for (std::size_t i = n; i-- > 0;)
    r = r * UniPoly(std::vector<Scalar>{-xs[i], 1}) + UniPoly::constant(dd[i]);
  return r;
}

Scalar pow_scalar(const Scalar& s, int e) {
  Scalar r = 1;
  for (int i = 0; i < e; ++i) r *= s;
  return r;
}

// ---------------------------------------------------------------------------
// BinaryForm

BinaryForm::BinaryForm(int degree, UniPoly dehomogenized) : n_(degree), p_(std::move(dehomogenized)) {
  require(p_.degree() <= n_, ErrorCode::InternalInconsistency, "binary form exceeds its degree");
}

Scalar BinaryForm::eval(const Scalar& s, const Scalar& t) const {
  Scalar r = 0, tp = 1;
  std::vector<Scalar> tpow(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    tpow[i] = tp;
    tp *= t;
  }
  Scalar sp = 1;
  for (int i = 0; i <= n_; ++i) {
    Scalar c = p_.coeff(i);
    if (!cremona::is_zero(c)) r += c * sp * tpow[n_ - i];
    sp *= s;
  }
  return r;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  require(a.n_ == b.n_, ErrorCode::InternalInconsistency, "adding binary forms of different degree");
  return BinaryForm(a.n_, a.p_ + b.p_);
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + (Scalar(-1) * b); }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  return BinaryForm(a.n_ + b.n_, a.p_ * b.p_);
}

BinaryForm operator*(const Scalar& s, const BinaryForm& a) { return BinaryForm(a.n_, s * a.p_); }

BinaryForm gcd(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  UniPoly g = gcd(a.dehomogenized(), b.dehomogenized());
  int t = std::min(a.order_at_infinity(), b.order_at_infinity());
  return BinaryForm(g.degree() + t, g);
}

BinaryForm divide_exact(const BinaryForm& a, const BinaryForm& b) {
  require(!b.is_zero(), ErrorCode::InternalInconsistency, "division by zero form");
  if (a.is_zero()) return BinaryForm::zero(a.degree() - b.degree());
  auto [q, r] = divmod(a.dehomogenized(), b.dehomogenized());
  require(r.is_zero() && a.degree() >= b.degree() &&
              a.order_at_infinity() >= b.order_at_infinity(),
          ErrorCode::InternalInconsistency, "inexact binary form division");
  return BinaryForm(a.degree() - b.degree(), q);
}

// ---------------------------------------------------------------------------
// BiPoly

BiPoly BiPoly::constant(const Scalar& c) {
  BiPoly p;
  p.add_term(0, 0, c);
  return p;
}

BiPoly BiPoly::u() {
  BiPoly p;
  p.add_term(1, 0, 1);
  return p;
}

BiPoly BiPoly::v() {
  BiPoly p;
  p.add_term(0, 1, 1);
  return p;
}

BiPoly BiPoly::from_v(const UniPoly& q) {
  BiPoly p;
  for (int j = 0; j <= q.degree(); ++j) p.add_term(0, j, q.coeff(j));
  return p;
}

Scalar BiPoly::coeff(int i, int j) const {
  auto it = t_.find({i, j});
  return it == t_.end() ? Scalar(0) : it->second;
}

void BiPoly::add_term(int i, int j, const Scalar& c) {
  if (cremona::is_zero(c)) return;
  auto [it, inserted] = t_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (cremona::is_zero(it->second)) t_.erase(it);
  }
}

int BiPoly::order_u() const {
  if (t_.empty()) return -1;
  int k = t_.begin()->first.first;  // map is ordered by u-exponent first
  return k;
}

int BiPoly::order() const {
  int k = -1;
  for (const auto& [e, c] : t_) {
    int d = e.first + e.second;
    if (k < 0 || d < k) k = d;
  }
  return k;
}

int BiPoly::total_degree() const {
  int k = -1;
  for (const auto& [e, c] : t_) k = std::max(k, e.first + e.second);
  return k;
}

UniPoly BiPoly::coeff_u(int k) const {
  std::vector<Scalar> v;
  for (auto it = t_.lower_bound({k, 0}); it != t_.end() && it->first.first == k; ++it) {
    if (static_cast<int>(v.size()) <= it->first.second) v.resize(it->first.second + 1);
    v[it->first.second] = it->second;
  }
  return UniPoly(std::move(v));
}

BiPoly BiPoly::divide_u(int k) const {
  BiPoly r;
  for (const auto& [e, c] : t_) {
    require(e.first >= k, ErrorCode::InternalInconsistency, "u-power does not divide");
    r.t_.emplace(std::make_pair(e.first - k, e.second), c);
  }
  return r;
}

UniPoly BiPoly::form_at_u1(int k) const {
  std::vector<Scalar> v;
  for (const auto& [e, c] : t_) {
    if (e.first + e.second != k) continue;
    if (static_cast<int>(v.size()) <= e.second) v.resize(e.second + 1);
    v[e.second] = c;
  }
  return UniPoly(std::move(v));
}

Scalar BiPoly::eval(const Scalar& a, const Scalar& b) const {
  Scalar r = 0;
  for (const auto& [e, c] : t_) r += c * pow_scalar(a, e.first) * pow_scalar(b, e.second);
  return r;
}

BiPoly BiPoly::substitute(const BiPoly& p, const BiPoly& q) const {
  int du = 0, dv = 0;
  for (const auto& [e, c] : t_) {
    du = std::max(du, e.first);
    dv = std::max(dv, e.second);
  }
  std::vector<BiPoly> pp{BiPoly::constant(1)}, qp{BiPoly::constant(1)};
  for (int i = 1; i <= du; ++i) pp.push_back(pp.back() * p);
  for (int i = 1; i <= dv; ++i) qp.push_back(qp.back() * q);
  BiPoly r;
  for (const auto& [e, c] : t_) r = r + c * (pp[e.first] * qp[e.second]);
  return r;
}

BiPoly BiPoly::operator-() const { return Scalar(-1) * *this; }

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (const auto& [e, c] : b.t_) r.add_term(e.first, e.second, c);
  return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return r;
}

BiPoly operator*(const Scalar& s, const BiPoly& a) {
  BiPoly r;
  if (is_zero(s)) return r;
  for (const auto& [e, c] : a.t_) r.t_.emplace(e, s * c);
  return r;
}

BiPoly pow(const BiPoly& p, int e) {
  BiPoly r = BiPoly::constant(1);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

// ---------------------------------------------------------------------------
// HomPoly

HomPoly::HomPoly(int degree) : d_(degree), c_((degree + 1) * (degree + 2) / 2) {
  require(degree >= 0, ErrorCode::InternalInconsistency, "negative degree");
  if (degree > current_limits().max_degree)
    fail(ErrorCode::ResourceLimit, "degree " + std::to_string(degree) + " exceeds cap");
}

HomPoly HomPoly::constant(const Scalar& c) {
  HomPoly p(0);
  p.c_[0] = c;
  return p;
}

HomPoly HomPoly::var(int i) {
  HomPoly::Exponent e{0, 0, 0};
  e[i] = 1;
  return monomial(e);
}

HomPoly HomPoly::linear(const Scalar& a, const Scalar& b, const Scalar& c) {
  HomPoly p(1);
  p.set(1, 0, a);
  p.set(0, 1, b);
  p.set(0, 0, c);
  return p;
}

HomPoly HomPoly::monomial(const Exponent& e, const Scalar& c) {
  HomPoly p(e[0] + e[1] + e[2]);
  p.set(e[0], e[1], c);
  return p;
}

std::size_t HomPoly::index(int a, int b) const {
  return static_cast<std::size_t>(a) * (2 * d_ + 3 - a) / 2 + b;
}

bool HomPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return cremona::is_zero(s); });
}

Scalar HomPoly::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > d_) return 0;
  return c_[index(a, b)];
}

void HomPoly::set(int a, int b, const Scalar& c) { c_[index(a, b)] = c; }

void HomPoly::add_to(int a, int b, const Scalar& c) { c_[index(a, b)] += c; }

std::vector<std::pair<HomPoly::Exponent, Scalar>> HomPoly::terms() const {
  std::vector<std::pair<Exponent, Scalar>> r;
  for (int a = d_; a >= 0; --a)
    for (int b = d_ - a; b >= 0; --b) {
      const Scalar& c = c_[index(a, b)];
      if (!cremona::is_zero(c)) r.push_back({{a, b, d_ - a - b}, c});
    }
  return r;
}

HomPoly::Exponent HomPoly::leading_exponent() const {
  for (int a = d_; a >= 0; --a)
    for (int b = d_ - a; b >= 0; --b)
      if (!cremona::is_zero(c_[index(a, b)])) return {a, b, d_ - a - b};
  fail(ErrorCode::InternalInconsistency, "leading term of zero polynomial");
}

Scalar HomPoly::eval(const Scalar& x, const Scalar& y, const Scalar& z) const {
  std::vector<Scalar> xp(d_ + 1), yp(d_ + 1), zp(d_ + 1);
  xp[0] = yp[0] = zp[0] = 1;
  for (int i = 1; i <= d_; ++i) {
    xp[i] = xp[i - 1] * x;
    yp[i] = yp[i - 1] * y;
    zp[i] = zp[i - 1] * z;
  }
  Scalar r = 0;
  for (int a = 0; a <= d_; ++a)
    for (int b = 0; a + b <= d_; ++b) {
      const Scalar& c = c_[index(a, b)];
      if (!cremona::is_zero(c)) r += c * xp[a] * yp[b] * zp[d_ - a - b];
    }
  return r;
}

HomPoly HomPoly::partial(int var) const {
  if (d_ == 0) return HomPoly(0);
  HomPoly r(d_ - 1);
  for (const auto& [e, c] : terms()) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_to(f[0], f[1], c * e[var]);
  }
  return r;
}

int HomPoly::order_in(int var) const {
  int k = -1;
  for (const auto& [e, c] : terms())
    if (k < 0 || e[var] < k) k = e[var];
  return k;
}

HomPoly HomPoly::operator-() const { return Scalar(-1) * *this; }

HomPoly operator+(const HomPoly& a, const HomPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  require(a.d_ == b.d_, ErrorCode::InternalInconsistency, "adding forms of different degree");
  HomPoly r(a);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

HomPoly operator-(const HomPoly& a, const HomPoly& b) { return a + (-b); }

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  // Integer products over a common denominator.
  struct Term {
    int x, y;
    Integer c;
  };
  auto integral = [](const HomPoly& p, Integer& den) {
    den = lcm_of_denominators(p.c_);
    std::vector<Term> t;
    for (int x = p.d_; x >= 0; --x)
      for (int y = p.d_ - x; y >= 0; --y) {
        const Scalar& c = p.c_[p.index(x, y)];
        if (!cremona::is_zero(c)) t.push_back({x, y, c.get_num() * (den / c.get_den())});
      }
    return t;
  };
  Integer da, db;
  const auto ta = integral(a, da), tb = integral(b, db);
  HomPoly r(a.d_ + b.d_);
  std::vector<Integer> acc(r.c_.size());
  for (const auto& u : ta)
    for (const auto& v : tb) mpz_addmul(acc[r.index(u.x + v.x, u.y + v.y)].get_mpz_t(), u.c.get_mpz_t(), v.c.get_mpz_t());
  const Integer den = da * db;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] == 0) continue;
    Scalar c(acc[i], den);
    c.canonicalize();
    check_bits(c);
    r.c_[i] = std::move(c);
  }
  return r;
}

HomPoly operator*(const Scalar& s, const HomPoly& a) {
  HomPoly r(a);
  for (auto& c : r.c_) c *= s;
  return r;
}

bool operator==(const HomPoly& a, const HomPoly& b) {
  bool za = a.is_zero(), zb = b.is_zero();
  if (za || zb) return za && zb;
  return a.d_ == b.d_ && a.c_ == b.c_;
}

HomPoly HomPoly::primitive() const {
  if (is_zero()) return *this;
  Integer l = lcm_of_denominators(c_);
  HomPoly r(*this);
  for (auto& c : r.c_) c *= l;
  Integer g = gcd_of_numerators(r.c_);
  auto e = leading_exponent();
  if (sgn(r.coeff(e)) < 0) g = -g;
  for (auto& c : r.c_) {
    c /= g;
    check_bits(c);
  }
  return r;
}

HomPoly HomPoly::monic() const {
  if (is_zero()) return *this;
  return (1 / coeff(leading_exponent())) * *this;
}

std::size_t HomPoly::max_bits() const {
  std::size_t m = 0;
  for (const auto& c : c_) m = std::max(m, bit_length(c));
  return m;
}

std::string HomPoly::str() const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const char* names = "xyz";
  for (const auto& [e, c] : ts) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Scalar a = abs(c);
    bool unit = a == 1;
    if (!unit) os << to_string(a);
    bool any = false;
    for (int k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      if (!unit || any) os << "*";
      os << names[k];
      if (e[k] > 1) os << "^" << e[k];
      any = true;
    }
    if (unit && !any) os << "1";
  }
  return os.str();
}

HomPoly pow(const HomPoly& p, int e) {
  HomPoly r = HomPoly::constant(1);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

namespace {

template <class T>
std::vector<T> powers(const T& base, int n, const T& one) {
  std::vector<T> r{one};
  for (int i = 1; i <= n; ++i) r.push_back(r.back() * base);
  return r;
}

}  // namespace

HomPoly substitute(const HomPoly& f, const std::array<HomPoly, 3>& g) {
  int d = f.degree();
  int e = 0;
  for (const auto& gi : g)
    if (!gi.is_zero()) e = gi.degree();
  auto one = HomPoly::constant(1);
  auto p0 = powers(g[0], d, one), p1 = powers(g[1], d, one), p2 = powers(g[2], d, one);
  HomPoly r(d * e);
  for (const auto& [ex, c] : f.terms()) r = r + c * (p0[ex[0]] * p1[ex[1]] * p2[ex[2]]);
  return r;
}

BiPoly substitute(const HomPoly& f, const std::array<BiPoly, 3>& g) {
  int d = f.degree();
  auto one = BiPoly::constant(1);
  auto p0 = powers(g[0], d, one), p1 = powers(g[1], d, one), p2 = powers(g[2], d, one);
  BiPoly r;
  for (const auto& [ex, c] : f.terms()) r = r + c * (p0[ex[0]] * p1[ex[1]] * p2[ex[2]]);
  return r;
}

BinaryForm substitute(const HomPoly& f, const std::array<BinaryForm, 3>& g) {
  // Values at t = 1 and s = 0, 1, -1, 2, ..., then interpolation.
  const int n = f.degree() * g[0].degree();
  std::vector<Scalar> xs, ys;
  for (int i = 0; i <= n; ++i) {
    Scalar s(i % 2 ? (i + 1) / 2 : -(i / 2));
    xs.push_back(s);
    ys.push_back(f.eval(g[0].dehomogenized()(s), g[1].dehomogenized()(s), g[2].dehomogenized()(s)));
  }
  return BinaryForm(n, interpolate(xs, ys));
}

BinaryForm restrict_to_pencil(const HomPoly& f, const std::array<Scalar, 3>& p,
                              const std::array<Scalar, 3>& q) {
  std::array<BinaryForm, 3> g;
  for (int i = 0; i < 3; ++i) g[i] = BinaryForm(1, UniPoly(std::vector<Scalar>{q[i], p[i]}));
  return substitute(f, g);
}

std::optional<HomPoly> try_divide(const HomPoly& a, const HomPoly& b) {
  require(!b.is_zero(), ErrorCode::InternalInconsistency, "division by zero polynomial");
  if (a.is_zero()) return HomPoly(std::max(0, a.degree() - b.degree()));
  if (a.degree() < b.degree()) return std::nullopt;
  int d = a.degree();
  HomPoly r(a), q(d - b.degree());
  auto lb = b.leading_exponent();
  Scalar inv = 1 / b.coeff(lb);
  auto tb = b.terms();
  for (int x = d; x >= 0; --x)
    for (int y = d - x; y >= 0; --y) {
      Scalar c = r.coeff(x, y);
      if (is_zero(c)) continue;
      int qa = x - lb[0], qb = y - lb[1], qc = (d - x - y) - lb[2];
      if (qa < 0 || qb < 0 || qc < 0) return std::nullopt;
      Scalar f = c * inv;
      q.set(qa, qb, f);
      for (const auto& [e, cb] : tb) r.add_to(qa + e[0], qb + e[1], -f * cb);
    }
  return q;
}

HomPoly divide_exact(const HomPoly& a, const HomPoly& b) {
  auto q = try_divide(a, b);
  require(q.has_value(), ErrorCode::InternalInconsistency, "inexact polynomial division");
  return *q;
}

namespace {

using Vec3 = std::array<Scalar, 3>;

UniPoly restrict_affine(const HomPoly& f, const Vec3& p, const Vec3& q) {
  return restrict_to_pencil(f, p, q).dehomogenized();
}

Scalar det3(const std::array<Vec3, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Columns P, Q, R of a frame with P off both curves.
bool pick_frame(const HomPoly& a, const HomPoly& b, int attempt, std::array<Vec3, 3>& cols) {
  long k = attempt;
  if (k == 0) {
    cols[0] = {Scalar(1), Scalar(2), Scalar(5)};
    cols[1] = {Scalar(3), Scalar(-1), Scalar(2)};
    cols[2] = {Scalar(-2), Scalar(7), Scalar(1)};
  } else {
    std::mt19937_64 gen(static_cast<std::uint64_t>(k));
    std::uniform_int_distribution<long> d(-8 - 4 * k, 8 + 4 * k);
    for (auto& c : cols)
      for (auto& v : c) v = d(gen);
  }
  std::array<Vec3, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = cols[j][i];
  return !is_zero(det3(m)) && !is_zero(a.eval(cols[0])) && !is_zero(b.eval(cols[0]));
}

std::optional<HomPoly> gcd_attempt(const HomPoly& a, const HomPoly& b, int attempt) {
  std::array<Vec3, 3> cols;
  if (!pick_frame(a, b, attempt, cols)) return std::nullopt;
  const Vec3& P = cols[0];
  auto point_at = [&](const Scalar& t) {
    Vec3 q;
    for (int i = 0; i < 3; ++i) q[i] = t * cols[1][i] + cols[2][i];
    return q;
  };
  int k = std::min(a.degree(), b.degree()) + 1;
  std::vector<Scalar> ts;
  std::vector<UniPoly> gs;
  long t = 0;
  int good = 0;
  while (good < k + 1) {
    if (t > 4 * (a.degree() + b.degree()) + 40) return std::nullopt;
    Scalar tv(t % 2 == 0 ? t / 2 : -(t + 1) / 2);
    ++t;
    Vec3 q = point_at(tv);
    UniPoly g = gcd(restrict_affine(a, P, q), restrict_affine(b, P, q));
    if (g.degree() < k) {
      k = g.degree();
      ts.clear();
      gs.clear();
      good = 0;
      if (k == 0) return HomPoly::constant(1);
    }
    if (g.degree() == k) {
      ts.push_back(tv);
      gs.push_back(g);
      ++good;
    }
  }
  // G'(s, t, u) = sum_i s^i c_i(t, u), each c_i homogeneous of degree k - i.
  HomPoly gp(k);
  for (int i = 0; i <= k; ++i) {
    std::vector<Scalar> ys;
    for (const auto& g : gs) ys.push_back(g.coeff(i));
    UniPoly ci = interpolate(ts, ys);
    if (ci.degree() > k - i) return std::nullopt;
    for (int l = 0; l <= ci.degree(); ++l) gp.set(i, l, ci.coeff(l));
  }
  // (s, t, u) = T^{-1} x with T = [P | Q | R].
  std::array<Vec3, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = cols[j][i];
  Scalar det = det3(m);
  std::array<HomPoly, 3> lin;
  for (int r = 0; r < 3; ++r) {
    // Row r of the inverse is the cofactor column r divided by det.
    Vec3 row;
    for (int c = 0; c < 3; ++c) {
      int r1 = (c + 1) % 3, r2 = (c + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      row[c] = (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) / det;
    }
    lin[r] = HomPoly::linear(row[0], row[1], row[2]);
  }
  HomPoly g = substitute(gp, lin).primitive();
  if (!try_divide(a, g) || !try_divide(b, g)) return std::nullopt;
  return g;
}

}  // namespace

HomPoly gcd(const HomPoly& a, const HomPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.degree() == 0 || b.degree() == 0) return HomPoly::constant(1);
  for (int attempt = 0; attempt < 64; ++attempt)
    if (auto g = gcd_attempt(a, b, attempt)) return *g;
  fail(ErrorCode::InternalInconsistency, "polynomial gcd did not converge");
}

}  // namespace cremona
