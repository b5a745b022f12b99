#include "cremona/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

bool recoverable(const CremonaError& e) { return e.code() != ErrorCode::ResourceLimit; }

Word applied_word(const std::vector<QuadraticProper>& q) {
  std::vector<Factor> f(q.begin(), q.end());
  return Word::from_applied(f);
}

// (max depth, number of prefixes at that depth).
std::pair<int, int> depth_measure(const std::vector<int>& d) {
  int m = 0, c = 0;
  for (int x : d) {
    if (x > m) {
      m = x;
      c = 1;
    } else if (x == m && m > 0) {
      ++c;
    }
  }
  return {m, c};
}

bool contains(const std::array<ProjPoint, 3>& a, const ProjPoint& p) {
  return std::find(a.begin(), a.end(), p) != a.end();
}

using Chain = std::function<std::vector<std::array<ProjPoint, 3>>(const ProjPoint&, const ProjPoint&)>;

std::vector<Factor> merge_linears(const std::vector<Factor>& app) {
  std::vector<Factor> out;
  for (const auto& f : app) {
    if (auto* a = std::get_if<LinearMap>(&f)) {
      if (!out.empty())
        if (auto* b = std::get_if<LinearMap>(&out.back())) {
          out.back() = LinearMap(*a * *b);
          continue;
        }
      out.push_back(*a);
    } else {
      out.push_back(f);
    }
  }
  std::vector<Factor> kept;
  for (const auto& f : out) {
    auto* a = std::get_if<LinearMap>(&f);
    if (a && *a == LinearMap::identity()) continue;
    kept.push_back(f);
  }
  if (kept.empty()) kept.push_back(LinearMap::identity());
  return kept;
}

void resegment(DJWord& w) {
  for (std::size_t i = 0; i < w.rho.size();) {
    if (w.rho[i].degree() == 1) {
      w.alpha[i] = w.alpha[i + 1] * w.rho[i].map.as_linear() * w.alpha[i];
      w.alpha.erase(w.alpha.begin() + static_cast<long>(i) + 1);
      w.rho.erase(w.rho.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
}

std::vector<TrackedMap> detour(const TrackedMap& rho, const ProjLine& l, const BubblePoint& p1, Sampler& s,
                               const Avoidance& extra,
                               const std::function<std::vector<TrackedMap>(const TrackedMap&, const ProjLine&)>& rec) {
  Avoidance av = extra;
  av.line(l).curve(jacobian(rho.map.triple()));
  for (const auto& w : rho.base) av.point(w.point.base);
  for (int attempt = 0; attempt < 32; ++attempt) {
    ProjPoint r = s.sample(av);
    try {
      TrackedMap tau = jonquieres_quadratic(p1, BubblePoint(r));
      TrackedMap rest = compose_tracked(rho, tau.inverse());
      ProjLine out = image_line(rho.map.triple(), l);
      std::vector<TrackedMap> parts = rec(rest.inverse(), out);
      std::vector<TrackedMap> res{tau};
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) res.push_back(it->inverse());
      return res;
    } catch (const CremonaError& e) {
      if (!recoverable(e)) throw;
    }
  }
  fail(ErrorCode::SamplingExhausted, "no admissible detour point");
}

std::vector<TrackedMap> split_impl(const TrackedMap& rho, const ProjLine& l, Sampler& s, bool allow_detour);

std::vector<TrackedMap> split_b(const TrackedMap& rho, const ProjLine& l, Sampler& s, bool allow_detour) {
  JonquieresData j = jonquieres_data(rho);
  ParamCurve c = l.param();
  std::optional<BubblePoint> p1, pd;
  for (const auto& w : j.simple) {
    bool on = multiplicity_at(c, w.point) > 0;
    if (on && !p1 && w.point.proper()) p1 = w.point;
    if (!on && !pd && w.point.proper()) pd = w.point;
  }
  require(p1.has_value(), ErrorCode::InternalInconsistency, "no proper base point on the line");
  if (pd) {
    TrackedMap tau = jonquieres_quadratic(*p1, *pd);
    TrackedMap rest = compose_tracked(rho, tau.inverse());
    std::vector<TrackedMap> res{tau};
    for (auto& t : split_impl(rest, image_line(tau.map.triple(), l), s, true)) res.push_back(std::move(t));
    return res;
  }
  require(allow_detour, ErrorCode::InternalInconsistency, "second detour needed");
  Avoidance av;
  av.line(line_through(pencil_center(), p1->base));
  return detour(rho, l, *p1, s, av,
                [&](const TrackedMap& m, const ProjLine& ll) { return split_impl(m, ll, s, false); });
}

std::vector<TrackedMap> split_a(const TrackedMap& rho, const ProjLine& l, Sampler& s, bool allow_detour) {
  JonquieresData j = jonquieres_data(rho);
  const BubblePoint p0(pencil_center());
  std::optional<BubblePoint> p1;
  for (const auto& w : j.simple)
    if (w.point.proper()) {
      p1 = w.point;
      break;
    }
  if (p1) {
    std::optional<BubblePoint> p2;
    for (const auto& w : j.simple) {
      const BubblePoint& b = w.point;
      if (b == *p1) continue;
      if (b.proper() || (b.level() == 1 && (b.parent() == p0 || b.parent() == *p1))) {
        p2 = b;
        break;
      }
    }
    require(p2.has_value(), ErrorCode::InternalInconsistency, "no second base point");
    TrackedMap tau = jonquieres_quadratic(*p1, *p2);
    TrackedMap rest = compose_tracked(rho, tau.inverse());
    std::vector<TrackedMap> res{tau};
    for (auto& t : split_impl(rest, image_line(tau.map.triple(), l), s, true)) res.push_back(std::move(t));
    return res;
  }
  require(allow_detour, ErrorCode::InternalInconsistency, "second detour needed");
  std::optional<BubblePoint> near;
  for (const auto& w : j.simple)
    if (w.point.level() == 1 && w.point.parent() == p0) near = w.point;
  require(near.has_value(), ErrorCode::InternalInconsistency, "no base point near [1:0:0]");
  return detour(rho, l, *near, s, Avoidance{},
                [&](const TrackedMap& m, const ProjLine& ll) { return split_impl(m, ll, s, false); });
}

std::vector<TrackedMap> split_impl(const TrackedMap& rho, const ProjLine& l, Sampler& s, bool allow_detour) {
  require(rho.degree() >= 2, ErrorCode::PreconditionViolated, "nothing to split");
  if (rho.degree() == 2) return {rho};
  JonquieresData j = jonquieres_data(rho);
  if (classify_line_case(j, l) == LineCase::TypeA) return split_a(rho, l, s, allow_detour);
  return split_b(rho, l, s, allow_detour);
}

Avoidance pair_lines(const std::vector<ProjPoint>& pts) {
  Avoidance av;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    av.point(pts[i]);
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!(pts[i] == pts[j])) av.line(line_through(pts[i], pts[j]));
  }
  return av;
}

}  // namespace

RewriteTrace& rewrite_trace() {
  static RewriteTrace t;
  return t;
}

ProjLine image_line(const Triple& f, const ProjLine& l) {
  ParamCurve c = restrict_to_line(f, l);
  require(c.degree() == 1, ErrorCode::InternalInconsistency, "image of the line is not a line");
  HomPoly eq = implicitize(c).equation;
  return ProjLine(Vec3{eq.coeff(1, 0), eq.coeff(0, 1), eq.coeff(0, 0)});
}

std::vector<int> prefix_depths(const Word& w, const ProjLine& l) {
  std::vector<int> d;
  LineImage s = LineImage::of(l);
  for (const auto& f : w.applied_order()) {
    s = push_line_image(s, factor_triple(f));
    d.push_back(s.depth());
  }
  return d;
}

Word absorb_linears(const Word& w) {
  std::vector<QuadraticProper> q;
  LinearMap pending;
  for (const auto& f : w.applied_order()) {
    if (factor_degree(f) == 1) {
      LinearMap a = std::holds_alternative<LinearMap>(f) ? std::get<LinearMap>(f) : factor_map(f).as_linear();
      pending = a * pending;
      continue;
    }
    auto* p = std::get_if<QuadraticProper>(&f);
    require(p != nullptr, ErrorCode::PreconditionViolated, "factor is not a quadratic map with proper base points");
    q.push_back({p->alpha, p->beta * pending});
    pending = LinearMap::identity();
  }
  if (q.empty()) return Word{{pending}};
  q.back().alpha = pending * q.back().alpha;
  return applied_word(q);
}

Word decontract(const Word& w, const ProjLine& l, Sampler& s) {
  std::vector<QuadraticProper> q;
  for (const auto& f : w.applied_order()) {
    auto* p = std::get_if<QuadraticProper>(&f);
    require(p != nullptr, ErrorCode::PreconditionViolated, "decontraction needs quadratic maps with proper base points");
    q.push_back(*p);
  }
  RewriteTrace& tr = rewrite_trace();
  std::vector<int> d = prefix_depths(applied_word(q), l);
  tr.decontract_initial = std::accumulate(d.begin(), d.end(), 0L);
  auto cur = depth_measure(d);
  const long cap = 10 * std::max(tr.decontract_initial, 1L) + 64;
  for (long step = 0; cur.first > 0; ++step) {
    tr.decontract.push_back(cur);
    require(step < cap, ErrorCode::ResourceLimit, "decontraction does not terminate");
    int n = static_cast<int>(d.size()) - 1;
    while (d[n] != cur.first) --n;
    require(n + 1 < static_cast<int>(q.size()), ErrorCode::InternalInconsistency, "last prefix contracts L");

    LineImage img = LineImage::of(l);
    for (int i = 0; i <= n; ++i) img = push_line_image(img, q[i].triple());
    const ProjPoint x = img.center.base;
    const auto P = q[n].inverse_base_points();
    const auto Q = q[n + 1].base_points();
    require(contains(Q, x), ErrorCode::InternalInconsistency, "contracted image is not a base point of the next map");
    const int prev = n > 0 ? d[n - 1] : 0;

    std::vector<ProjPoint> Po, Qo;
    for (const auto& p : P)
      if (!(p == x)) Po.push_back(p);
    for (const auto& p : Q)
      if (!(p == x)) Qo.push_back(p);
    std::vector<Chain> chains;
    if (contains(P, x)) {
      std::vector<Chain> one, three;
      for (const auto& p2 : Po)
        for (const auto& q2 : Qo) {
          one.push_back([=](const ProjPoint& r, const ProjPoint&) {
            return std::vector<std::array<ProjPoint, 3>>{{x, p2, r}, {x, q2, r}};
          });
          three.push_back([=](const ProjPoint& r, const ProjPoint& sp) {
            return std::vector<std::array<ProjPoint, 3>>{{x, p2, sp}, {x, r, sp}, {x, r, q2}};
          });
        }
      if (prev == cur.first - 1) {
        chains = one;
        chains.insert(chains.end(), three.begin(), three.end());
      } else {
        chains = three;
        chains.insert(chains.end(), one.begin(), one.end());
      }
    } else {
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          if (i == k) continue;
          const ProjPoint p2 = P[i], p3 = P[k];
          for (const auto& q2 : Qo)
            chains.push_back([=](const ProjPoint& r, const ProjPoint& sp) {
              return std::vector<std::array<ProjPoint, 3>>{{x, p2, p3}, {x, r, p3}, {x, r, sp}, {x, q2, sp}};
            });
        }
    }

    std::vector<ProjPoint> fixed(P.begin(), P.end());
    fixed.insert(fixed.end(), Q.begin(), Q.end());
    fixed.push_back(x);
    bool done = false;
    for (const auto& chain : chains) {
      for (int attempt = 0; attempt < 6 && !done; ++attempt) {
        try {
          ProjPoint r = s.sample(pair_lines(fixed));
          std::vector<ProjPoint> withr = fixed;
          withr.push_back(r);
          ProjPoint sp = s.sample(pair_lines(withr));
          std::vector<QuadraticProper> c;
          for (const auto& pts : chain(r, sp)) c.push_back(quadratic_from_points(pts[0], pts[1], pts[2]));
          std::vector<QuadraticProper> tau;
          auto add = [&](const QuadraticProper& a, const QuadraticProper& b) {
            SharedComposition sc = compose_shared2(a, b);
            require(sc.proper, ErrorCode::CollinearBasePoints, "replacement has an infinitely near base point");
            tau.push_back(*sc.canonical);
          };
          add(q[n].inverse(), c.front());
          for (std::size_t i = 1; i < c.size(); ++i) add(c[i - 1], c[i]);
          add(c.back(), q[n + 1]);
          std::vector<QuadraticProper> nq(q.begin(), q.begin() + n);
          nq.insert(nq.end(), tau.begin(), tau.end());
          nq.insert(nq.end(), q.begin() + n + 2, q.end());
          std::vector<int> nd = prefix_depths(applied_word(nq), l);
          auto next = depth_measure(nd);
          if (next < cur) {
            q = std::move(nq);
            d = std::move(nd);
            cur = next;
            done = true;
          }
        } catch (const CremonaError& e) {
          if (!recoverable(e)) throw;
        }
      }
      if (done) break;
    }
    require(done, ErrorCode::InternalInconsistency, "no decontracting replacement found");
    tr.log.push_back("decontract at prefix " + std::to_string(n));
  }
  tr.decontract.push_back(cur);
  return applied_word(q);
}

Word DJWord::word() const {
  std::vector<Factor> app;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    app.push_back(alpha[i]);
    if (i < rho.size()) app.push_back(rho[i].map);
  }
  return Word::from_applied(app);
}

std::vector<ParamCurve> DJWord::images(const ProjLine& l) const {
  std::vector<ParamCurve> out;
  ParamCurve c = l.param();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    c = cremona::apply(alpha[i].triple(), c);
    c = cremona::apply(rho[i].map.triple(), c);
    out.push_back(c);
  }
  return out;
}

DJWord to_jonquieres_form(const Word& w, const ProjLine& l) {
  DJWord dj;
  auto app = w.applied_order();
  if (app.size() == 1 && is_linear(app[0])) {
    dj.alpha.push_back(factor_map(app[0]).as_linear());
    return dj;
  }
  for (int v : prefix_depths(w, l))
    require(v == 0, ErrorCode::NotDecontracted, "a prefix contracts L");
  std::vector<QuadraticProper> q;
  for (const auto& f : app) {
    auto* p = std::get_if<QuadraticProper>(&f);
    require(p != nullptr, ErrorCode::PreconditionViolated, "expected quadratic maps with proper base points");
    q.push_back(*p);
  }
  const std::size_t m = q.size();
  dj.alpha.push_back(q[0].beta);
  for (std::size_t j = 1; j < m; ++j) dj.alpha.push_back(q[j].beta * q[j - 1].alpha);
  dj.alpha.push_back(q[m - 1].alpha);
  for (std::size_t j = 0; j < m; ++j) dj.rho.push_back(TrackedMap::quadratic(QuadraticProper::sigma()));
  return dj;
}

DJWord dj_normalize(DJWord w, const ProjLine& l, Sampler& s) {
  (void)s;
  RewriteTrace& tr = rewrite_trace();
  const BubblePoint p0(pencil_center());
  enum class Op { None, Merge, CaseA, CaseB, Swap } last = Op::None;
  std::pair<int, int> prev{0, 0};
  bool first = true;
  long cap = 0;
  for (long step = 0;; ++step) {
    resegment(w);
    std::vector<ParamCurve> img = w.images(l);
    int D = 1;
    for (const auto& c : img) D = std::max(D, c.degree());
    if (first) {
      long m = 0;
      for (std::size_t i = 0; i < img.size(); ++i) m += (img[i].degree() - 1) + (w.rho[i].degree() - 1);
      tr.normalize_initial = m;
      cap = 10 * std::max(m, 1L) + 64;
    }
    int n = static_cast<int>(img.size()) - 1;
    while (n >= 0 && img[n].degree() != D) --n;
    int k = 0;
    for (int i = 0; i <= n; ++i) k += w.rho[i].degree() - 1;
    std::pair<int, int> meas{D, D > 1 ? k : 0};
    if (!first) {
      bool ok = (last == Op::CaseB || last == Op::Swap) ? meas == prev : meas < prev;
      if (!ok) tr.normalize_descent = false;
    }
    first = false;
    prev = meas;
    tr.normalize.push_back(meas);
    if (D <= 1) break;
    require(step < cap, ErrorCode::ResourceLimit, "normalization does not terminate");
    require(n + 1 < static_cast<int>(w.rho.size()), ErrorCode::InternalInconsistency, "last image is not a line");

    const LinearMap a = w.alpha[n + 1];
    if (a(pencil_center()) == pencil_center()) {
      TrackedMap merged = compose_tracked(w.rho[n + 1], compose_tracked(a, w.rho[n]));
      w.rho[n] = merged;
      w.rho.erase(w.rho.begin() + n + 1);
      w.alpha.erase(w.alpha.begin() + n + 1);
      last = Op::Merge;
      tr.log.push_back("merge at " + std::to_string(n));
      continue;
    }
    const ParamCurve& c = img[n];
    const ParamCurve ac = cremona::apply(a.triple(), c);
    const LinearMap ai = a.inverse();
    auto m = [&](const BubblePoint& b) { return multiplicity_at(c, b); };
    auto ma = [&](const BubblePoint& b) { return multiplicity_at(ac, b); };
    auto [p1, p2] = select_heavy_points(jonquieres_data(w.rho[n].inverse()), m, D, false);
    auto [qt1, qt2] = select_heavy_points(jonquieres_data(w.rho[n + 1]), ma, D, true);
    const BubblePoint q0(ai(pencil_center()));
    const BubblePoint q1 = push_bubble_point(qt1, ai), q2 = push_bubble_point(qt2, ai);

    if (m(p0) < m(p1)) {
      TrackedMap tau = jonquieres_quadratic(p1, p2);
      LinearMap b1 = exchange_points(pencil_center(), p1.base);
      LinearMap gamma = a * b1.inverse();
      TrackedMap tb = compose_tracked(tau, b1.inverse());
      LinearMap b2 = pencil_correction(tb.map);
      TrackedMap tp = compose_tracked(b2, tb);
      require(is_jonquieres(tp.map.triple()), ErrorCode::InternalInconsistency, "pencil correction failed");
      w.rho[n] = compose_tracked(tau, w.rho[n]);
      w.rho.insert(w.rho.begin() + n + 1, tp.inverse());
      w.alpha[n + 1] = b2;
      w.alpha.insert(w.alpha.begin() + n + 2, gamma);
      last = Op::CaseB;
      tr.log.push_back("exchange p at " + std::to_string(n));
    } else if (ma(p0) < ma(qt1)) {
      TrackedMap sg = jonquieres_quadratic(qt1, qt2);
      LinearMap d1 = exchange_points(pencil_center(), qt1.base);
      TrackedMap sd = compose_tracked(sg, d1.inverse());
      LinearMap d2 = pencil_correction(sd.map);
      TrackedMap sp = compose_tracked(d2, sd);
      require(is_jonquieres(sp.map.triple()), ErrorCode::InternalInconsistency, "pencil correction failed");
      TrackedMap tail = compose_tracked(w.rho[n + 1], sg.inverse());
      w.alpha[n + 1] = d1 * a;
      w.rho[n + 1] = sp;
      w.alpha.insert(w.alpha.begin() + n + 2, d2.inverse());
      w.rho.insert(w.rho.begin() + n + 2, tail);
      last = Op::Swap;
      tr.log.push_back("exchange q at " + std::to_string(n));
    } else {
      BubblePoint r;
      if (!(p1 == p0) && !(p1 == q0)) r = p1;
      else if (!(q1 == p0) && !(q1 == q0)) r = q1;
      else r = q2;
      require(m(p0) + m(q0) + m(r) > D, ErrorCode::InternalInconsistency, "multiplicity inequality fails");
      TrackedMap tau = jonquieres_quadratic(q0, r);
      TrackedMap ta = compose_tracked(tau, ai);
      LinearMap b = pencil_correction(ta.map);
      TrackedMap tp = compose_tracked(b, ta);
      require(is_jonquieres(tp.map.triple()), ErrorCode::InternalInconsistency, "pencil correction failed");
      w.rho[n] = compose_tracked(tau, w.rho[n]);
      w.alpha[n + 1] = b;
      w.rho[n + 1] = compose_tracked(w.rho[n + 1], tp.inverse());
      last = Op::CaseA;
      tr.log.push_back("lower degree at " + std::to_string(n));
    }
  }
  return w;
}

std::vector<TrackedMap> split_line_type_b(const TrackedMap& rho, const ProjLine& l, Sampler& s) {
  if (rho.degree() == 2) return {rho};
  return split_b(rho, l, s, true);
}

std::vector<TrackedMap> split_line_type_a(const TrackedMap& rho, const ProjLine& l, Sampler& s) {
  if (rho.degree() == 2) return {rho};
  return split_a(rho, l, s, true);
}

std::vector<TrackedMap> split_line(const TrackedMap& rho, const ProjLine& l, Sampler& s) {
  return split_impl(rho, l, s, true);
}

std::vector<QuadraticProper> properize_quadratic(const RationalMap& rho, const std::optional<ProjLine>& l,
                                                 Sampler& s) {
  require(rho.degree() == 2, ErrorCode::PreconditionViolated, "map is not quadratic");
  BaseLocus b = find_base_points(rho.triple());
  std::vector<BubblePoint> proper, near;
  for (const auto& w : b) (w.point.proper() ? proper : near).push_back(w.point);
  auto check = [&](const std::vector<QuadraticProper>& parts) {
    if (!l) return;
    ProjLine cur = *l;
    for (const auto& q : parts) cur = image_line(q.triple(), cur);
  };
  if (proper.size() == 3) {
    std::vector<QuadraticProper> res{to_quadratic_proper(rho, {proper[0].base, proper[1].base, proper[2].base})};
    check(res);
    return res;
  }
  Avoidance av;
  if (l) av.line(*l);
  for (const auto& p : proper) av.point(p.base);
  if (proper.size() == 2) {
    const BubblePoint& p3 = near.at(0);
    const ProjPoint p1 = p3.base;
    const ProjPoint p2 = proper[0].base == p1 ? proper[1].base : proper[0].base;
    av.line(line_through(p1, p2));
    for (int attempt = 0; attempt < 32; ++attempt) {
      try {
        ProjPoint r = s.sample(av);
        QuadraticProper r1 = quadratic_from_points(p1, p2, r);
        RationalMap r2 = compose(r1.map(), rho.inverse());
        require(r2.degree() == 2, ErrorCode::InternalInconsistency, "composite is not quadratic");
        BaseLocus b2 = find_base_points(r2.triple());
        std::vector<ProjPoint> pts;
        for (const auto& w : b2)
          if (w.point.proper()) pts.push_back(w.point.base);
        if (pts.size() != 3) continue;
        QuadraticProper q2 = to_quadratic_proper(r2, {pts[0], pts[1], pts[2]});
        std::vector<QuadraticProper> res{r1, q2.inverse()};
        check(res);
        return res;
      } catch (const CremonaError& e) {
        if (!recoverable(e)) throw;
      }
    }
    fail(ErrorCode::SamplingExhausted, "no point gives proper base points");
  }
  const BubblePoint p0 = proper.at(0);
  BubblePoint q;
  for (const auto& n : near)
    if (n.level() == 1) q = n;
  for (int attempt = 0; attempt < 32; ++attempt) {
    try {
      ProjPoint r = s.sample(av);
      TrackedMap r1 = quadratic_through({p0, q, BubblePoint(r)});
      RationalMap rest = compose(rho, r1.map.inverse());
      require(rest.degree() == 2, ErrorCode::InternalInconsistency, "composite is not quadratic");
      std::optional<ProjLine> mid;
      if (l) mid = image_line(r1.map.triple(), *l);
      std::vector<QuadraticProper> res = properize_quadratic(r1.map, l, s);
      for (auto& x : properize_quadratic(rest, mid, s)) res.push_back(std::move(x));
      return res;
    } catch (const CremonaError& e) {
      if (!recoverable(e)) throw;
    }
  }
  fail(ErrorCode::SamplingExhausted, "no point gives proper base points");
}

Conjugation conjugate_to_sigma(const QuadraticProper& rho, const ProjLine& l, Sampler& s) {
  require(l == default_line(), ErrorCode::PreconditionViolated, "conjugation needs the line x = y");
  auto p = rho.base_points();
  auto pp = rho.inverse_base_points();
  std::vector<int> on, off;
  for (int i = 0; i < 3; ++i) (incidence(p[i], l) ? on : off).push_back(i);
  require(on.size() == 1, ErrorCode::NotInDecL, "the line must pass through exactly one base point");
  const int i1 = on[0];
  std::optional<Conjugation> best;
  for (int swap = 0; swap < 2; ++swap) {
    const int j = off[swap], k = off[1 - swap];
    const ProjLine far = line_through(p[j], p[k]);
    ProjPoint r(1, 1, 1);
    if (r == p[i1] || incidence(r, far)) r = s.sample_on(l, Avoidance().point(p[i1]).line(far));
    auto rr = rho.map()(r);
    require(rr.has_value(), ErrorCode::InternalInconsistency, "point on L is a base point");
    const ProjPoint q1(0, 0, 1), q2(0, 1, 0), q3(1, 0, 0), sp(1, 1, 1);
    Conjugation c;
    c.alpha = pgl3_from_4points({q1, q2, q3, sp}, {p[i1], p[j], p[k], r});
    c.beta = pgl3_from_4points({pp[i1], pp[j], pp[k], *rr}, {q1, q2, q3, sp});
    require(is_linear_dec_member(c.alpha, l) && is_linear_dec_member(c.beta, l), ErrorCode::InternalInconsistency,
            "conjugating maps do not preserve L");
    require(compose(RationalMap(c.beta), compose(rho.map(), RationalMap(c.alpha))) == RationalMap(sigma_triple()),
            ErrorCode::InternalInconsistency, "conjugate is not sigma");
    if (!best || c.alpha == LinearMap::identity()) best = c;
  }
  return *best;
}

LinearMap Generator::matrix() const {
  switch (kind) {
    case Diag: return LinearMap::diag(s, s, t);
    case Mu1: return mu1();
    case Mu2: return mu2();
    case P: return swap_xy();
  }
  fail(ErrorCode::InternalInconsistency, "unknown generator");
}

LinearMap generator_product(const std::vector<Generator>& g) {
  LinearMap m;
  for (const auto& x : g) m = m * x.matrix();
  return m;
}

LinearMap elementary_a(const Scalar& lambda) {
  return LinearMap::from_rows({1, 0, 0, 0, 1, 0, lambda, 0, 1});
}
LinearMap elementary_b(const Scalar& lambda) {
  return LinearMap::from_rows({1, 0, 0, 0, 1, 0, 0, lambda, 1});
}
LinearMap elementary_c(const Scalar& lambda) {
  return LinearMap::from_rows({1, 0, lambda, 0, 1, lambda, 0, 0, 1});
}

std::vector<Generator> expand_a(const Scalar& lambda) {
  Scalar s = -1 / lambda;
  return {{Generator::Diag, s, 1}, {Generator::Mu2}, {Generator::Diag, lambda, 1}};
}

namespace {

enum class Elem { A, B, C, D };

// The generators of the inverse of an elementary operation.
std::vector<Generator> expand_inverse(Elem e, const Scalar& x, const Scalar& y) {
  switch (e) {
    case Elem::A: return expand_a(-x);
    case Elem::B: {
      std::vector<Generator> g{{Generator::P}};
      for (auto& h : expand_a(-x)) g.push_back(h);
      g.push_back({Generator::P});
      return g;
    }
    case Elem::C: {
      Scalar l = -x;
      return {{Generator::Diag, 1, 1 / l}, {Generator::Mu1}, {Generator::Diag, -1, l}};
    }
    case Elem::D: return {{Generator::Diag, 1 / x, 1 / y}};
  }
  return {};
}

}  // namespace

std::vector<Generator> factor_linear(const LinearMap& a) {
  require(is_linear_dec_member(a, default_line()), ErrorCode::NotInAL, "linear map does not preserve x = y");
  if (a == LinearMap::identity()) return {};
  if (a == swap_xy()) return {{Generator::P}};
  {
    const Matrix3& d = a.matrix();
    if (d(0, 0) == d(1, 1) && is_zero(d(0, 1)) && is_zero(d(0, 2)) && is_zero(d(1, 0)) && is_zero(d(1, 2)) &&
        is_zero(d(2, 0)) && is_zero(d(2, 1)))
      return {{Generator::Diag, d(0, 0), d(2, 2)}};
  }
  Matrix3 m = a.matrix();
  struct Op {
    Elem e;
    Scalar x, y;
  };
  std::vector<Op> left, right;
  auto mat = [](Elem e, const Scalar& x, const Scalar& y) -> Matrix3 {
    switch (e) {
      case Elem::A: return elementary_a(x).matrix();
      case Elem::B: return elementary_b(x).matrix();
      case Elem::C: return elementary_c(x).matrix();
      case Elem::D: {
        Matrix3 d = Matrix3::Zero();
        d(0, 0) = x;
        d(1, 1) = x;
        d(2, 2) = y;
        return d;
      }
    }
    return Matrix3::Identity();
  };
  auto lop = [&](Elem e, const Scalar& x, const Scalar& y = 1) {
    if (e != Elem::D && is_zero(x)) return;
    if (e == Elem::D && x == y) return;
    m = Matrix3(mat(e, x, y) * m);
    left.push_back({e, x, y});
  };
  auto rop = [&](Elem e, const Scalar& x, const Scalar& y = 1) {
    if (e != Elem::D && is_zero(x)) return;
    if (e == Elem::D && x == y) return;
    m = Matrix3(m * mat(e, x, y));
    right.push_back({e, x, y});
  };
  auto expect = [](bool c) { require(c, ErrorCode::InternalInconsistency, "reduction of a linear map failed"); };

  if (is_zero(m(2, 2))) lop(Elem::A, 1);
  expect(!is_zero(m(2, 2)));
  lop(Elem::D, 1, 1 / m(2, 2));
  expect(m(0, 2) == m(1, 2));
  lop(Elem::C, -m(0, 2));
  const Scalar y = m(1, 0), z = m(1, 1);
  rop(Elem::A, -y - m(2, 0));
  rop(Elem::B, -z - m(2, 1));
  lop(Elem::C, 1);
  expect(is_zero(m(1, 0)) && is_zero(m(1, 1)) && !is_zero(m(0, 0)) && m(0, 0) == -m(0, 1));
  rop(Elem::D, 1 / m(0, 0), 1);
  lop(Elem::A, -m(2, 0));
  lop(Elem::B, -m(2, 2));
  expect(is_zero(m(2, 0)) && is_zero(m(2, 2)) && !is_zero(m(2, 1)));
  lop(Elem::D, 1, 1 / m(2, 1));
  lop(Elem::C, 1);
  rop(Elem::C, -1);
  lop(Elem::B, -1);
  lop(Elem::D, 1, 1 / m(2, 2));
  expect(m == Matrix3(Matrix3::Identity() * m(0, 0)));

  std::vector<Generator> raw;
  for (const auto& op : left)
    for (auto& g : expand_inverse(op.e, op.x, op.y)) raw.push_back(g);
  for (auto it = right.rbegin(); it != right.rend(); ++it)
    for (auto& g : expand_inverse(it->e, it->x, it->y)) raw.push_back(g);

  std::vector<Generator> out;
  for (const auto& g : raw) {
    if (g.kind == Generator::Diag && !out.empty() && out.back().kind == Generator::Diag) {
      out.back().s *= g.s;
      out.back().t *= g.t;
    } else if (g.kind == Generator::P && !out.empty() && out.back().kind == Generator::P) {
      out.pop_back();
      continue;
    } else {
      out.push_back(g);
    }
    if (out.back().kind == Generator::Diag && out.back().s == out.back().t) out.pop_back();
  }
  require(generator_product(out) == a, ErrorCode::InternalInconsistency, "generator product differs");
  return out;
}

Word prepare_word(const Word& w, const LinearMap& frame, Sampler& s) {
  std::vector<Factor> app{frame.inverse()};
  for (const auto& f : w.applied_order()) {
    if (std::holds_alternative<RationalMap>(f)) {
      const auto& r = std::get<RationalMap>(f);
      if (r.degree() == 1) {
        app.push_back(r.as_linear());
      } else {
        require(r.degree() == 2, ErrorCode::PreconditionViolated, "general factors must be quadratic");
        for (auto& q : properize_quadratic(r, std::nullopt, s)) app.push_back(q);
      }
    } else {
      app.push_back(f);
    }
  }
  app.push_back(frame);
  return absorb_linears(Word::from_applied(app));
}

Certificate certify(const Word& input, const Word& output, const ProjLine& l, const LinearMap& frame,
                    std::uint64_t seed) {
  Certificate c;
  c.seed = seed;
  c.line = l;
  c.frame = frame;
  c.input = input;
  c.output = output;
  c.recomposition = compose_word(output) == compose_word(input);
  c.all_lines = true;
  ProjLine cur = l;
  for (const auto& f : output.applied_order()) {
    if (restrict_to_line(factor_triple(f), cur).degree() != 1) {
      c.all_lines = false;
      break;
    }
    cur = image_line(factor_triple(f), cur);
    c.prefix_lines.push_back(cur);
  }
  c.noether = true;
  return c;
}

Certificate decompose_full(const Word& w, const ProjLine& l, std::uint64_t seed) {
  Sampler smp(seed);
  rewrite_trace() = RewriteTrace{};
  const long v0 = noether_stats().violations;
  require(is_dec_member(compose_word(w), l), ErrorCode::NotInDecL, "the word does not preserve the line");
  const ProjLine l0 = default_line();
  const LinearMap t = line_transport(l, l0), ti = t.inverse();
  Word w0 = prepare_word(w, t, smp);

  std::vector<Factor> fin;
  if (w0.size() == 1 && is_linear(w0.factors[0])) {
    fin.push_back(w0.factors[0]);
  } else {
    DJWord dj = dj_normalize(to_jonquieres_form(decontract(w0, l0, smp), l0), l0, smp);
    std::vector<Factor> seq;
    ProjLine cur = l0;
    for (std::size_t i = 0; i < dj.alpha.size(); ++i) {
      seq.push_back(dj.alpha[i]);
      cur = dj.alpha[i].image(cur);
      if (i >= dj.rho.size()) continue;
      for (const auto& piece : split_line(dj.rho[i], cur, smp))
        for (const auto& q : properize_quadratic(piece.map, cur, smp)) {
          seq.push_back(q);
          cur = image_line(q.triple(), cur);
        }
    }
    cur = l0;
    for (const auto& f : seq) {
      if (auto* a = std::get_if<LinearMap>(&f)) {
        fin.push_back(*a);
        cur = a->image(cur);
        continue;
      }
      const auto& q = std::get<QuadraticProper>(f);
      ProjLine out = image_line(q.triple(), cur);
      LinearMap b = line_transport(l0, cur), a = line_transport(l0, out);
      QuadraticProper qh{a.inverse() * q.alpha, q.beta * b};
      Conjugation c = conjugate_to_sigma(qh, l0, smp);
      fin.push_back(b.inverse());
      fin.push_back(c.alpha.inverse());
      fin.push_back(QuadraticProper::sigma());
      fin.push_back(c.beta.inverse());
      fin.push_back(a);
      cur = out;
    }
  }
  std::vector<Factor> out;
  for (const auto& f : merge_linears(fin)) {
    if (auto* a = std::get_if<LinearMap>(&f)) {
      LinearMap b = ti * *a * t;
      require(is_linear_dec_member(b, l), ErrorCode::InternalInconsistency, "linear factor leaves the line");
      out.push_back(b);
    } else {
      out.push_back(QuadraticProper{ti, t});
    }
  }
  Certificate c = certify(w, Word::from_applied(out), l, t, seed);
  c.noether = noether_stats().violations == v0;
  return c;
}

VerifyReport verify_certificate(const Certificate& c) {
  VerifyReport r;
  auto bad = [&](const std::string& why) {
    r.ok = false;
    r.failure = why;
    return r;
  };
  try {
    if (c.output.empty()) return bad("empty output word");
    if (!(compose_word(c.output) == compose_word(c.input))) return bad("output does not recompose to the input");
    if (!(c.frame.image(c.line) == default_line())) return bad("frame does not send the line to x = y");
    const Triple sigma_l = compose_triples(c.frame.inverse().triple(), compose_triples(sigma_triple(), c.frame.triple()));
    auto app = c.output.applied_order();
    if (c.prefix_lines.size() != app.size()) return bad("wrong number of prefix lines");
    ProjLine cur = c.line;
    for (std::size_t i = 0; i < app.size(); ++i) {
      const Factor& f = app[i];
      if (auto* a = std::get_if<LinearMap>(&f)) {
        if (!is_linear_dec_member(*a, c.line)) return bad("factor " + std::to_string(i) + " moves the line");
      } else if (factor_degree(f) != 2 || !same_map(factor_triple(f), sigma_l)) {
        return bad("factor " + std::to_string(i) + " is not sigma");
      }
      ParamCurve img = restrict_to_line(factor_triple(f), cur);
      if (img.degree() != 1) return bad("prefix " + std::to_string(i) + " does not send the line to a line");
      cur = image_line(factor_triple(f), cur);
      if (!(cur == c.prefix_lines[i])) return bad("prefix line " + std::to_string(i) + " differs");
    }
  } catch (const CremonaError& e) {
    if (!recoverable(e)) throw;
    return bad(e.what());
  }
  r.ok = true;
  return r;
}

}  // namespace cremona
