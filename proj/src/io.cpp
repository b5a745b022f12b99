#include "cremona/io.hpp"

#include "cremona/errors.hpp"

namespace cremona {

namespace {

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Vec3 vec_from_json(const Json& j) {
  require(j.is_array() && j.size() == 3, ErrorCode::ParseError, "expected three scalars");
  return {scalar_from_json(j[0]), scalar_from_json(j[1]), scalar_from_json(j[2])};
}

Json vec_json(const Vec3& v) { return Json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

Json triple_json(const Triple& t) { return Json::array({to_json(t[0]), to_json(t[1]), to_json(t[2])}); }

Triple triple_from_json(const Json& j) {
  require(j.is_array() && j.size() == 3, ErrorCode::ParseError, "expected three polynomials");
  return {poly_from_json(j[0]), poly_from_json(j[1]), poly_from_json(j[2])};
}

}  // namespace

Json parse_json(const std::string& text) {
  return guarded([&] { return Json::parse(text); });
}

Json to_json(const Scalar& s) { return to_string(s); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<std::int64_t>()));
  require(j.is_string(), ErrorCode::ParseError, "scalars are strings \"p/q\" or integers");
  return parse_scalar(j.get<std::string>());
}

Json to_json(const HomPoly& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.terms()) out.push_back({{"exp", {e[0], e[1], e[2]}}, {"coeff", to_json(c)}});
  return out;
}

HomPoly poly_from_json(const Json& j) {
  return guarded([&] {
    require(j.is_array() && !j.empty(), ErrorCode::ParseError, "polynomial must be a nonempty term list");
    int degree = -1;
    HomPoly f;
    for (const auto& t : j) {
      auto e = t.at("exp").get<std::array<int, 3>>();
      require(e[0] >= 0 && e[1] >= 0 && e[2] >= 0, ErrorCode::ParseError, "negative exponent");
      int d = e[0] + e[1] + e[2];
      if (degree < 0) {
        degree = d;
        f = HomPoly(d);
      }
      require(d == degree, ErrorCode::ParseError, "polynomial is not homogeneous");
      f.add_to(e[0], e[1], scalar_from_json(t.at("coeff")));
    }
    return f;
  });
}

Json to_json(const LinearMap& a) {
  Json out = Json::array();
  for (const auto& x : a.rows()) out.push_back(to_json(x));
  return out;
}

LinearMap linear_from_json(const Json& j) {
  require(j.is_array() && j.size() == 9, ErrorCode::ParseError, "linear maps are nine scalars");
  std::array<Scalar, 9> a;
  for (int i = 0; i < 9; ++i) a[i] = scalar_from_json(j[i]);
  return LinearMap::from_rows(a);
}

Json to_json(const ProjPoint& p) { return vec_json(p.coords()); }
ProjPoint point_from_json(const Json& j) { return ProjPoint(vec_from_json(j)); }
Json to_json(const ProjLine& l) { return vec_json(l.coords()); }
ProjLine line_from_json(const Json& j) { return ProjLine(vec_from_json(j)); }

Json to_json(const Word& w) {
  Json fs = Json::array();
  for (const auto& f : w.factors) {
    if (auto* a = std::get_if<LinearMap>(&f)) {
      fs.push_back({{"linear", to_json(*a)}});
    } else if (auto* q = std::get_if<QuadraticProper>(&f)) {
      fs.push_back({{"quadratic_proper", {{"alpha", to_json(q->alpha)}, {"beta", to_json(q->beta)}}}});
    } else {
      const auto& r = std::get<RationalMap>(f);
      fs.push_back({{r.degree() == 2 ? "raw_quadratic" : "rational", {{"triple", triple_json(r.triple())}}}});
    }
  }
  return {{"factors", fs}};
}

Word word_from_json(const Json& j) {
  return guarded([&] {
    Word w;
    require(j.contains("factors") && j.at("factors").is_array(), ErrorCode::ParseError, "missing factor list");
    for (const auto& f : j.at("factors")) {
      if (f.contains("linear")) {
        w.factors.push_back(linear_from_json(f.at("linear")));
      } else if (f.contains("quadratic_proper")) {
        const auto& q = f.at("quadratic_proper");
        w.factors.push_back(QuadraticProper{linear_from_json(q.at("alpha")), linear_from_json(q.at("beta"))});
      } else if (f.contains("raw_quadratic") || f.contains("rational")) {
        const auto& r = f.contains("raw_quadratic") ? f.at("raw_quadratic") : f.at("rational");
        RationalMap m(triple_from_json(r.at("triple")));
        if (f.contains("raw_quadratic"))
          require(m.degree() == 2, ErrorCode::InvalidMap, "raw quadratic factor has degree " + std::to_string(m.degree()));
        w.factors.push_back(m);
      } else {
        fail(ErrorCode::ParseError, "unknown factor kind");
      }
    }
    require(!w.empty(), ErrorCode::ParseError, "empty word");
    return w;
  });
}

Json to_json(const BubblePoint& b) {
  Json t = Json::array();
  for (const auto& d : b.tower) {
    if (d.infinity) t.push_back({{"infinity", true}});
    else t.push_back({{"slope", to_json(d.slope)}});
  }
  return {{"base", to_json(b.base)}, {"tower", t}};
}

BubblePoint bubble_from_json(const Json& j) {
  return guarded([&] {
    BubblePoint b(point_from_json(j.at("base")));
    if (j.contains("tower"))
      for (const auto& d : j.at("tower")) {
        if (d.contains("infinity") && d.at("infinity").get<bool>()) b.tower.push_back(Direction::at_infinity());
        else b.tower.push_back(Direction::at(scalar_from_json(d.at("slope"))));
      }
    return b;
  });
}

Json to_json(const ContractionProfile& p) {
  Json j = {{"depth", p.depth}};
  j["center"] = p.center ? to_json(*p.center) : Json();
  if (p.tangent) {
    j["tangent"] = p.tangent->infinity ? Json{{"infinity", true}} : Json{{"slope", to_json(p.tangent->slope)}};
  } else {
    j["tangent"] = Json();
  }
  if (p.image && !p.image->is_constant()) {
    Implicit im = implicitize(*p.image);
    j["image"] = {{"degree", im.equation.degree()}, {"equation", to_json(im.equation)}};
  } else {
    j["image"] = Json();
  }
  return j;
}

Json to_json(const Certificate& c) {
  Json lines = Json::array();
  for (const auto& l : c.prefix_lines) lines.push_back(to_json(l));
  return {{"seed", c.seed},
          {"line", to_json(c.line)},
          {"frame", to_json(c.frame)},
          {"input_word", to_json(c.input)},
          {"output_word", to_json(c.output)},
          {"prefix_line_images", lines},
          {"checks", {{"recomposition", c.recomposition}, {"all_lines", c.all_lines}, {"noether", c.noether}}}};
}

Certificate certificate_from_json(const Json& j) {
  return guarded([&] {
    Certificate c;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.line = j.contains("line") ? line_from_json(j.at("line")) : default_line();
    c.frame = j.contains("frame") ? linear_from_json(j.at("frame")) : LinearMap::identity();
    c.input = word_from_json(j.at("input_word"));
    c.output = word_from_json(j.at("output_word"));
    for (const auto& l : j.at("prefix_line_images")) c.prefix_lines.push_back(line_from_json(l));
    const auto& k = j.at("checks");
    c.recomposition = k.at("recomposition").get<bool>();
    c.all_lines = k.at("all_lines").get<bool>();
    c.noether = k.at("noether").get<bool>();
    return c;
  });
}

Json to_json(const std::vector<Generator>& g) {
  Json out = Json::array();
  for (const auto& x : g) {
    switch (x.kind) {
      case Generator::P: out.push_back({{"P", true}}); break;
      case Generator::Mu1: out.push_back({{"mu1", true}}); break;
      case Generator::Mu2: out.push_back({{"mu2", true}}); break;
      case Generator::Diag: out.push_back({{"diag", {to_json(x.s), to_json(x.t)}}}); break;
    }
  }
  return out;
}

}  // namespace cremona
