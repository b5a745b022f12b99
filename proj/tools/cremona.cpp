// Command-line front end for the rewriting pipeline.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "cremona/errors.hpp"
#include "cremona/io.hpp"

using namespace cremona;

namespace {

struct Options {
  std::string in, out, line;
  std::uint64_t seed = 0;
  int max_degree = 0;
  std::size_t max_bits = 0;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path);
  require(f.good(), ErrorCode::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(f), {}};
}

void write_output(const std::string& path, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  require(f.good(), ErrorCode::ParseError, "cannot write " + path);
  f << text;
}

ProjLine parse_line(const std::string& text) {
  if (text.empty()) return default_line();
  std::vector<Scalar> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_scalar(part));
  require(v.size() == 3, ErrorCode::ParseError, "--line expects a,b,c");
  return ProjLine(Vec3{v[0], v[1], v[2]});
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return 1;
    case ErrorCode::ResourceLimit: return 3;
    default: return 2;
  }
}

// frame^-1 o w0 o frame with adjacent linear factors multiplied out.
Word transport_back(const Word& w0, const LinearMap& frame) {
  std::vector<Factor> app{frame};
  for (const auto& f : w0.applied_order()) app.push_back(f);
  app.push_back(frame.inverse());
  std::vector<Factor> out;
  for (const auto& f : app) {
    auto* a = std::get_if<LinearMap>(&f);
    auto* b = out.empty() ? nullptr : std::get_if<LinearMap>(&out.back());
    if (a && b) *b = *a * *b;
    else out.push_back(f);
  }
  std::erase_if(out, [](const Factor& f) {
    auto* a = std::get_if<LinearMap>(&f);
    return a && *a == LinearMap::identity();
  });
  if (out.empty()) out.push_back(LinearMap::identity());
  return Word::from_applied(out);
}

Json run(const std::string& cmd, const Options& o, int& status) {
  const std::string text = read_input(o.in);
  const Json in = parse_json(text);
  const ProjLine l = parse_line(o.line);
  const LinearMap frame = line_transport(l, default_line());
  status = 0;

  if (cmd == "factor-linear") {
    const Json& m = in.is_object() && in.contains("linear") ? in.at("linear") : in;
    LinearMap a = linear_from_json(m);
    LinearMap a0 = frame * a * frame.inverse();
    require(is_linear_dec_member(a0, default_line()), ErrorCode::NotInAL, "linear map does not preserve the line");
    return {{"word", to_json(factor_linear(a0))}};
  }
  if (cmd == "verify") {
    VerifyReport r = verify_certificate(certificate_from_json(in.contains("certificate") ? in.at("certificate") : in));
    if (!r.ok) status = 2;
    Json j = {{"valid", r.ok}};
    if (!r.ok) j["failure"] = r.failure;
    return j;
  }

  const Word w = word_from_json(in);
  if (cmd == "check") {
    RationalMap m = compose_word(w);
    return {{"dec_member", is_dec_member(m, l)}, {"degree", m.degree()}};
  }
  if (cmd == "depth") return to_json(contraction_depth(w, l));

  Sampler s(o.seed);
  if (cmd == "decompose") {
    Certificate c = decompose_full(w, l, o.seed);
    return {{"word", to_json(c.output)}, {"certificate", to_json(c)}};
  }
  require(is_dec_member(compose_word(w), l), ErrorCode::NotInDecL, "the word does not preserve the line");
  rewrite_trace() = RewriteTrace{};
  const long v0 = noether_stats().violations;
  Word w0 = prepare_word(w, frame, s);
  Word out;
  if (w0.size() == 1 && is_linear(w0.factors[0])) {
    out = transport_back(w0, frame);
  } else if (cmd == "decontract") {
    out = transport_back(decontract(w0, default_line(), s), frame);
  } else {
    DJWord dj = dj_normalize(to_jonquieres_form(decontract(w0, default_line(), s), default_line()), default_line(), s);
    out = transport_back(dj.word(), frame);
  }
  Certificate c = certify(w, out, l, frame, o.seed);
  c.noether = noether_stats().violations == v0;
  return {{"word", to_json(out)}, {"certificate", to_json(c)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewrite plane birational maps preserving a line into linear maps and sigma"};
  app.require_subcommand(1, 1);
  Options o;
  const char* names[] = {"check", "depth", "decontract", "normalize", "decompose", "factor-linear", "verify"};
  const char* help[] = {"test whether the word preserves the line",
                        "contraction depth of the line under the word",
                        "rewrite so that no prefix contracts the line",
                        "rewrite into de Jonquieres factors with line images",
                        "rewrite into linear maps preserving the line and sigma",
                        "factor a linear map preserving the line into generators",
                        "check a decomposition certificate"};
  for (int i = 0; i < 7; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--in", o.in, "input JSON (default stdin)");
    sub->add_option("--out", o.out, "output JSON (default stdout)");
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--line", o.line, "the line as a,b,c (default x = y)");
    sub->add_option("--max-degree", o.max_degree, "polynomial degree cap");
    sub->add_option("--max-bits", o.max_bits, "coefficient bit-length cap");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  ResourceLimits caps = current_limits();
  if (o.max_degree > 0) caps.max_degree = o.max_degree;
  if (o.max_bits > 0) caps.max_bits = o.max_bits;
  ScopedLimits scope(caps);

  int status = 0;
  Json report;
  try {
    report = run(cmd, o, status);
  } catch (const CremonaError& e) {
    status = exit_code(e.code());
    report = {{"error", {{"code", std::string(error_name(e.code()))}, {"message", e.what()}}}};
  }
  try {
    write_output(o.out, report);
  } catch (const CremonaError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return status;
}
