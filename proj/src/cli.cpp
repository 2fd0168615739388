#include "wittperv/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wittperv/errors.hpp"
#include "wittperv/examples.hpp"
#include "wittperv/verify.hpp"
#include "wittperv/witt.hpp"

namespace wittperv {

namespace {

using Json = nlohmann::ordered_json;

constexpr uint64_t kMaxTableSize = 64;

struct Flags {
  uint32_t p = 2;
  std::string modulus = "x";
  size_t levels = 2;
  std::string model = "both";
  std::string format = "text";
  uint64_t seed = 0;
  uint64_t cap = kDefaultCarrierCap;
  std::string file;
};

std::vector<WittModel> ParseModels(const std::string& s) {
  if (s == "endo") return {WittModel::kEndo};
  if (s == "mixed") return {WittModel::kMixed};
  return {WittModel::kEndo, WittModel::kMixed};
}

void Emit(std::ostream& out, const Flags& f, const Json& j, const std::string& text) {
  if (f.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

int RunWitt(const Flags& f, std::ostream& out) {
  const AlgebraPtr k = FpAlgebra::Parse(f.p, f.modulus);
  WittFamily fam(k, f.cap);
  Json levels = Json::array();
  std::ostringstream text;
  text << "k = F_" << f.p << "[" << k->variable() << "]/(" << k->ModulusString() << "), |k| = " << k->size() << "\n";
  for (size_t n = 1; n <= f.levels; ++n) {
    const GroupPtr& g = fam.Group(n);
    const auto ring = fam.Ring(n);
    const std::vector<uint64_t> factors = InvariantFactors(*g);
    Json level = Json::object();
    level["n"] = n;
    level["order"] = g->order();
    level["invariant_factors"] = factors;
    text << "\nW_" << n << "(k): order " << g->order() << ", invariant factors " << FormatFactors(factors)
         << "\n";
    if (g->order() > kMaxTableSize) {
      level["tables"] = "omitted above " + std::to_string(kMaxTableSize) + " elements";
      text << "  tables omitted above " << kMaxTableSize << " elements\n";
      levels.push_back(std::move(level));
      continue;
    }
    Json elements = Json::array();
    Json add = Json::array();
    Json mul = Json::array();
    text << "  elements:\n";
    for (uint64_t a = 0; a < g->order(); ++a) {
      elements.push_back(g->Name(static_cast<Elem>(a)));
      text << "    " << a << " = " << g->Name(static_cast<Elem>(a)) << "\n";
      Json add_row = Json::array();
      Json mul_row = Json::array();
      for (uint64_t b = 0; b < g->order(); ++b) {
        add_row.push_back(g->Add(static_cast<Elem>(a), static_cast<Elem>(b)));
        mul_row.push_back(ring->MulIds(a, b));
      }
      add.push_back(std::move(add_row));
      mul.push_back(std::move(mul_row));
    }
    for (const auto& [name, table] : {std::pair{"addition", &add}, std::pair{"multiplication", &mul}}) {
      text << "  " << name << " (by element index):\n";
      for (const Json& row : *table) {
        text << "   ";
        for (const Json& e : row) text << " " << e.get<uint64_t>();
        text << "\n";
      }
    }
    level["elements"] = std::move(elements);
    level["add"] = std::move(add);
    level["mul"] = std::move(mul);
    levels.push_back(std::move(level));
  }
  Json j = Json::object();
  j["p"] = f.p;
  j["modulus"] = k->ModulusString();
  j["levels"] = std::move(levels);
  Emit(out, f, j, text.str());
  return 0;
}

// Blocks "phi:", "psi:", "u:", "v:"; '#' starts a comment.
struct DiagramFile {
  std::vector<uint64_t> phi;
  std::vector<uint64_t> psi;
  std::vector<Elem> u;
  std::vector<Elem> v;
};

DiagramFile ParseDiagramFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::map<std::string, std::vector<uint64_t>> blocks;
  std::string key;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (tok.back() == ':') {
        key = tok.substr(0, tok.size() - 1);
        if (key != "phi" && key != "psi" && key != "u" && key != "v") {
          throw DomainError("unknown block '" + key + "'; expected phi, psi, u or v");
        }
        if (blocks.count(key)) throw DomainError("block '" + key + "' given twice");
        blocks[key];
        continue;
      }
      if (key.empty()) throw DomainError("value '" + tok + "' before any block");
      try {
        size_t used = 0;
        const uint64_t value = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        blocks[key].push_back(value);
      } catch (const std::exception&) {
        throw DomainError("'" + tok + "' in block '" + key + "' is not a non-negative integer");
      }
    }
  }
  for (const char* name : {"phi", "psi", "u", "v"}) {
    if (!blocks.count(name)) throw DomainError(std::string("missing block '") + name + "'");
  }
  DiagramFile d;
  d.phi = blocks["phi"];
  d.psi = blocks["psi"];
  for (uint64_t x : blocks["u"]) d.u.push_back(static_cast<Elem>(x));
  for (uint64_t x : blocks["v"]) d.v.push_back(static_cast<Elem>(x));
  return d;
}

uint32_t PrimeOf(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  uint32_t p = 0;
  for (const auto* list : {&a, &b}) {
    for (uint64_t o : *list) {
      if (o < 2) throw DomainError("cyclic orders must be at least 2");
      uint64_t q = 2;
      while (o % q != 0) ++q;
      uint64_t r = o;
      while (r % q == 0) r /= q;
      if (r != 1) throw DomainError(std::to_string(o) + " is not a prime power");
      if (p != 0 && p != q) throw DomainError("orders mix the primes " + std::to_string(p) + " and " + std::to_string(q));
      p = static_cast<uint32_t>(q);
    }
  }
  return p == 0 ? 2 : p;
}

int RunPervCheck(const Flags& f, std::ostream& out) {
  const DiagramFile d = ParseDiagramFile(f.file);
  const uint32_t p = PrimeOf(d.phi, d.psi);
  auto group = [&](const std::vector<uint64_t>& orders) {
    return orders.empty() ? FinAbGroup::Trivial(p) : FinAbGroup::FromCyclicOrders(orders);
  };
  const GroupPtr phi = group(d.phi);
  const GroupPtr psi = group(d.psi);
  if (d.u.size() != psi->order()) {
    throw DomainError("u needs " + std::to_string(psi->order()) + " images, got " + std::to_string(d.u.size()));
  }
  if (d.v.size() != phi->order()) {
    throw DomainError("v needs " + std::to_string(phi->order()) + " images, got " + std::to_string(d.v.size()));
  }
  const GroupHom u(psi, phi, d.u);
  const GroupHom v(phi, psi, d.v);
  const PervObj m{phi, psi, u, v, std::nullopt, std::nullopt, f.file};
  const ValidationReport r = Validate(m);

  std::vector<NamedVerdict> verdicts = {{"(Inv) 1 - vu bijective", r.inv},
                                        {"(Inv') 1 - uv bijective", r.inv_prime},
                                        {"witness inverse", r.witness_inverse}};
  Json j = Json::object();
  j["phi"] = InvariantFactors(*phi);
  j["psi"] = InvariantFactors(*psi);
  if (r.ok()) {
    for (const TriangleReport& t : StdTriangles(m)) {
      verdicts.push_back({t.name + ": nullhomotopy", t.nullhomotopy});
      verdicts.push_back({t.name + ": third term", t.third_term});
      verdicts.push_back({t.name + ": long exact", t.long_exact});
    }
    const Cochain g = Gamma(m);
    const Cochain gc = GammaC(m);
    j["cohomology"] = Json{{"H^-1(Gamma)", Cohomology(g, -1).order()},
                           {"H^0(Gamma)", Cohomology(g, 0).order()},
                           {"H^0(Gamma_c)", Cohomology(gc, 0).order()},
                           {"H^1(Gamma_c)", Cohomology(gc, 1).order()}};
  }
  bool ok = true;
  Json checks = Json::object();
  std::ostringstream text;
  text << "phi = " << FormatFactors(InvariantFactors(*phi)) << ", psi = " << FormatFactors(InvariantFactors(*psi))
       << "\n";
  for (const NamedVerdict& n : verdicts) {
    ok = ok && n.verdict.acceptable();
    checks[n.name] = VerdictJson(n.verdict);
    text << "  " << n.name << ": " << n.verdict.ToString() << "\n";
  }
  if (j.contains("cohomology")) {
    for (const auto& [name, order] : j["cohomology"].items()) text << "  |" << name << "| = " << order << "\n";
  }
  j["checks"] = std::move(checks);
  j["verdict"] = ok ? "pass" : "fail";
  text << "verdict: " << (ok ? "pass" : "fail") << "\n";
  Emit(out, f, j, text.str());
  return ok ? 0 : 1;
}

int RunExamplesCommand(const Flags& f, std::ostream& out) {
  const ExamplesReport r = RunExamples(f.seed, f.cap);
  Emit(out, f, r.ToJson(), r.ToText());
  return r.ok() ? 0 : 1;
}

PipelineReport Pipeline(const Flags& f) {
  PipelineOptions o;
  o.p = f.p;
  o.modulus = f.modulus;
  o.levels = f.levels;
  o.models = ParseModels(f.model);
  o.cap = f.cap;
  return RunPipeline(o);
}

int RunDrinfeld(const Flags& f, std::ostream& out) {
  const PipelineReport r = Pipeline(f);
  Emit(out, f, r.ToJson(), r.ToText());
  return r.ok() ? 0 : 1;
}

int RunAll(const Flags& f, std::ostream& out) {
  const ExamplesReport e = RunExamples(f.seed, f.cap);
  const PipelineReport d = Pipeline(f);
  const bool ok = e.ok() && d.ok();
  Json j = Json::object();
  j["examples"] = e.ToJson();
  j["drinfeld"] = d.ToJson();
  j["verdict"] = ok ? "pass" : "fail";
  Emit(out, f, j, "== examples ==\n" + e.ToText() + "\n== drinfeld ==\n" + d.ToText());
  return ok ? 0 : 1;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witt vectors, perverse sheaves on the disc, and the G_a^# pipeline", "wittperv"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", f.p, "prime")->check(CLI::Range(2u, 1000u));
    sub->add_option("--modulus", f.modulus, "irreducible or nilpotent-type modulus over F_p, e.g. x^2+x+1, t^2");
    sub->add_option("--levels", f.levels, "maximal Witt length n")->check(CLI::Range(size_t{1}, size_t{11}));
    sub->add_option("--model", f.model, "endo, mixed or both")->check(CLI::IsMember({"endo", "mixed", "both"}));
    sub->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", f.seed, "seed for randomized checks");
    sub->add_option("--cap", f.cap, "carrier-size cap")->check(CLI::PositiveNumber);
  };
  std::map<std::string, std::function<int(const Flags&, std::ostream&)>> runners = {
      {"witt", RunWitt},   {"perv-check", RunPervCheck}, {"examples", RunExamplesCommand},
      {"drinfeld", RunDrinfeld}, {"all", RunAll}};
  std::map<std::string, std::string> help = {
      {"witt", "print W_n(k) operation tables and invariant factors"},
      {"perv-check", "validate a diagram given in a file"},
      {"examples", "run the example fleet"},
      {"drinfeld", "run the W^v(k) pipeline"},
      {"all", "examples and drinfeld"}};
  for (const auto& [name, desc] : help) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub);
    if (name == "perv-check") sub->add_option("file", f.file, "diagram file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return runners.at(name)(f, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << " (raise --cap)\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wittperv
