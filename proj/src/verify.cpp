#include "wittperv/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wittperv/errors.hpp"
#include "wittperv/witt.hpp"

namespace wittperv {

namespace {

const char* const kA = "Gamma_c(M)";
const char* const kB = "Cone";
const char* const kC = "Gamma_c(j_!j^*M)[1]";

std::string H(int d, const std::string& name) { return "H^" + std::to_string(d) + "(" + name + ")"; }

size_t Locate(const LongExactSequence& les, const std::string& label) {
  const int i = les.Find(label);
  if (i < 0) throw InvariantViolation("cohomology sequence has no term " + label);
  return static_cast<size_t>(i);
}

Verdict Both(const Verdict& a, const Verdict& b) {
  if (a.failed()) return a;
  if (b.failed()) return b;
  return a.passed() ? b : a;
}

Verdict BijectiveVerdict(const GroupHom& f, const std::string& what) {
  const FinAbGroup& s = *f.source();
  std::vector<int64_t> seen(f.target()->order(), -1);
  for (uint64_t x = 0; x < s.order(); ++x) {
    const Elem y = f(static_cast<Elem>(x));
    if (seen[y] >= 0) {
      return Verdict::Fail(what + " not injective: " + s.Name(static_cast<Elem>(seen[y])) + " and " +
                           s.Name(static_cast<Elem>(x)) + " have the same image");
    }
    seen[y] = static_cast<int64_t>(x);
  }
  if (s.order() != f.target()->order()) {
    return Verdict::Fail(what + " not surjective: |source| = " + std::to_string(s.order()) +
                         ", |target| = " + std::to_string(f.target()->order()));
  }
  return Verdict::Pass();
}

// Map on a quotient induced by f on the ambient group; checks that f is
// constant on classes.
GroupHom Descend(const Quotient& q, const GroupHom& f) {
  const GroupPtr& ambient = q.projection.source();
  std::vector<Elem> images(q.group->order());
  for (size_t c = 0; c < images.size(); ++c) images[c] = f(q.representatives[c]);
  for (uint64_t x = 0; x < ambient->order(); ++x) {
    const auto ex = static_cast<Elem>(x);
    if (images[q.projection(ex)] != f(ex)) {
      throw InvariantViolation("map does not descend to the quotient at " + ambient->Name(ex));
    }
  }
  return GroupHom(q.group, f.target(), std::move(images));
}

}  // namespace

bool SixTermResult::AllExact() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SixTermEntry& e) { return e.exactness.passed(); });
}

SixTermResult SixTermSequence(const PervObj& m) {
  const PervMor eps = CounitJ(m);
  const ChainMap phi = GammaCMor(eps);
  const MappingCone mc = Cone(phi);
  const ShortExactSequence ses{mc.inclusion, mc.projection};
  LongExactSequence les = BuildLongExactSequence(ses, kA, kB, kC);

  const std::array<size_t, 6> idx = {Locate(les, H(-1, kB)), Locate(les, H(-1, kC)),
                                     Locate(les, H(0, kA)),  Locate(les, H(0, kB)),
                                     Locate(les, H(0, kC)),  Locate(les, H(1, kA))};
  for (size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] != idx[i - 1] + 1) throw InvariantViolation("cohomology sequence terms out of order");
  }
  const size_t h1 = Locate(les, H(1, kB));

  static const std::array<const char*, 6> kTerms = {"H^-1(Cone)", "Ker p",   "Ker F",
                                                    "G_a(k)",     "Coker p", "Coker F"};
  std::array<SixTermEntry, 6> entries;
  for (size_t i = 0; i < 6; ++i) {
    entries[i].term = kTerms[i];
    entries[i].engine_label = les.labels[idx[i]];
    entries[i].order = les.terms[idx[i]]->order();
    entries[i].exactness = les.exactness[idx[i]];
  }
  entries[2].alt_label = "H^-1(D;W^v)";
  entries[3].alt_label = "Cone(V)";
  // 0 -> H^-1(Cone): exactness at the zero term before it.
  entries[0].exactness = Both(les.exactness[idx[0] - 1], entries[0].exactness);
  // Coker F -> 0: Coker p -> Coker F onto, i.e. H^1(Cone) = 0.
  const GroupHom& to_coker_f = les.maps[idx[4]];
  Verdict onto = Verdict::Pass();
  if (!to_coker_f.IsSurjective()) {
    onto = Verdict::Fail("Coker p -> Coker F not onto; H^1(Cone) has order " +
                         std::to_string(les.terms[h1]->order()));
  }
  entries[5].exactness = Both(entries[5].exactness, Both(les.exactness[h1], onto));

  // Coker(u) -> H^0(Cone), [y] |-> [(-v y, y)].
  const CohomologyGroup h0 = Cohomology(mc.cone, 0);
  const Quotient cu = Cokernel(m.u);
  const FinAbGroup& c0 = *mc.cone.Object(0);
  std::vector<Elem> images(cu.group->order());
  for (size_t c = 0; c < images.size(); ++c) {
    const Elem y = cu.representatives[c];
    images[c] = h0.ClassOf(c0.Pair(m.psi->Neg(m.v(y)), y));
  }
  const Verdict ga = BijectiveVerdict(GroupHom(cu.group, h0.group(), std::move(images)),
                                      "Coker(u) -> H^0(Cone)");

  SixTermResult out{std::move(les),
                    idx,
                    entries,
                    GroupHom::Zero(m.psi, m.psi),
                    GroupHom::Zero(m.psi, m.psi),
                    GroupHom::Zero(m.psi, m.psi),
                    GroupHom::Zero(m.psi, m.psi),
                    ga,
                    0};
  out.ker_p_to_ker_f = out.les.maps[idx[1]];
  out.ker_f_to_ga = out.les.maps[idx[2]];
  out.ga_to_coker_p = out.les.maps[idx[3]];
  out.coker_p_to_coker_f = out.les.maps[idx[4]];
  out.h1_cone_order = out.les.terms[h1]->order();
  return out;
}

WittSixTerm WittSixTermSequence(WittFamily& fam, size_t n, WittModel model) {
  PervObj sheaf = MakeWittSheaf(fam, n, model, true);
  SixTermResult seq = SixTermSequence(sheaf);
  const size_t phi_level = model == WittModel::kMixed ? n + 1 : n;
  const Quotient cv = Cokernel(sheaf.u);
  const Verdict to_k = BijectiveVerdict(Descend(cv, fam.X0(phi_level)), "Coker V -> k, x |-> x_0");
  return WittSixTerm{std::move(sheaf), std::move(seq), to_k};
}

SharpPoints ComputeSharpPoints(WittFamily& fam, size_t n) {
  Subgroup carrier = Kernel(fam.FrobMixed(n));
  std::vector<uint64_t> factors = InvariantFactors(*carrier.group);
  return SharpPoints{n, std::move(carrier), std::move(factors)};
}

Verdict CheckSharpCoordinates(WittFamily& fam, const SharpPoints& s) {
  const AlgebraPtr& k = fam.base();
  std::set<uint32_t> nil;
  for (const AlgElement& a : PNilpotents(*k)) nil.insert(k->IdOf(a));
  const auto ring = fam.Ring(s.n + 1);
  const GroupPtr& w = fam.Group(s.n + 1);
  for (uint64_t x = 0; x < ring->size(); ++x) {
    const WittRing::Coords c = ring->CoordsOf(x);
    bool described = true;
    for (size_t i = 0; i < s.n; ++i) described = described && nil.count(c[i]) > 0;
    const bool member = s.carrier.LocalId(static_cast<Elem>(x)).has_value();
    if (described != member) {
      return Verdict::Fail(w->Name(static_cast<Elem>(x)) +
                           (member ? " is in Ker F but not in the coordinate description"
                                   : " satisfies x_i^p = 0 for i < n but is not in Ker F"));
    }
  }
  return Verdict::Pass();
}

bool PerfectBranchReport::ok() const {
  for (const PerfectLevel& l : levels) {
    if (!l.coker_f_zero.acceptable() || !l.ker_f_to_ga_zero.acceptable() ||
        !l.ga_to_coker_p_bijective.acceptable()) {
      return false;
    }
  }
  return ker_p_pro_zero.acceptable() && ker_f_pro_zero.acceptable();
}

PerfectLevel PerfectLevelFacts(size_t n, const SixTermResult& seq) {
  PerfectLevel out;
  out.n = n;
  const uint64_t coker_f = seq.entries[5].order;
  out.coker_f_zero = Verdict::FromBool(coker_f == 1, "Coker F has order " + std::to_string(coker_f));

  out.ker_f_to_ga_zero = Verdict::Pass();
  const GroupHom& kf = seq.ker_f_to_ga;
  for (uint64_t x = 0; x < kf.source()->order(); ++x) {
    if (kf(static_cast<Elem>(x)) != 0) {
      out.ker_f_to_ga_zero = Verdict::Fail("Ker F -> G_a(k) sends " + kf.source()->Name(static_cast<Elem>(x)) +
                                           " to " + kf.target()->Name(kf(static_cast<Elem>(x))));
      break;
    }
  }
  out.ga_to_coker_p_bijective = BijectiveVerdict(seq.ga_to_coker_p, "G_a(k) -> Coker p");
  out.coker_p_order = seq.entries[4].order;
  return out;
}

namespace {

void RequirePerfect(const WittFamily& fam) {
  if (!IsPerfect(*fam.base())) {
    throw DomainError("k = F_" + std::to_string(fam.base()->prime()) + "[x]/(" +
                      fam.base()->ModulusString() +
                      ") is not perfect; the perfect branch does not apply, use the general six-term "
                      "sequence");
  }
}

Verdict ProZeroVerdict(const ProGroup& t, const std::string& what) {
  if (t.levels.size() < 2) return Verdict::Skipped("needs at least two levels");
  return Verdict::FromBool(IsProZero(t, 1), what + ": transition " + std::to_string(t.levels.size()) +
                                                " -> " + std::to_string(t.levels.size() - 1) +
                                                " or an earlier one is nonzero");
}

}  // namespace

PerfectBranchReport PerfectBranch(WittFamily& fam, size_t n_max, WittModel model) {
  RequirePerfect(fam);
  PerfectBranchReport out;
  for (size_t n = 1; n <= n_max; ++n) {
    out.levels.push_back(PerfectLevelFacts(n, WittSixTermSequence(fam, n, model).seq));
  }
  const ProPerv tower = WittSheafTower(fam, n_max, model, true);
  out.ker_p_pro_zero = ProZeroVerdict(ProKernel(tower, PervSelector::kVU), "Ker p tower");
  out.ker_f_pro_zero = ProZeroVerdict(ProKernel(tower, PervSelector::kV), "Ker F tower");
  return out;
}

std::vector<SurrogateLevel> SurjectivitySurrogate(WittFamily& fam, size_t n_max) {
  std::vector<SurrogateLevel> out;
  for (size_t n = 1; n <= n_max; ++n) {
    SurrogateLevel level;
    level.n = n;
    const GroupHom f = fam.FrobMixed(n);
    level.f_surjective = f.IsSurjective();
    level.coker_f_order = Cokernel(f).group->order();
    if (!level.f_surjective) {
      level.concentrated = Verdict::Skipped("F not surjective; obstruction Coker F of order " +
                                            std::to_string(level.coker_f_order));
    } else {
      const Cochain gc = GammaC(MakeWittSheaf(fam, n, WittModel::kMixed, true));
      const CohomologyGroup h0 = Cohomology(gc, 0);
      const CohomologyGroup h1 = Cohomology(gc, 1);
      const SharpPoints sharp = ComputeSharpPoints(fam, n);
      if (h1.order() != 1) {
        level.concentrated = Verdict::Fail("H^1(Gamma_c) has order " + std::to_string(h1.order()));
      } else if (h0.cycles.members != sharp.carrier.members || h0.order() != sharp.carrier.members.size()) {
        level.concentrated = Verdict::Fail("H^0(Gamma_c) differs from Ker F");
      } else {
        level.concentrated = Verdict::Pass();
      }
    }
    out.push_back(std::move(level));
  }
  return out;
}

Verdict CheckVOneChainMap(WittFamily& fam, size_t n, WittModel model) {
  const bool mixed = model == WittModel::kMixed;
  const Cochain cp = Cochain::TwoTerm(fam.MulP(n), 0);
  const Cochain cf = Cochain::TwoTerm(mixed ? fam.FrobMixed(n) : fam.FrobEndo(n), 0);
  const GroupHom v = mixed ? fam.VerschMixed(n) : fam.VerschEndo(n);
  try {
    ChainMap(cp, cf, 0, {v, GroupHom::Identity(fam.Group(n))});
  } catch (const DomainError& e) {
    return Verdict::Fail(e.what());
  }
  return Verdict::Pass();
}

Verdict CheckCounitIsVOne(WittFamily& fam, size_t n, WittModel model) {
  const bool mixed = model == WittModel::kMixed;
  const PervObj sheaf = MakeWittSheaf(fam, n, model, true);
  const PervMor eps = CounitJ(sheaf);
  const auto rn = fam.Ring(n);
  const auto rv = fam.Ring(mixed ? n + 1 : n);
  for (uint64_t x = 0; x < rn->size(); ++x) {
    const WittVector w = rn->Decode(x);
    const uint64_t expected = rv->Encode(mixed ? VerschMixed(w) : VerschEndo(w));
    if (eps.f_phi(static_cast<Elem>(x)) != expected) {
      return Verdict::Fail("counit Phi-component differs from V at " + FormatWitt(w));
    }
  }
  if (eps.f_psi != GroupHom::Identity(sheaf.psi)) {
    return Verdict::Fail("counit Psi-component is not the identity");
  }
  const PervObj& src = eps.source;
  if (src.v != fam.MulP(n) || src.u != GroupHom::Identity(sheaf.psi)) {
    return Verdict::Fail("j_! j^* W^v is not (W_n, W_n; u = 1, v = p)");
  }
  return Verdict::Pass();
}

nlohmann::ordered_json VerdictJson(const Verdict& v) { return v.ToString(); }

namespace {

bool AllAcceptable(const std::vector<NamedVerdict>& v) {
  return std::all_of(v.begin(), v.end(), [](const NamedVerdict& n) { return n.verdict.acceptable(); });
}

std::string ModelsName(const std::vector<WittModel>& models) {
  if (models.size() == 1) return ModelName(models[0]);
  return "both";
}

LevelRecord BuildLevel(WittFamily& fam, size_t n, WittModel model, bool perfect) {
  const bool mixed = model == WittModel::kMixed;
  LevelRecord r;
  r.n = n;
  r.model = model;
  const WittSixTerm ws = WittSixTermSequence(fam, n, model);
  const PervObj& m = ws.sheaf;
  const SixTermResult& s = ws.seq;
  const LongExactSequence& les = s.les;

  r.sizes = {{"phi", m.phi->order()},
             {"psi", m.psi->order()},
             {"cone_degree_0", m.phi->order() * m.psi->order()}};
  const Subgroup ker_v = Kernel(m.u);
  const Quotient coker_v = Cokernel(m.u);
  auto factors = [&](size_t i) { return InvariantFactors(*les.terms[s.index[i]]); };
  r.invariant_factors = {{"ker_p", factors(1)},
                         {"coker_p", factors(4)},
                         {"ker_f", factors(2)},
                         {"coker_f", factors(5)},
                         {"ker_v", InvariantFactors(*ker_v.group)},
                         {"coker_v", InvariantFactors(*coker_v.group)},
                         {"h0_cone", factors(3)}};
  r.six_term = s.entries;

  r.checks.push_back(
      {"Ker V = 0", mixed ? Verdict::FromBool(ker_v.members.size() == 1,
                                              "Ker V has order " + std::to_string(ker_v.members.size()))
                          : Verdict::Skipped("V truncates in the endo model; |Ker V| = " +
                                             std::to_string(ker_v.members.size()))});
  r.checks.push_back({"Coker V -> k via x_0 bijective (specific map)", ws.coker_v_is_k});
  r.checks.push_back({"Coker V -> H^0(Cone) bijective (specific map)", s.ga_is_coker_u});
  r.checks.push_back({"(V,1): C_p -> C_F chain map", CheckVOneChainMap(fam, n, model)});
  r.checks.push_back({"counit j_!j^*W^v -> W^v equals (V,1)", CheckCounitIsVOne(fam, n, model)});
  if (mixed) {
    const SharpPoints sharp = ComputeSharpPoints(fam, n);
    r.checks.push_back({"sharp points = {x : x_i^p = 0, i < n}", CheckSharpCoordinates(fam, sharp)});
    r.checks.push_back({"Gamma_c(W^v) concentrated in degree 0",
                        SurjectivitySurrogate(fam, n).back().concentrated});
  } else {
    r.checks.push_back({"sharp points = {x : x_i^p = 0, i < n}", Verdict::Skipped("mixed model only")});
    r.checks.push_back({"Gamma_c(W^v) concentrated in degree 0", Verdict::Skipped("mixed model only")});
  }

  if (perfect) {
    const PerfectLevel pl = PerfectLevelFacts(n, s);
    r.perfect_branch = std::vector<NamedVerdict>{
        {"Coker F = 0", pl.coker_f_zero},
        {"Ker F -> G_a(k) zero", pl.ker_f_to_ga_zero},
        {"G_a(k) -> Coker p bijective (specific map)", pl.ga_to_coker_p_bijective}};
  } else {
    r.perfect_skip_reason = "k is not perfect";
  }

  if (n < 2) {
    r.pro.push_back({"towers", Verdict::Skipped("needs at least two levels")});
    return r;
  }
  const ProPerv tower = WittSheafTower(fam, n, model, true);
  const ProGroup lead = ProKernel(tower, PervSelector::kU);
  const ProGroup kp = ProKernel(tower, PervSelector::kVU);
  const ProGroup kf = ProKernel(tower, PervSelector::kV);
  const uint64_t lead_order = lead.levels.back()->order();
  if (lead_order != r.six_term[0].order) {
    throw InvariantViolation("H^-1(Cone) differs from Ker V at level " + std::to_string(n));
  }
  r.pro.push_back({"H^-1(Cone) tower pro-zero (window 1)", ProZeroVerdict(lead, "H^-1(Cone) tower")});
  if (perfect) {
    r.pro.push_back({"Ker p tower pro-zero (window 1)", ProZeroVerdict(kp, "Ker p tower")});
    r.pro.push_back({"Ker F tower pro-zero (window 1)", ProZeroVerdict(kf, "Ker F tower")});
  } else {
    auto fact = [&](const ProGroup& t) {
      return Verdict::Skipped(std::string("k is not perfect; pro-zero within the computed levels: ") +
                              (IsProZero(t, t.levels.size() - 1) ? "yes" : "no"));
    };
    r.pro.push_back({"Ker p tower pro-zero (window 1)", fact(kp)});
    r.pro.push_back({"Ker F tower pro-zero (window 1)", fact(kf)});
    r.pro.push_back({"Ker F tower transitions onto",
                     Verdict::Skipped(std::string("informational: ") +
                                      (IsMittagLefflerSurjective(kf) ? "yes" : "no"))});
    r.pro.push_back({"Ker F tower Mittag-Leffler (stable images)",
                     n < 3 ? Verdict::Skipped("needs at least three levels")
                           : Verdict::FromBool(HasStableImages(kf), "images of deeper levels keep shrinking")});
  }
  return r;
}

}  // namespace

bool PipelineReport::ok() const {
  for (const LevelRecord& r : levels) {
    for (const SixTermEntry& e : r.six_term) {
      if (!e.exactness.acceptable()) return false;
    }
    if (!AllAcceptable(r.checks) || !AllAcceptable(r.pro)) return false;
    if (r.perfect_branch && !AllAcceptable(*r.perfect_branch)) return false;
  }
  return true;
}

PipelineReport RunPipeline(const PipelineOptions& options) {
  if (options.levels < 1) throw DomainError("--levels must be at least 1");
  if (options.models.empty()) throw DomainError("no model selected");
  PipelineReport report;
  report.options = options;
  const AlgebraPtr k = FpAlgebra::Parse(options.p, options.modulus);
  report.field = k->ModulusString();
  report.variable = std::string(1, k->variable());
  report.perfect = IsPerfect(*k);
  WittFamily fam(k, options.cap);
  for (WittModel model : options.models) {
    for (size_t n = 1; n <= options.levels; ++n) {
      report.levels.push_back(BuildLevel(fam, n, model, report.perfect));
    }
  }
  return report;
}

nlohmann::ordered_json PipelineReport::ToJson() const {
  using Json = nlohmann::ordered_json;
  Json params = Json::object();
  params["p"] = options.p;
  params["modulus"] = field;
  params["levels"] = options.levels;
  params["model"] = ModelsName(options.models);
  params["cap"] = options.cap;
  params["perfect"] = perfect;

  Json lv = Json::array();
  for (const LevelRecord& r : levels) {
    Json j = Json::object();
    j["n"] = r.n;
    j["model"] = ModelName(r.model);
    Json sizes = Json::object();
    for (const auto& [name, size] : r.sizes) sizes[name] = size;
    j["sizes"] = std::move(sizes);
    Json inv = Json::object();
    for (const auto& [name, f] : r.invariant_factors) inv[name] = f;
    j["invariant_factors"] = std::move(inv);
    Json six = Json::array();
    for (const SixTermEntry& e : r.six_term) {
      Json t = Json::object();
      t["term"] = e.term;
      t["degree"] = e.engine_label;
      if (!e.alt_label.empty()) t["alt_degree"] = e.alt_label;
      t["order"] = e.order;
      t["exact"] = VerdictJson(e.exactness);
      six.push_back(std::move(t));
    }
    j["six_term"] = std::move(six);
    Json checks = Json::object();
    for (const NamedVerdict& c : r.checks) checks[c.name] = VerdictJson(c.verdict);
    j["checks"] = std::move(checks);
    if (r.perfect_branch) {
      Json pb = Json::object();
      for (const NamedVerdict& c : *r.perfect_branch) pb[c.name] = VerdictJson(c.verdict);
      j["perfect_branch"] = std::move(pb);
    } else {
      j["perfect_branch"] = "skipped(" + r.perfect_skip_reason + ")";
    }
    Json pro = Json::object();
    for (const NamedVerdict& c : r.pro) pro[c.name] = VerdictJson(c.verdict);
    j["pro"] = std::move(pro);
    lv.push_back(std::move(j));
  }

  Json out = Json::object();
  out["params"] = std::move(params);
  out["levels"] = std::move(lv);
  out["verdict"] = ok() ? "pass" : "fail";
  return out;
}

std::string PipelineReport::ToText() const {
  std::ostringstream os;
  os << "k = F_" << options.p << "[" << variable << "]/(" << field << ")" << (perfect ? ", perfect" : ", not perfect")
     << "\n";
  for (const LevelRecord& r : levels) {
    os << "\nlevel n = " << r.n << ", model " << ModelName(r.model) << "\n";
    os << "  sizes:";
    for (const auto& [name, size] : r.sizes) os << " " << name << "=" << size;
    os << "\n  invariant factors:";
    for (const auto& [name, f] : r.invariant_factors) os << " " << name << "=" << FormatFactors(f);
    os << "\n  six-term sequence:\n";
    for (const SixTermEntry& e : r.six_term) {
      os << "    " << e.term;
      if (e.engine_label != e.term) os << " = " << e.engine_label;
      if (!e.alt_label.empty()) os << " [" << e.alt_label << "]";
      os << ", order " << e.order << ": " << e.exactness.ToString() << "\n";
    }
    os << "  checks:\n";
    for (const NamedVerdict& c : r.checks) os << "    " << c.name << ": " << c.verdict.ToString() << "\n";
    if (r.perfect_branch) {
      os << "  perfect branch:\n";
      for (const NamedVerdict& c : *r.perfect_branch) {
        os << "    " << c.name << ": " << c.verdict.ToString() << "\n";
      }
    } else {
      os << "  perfect branch: skipped(" << r.perfect_skip_reason << ")\n";
    }
    os << "  pro:\n";
    for (const NamedVerdict& c : r.pro) os << "    " << c.name << ": " << c.verdict.ToString() << "\n";
  }
  os << "\nverdict: " << (ok() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace wittperv
