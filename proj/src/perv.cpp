#include "wittperv/perv.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <variant>

#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();

std::optional<Elem> FirstDifference(const GroupHom& f, const GroupHom& g) {
  for (size_t x = 0; x < f.images().size(); ++x) {
    if (f.images()[x] != g.images()[x]) return static_cast<Elem>(x);
  }
  return std::nullopt;
}

// Inverse table of a bijection, or the nonzero kernel element that blocks it.
std::variant<std::vector<Elem>, Elem> InvertOrWitness(const GroupHom& t) {
  std::vector<Elem> inverse(t.target()->order(), kNone);
  for (size_t x = 0; x < t.images().size(); ++x) {
    const Elem y = t.images()[x];
    if (inverse[y] != kNone) {
      // t(x) = t(x') gives the kernel element x - x'.
      return t.source()->Sub(static_cast<Elem>(x), inverse[y]);
    }
    inverse[y] = static_cast<Elem>(x);
  }
  return inverse;
}

Verdict BijectionVerdict(const GroupHom& t, const std::string& name) {
  auto r = InvertOrWitness(t);
  if (auto* w = std::get_if<Elem>(&r)) {
    return Verdict::Fail(name + " kills the nonzero element " + t.source()->Name(*w));
  }
  return Verdict::Pass();
}

Verdict RingAxioms(const FinAbGroup& g, const BinaryOp& mul, Elem one) {
  const uint64_t n = g.order();
  auto name = [&](uint64_t x) { return g.Name(static_cast<Elem>(x)); };
  for (uint64_t a = 0; a < n; ++a) {
    const auto ea = static_cast<Elem>(a);
    if (mul(one, ea) != ea || mul(ea, one) != ea) {
      return Verdict::Fail("unit fails at " + name(a));
    }
    for (uint64_t b = 0; b < n; ++b) {
      const auto eb = static_cast<Elem>(b);
      const Elem ab = mul(ea, eb);
      for (uint64_t c = 0; c < n; ++c) {
        const auto ec = static_cast<Elem>(c);
        if (mul(ab, ec) != mul(ea, mul(eb, ec))) {
          return Verdict::Fail("associativity fails at (" + name(a) + ", " + name(b) + ", " +
                               name(c) + ")");
        }
        if (mul(ea, g.Add(eb, ec)) != g.Add(ab, mul(ea, ec)) ||
            mul(g.Add(ea, eb), ec) != g.Add(mul(ea, ec), mul(eb, ec))) {
          return Verdict::Fail("distributivity fails at (" + name(a) + ", " + name(b) + ", " +
                               name(c) + ")");
        }
      }
    }
  }
  return Verdict::Pass();
}

Verdict ModuleAxioms(const FinAbGroup& ring, const BinaryOp& mul, Elem one, const FinAbGroup& mod,
                     const BinaryOp& act) {
  auto rn = [&](uint64_t x) { return ring.Name(static_cast<Elem>(x)); };
  auto mn = [&](uint64_t x) { return mod.Name(static_cast<Elem>(x)); };
  for (uint64_t x = 0; x < mod.order(); ++x) {
    if (act(one, static_cast<Elem>(x)) != x) return Verdict::Fail("1 x != x at x = " + mn(x));
  }
  for (uint64_t a = 0; a < ring.order(); ++a) {
    const auto ea = static_cast<Elem>(a);
    for (uint64_t b = 0; b < ring.order(); ++b) {
      const auto eb = static_cast<Elem>(b);
      for (uint64_t x = 0; x < mod.order(); ++x) {
        const auto ex = static_cast<Elem>(x);
        if (act(mul(ea, eb), ex) != act(ea, act(eb, ex))) {
          return Verdict::Fail("(ab)x != a(bx) at a = " + rn(a) + ", b = " + rn(b) + ", x = " + mn(x));
        }
        if (act(ring.Add(ea, eb), ex) != mod.Add(act(ea, ex), act(eb, ex))) {
          return Verdict::Fail("(a+b)x != ax+bx at a = " + rn(a) + ", b = " + rn(b) + ", x = " +
                               mn(x));
        }
      }
    }
    for (uint64_t x = 0; x < mod.order(); ++x) {
      for (uint64_t y = 0; y < mod.order(); ++y) {
        const auto ex = static_cast<Elem>(x);
        const auto ey = static_cast<Elem>(y);
        if (act(ea, mod.Add(ex, ey)) != mod.Add(act(ea, ex), act(ea, ey))) {
          return Verdict::Fail("a(x+y) != ax+ay at a = " + rn(a) + ", x = " + mn(x) + ", y = " +
                               mn(y));
        }
      }
    }
  }
  return Verdict::Pass();
}

Verdict Combine(const std::vector<std::pair<std::string, Verdict>>& parts) {
  for (const auto& [name, v] : parts) {
    if (!v.passed()) return Verdict::Fail(name + ": " + v.detail());
  }
  return Verdict::Pass();
}

}  // namespace

GroupHom MonodromyPsi(const PervObj& m) {
  return SubtractHoms(GroupHom::Identity(m.psi), Compose(m.v, m.u));
}

GroupHom MonodromyPhi(const PervObj& m) {
  return SubtractHoms(GroupHom::Identity(m.phi), Compose(m.u, m.v));
}

ValidationReport Validate(const PervObj& m) {
  const GroupHom t_psi = MonodromyPsi(m);
  const GroupHom t_phi = MonodromyPhi(m);
  ValidationReport report{BijectionVerdict(t_psi, "1 - vu"), BijectionVerdict(t_phi, "1 - uv"),
                          Verdict::Pass()};
  if (report.inv.passed() != report.inv_prime.passed()) {
    report.witness_inverse = Verdict::Fail("(Inv) and (Inv') disagree");
    return report;
  }
  if (!report.inv.passed()) {
    report.witness_inverse = Verdict::Fail("1 - vu is not invertible");
    return report;
  }
  const auto inv_psi = std::get<std::vector<Elem>>(InvertOrWitness(t_psi));
  const FinAbGroup& phi = *m.phi;
  for (uint64_t x = 0; x < phi.order(); ++x) {
    const auto ex = static_cast<Elem>(x);
    const Elem y = t_phi(ex);
    const Elem back = phi.Add(y, m.u(inv_psi[m.v(y)]));
    if (back != ex) {
      report.witness_inverse = Verdict::Fail("1 + u(1 - vu)^{-1}v does not invert 1 - uv at " +
                                             phi.Name(ex));
      return report;
    }
  }
  return report;
}

PervObj MakePerv(GroupPtr phi, GroupPtr psi, GroupHom u, GroupHom v, std::string label) {
  if (u.source() != psi || u.target() != phi) throw DomainError("u must map Psi to Phi");
  if (v.source() != phi || v.target() != psi) throw DomainError("v must map Phi to Psi");
  PervObj m{std::move(phi), std::move(psi), std::move(u), std::move(v), std::nullopt, std::nullopt,
            std::move(label)};
  const ValidationReport r = Validate(m);
  if (!r.ok()) {
    const Verdict& bad = !r.inv.passed() ? r.inv : !r.inv_prime.passed() ? r.inv_prime : r.witness_inverse;
    throw DomainError("diagram " + (m.label.empty() ? std::string("") : m.label + " ") +
                      "rejected: " + bad.detail());
  }
  return m;
}

PervObj ZeroPerv(uint32_t p) {
  GroupPtr z = FinAbGroup::Trivial(p);
  return MakePerv(z, z, GroupHom::Zero(z, z), GroupHom::Zero(z, z), "0");
}

PervObj Transpose(const PervObj& m) {
  PervObj t = MakePerv(m.psi, m.phi, m.v, m.u, m.label.empty() ? "" : m.label + "^T");
  if (m.ring) t.ring = RingStructure{m.ring->mul_psi, m.ring->mul_phi, m.ring->one_psi, m.ring->one_phi};
  return t;
}

LocObj MakeLoc(GroupPtr psi, GroupHom t) {
  if (t.source() != psi || t.target() != psi) throw DomainError("monodromy must be an endomorphism");
  const Verdict v = BijectionVerdict(t, "T");
  if (!v.passed()) throw DomainError("local system rejected: " + v.detail());
  return LocObj{std::move(psi), std::move(t)};
}

Verdict CheckSquares(const PervObj& source, const PervObj& target, const GroupHom& f_phi,
                     const GroupHom& f_psi) {
  if (f_phi.source() != source.phi || f_phi.target() != target.phi ||
      f_psi.source() != source.psi || f_psi.target() != target.psi) {
    return Verdict::Fail("components do not match the objects");
  }
  if (auto x = FirstDifference(Compose(f_psi, source.v), Compose(target.v, f_phi))) {
    return Verdict::Fail("f_psi v != v' f_phi at " + source.phi->Name(*x));
  }
  if (auto x = FirstDifference(Compose(f_phi, source.u), Compose(target.u, f_psi))) {
    return Verdict::Fail("f_phi u != u' f_psi at " + source.psi->Name(*x));
  }
  return Verdict::Pass();
}

PervMor MakePervMor(PervObj source, PervObj target, GroupHom f_phi, GroupHom f_psi) {
  const Verdict v = CheckSquares(source, target, f_phi, f_psi);
  if (!v.passed()) throw DomainError("not a morphism: " + v.detail());
  return PervMor{std::move(source), std::move(target), std::move(f_phi), std::move(f_psi)};
}

PervMor IdentityMor(const PervObj& m) {
  return MakePervMor(m, m, GroupHom::Identity(m.phi), GroupHom::Identity(m.psi));
}

PervMor ZeroMor(const PervObj& source, const PervObj& target) {
  return MakePervMor(source, target, GroupHom::Zero(source.phi, target.phi),
                     GroupHom::Zero(source.psi, target.psi));
}

Cochain GammaC(const PervObj& m) { return Cochain::TwoTerm(m.v, 0); }
Cochain Gamma(const PervObj& m) { return Cochain::TwoTerm(m.u, -1); }

ChainMap GammaCMor(const PervMor& f) {
  return ChainMap(GammaC(f.source), GammaC(f.target), 0, {f.f_phi, f.f_psi});
}

ChainMap GammaMor(const PervMor& f) {
  return ChainMap(Gamma(f.source), Gamma(f.target), -1, {f.f_psi, f.f_phi});
}

LocObj JPull(const PervObj& m) { return MakeLoc(m.psi, MonodromyPsi(m)); }

PervObj JShriek(const LocObj& l) {
  const GroupHom id = GroupHom::Identity(l.psi);
  return MakePerv(l.psi, l.psi, id, SubtractHoms(id, l.t), "j_!");
}

PervObj JLowerStar(const LocObj& l) {
  const GroupHom id = GroupHom::Identity(l.psi);
  return MakePerv(l.psi, l.psi, SubtractHoms(id, l.t), id, "j_*");
}

PervMor CounitJ(const PervObj& m) {
  PervObj source = JShriek(JPull(m));
  const GroupHom id = GroupHom::Identity(m.psi);
  const Verdict v = CheckSquares(source, m, m.u, id);
  if (!v.passed()) throw InvariantViolation("counit j_! j^* M -> M: " + v.detail());
  return PervMor{std::move(source), m, m.u, id};
}

PervMor UnitJ(const PervObj& m) {
  PervObj target = JLowerStar(JPull(m));
  const GroupHom id = GroupHom::Identity(m.psi);
  const Verdict v = CheckSquares(m, target, m.v, id);
  if (!v.passed()) throw InvariantViolation("unit M -> j_* j^* M: " + v.detail());
  return PervMor{m, std::move(target), m.v, id};
}

std::vector<GroupHom> LocHoms(const LocObj& a, const LocObj& b, uint64_t cap) {
  std::vector<GroupHom> out;
  for (const GroupHom& g : HomEnumerate(a.psi, b.psi, cap)) {
    if (!FirstDifference(Compose(g, a.t), Compose(b.t, g))) out.push_back(g);
  }
  return out;
}

std::vector<PervMor> PervHoms(const PervObj& a, const PervObj& b, uint64_t cap) {
  const uint64_t n_phi = CountHomCandidates(a.phi, b.phi);
  const uint64_t n_psi = CountHomCandidates(a.psi, b.psi);
  if (n_phi > cap || n_psi > cap || n_phi * n_psi > cap) {
    throw ResourceError("enumerating diagram morphisms needs " + std::to_string(n_phi) + " x " +
                        std::to_string(n_psi) + " candidates, above the cap of " +
                        std::to_string(cap));
  }
  const auto phis = HomEnumerate(a.phi, b.phi, cap);
  const auto psis = HomEnumerate(a.psi, b.psi, cap);
  std::vector<PervMor> out;
  for (const GroupHom& fpsi : psis) {
    const GroupHom fpsi_u_src = Compose(b.u, fpsi);
    for (const GroupHom& fphi : phis) {
      if (Compose(fphi, a.u) != fpsi_u_src) continue;
      if (Compose(fpsi, a.v) != Compose(b.v, fphi)) continue;
      out.push_back(PervMor{a, b, fphi, fpsi});
    }
  }
  return out;
}

namespace {

// The restriction (f_phi, f_psi) |-> f_psi from `perv` onto `loc`.
Verdict RestrictionIsBijective(const std::vector<PervMor>& perv, const std::vector<GroupHom>& loc) {
  std::set<std::vector<Elem>> loc_tables;
  for (const auto& g : loc) loc_tables.insert(g.images());
  std::set<std::vector<Elem>> hit;
  for (const auto& f : perv) {
    if (!loc_tables.count(f.f_psi.images())) {
      return Verdict::Fail("restriction of a diagram morphism is not a local-system morphism");
    }
    if (!hit.insert(f.f_psi.images()).second) {
      return Verdict::Fail("two diagram morphisms restrict to the same map; not injective");
    }
  }
  if (hit.size() != loc_tables.size()) {
    return Verdict::Fail(std::to_string(loc_tables.size() - hit.size()) +
                         " local-system morphisms are not hit; not surjective");
  }
  return Verdict::Pass();
}

}  // namespace

AdjunctionReport AdjunctionCheck(const LocObj& l, const PervObj& m, uint64_t cap) {
  AdjunctionReport r{0, 0, 0, 0, Verdict::Pass(), Verdict::Pass()};
  const LocObj jm = JPull(m);
  const auto left_perv = PervHoms(JShriek(l), m, cap);
  const auto left_loc = LocHoms(l, jm, cap);
  r.left_perv_homs = left_perv.size();
  r.left_loc_homs = left_loc.size();
  r.left = RestrictionIsBijective(left_perv, left_loc);
  const auto right_perv = PervHoms(m, JLowerStar(l), cap);
  const auto right_loc = LocHoms(jm, l, cap);
  r.right_perv_homs = right_perv.size();
  r.right_loc_homs = right_loc.size();
  r.right = RestrictionIsBijective(right_perv, right_loc);
  return r;
}

namespace {

Cochain Single(const GroupPtr& g) { return Cochain(g->prime(), 0, {g}, {}); }

MappingCone ConeOfMap(const GroupHom& f) {
  return Cone(ChainMap(Single(f.source()), Single(f.target()), 0, {f}));
}

// Chain map between two cones of single-object complexes induced by
// (g_src, g_tgt) on (source, target).
ChainMap ConeMap(const MappingCone& from, const MappingCone& to, const GroupHom& g_src,
                 const GroupHom& g_tgt) {
  std::vector<GroupHom> comps;
  for (int d = -1; d <= 0; ++d) {
    const FinAbGroup& a = *from.cone.Object(d);
    const FinAbGroup& b = *to.cone.Object(d);
    std::vector<Elem> images(a.order());
    for (uint64_t z = 0; z < a.order(); ++z) {
      const auto [x, y] = a.Split(static_cast<Elem>(z));
      images[z] = d == -1 ? b.Pair(g_src(x), 0) : b.Pair(0, g_tgt(y));
    }
    comps.push_back(GroupHom::Trusted(from.cone.Object(d), to.cone.Object(d), std::move(images)));
  }
  return ChainMap(from.cone, to.cone, -1, std::move(comps));
}

}  // namespace

DiscCone ConeOf(const PervMor& f) {
  MappingCone phi = ConeOfMap(f.f_phi);
  MappingCone psi = ConeOfMap(f.f_psi);
  ChainMap u_chain = ConeMap(psi, phi, f.source.u, f.target.u);
  ChainMap v_chain = ConeMap(phi, psi, f.source.v, f.target.v);
  return DiscCone{DiscComplex{phi.cone, psi.cone, std::move(u_chain), std::move(v_chain)}, phi, psi};
}

namespace {

// The composite X -> Y -> Cone(f) is killed by h(x) = (x, 0).
Verdict CanonicalNullhomotopy(const GroupHom& f, const MappingCone& mc) {
  const Cochain x = Single(f.source());
  const ChainMap fx(x, mc.inclusion.source(), 0, {f});
  const ChainMap comp = ComposeChainMaps(mc.inclusion, fx);
  const FinAbGroup& c = *mc.cone.Object(-1);
  std::vector<Elem> images(f.source()->order());
  for (size_t a = 0; a < images.size(); ++a) images[a] = c.Pair(static_cast<Elem>(a), 0);
  return CheckNullhomotopy(comp, 0, {GroupHom::Trusted(f.source(), mc.cone.Object(-1), std::move(images))});
}

Verdict ConeLongExact(const MappingCone& mc) {
  const LongExactSequence les = BuildLongExactSequence({mc.inclusion, mc.projection});
  for (const auto& v : les.exactness) {
    if (!v.passed()) return v;
  }
  return Verdict::Pass();
}

// Degreewise bijective chain map `reference` -> cone phi part, given by
// x |-> (sign x, 0) in degree -1 and y |-> (0, y) in degree 0.
Verdict MatchesTwoTerm(const Cochain& reference, const MappingCone& mc, int sign) {
  try {
    std::vector<GroupHom> comps;
    for (int d = -1; d <= 0; ++d) {
      const FinAbGroup& c = *mc.cone.Object(d);
      const FinAbGroup& r = *reference.Object(d);
      if (r.order() != c.order()) {
        return Verdict::Fail("degree " + std::to_string(d) + " orders differ");
      }
      std::vector<Elem> images(r.order());
      for (uint64_t z = 0; z < r.order(); ++z) {
        const auto e = static_cast<Elem>(z);
        images[z] = d == -1 ? c.Pair(r.Scale(sign, e), 0) : c.Pair(0, e);
      }
      comps.push_back(GroupHom::Trusted(reference.Object(d), mc.cone.Object(d), std::move(images)));
      if (!comps.back().IsBijective()) {
        return Verdict::Fail("comparison map not bijective in degree " + std::to_string(d));
      }
    }
    ChainMap iso(reference, mc.cone, -1, std::move(comps));
  } catch (const DomainError& e) {
    return Verdict::Fail(e.what());
  }
  return Verdict::Pass();
}

}  // namespace

std::vector<TriangleReport> StdTriangles(const PervObj& m) {
  std::vector<TriangleReport> out;
  {
    // M -> j_* j^* M with cone i_! i^! M [1].
    const PervMor eta = UnitJ(m);
    const DiscCone c = ConeOf(eta);
    TriangleReport r{"i_! i^! M -> M -> j_* j^* M", Verdict::Pass(), Verdict::Pass(), Verdict::Pass()};
    r.nullhomotopy = Combine({{"phi", CanonicalNullhomotopy(eta.f_phi, c.phi)},
                              {"psi", CanonicalNullhomotopy(eta.f_psi, c.psi)}});
    r.third_term = Combine({{"phi cone vs Gamma_c(M)[1]", MatchesTwoTerm(Shift(GammaC(m), 1), c.phi, -1)},
                            {"psi cone acyclic", IsAcyclic(c.psi.cone)
                                                     ? Verdict::Pass()
                                                     : Verdict::Fail("nonzero cohomology")}});
    r.long_exact = Combine({{"phi", ConeLongExact(c.phi)}, {"psi", ConeLongExact(c.psi)}});
    out.push_back(std::move(r));
  }
  {
    // j_! j^* M -> M with cone i_* i^* M.
    const PervMor eps = CounitJ(m);
    const DiscCone c = ConeOf(eps);
    TriangleReport r{"j_! j^* M -> M -> i_* i^* M", Verdict::Pass(), Verdict::Pass(), Verdict::Pass()};
    r.nullhomotopy = Combine({{"phi", CanonicalNullhomotopy(eps.f_phi, c.phi)},
                              {"psi", CanonicalNullhomotopy(eps.f_psi, c.psi)}});
    r.third_term = Combine({{"phi cone vs Gamma(M)", MatchesTwoTerm(Gamma(m), c.phi, 1)},
                            {"psi cone acyclic", IsAcyclic(c.psi.cone)
                                                     ? Verdict::Pass()
                                                     : Verdict::Fail("nonzero cohomology")}});
    r.long_exact = Combine({{"phi", ConeLongExact(c.phi)}, {"psi", ConeLongExact(c.psi)}});
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport RingObjectCheck(const PervObj& b) {
  if (!b.ring) throw DomainError("ring object check needs multiplications on Phi and Psi");
  const RingStructure& rs = *b.ring;
  const FinAbGroup& phi = *b.phi;
  const FinAbGroup& psi = *b.psi;
  CheckReport report;
  report.push_back({"(i) ring axioms on Phi", RingAxioms(phi, rs.mul_phi, rs.one_phi)});
  report.push_back({"(i) ring axioms on Psi", RingAxioms(psi, rs.mul_psi, rs.one_psi)});

  Verdict mult = Verdict::Pass();
  for (uint64_t x = 0; x < psi.order() && mult.passed(); ++x) {
    for (uint64_t y = 0; y < psi.order(); ++y) {
      const auto ex = static_cast<Elem>(x);
      const auto ey = static_cast<Elem>(y);
      if (b.u(rs.mul_psi(ex, ey)) != rs.mul_phi(b.u(ex), b.u(ey))) {
        mult = Verdict::Fail("x = " + psi.Name(ex) + ", y = " + psi.Name(ey));
        break;
      }
    }
  }
  report.push_back({"(ii) u(xy) = u(x)u(y)", mult});
  report.push_back({"(ii) u(1) = 1", Verdict::FromBool(b.u(rs.one_psi) == rs.one_phi,
                                                       "u(1) = " + phi.Name(b.u(rs.one_psi)))});

  Verdict proj = Verdict::Pass();
  for (uint64_t x = 0; x < phi.order() && proj.passed(); ++x) {
    for (uint64_t y = 0; y < psi.order(); ++y) {
      const auto ex = static_cast<Elem>(x);
      const auto ey = static_cast<Elem>(y);
      if (b.v(rs.mul_phi(b.u(ey), ex)) != rs.mul_psi(ey, b.v(ex))) {
        proj = Verdict::Fail("x = " + phi.Name(ex) + ", y = " + psi.Name(ey));
        break;
      }
    }
  }
  report.push_back({"(iii) v(u(y)x) = y v(x)", proj});
  return report;
}

CheckReport ModuleObjectCheck(const PervObj& b, const PervObj& n) {
  if (!b.ring) throw DomainError("module check needs a ring object");
  if (!n.module) throw DomainError("module check needs actions on Phi and Psi");
  const RingStructure& rs = *b.ring;
  const ModuleStructure& ms = *n.module;
  CheckReport report;
  report.push_back({"(iv) module axioms on Phi",
                    ModuleAxioms(*b.phi, rs.mul_phi, rs.one_phi, *n.phi, ms.act_phi)});
  report.push_back({"(iv) module axioms on Psi",
                    ModuleAxioms(*b.psi, rs.mul_psi, rs.one_psi, *n.psi, ms.act_psi)});

  auto sweep = [](uint64_t na, uint64_t nx, const std::function<bool(Elem, Elem)>& holds,
                  const std::function<std::string(Elem, Elem)>& witness) {
    for (uint64_t a = 0; a < na; ++a) {
      for (uint64_t x = 0; x < nx; ++x) {
        if (!holds(static_cast<Elem>(a), static_cast<Elem>(x))) {
          return Verdict::Fail(witness(static_cast<Elem>(a), static_cast<Elem>(x)));
        }
      }
    }
    return Verdict::Pass();
  };

  report.push_back(
      {"(v) u(ax) = u(a)u(x)",
       sweep(b.psi->order(), n.psi->order(),
             [&](Elem a, Elem x) { return n.u(ms.act_psi(a, x)) == ms.act_phi(b.u(a), n.u(x)); },
             [&](Elem a, Elem x) { return "a = " + b.psi->Name(a) + ", x = " + n.psi->Name(x); })});
  report.push_back(
      {"(vi) v(by) = v(b)v(y) [literal]",
       sweep(b.phi->order(), n.phi->order(),
             [&](Elem bb, Elem y) { return n.v(ms.act_phi(bb, y)) == ms.act_psi(b.v(bb), n.v(y)); },
             [&](Elem bb, Elem y) {
               return "b = " + b.phi->Name(bb) + ", y = " + n.phi->Name(y) + ": v(by) = " +
                      n.psi->Name(n.v(ms.act_phi(bb, y))) + ", v(b)v(y) = " +
                      n.psi->Name(ms.act_psi(b.v(bb), n.v(y)));
             })});
  report.push_back(
      {"(vi') v(u(a)y) = a v(y) [projection formula]",
       sweep(b.psi->order(), n.phi->order(),
             [&](Elem a, Elem y) { return n.v(ms.act_phi(b.u(a), y)) == ms.act_psi(a, n.v(y)); },
             [&](Elem a, Elem y) { return "a = " + b.psi->Name(a) + ", y = " + n.phi->Name(y); })});
  return report;
}

}  // namespace wittperv
