#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "wittperv/errors.hpp"
#include "wittperv/sheaves.hpp"

namespace wittperv {
namespace {

const QuotRingSpec kZ2{QuotBase::kIntegers, 2};
const QuotRingSpec kZ3{QuotBase::kIntegers, 3};
const QuotRingSpec kF2t{QuotBase::kPolyFp, 2};

TEST(QuotRingTest, ArithmeticMatchesIntegers) {
  const QuotRing r(kZ3, 2);
  ASSERT_EQ(r.size(), 9u);
  for (Elem a = 0; a < 9; ++a)
    for (Elem b = 0; b < 9; ++b) {
      EXPECT_EQ(r.group()->Add(a, b), (a + b) % 9);
      EXPECT_EQ(r.Mul(a, b), a * b % 9);
    }
}

TEST(QuotRingTest, PolynomialArithmetic) {
  // F_2[t]/(t^3): ids are c_0 + 2 c_1 + 4 c_2.
  const QuotRing r(kF2t, 3);
  ASSERT_EQ(r.size(), 8u);
  const Elem t = 2, t2 = 4, one_plus_t = 3;
  EXPECT_EQ(r.Mul(t, t), t2);
  EXPECT_EQ(r.Mul(t2, t), 0u);
  EXPECT_EQ(r.Mul(one_plus_t, one_plus_t), 1u + t2);  // 1 + t^2 in characteristic 2
  EXPECT_EQ(r.MulB(1, one_plus_t), t + t2);
  EXPECT_EQ(r.group()->Add(t, t), 0u);
}

TEST(MakeMAbTest, Examples) {
  const PervObj m = MakeMAb(kZ2, 1, 2);
  EXPECT_EQ(m.phi->order(), 4u);
  EXPECT_EQ(m.psi->order(), 8u);
  for (Elem y = 0; y < 8; ++y) EXPECT_EQ(m.u(y), y % 4);
  for (Elem x = 0; x < 4; ++x) EXPECT_EQ(m.v(x), 2 * x % 8);
  EXPECT_THROW(MakeMAb(kZ2, 0, 2), DomainError);
  EXPECT_THROW(MakeMAb(kZ2, 1, 0), DomainError);

  const PervObj t = MakeMAb(kF2t, 2, 1);
  EXPECT_EQ(t.phi->order(), 2u);
  EXPECT_EQ(t.psi->order(), 8u);
  EXPECT_EQ(t.v(1), 4u);  // 1 -> t^2
  EXPECT_TRUE(MonodromyPsi(t).IsBijective());

  EXPECT_THROW(MakeMAb(kZ2, 10, 10, 4096), ResourceError);
}

TEST(MakeMAbTest, FleetValidatesAndIsRingObject) {
  for (const auto& spec : {kZ2, kZ3, kF2t, QuotRingSpec{QuotBase::kPolyFp, 3}})
    for (uint32_t m = 1; m <= 2; ++m)
      for (uint32_t n = 1; n <= 2; ++n) {
        const PervObj b = MakeMAb(spec, m, n);
        EXPECT_TRUE(Validate(b).ok()) << b.label;
        for (const auto& e : RingObjectCheck(b)) EXPECT_TRUE(e.verdict.passed()) << b.label << " " << e.name;
      }
}

TEST(MakeMAbModuleTest, Examples) {
  const PervObj n2 = MakeMAbModule(kZ2, 2, 1, 1);
  EXPECT_EQ(InvariantFactors(*n2.phi), (std::vector<uint64_t>{2, 2}));
  EXPECT_EQ(InvariantFactors(*n2.psi), (std::vector<uint64_t>{4, 4}));
  EXPECT_TRUE(Validate(n2).ok());
  EXPECT_EQ(Compose(n2.v, n2.u), ScaleHom(2, GroupHom::Identity(n2.psi)));

  const PervObj n0 = MakeMAbModule(kZ2, 0, 1, 1);
  EXPECT_EQ(n0.phi->order(), 1u);
  EXPECT_EQ(n0.psi->order(), 1u);

  // Rank one is the regular module.
  const PervObj b = MakeMAb(kZ2, 1, 2);
  const PervObj n1 = MakeMAbModule(kZ2, 1, 1, 2);
  ASSERT_EQ(n1.phi->order(), b.phi->order());
  ASSERT_EQ(n1.psi->order(), b.psi->order());
  EXPECT_EQ(n1.u.images(), b.u.images());
  EXPECT_EQ(n1.v.images(), b.v.images());
  for (Elem a = 0; a < b.psi->order(); ++a)
    for (Elem y = 0; y < b.psi->order(); ++y) EXPECT_EQ(n1.module->act_psi(a, y), b.ring->mul_psi(a, y));
}

TEST(TowerMAbTest, Examples) {
  const MAbTower z = TowerMAb(kZ2, 1, 3);
  ASSERT_EQ(z.tower.levels.size(), 3u);
  ASSERT_EQ(z.tower.transitions.size(), 2u);
  for (const auto& t : z.tower.transitions)
    EXPECT_TRUE(CheckSquares(t.source, t.target, t.f_phi, t.f_psi).passed());
  for (const auto& v : z.monodromy_matches) EXPECT_TRUE(v.passed()) << v.ToString();

  EXPECT_TRUE(TowerMAb(kZ3, 1, 1).tower.transitions.empty());

  const MAbTower p = TowerMAb(kF2t, 1, 3);
  for (size_t i = 0; i < 3; ++i) {
    const PervObj& lvl = p.tower.levels[i];
    uint64_t expect = 1;
    for (size_t e = 0; e < i + 2; ++e) expect *= 2;
    EXPECT_EQ(lvl.psi->order(), expect);
    EXPECT_TRUE(MonodromyPsi(lvl).IsBijective());
  }
}

TEST(MDirectionTest, NoNamedCandidateCommutes) {
  const MDirectionSearch s = SearchMDirection(kZ2, 2, 2);
  ASSERT_EQ(s.named.size(), 3u);
  for (const auto& c : s.named) EXPECT_TRUE(c.verdict.failed()) << c.name;
  EXPECT_TRUE(s.NoneNonzeroOnPhi());
}

TEST(WittSheafTest, MixedDualShape) {
  WittFamily fam(FpAlgebra::Parse(2, "x"));
  const PervObj wv = MakeWittSheaf(fam, 1, WittModel::kMixed, true);
  EXPECT_EQ(wv.phi, fam.Group(2));
  EXPECT_EQ(wv.psi, fam.Group(1));
  EXPECT_EQ(wv.v, fam.FrobMixed(1));
  EXPECT_EQ(wv.u, fam.VerschMixed(1));
  EXPECT_TRUE(Validate(wv).ok());

  const PervObj w = MakeWittSheaf(fam, 1, WittModel::kMixed, false);
  const PervObj tr = Transpose(wv);
  EXPECT_EQ(w.phi, tr.phi);
  EXPECT_EQ(w.psi, tr.psi);
  EXPECT_EQ(w.u, tr.u);
  EXPECT_EQ(w.v, tr.v);
}

TEST(WittSheafTest, PrimeFieldEndoIsOneAndP) {
  for (uint32_t p : {2u, 3u}) {
    WittFamily fam(FpAlgebra::Parse(p, "x"));
    for (size_t n = 1; n <= 3; ++n) {
      const PervObj wv = MakeWittSheaf(fam, n, WittModel::kEndo, true);
      // W^v: v = F = 1, u = V = p.
      EXPECT_EQ(wv.v, GroupHom::Identity(fam.Group(n)));
      EXPECT_EQ(wv.u, ScaleHom(p, GroupHom::Identity(fam.Group(n))));
    }
  }
}

TEST(WittSheafTest, MixedVerschInjectiveWithCokernelK) {
  for (auto [p, f] : std::vector<std::pair<uint32_t, const char*>>{{2, "x"}, {2, "x^2+x+1"}, {2, "t^2"}, {3, "x"}}) {
    WittFamily fam(FpAlgebra::Parse(p, f));
    for (size_t n = 1; n <= 3; ++n) {
      if (fam.Ring(n + 1)->size() > 4096) continue;
      const PervObj wv = MakeWittSheaf(fam, n, WittModel::kMixed, true);
      EXPECT_TRUE(wv.u.IsInjective());
      const Quotient q = Cokernel(wv.u);
      const GroupHom x0 = fam.X0(n + 1);
      // x_0 is constant on cosets and bijective on representatives.
      std::vector<Elem> seen;
      for (Elem w = 0; w < wv.phi->order(); ++w) EXPECT_EQ(x0(w), x0(q.representatives[q.projection(w)]));
      for (Elem r : q.representatives) seen.push_back(x0(r));
      std::sort(seen.begin(), seen.end());
      EXPECT_EQ(std::unique(seen.begin(), seen.end()) - seen.begin(), static_cast<long>(fam.base()->size()));
      EXPECT_EQ(q.group->order(), fam.base()->size());
    }
  }
}

TEST(WittSheafTest, RestrictionIntertwinesEndoMaps) {
  for (auto [p, f] : std::vector<std::pair<uint32_t, const char*>>{{2, "x^2+x+1"}, {2, "t^2"}, {3, "x"}}) {
    WittFamily fam(FpAlgebra::Parse(p, f));
    for (size_t n = 1; n <= 3; ++n) {
      if (fam.Ring(n + 1)->size() > 4096) continue;
      const GroupHom r = fam.Restrict(n);
      EXPECT_EQ(Compose(r, fam.FrobEndo(n + 1)), Compose(fam.FrobEndo(n), r));
      EXPECT_EQ(Compose(r, fam.VerschEndo(n + 1)), Compose(fam.VerschEndo(n), r));
      EXPECT_EQ(Compose(r, fam.MulP(n + 1)), Compose(fam.MulP(n), r));
    }
  }
}

TEST(WittSheafTest, TowersHaveCommutingSquares) {
  WittFamily fam(FpAlgebra::Parse(2, "t^2"));
  for (WittModel model : {WittModel::kEndo, WittModel::kMixed})
    for (bool dual : {false, true}) {
      const ProPerv t = WittSheafTower(fam, 3, model, dual);
      for (const auto& lvl : t.levels) EXPECT_TRUE(Validate(lvl).ok());
      for (const auto& tr : t.transitions)
        EXPECT_TRUE(CheckSquares(tr.source, tr.target, tr.f_phi, tr.f_psi).passed());
    }
}

TEST(DieudonneTest, Examples) {
  auto d2 = FpAlgebra::Parse(2, "t^2");
  const GroupPtr a = AdditiveGroup(d2);
  EXPECT_NO_THROW(MakeDieudonneSheaf({a, GroupHom::Zero(a, a), GroupHom::Zero(a, a)}));

  WittFamily f4(FpAlgebra::Parse(2, "x^2+x+1"));
  const GroupPtr g = f4.Group(1);
  EXPECT_NO_THROW(MakeDieudonneSheaf({g, f4.FrobEndo(1), GroupHom::Zero(g, g)}));

  WittFamily f2(FpAlgebra::Parse(2, "x"));
  const PervObj d = MakeDieudonneSheaf({f2.Group(2), f2.FrobEndo(2), f2.VerschEndo(2)});
  const PervObj w = MakeWittSheaf(f2, 2, WittModel::kEndo, false);
  EXPECT_EQ(d.u, w.u);
  EXPECT_EQ(d.v, w.v);

  const GroupPtr z4 = FinAbGroup::Cyclic(2, 2);
  EXPECT_THROW(MakeDieudonneSheaf({z4, GroupHom::Identity(z4), GroupHom::Identity(z4)}), DomainError);
}

TEST(DieudonneTest, FuzzAcceptsExactlyTheAxiom) {
  std::mt19937_64 rng(99);
  const GroupPtr m = FinAbGroup::FromCyclicOrders({4, 2});
  const GroupHom p_id = ScaleHom(2, GroupHom::Identity(m));
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 300; ++t) {
    const GroupHom f = RandomHom(m, m, rng);
    const GroupHom v = RandomHom(m, m, rng);
    const bool axiom = Compose(v, f) == p_id;
    try {
      MakeDieudonneSheaf({m, f, v});
      EXPECT_TRUE(axiom);
      ++accepted;
    } catch (const DomainError& e) {
      EXPECT_FALSE(axiom);
      EXPECT_NE(std::string(e.what()).find("x ="), std::string::npos) << e.what();
      ++rejected;
    }
  }
  EXPECT_GT(accepted, 0);
  EXPECT_GT(rejected, 0);
}

TEST(ProTest, KernelAndCokernelOfP) {
  WittFamily f4(FpAlgebra::Parse(2, "x^2+x+1"));
  const ProPerv t = WittSheafTower(f4, 3, WittModel::kEndo, true);
  const ProGroup kp = ProKernel(t, PervSelector::kVU);
  for (const auto& g : kp.levels) EXPECT_EQ(g->order(), 4u);
  for (const auto& tr : kp.transitions) EXPECT_TRUE(tr.IsZero());
  EXPECT_TRUE(IsProZero(kp, 1));

  WittFamily f2(FpAlgebra::Parse(2, "x"));
  const ProGroup cp = ProCokernel(WittSheafTower(f2, 3, WittModel::kEndo, true), PervSelector::kVU);
  for (const auto& g : cp.levels) EXPECT_EQ(g->order(), 2u);
  for (const auto& tr : cp.transitions) EXPECT_TRUE(tr.IsBijective());
  EXPECT_FALSE(IsProZero(cp, 2));

  const ProGroup ki = ProKernel(t, PervSelector::kIdentity);
  for (const auto& g : ki.levels) EXPECT_EQ(g->order(), 1u);
  EXPECT_TRUE(IsProZero(ki, 1));
}

TEST(ProTest, ConstantTowerIsNotProZero) {
  const GroupPtr z2 = FinAbGroup::Cyclic(2, 1);
  const ProGroup c{{z2, z2, z2}, {GroupHom::Identity(z2), GroupHom::Identity(z2)}};
  EXPECT_FALSE(IsProZero(c, 1));
  EXPECT_FALSE(IsProZero(c, 2));
  EXPECT_TRUE(IsMittagLefflerSurjective(c));
  EXPECT_TRUE(HasStableImages(c));
}

TEST(ProTest, KerFOverDualNumbers) {
  WittFamily fam(FpAlgebra::Parse(2, "t^2"));
  // Endo model: Ker F_n = { x : x_i^2 = 0 } and restriction is onto.
  const ProGroup endo = ProKernel(WittSheafTower(fam, 3, WittModel::kEndo, true), PervSelector::kV);
  EXPECT_FALSE(IsProZero(endo, 2));
  EXPECT_TRUE(IsMittagLefflerSurjective(endo));
  // Mixed model: the top coordinate of Ker(F: W_{n+1} -> W_n) is free, so
  // transitions miss it; images still stabilize.
  const ProGroup mixed = ProKernel(WittSheafTower(fam, 4, WittModel::kMixed, true), PervSelector::kV);
  EXPECT_FALSE(IsProZero(mixed, 3));
  EXPECT_FALSE(IsMittagLefflerSurjective(mixed));
  EXPECT_TRUE(HasStableImages(mixed));
}

TEST(ProTest, NonCommutingSelectionRejected) {
  const GroupPtr z4 = FinAbGroup::Cyclic(2, 2);
  const ProGroup c{{z4, z4}, {GroupHom::Identity(z4)}};
  const ProGroup d{{z4, z4}, {ScaleHom(2, GroupHom::Identity(z4))}};
  // Identity levelwise maps from c to d do not commute with transitions.
  EXPECT_THROW(CheckProMap({c, d, {GroupHom::Identity(z4), GroupHom::Identity(z4)}}), DomainError);
}

}  // namespace
}  // namespace wittperv
