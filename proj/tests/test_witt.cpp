#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "wittperv/errors.hpp"
#include "wittperv/witt.hpp"

namespace wittperv {
namespace {

IntPoly X(size_t i) { return IntPoly::Variable(XVar(i)); }
IntPoly Y(size_t i) { return IntPoly::Variable(YVar(i)); }
IntPoly C(long c) { return IntPoly::Constant(c); }

std::vector<IntPoly> Xs(size_t n) {
  std::vector<IntPoly> v;
  for (size_t i = 0; i < n; ++i) v.push_back(X(i));
  return v;
}
std::vector<IntPoly> Ys(size_t n) {
  std::vector<IntPoly> v;
  for (size_t i = 0; i < n; ++i) v.push_back(Y(i));
  return v;
}

// Ghost component written out directly, without GhostPoly.
IntPoly GhostOracle(const std::vector<IntPoly>& comps, size_t i, uint32_t p) {
  IntPoly acc;
  mpz_class pj = 1;
  for (size_t j = 0; j <= i; ++j) {
    uint64_t e = 1;
    for (size_t r = 0; r < i - j; ++r) e *= p;
    acc += comps[j].Pow(e) * pj;
    pj *= p;
  }
  return acc;
}

std::vector<WittVector> AllOf(const WittRing& r) {
  std::vector<WittVector> out;
  for (uint64_t id = 0; id < r.size(); ++id) out.push_back(r.Decode(id));
  return out;
}

// Integer value of a Witt vector over F_p via W_n(F_p) = Z/p^n. For the
// prime field the Witt vector (x_0, ..., x_{n-1}) is sum_i V^i [x_i] and
// the Teichmuller lift [a] is the unique (p-1)-th root of unity congruent
// to a; computed here by iterating a -> a^p mod p^n.
uint64_t ToInteger(const WittVector& x, uint32_t p) {
  const size_t n = x.length();
  uint64_t mod = 1;
  for (size_t i = 0; i < n; ++i) mod *= p;
  auto powmod = [&](uint64_t b, uint64_t e) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < e; ++i) r = r * b % mod;
    return r;
  };
  uint64_t total = 0;
  uint64_t pi = 1;
  for (size_t i = 0; i < n; ++i) {
    uint64_t t = x.coords[i].coeffs[0];
    for (size_t r = 0; r < n; ++r) t = powmod(t, p);
    total = (total + pi * t) % mod;
    pi *= p;
  }
  return total;
}

TEST(GhostPolyTest, Examples) {
  EXPECT_EQ(GhostPoly(0, 2), X(0));
  EXPECT_EQ(GhostPoly(0, 5), X(0));
  EXPECT_EQ(GhostPoly(1, 2), X(0).Pow(2) + X(1) * mpz_class(2));
  EXPECT_EQ(GhostPoly(2, 2), X(0).Pow(4) + X(1).Pow(2) * mpz_class(2) + X(2) * mpz_class(4));
}

TEST(GhostPolyTest, MatchesDefiningSum) {
  for (uint32_t p : {2u, 3u, 5u})
    for (size_t i = 0; i < 4; ++i) EXPECT_EQ(GhostPoly(i, p), GhostOracle(Xs(i + 1), i, p));
}

TEST(StructurePolysTest, Examples) {
  for (uint32_t p : {2u, 3u, 5u}) EXPECT_EQ(StructurePolys(WittOp::kSum, 1, p)[0], X(0) + Y(0));
  EXPECT_EQ(StructurePolys(WittOp::kSum, 2, 2)[1], X(1) + Y(1) - X(0) * Y(0));
  EXPECT_EQ(StructurePolys(WittOp::kProduct, 2, 2)[1],
            X(0).Pow(2) * Y(1) + X(1) * Y(0).Pow(2) + X(1) * Y(1) * mpz_class(2));
}

TEST(StructurePolysTest, GhostIdentities) {
  for (uint32_t p : {2u, 3u}) {
    const size_t n = 4;
    const auto s = StructurePolys(WittOp::kSum, n, p);
    const auto m = StructurePolys(WittOp::kProduct, n, p);
    const auto g = StructurePolys(WittOp::kNegation, n, p);
    for (size_t k = 0; k < n; ++k) {
      const IntPoly wx = GhostOracle(Xs(n), k, p);
      const IntPoly wy = GhostOracle(Ys(n), k, p);
      EXPECT_EQ(GhostOracle(s, k, p), wx + wy) << "p=" << p << " k=" << k;
      EXPECT_EQ(GhostOracle(m, k, p), wx * wy) << "p=" << p << " k=" << k;
      EXPECT_EQ(GhostOracle(g, k, p), -wx) << "p=" << p << " k=" << k;
    }
  }
}

TEST(StructurePolysTest, CacheIsConsistentUnderConcurrency) {
  std::vector<std::thread> pool;
  std::vector<std::vector<IntPoly>> got(8);
  for (size_t t = 0; t < got.size(); ++t)
    pool.emplace_back([&, t] { got[t] = StructurePolys(WittOp::kProduct, 3, t % 2 ? 3 : 5); });
  for (auto& th : pool) th.join();
  for (size_t t = 2; t < got.size(); ++t) EXPECT_EQ(got[t], got[t - 2]);
}

TEST(StructurePolysTest, PrefixIndependentOfLength) {
  const auto short_s = StructurePolys(WittOp::kSum, 2, 3);
  const auto long_s = StructurePolys(WittOp::kSum, 3, 3);
  EXPECT_EQ(short_s[0], long_s[0]);
  EXPECT_EQ(short_s[1], long_s[1]);
}

TEST(IntPolyTest, InexactDivisionIsInvariantViolation) {
  EXPECT_THROW((X(0) * mpz_class(3) + C(1)).ExactDiv(3), InvariantViolation);
  EXPECT_EQ((X(0) * mpz_class(6)).ExactDiv(3), X(0) * mpz_class(2));
}

TEST(FrobeniusPolysTest, CoordinatewisePowerAgreesWithUniversalFrobenius) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, size_t>>{{2, 3}, {3, 2}}) {
    auto k = FpAlgebra::Parse(p, "x");
    const auto polys = FrobeniusPolys(n, p);
    for (size_t i = 0; i < n; ++i)
      EXPECT_EQ(GhostOracle(polys, i, p), GhostOracle(Xs(n + 1), i + 1, p));
    const auto ring = WittRingFor(k, n + 1);
    for (const auto& x : AllOf(*ring)) {
      const WittVector fx = FrobMixed(x);
      for (size_t i = 0; i < n; ++i) {
        const ModPPoly f(polys[i], p);
        std::vector<uint32_t> vals(2 * (n + 1), 0);
        for (size_t j = 0; j <= n; ++j) vals[XVar(j)] = k->IdOf(x.coords[j]);
        EXPECT_EQ(f.Evaluate(ring->tables(), vals), k->IdOf(fx.coords[i]));
      }
    }
  }
}

TEST(WittArithmeticTest, Examples) {
  auto f2 = FpAlgebra::Parse(2, "x");
  const auto w2 = WittRingFor(f2, 2);
  const auto one = w2->One();
  EXPECT_EQ(WittAdd(one, one), w2->Make({f2->Zero(), f2->One()}));
  for (const auto& a : AllOf(*w2)) {
    EXPECT_EQ(WittAdd(a, w2->Zero()), a);
    EXPECT_EQ(WittMul(one, a), a);
  }
  EXPECT_EQ(MulP(one), w2->Make({f2->Zero(), f2->One()}));
  EXPECT_EQ(VerschEndo(FrobEndo(one)), MulP(one));
  EXPECT_EQ(MulP(w2->Zero()), w2->Zero());
}

TEST(WittArithmeticTest, MismatchRejected) {
  auto f2 = FpAlgebra::Parse(2, "x");
  auto f4 = FpAlgebra::Parse(2, "x^2+x+1");
  EXPECT_THROW(WittAdd(WittRingFor(f2, 2)->One(), WittRingFor(f2, 3)->One()), DomainError);
  EXPECT_THROW(WittMul(WittRingFor(f2, 2)->One(), WittRingFor(f4, 2)->One()), DomainError);
}

TEST(WittArithmeticTest, PrimeFieldMatchesIntegersModPn) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, size_t>>{{2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    auto k = FpAlgebra::Parse(p, "x");
    const auto ring = WittRingFor(k, n);
    uint64_t mod = 1;
    for (size_t i = 0; i < n; ++i) mod *= p;
    std::set<uint64_t> seen;
    for (const auto& a : AllOf(*ring)) {
      const uint64_t ia = ToInteger(a, p);
      seen.insert(ia);
      EXPECT_EQ(ToInteger(WittNeg(a), p), (mod - ia) % mod);
      EXPECT_EQ(ToInteger(MulP(a), p), ia * p % mod);
      for (const auto& b : AllOf(*ring)) {
        const uint64_t ib = ToInteger(b, p);
        EXPECT_EQ(ToInteger(WittAdd(a, b), p), (ia + ib) % mod);
        EXPECT_EQ(ToInteger(WittMul(a, b), p), ia * ib % mod);
      }
    }
    EXPECT_EQ(seen.size(), mod);
  }
}

TEST(WittArithmeticTest, RingAxiomsExhaustive) {
  for (auto [p, n] : std::vector<std::pair<uint32_t, size_t>>{{2, 3}, {3, 2}}) {
    const auto ring = WittRingFor(FpAlgebra::Parse(p, "x"), n);
    const auto all = AllOf(*ring);
    for (const auto& a : all) {
      EXPECT_EQ(WittAdd(a, WittNeg(a)), ring->Zero());
      for (const auto& b : all) {
        EXPECT_EQ(WittAdd(a, b), WittAdd(b, a));
        EXPECT_EQ(WittMul(a, b), WittMul(b, a));
        for (const auto& c : all) {
          EXPECT_EQ(WittAdd(WittAdd(a, b), c), WittAdd(a, WittAdd(b, c)));
          EXPECT_EQ(WittMul(WittMul(a, b), c), WittMul(a, WittMul(b, c)));
          EXPECT_EQ(WittMul(a, WittAdd(b, c)), WittAdd(WittMul(a, b), WittMul(a, c)));
        }
      }
    }
  }
}

TEST(WittArithmeticTest, FastAddAgreesWithPolynomialAdd) {
  for (auto [p, f, n] : std::vector<std::tuple<uint32_t, const char*, size_t>>{
           {2, "x^2+x+1", 3}, {2, "t^2", 3}, {3, "x^2+1", 2}, {3, "t^2", 2}, {2, "x", 5}}) {
    const auto ring = WittRingFor(FpAlgebra::Parse(p, f), n);
    for (uint64_t a = 0; a < ring->size(); ++a)
      for (uint64_t b = 0; b < ring->size(); ++b)
        ASSERT_EQ(ring->FastAddIds(a, b), ring->AddIds(a, b)) << f << " n=" << n;
  }
}

TEST(WittArithmeticTest, EncodeDecodeRoundTrip) {
  const auto ring = WittRingFor(FpAlgebra::Parse(3, "t^2"), 2);
  for (uint64_t id = 0; id < ring->size(); ++id) {
    EXPECT_EQ(ring->Encode(ring->Decode(id)), id);
    EXPECT_EQ(ring->IdOf(ring->CoordsOf(id)), id);
  }
  EXPECT_EQ(ring->Encode(ring->Zero()), 0u);
}

TEST(TeichmullerTest, Examples) {
  auto f2 = FpAlgebra::Parse(2, "x");
  EXPECT_EQ(Teichmuller(f2->One(), 3), WittRingFor(f2, 3)->One());
  EXPECT_EQ(Teichmuller(f2->Zero(), 3), WittRingFor(f2, 3)->Zero());
}

TEST(TeichmullerTest, MultiplicativeOnW2F4) {
  auto k = FpAlgebra::Parse(2, "x^2+x+1");
  for (const auto& a : k->Enumerate())
    for (const auto& b : k->Enumerate())
      EXPECT_EQ(WittMul(Teichmuller(a, 2), Teichmuller(b, 2)), Teichmuller(AlgMul(a, b), 2));
}

TEST(FrobVerschTest, MixedExamples) {
  auto f2 = FpAlgebra::Parse(2, "x");
  const auto w3 = WittRingFor(f2, 3);
  const auto w2 = WittRingFor(f2, 2);
  const auto w1 = WittRingFor(f2, 1);
  EXPECT_EQ(FrobMixed(w3->Make({f2->One(), f2->One(), f2->Zero()})), w2->Make({f2->One(), f2->One()}));
  EXPECT_EQ(FrobMixed(w3->Zero()), w2->Zero());
  EXPECT_THROW(FrobMixed(w1->One()), DomainError);
  EXPECT_EQ(VerschMixed(w1->One()), w2->Make({f2->Zero(), f2->One()}));
  for (const auto& x : AllOf(*w3)) EXPECT_EQ(FrobMixed(x), Restrict(x));
}

TEST(FrobVerschTest, PrimeFieldFrobeniusIsIdentityAndVIsTimesP) {
  for (uint32_t p : {2u, 3u}) {
    auto k = FpAlgebra::Parse(p, "x");
    const auto w2 = WittRingFor(k, 2);
    for (const auto& x : AllOf(*w2)) {
      EXPECT_EQ(FrobEndo(x), x);
      EXPECT_EQ(ToInteger(VerschMixed(x), p), ToInteger(x, p) * p);
    }
  }
}

TEST(FrobVerschTest, EndoExamples) {
  auto f4 = FpAlgebra::Parse(2, "x^2+x+1");
  const auto w2 = WittRingFor(f4, 2);
  EXPECT_EQ(FrobEndo(w2->Make({f4->Generator(), f4->Zero()})), w2->Make({f4->FromCoeffs({1, 1}), f4->Zero()}));
  EXPECT_EQ(FrobEndo(w2->One()), w2->One());

  auto f2 = FpAlgebra::Parse(2, "x");
  const auto v2 = WittRingFor(f2, 2);
  EXPECT_EQ(VerschEndo(v2->Make({f2->One(), f2->One()})), v2->Make({f2->Zero(), f2->One()}));
  const auto v1 = WittRingFor(f4, 1);
  for (const auto& x : AllOf(*v1)) EXPECT_EQ(VerschEndo(x), v1->Zero());
}

TEST(FrobVerschTest, VerschMixedInjectiveAndEndoKernel) {
  for (auto [p, f, n] : std::vector<std::tuple<uint32_t, const char*, size_t>>{
           {2, "x^2+x+1", 2}, {2, "t^2", 2}, {3, "x", 3}}) {
    auto k = FpAlgebra::Parse(p, f);
    const auto ring = WittRingFor(k, n);
    std::set<uint64_t> images;
    const auto up = WittRingFor(k, n + 1);
    for (const auto& x : AllOf(*ring)) {
      images.insert(up->Encode(VerschMixed(x)));
      bool in_kernel = VerschEndo(x) == ring->Zero();
      bool low_zero = true;
      for (size_t i = 0; i + 1 < n; ++i) low_zero = low_zero && x.coords[i] == k->Zero();
      EXPECT_EQ(in_kernel, low_zero);
    }
    EXPECT_EQ(images.size(), ring->size());
  }
}

TEST(FrobVerschTest, FrobEndoIsRingHomOnW2F4) {
  const auto ring = WittRingFor(FpAlgebra::Parse(2, "x^2+x+1"), 2);
  for (const auto& a : AllOf(*ring))
    for (const auto& b : AllOf(*ring)) {
      EXPECT_EQ(FrobEndo(WittAdd(a, b)), WittAdd(FrobEndo(a), FrobEndo(b)));
      EXPECT_EQ(FrobEndo(WittMul(a, b)), WittMul(FrobEndo(a), FrobEndo(b)));
    }
}

TEST(FrobVerschTest, ProjectionFormulaEndo) {
  for (const char* f : {"x", "x^2+x+1"}) {
    const auto ring = WittRingFor(FpAlgebra::Parse(2, f), 2);
    for (const auto& x : AllOf(*ring))
      for (const auto& y : AllOf(*ring))
        EXPECT_EQ(VerschEndo(WittMul(FrobEndo(x), y)), WittMul(x, VerschEndo(y)));
  }
}

TEST(FrobVerschTest, MulPIsVFAndFVInBothModels) {
  for (auto [p, f] : std::vector<std::pair<uint32_t, const char*>>{
           {2, "x"}, {3, "x"}, {2, "x^2+x+1"}, {2, "t^2"}, {3, "t^2"}, {3, "x^2+1"}}) {
    auto k = FpAlgebra::Parse(p, f);
    for (size_t n = 1; n <= 3; ++n) {
      const auto ring = WittRingFor(k, n);
      if (ring->size() > 1000) continue;
      for (const auto& x : AllOf(*ring)) {
        const WittVector px = MulP(x);
        EXPECT_EQ(px, VerschEndo(FrobEndo(x)));
        EXPECT_EQ(px, FrobEndo(VerschEndo(x)));
        // Mixed: V: W_n -> W_{n+1} then F: W_{n+1} -> W_n.
        EXPECT_EQ(px, FrobMixed(VerschMixed(x)));
      }
      if (n >= 2)
        for (const auto& x : AllOf(*ring)) EXPECT_EQ(VerschMixed(FrobMixed(x)), MulP(x)) << f;
    }
  }
}

TEST(RestrictTest, RingHomCommutingWithFrobAndMulP) {
  for (auto [p, f] : std::vector<std::pair<uint32_t, const char*>>{{2, "x"}, {2, "x^2+x+1"}, {2, "t^2"}, {3, "x"}}) {
    auto k = FpAlgebra::Parse(p, f);
    for (size_t n = 1; n <= 3; ++n) {
      const auto ring = WittRingFor(k, n + 1);
      if (ring->size() > 256) continue;
      for (const auto& a : AllOf(*ring)) {
        EXPECT_EQ(Restrict(FrobEndo(a)), FrobEndo(Restrict(a)));
        EXPECT_EQ(Restrict(MulP(a)), MulP(Restrict(a)));
        for (const auto& b : AllOf(*ring)) {
          EXPECT_EQ(Restrict(WittAdd(a, b)), WittAdd(Restrict(a), Restrict(b)));
          EXPECT_EQ(Restrict(WittMul(a, b)), WittMul(Restrict(a), Restrict(b)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace wittperv
