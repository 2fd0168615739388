#pragma once

// Named diagrams: M(A,b)_{m,n} and its modules, the Witt sheaves W and W^∨,
// Dieudonné-module sheaves, and level towers standing in for inverse
// limits.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wittperv/abgrp.hpp"
#include "wittperv/basering.hpp"
#include "wittperv/perv.hpp"
#include "wittperv/witt.hpp"

namespace wittperv {

constexpr uint64_t kDefaultCarrierCap = 4096;

enum class QuotBase { kIntegers, kPolyFp };

// A = Z with b = p, or A = F_p[t] with b = t.
struct QuotRingSpec {
  QuotBase base;
  uint32_t p;

  std::string Name() const;  // "Z" / "F_2[t]"
  std::string BName() const;  // "2" / "t"
};

// A/(b^e). Element ids: the integer residue for Z, and c_0 + c_1 p + ...
// for c_0 + c_1 t + ... in F_p[t]/(t^e). In both cases multiplication by
// b^m is id·p^m mod p^e and reduction to A/(b^{e'}) is id mod p^{e'}.
class QuotRing {
 public:
  QuotRing(QuotRingSpec spec, uint32_t exponent, uint64_t cap = kDefaultCarrierCap);

  const QuotRingSpec& spec() const { return spec_; }
  uint32_t exponent() const { return exponent_; }
  const GroupPtr& group() const { return group_; }
  uint64_t size() const { return group_->order(); }
  Elem One() const { return size() > 1 ? 1 : 0; }
  Elem Mul(Elem a, Elem b) const;
  // b^m · x.
  Elem MulB(uint32_t m, Elem x) const;
  std::string Name(Elem x) const;

 private:
  QuotRingSpec spec_;
  uint32_t exponent_;
  GroupPtr group_;
};

// Phi = A/(b^n), Psi = A/(b^{n+m}), v = b^m, u = projection, with both
// ring structures. m = 0 is rejected (1 - vu = 0).
PervObj MakeMAb(const QuotRingSpec& spec, uint32_t m, uint32_t n,
                uint64_t cap = kDefaultCarrierCap);
// N = A^rank: (N/b^n N, N/b^{n+m} N; b^m, projection) with the action of
// MakeMAb(spec, m, n) componentwise.
PervObj MakeMAbModule(const QuotRingSpec& spec, uint32_t rank, uint32_t m, uint32_t n,
                      uint64_t cap = kDefaultCarrierCap);

struct ProGroup {
  // levels[i] is level i + 1; transitions[i]: levels[i + 1] -> levels[i].
  std::vector<GroupPtr> levels;
  std::vector<GroupHom> transitions;
};

struct ProPerv {
  std::vector<PervObj> levels;
  std::vector<PervMor> transitions;
};

// Levelwise maps commuting with the transitions.
struct ProMap {
  ProGroup source;
  ProGroup target;
  std::vector<GroupHom> maps;
};

// Throws DomainError at the first non-commuting level.
void CheckProMap(const ProMap& f);
ProGroup ProKernel(const ProMap& f);
ProGroup ProCokernel(const ProMap& f);

enum class PervSelector { kVU, kV, kU, kIdentity };
ProGroup PhiTower(const ProPerv& t);
ProGroup PsiTower(const ProPerv& t);
// vu and identity act on Psi; v: Phi -> Psi; u: Psi -> Phi.
ProMap SelectMap(const ProPerv& t, PervSelector s);
ProGroup ProKernel(const ProPerv& t, PervSelector s);
ProGroup ProCokernel(const ProPerv& t, PervSelector s);

// Some composite of at most `window` consecutive transitions vanishes at
// every level where it is defined. Requires 1 <= window <= levels - 1.
bool IsProZero(const ProGroup& t, size_t window);
// Every transition is surjective.
bool IsMittagLefflerSurjective(const ProGroup& t);
// For every level n, the images of all deeper levels m >= n + 1 in level n
// coincide within the computed levels. Needs at least three levels to say
// anything; DomainError otherwise.
bool HasStableImages(const ProGroup& t);

struct MAbTower {
  ProPerv tower;
  // Per level: j^* of the level equals (A/(b^{n+m}), 1 - b^m) on the nose.
  std::vector<Verdict> monodromy_matches;
};

// Levels M(A,b)_{m,n}, n = 1..n_max, with (projection, projection)
// transitions.
MAbTower TowerMAb(const QuotRingSpec& spec, uint32_t m, uint32_t n_max,
                  uint64_t cap = kDefaultCarrierCap);

struct CandidateVerdict {
  std::string name;
  Verdict verdict;
};

struct CommutingCandidate {
  uint32_t i;  // b^i on Phi
  uint32_t j;  // b^j then projection on Psi
  bool phi_zero;
};

struct MDirectionSearch {
  std::vector<CandidateVerdict> named;
  // All pairs (i, j) with i, j <= n + m whose maps commute with both
  // squares and are not the zero morphism.
  std::vector<CommutingCandidate> nonzero_commuting;

  // No commuting candidate acts nontrivially on Phi.
  bool NoneNonzeroOnPhi() const;
};

// Candidate maps M(A,b)_{m,n} -> M(A,b)_{m-1,n} for m >= 2.
MDirectionSearch SearchMDirection(const QuotRingSpec& spec, uint32_t m, uint32_t n,
                                  uint64_t cap = kDefaultCarrierCap);

// The additive group of k, ids as in FpAlgebra.
GroupPtr AdditiveGroup(const AlgebraPtr& k);

// Memoized Witt groups W_n(k) and the standard maps between them. Groups
// are shared per level, so maps built here compose. Not thread safe.
class WittFamily {
 public:
  explicit WittFamily(AlgebraPtr k, uint64_t cap = kDefaultCarrierCap);

  const AlgebraPtr& base() const { return k_; }
  uint64_t cap() const { return cap_; }
  const GroupPtr& Group(size_t n);
  std::shared_ptr<const WittRing> Ring(size_t n) const { return WittRingFor(k_, n); }
  const GroupPtr& Additive();

  GroupHom FrobMixed(size_t n);    // W_{n+1} -> W_n
  GroupHom VerschMixed(size_t n);  // W_n -> W_{n+1}
  GroupHom FrobEndo(size_t n);     // W_n -> W_n
  GroupHom VerschEndo(size_t n);   // W_n -> W_n
  GroupHom MulP(size_t n);         // W_n -> W_n
  GroupHom Restrict(size_t n);     // W_{n+1} -> W_n
  GroupHom X0(size_t n);           // W_n -> k, x |-> x_0
  RingStructure RingOn(size_t phi_level, size_t psi_level) const;

 private:
  GroupHom Cached(const std::string& key, const std::function<GroupHom()>& make);

  AlgebraPtr k_;
  uint64_t cap_;
  std::map<size_t, GroupPtr> groups_;
  GroupPtr additive_;
  std::map<std::string, GroupHom> homs_;
};

enum class WittModel { kEndo, kMixed };
std::string ModelName(WittModel m);

// W (dual = false): v = V, u = F. W^∨ (dual = true): v = F, u = V.
// Endo: Phi = Psi = W_n. Mixed: W has Phi = W_n, Psi = W_{n+1}; W^∨ has
// Phi = W_{n+1}, Psi = W_n.
PervObj MakeWittSheaf(WittFamily& fam, size_t n, WittModel model, bool dual);
PervObj MakeWittSheaf(const AlgebraPtr& k, size_t n, WittModel model, bool dual,
                      uint64_t cap = kDefaultCarrierCap);

// Levels n = 1..n_max with restriction transitions.
ProPerv WittSheafTower(WittFamily& fam, size_t n_max, WittModel model, bool dual);
// W_1(k) <- W_2(k) <- ... with restriction.
ProGroup WittTower(WittFamily& fam, size_t n_max);

struct DieudonneModule {
  GroupPtr m;
  GroupHom f;
  GroupHom v;
};

enum class Variation { kV, kF };

// Throws DomainError naming x if V(F(x)) != p x. Variation V gives
// (M, M, u = F, v = V); variation F swaps the two operators.
PervObj MakeDieudonneSheaf(const DieudonneModule& d, Variation variation = Variation::kV);

}  // namespace wittperv
