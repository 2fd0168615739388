#pragma once

// Bounded cochain complexes of finite abelian p-groups, chain maps, cones,
// cohomology and the long exact sequence of a short exact sequence of
// complexes with its element-chase connecting maps.

#include <map>
#include <string>
#include <vector>

#include "wittperv/abgrp.hpp"
#include "wittperv/verdict.hpp"

namespace wittperv {

class Cochain {
 public:
  // objects[i] sits in degree start + i; differentials[i] goes from degree
  // start + i to start + i + 1. Checks composability and d∘d = 0.
  Cochain(uint32_t p, int start, std::vector<GroupPtr> objects,
          std::vector<GroupHom> differentials);

  static Cochain Zero(uint32_t p);
  // source -> target in degrees (start, start + 1).
  static Cochain TwoTerm(const GroupHom& f, int start);

  uint32_t prime() const { return p_; }
  int start() const { return start_; }
  // Last degree carrying an object; start() - 1 for the empty complex.
  int end() const { return start_ + static_cast<int>(objects_.size()) - 1; }
  // Trivial outside [start, end]; the same pointer on every call.
  const GroupPtr& Object(int degree) const;
  // d^degree: degree -> degree + 1; zero maps outside the stored range.
  GroupHom Differential(int degree) const;
  bool IsZero() const;

 private:
  uint32_t p_;
  int start_;
  std::vector<GroupPtr> objects_;
  std::vector<GroupHom> differentials_;
  GroupPtr trivial_;
};

// X[k]: degree i holds X^{i+k}, differentials multiplied by (-1)^k.
Cochain Shift(const Cochain& x, int k);

class ChainMap {
 public:
  // components[i] sits in degree lo + i; missing degrees are zero maps.
  // Checks that every square with the differentials commutes.
  ChainMap(Cochain source, Cochain target, int lo, std::vector<GroupHom> components);

  const Cochain& source() const { return source_; }
  const Cochain& target() const { return target_; }
  GroupHom Component(int degree) const;

 private:
  Cochain source_;
  Cochain target_;
  int lo_;
  std::vector<GroupHom> components_;
};

ChainMap ComposeChainMaps(const ChainMap& after, const ChainMap& before);

// Mapping cone of f: X -> Y. Degree i holds X^{i+1} + Y^i (pair ids as in
// FinAbGroup::DirectSum) with d(x, y) = (-d x, f(x) + d y).
struct MappingCone {
  Cochain cone;
  // Y -> Cone(f), y |-> (0, y).
  ChainMap inclusion;
  // Cone(f) -> X[1], (x, y) |-> x.
  ChainMap projection;
};
MappingCone Cone(const ChainMap& f);

struct CohomologyGroup {
  int degree;
  Subgroup cycles;
  Quotient classes;

  const GroupPtr& group() const { return classes.group; }
  uint64_t order() const { return classes.group->order(); }
  // Class of a cycle given by its id in the complex; DomainError otherwise.
  Elem ClassOf(Elem cycle) const;
  bool IsCycle(Elem x) const { return cycles.LocalId(x).has_value(); }
  // Minimal cycle in the class.
  Elem Representative(Elem cls) const;
};

CohomologyGroup Cohomology(const Cochain& c, int degree);
std::map<int, CohomologyGroup> AllCohomology(const Cochain& c);
bool IsAcyclic(const Cochain& c);

// H^degree(f): [z] |-> [f(z)].
GroupHom InducedOnCohomology(const ChainMap& f, const CohomologyGroup& h_source,
                             const CohomologyGroup& h_target);

// 0 -> A -i-> B -q-> C -> 0, degreewise exact.
struct ShortExactSequence {
  ChainMap i;
  ChainMap q;
};

// Throws DomainError naming the first degree where exactness fails.
void CheckShortExact(const ShortExactSequence& ses);

// delta: H^degree(C) -> H^{degree+1}(A) by element chase: lift a cycle of C
// to B, apply d, pull back along i. Every lift of every cycle is tried and
// must give the same class; otherwise InvariantViolation with the witness.
GroupHom ConnectingHom(const ShortExactSequence& ses, const CohomologyGroup& h_c,
                       const CohomologyGroup& h_a);

struct LongExactSequence {
  // terms[0] and terms.back() are zero objects.
  std::vector<GroupPtr> terms;
  std::vector<std::string> labels;
  // maps[j]: terms[j] -> terms[j + 1].
  std::vector<GroupHom> maps;
  // exactness[j] at terms[j]; entries 0 and back() are trivially pass.
  std::vector<Verdict> exactness;

  bool AllExact() const;
  // Index of the term with the given label, or -1.
  int Find(const std::string& label) const;
};

// The cohomology sequence ... H^d(A) -> H^d(B) -> H^d(C) -> H^{d+1}(A) ...
// over every degree where any complex is nonzero, with labels "H^d(A)" etc.
LongExactSequence BuildLongExactSequence(const ShortExactSequence& ses,
                                         const std::string& name_a = "A",
                                         const std::string& name_b = "B",
                                         const std::string& name_c = "C");

// Checks that h: X^i -> Y^{i-1} satisfies f = d h + h d in every degree.
Verdict CheckNullhomotopy(const ChainMap& f, int lo, const std::vector<GroupHom>& h);

}  // namespace wittperv
