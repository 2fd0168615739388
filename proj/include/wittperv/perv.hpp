#pragma once

// Diagrams Phi <-> Psi (v: Phi -> Psi, u: Psi -> Phi) with 1 - vu
// invertible, their morphisms, the functors j^*, j_!, j_*, i^*, i^!, the
// two standard triangles and the ring / module axiom checkers.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wittperv/abgrp.hpp"
#include "wittperv/cochain.hpp"
#include "wittperv/verdict.hpp"

namespace wittperv {

using BinaryOp = std::function<Elem(Elem, Elem)>;

// Multiplications on Phi (B_0) and Psi (B_1).
struct RingStructure {
  BinaryOp mul_phi;
  BinaryOp mul_psi;
  Elem one_phi = 0;
  Elem one_psi = 0;
};

// Actions B_0 x N_0 -> N_0 and B_1 x N_1 -> N_1 of a ring object B.
struct ModuleStructure {
  BinaryOp act_phi;
  BinaryOp act_psi;
};

struct PervObj {
  GroupPtr phi;
  GroupPtr psi;
  GroupHom u;  // Psi -> Phi
  GroupHom v;  // Phi -> Psi
  std::optional<RingStructure> ring;
  std::optional<ModuleStructure> module;
  std::string label;
};

struct ValidationReport {
  Verdict inv;              // 1 - vu bijective on Psi
  Verdict inv_prime;        // 1 - uv bijective on Phi
  Verdict witness_inverse;  // (1 - uv)^{-1} = 1 + u (1 - vu)^{-1} v

  bool ok() const { return inv.passed() && inv_prime.passed() && witness_inverse.passed(); }
};

ValidationReport Validate(const PervObj& m);
// Checks shapes and runs Validate; throws DomainError with the witness if
// the diagram is not an object.
PervObj MakePerv(GroupPtr phi, GroupPtr psi, GroupHom u, GroupHom v, std::string label = "");
PervObj ZeroPerv(uint32_t p);
// (Psi, Phi, v, u): swaps the roles of the two maps.
PervObj Transpose(const PervObj& m);
GroupHom MonodromyPsi(const PervObj& m);  // 1 - vu
GroupHom MonodromyPhi(const PervObj& m);  // 1 - uv

struct LocObj {
  GroupPtr psi;
  GroupHom t;
};

// Throws DomainError unless t is a bijection of psi.
LocObj MakeLoc(GroupPtr psi, GroupHom t);

struct PervMor {
  PervObj source;
  PervObj target;
  GroupHom f_phi;
  GroupHom f_psi;
};

// Both squares f_psi v = v' f_phi and f_phi u = u' f_psi.
Verdict CheckSquares(const PervObj& source, const PervObj& target, const GroupHom& f_phi,
                     const GroupHom& f_psi);
// Throws DomainError if a square fails.
PervMor MakePervMor(PervObj source, PervObj target, GroupHom f_phi, GroupHom f_psi);
PervMor IdentityMor(const PervObj& m);
PervMor ZeroMor(const PervObj& source, const PervObj& target);

// Gamma_c = (Phi -v-> Psi) in degrees 0, 1; Gamma = (Psi -u-> Phi) in
// degrees -1, 0.
Cochain GammaC(const PervObj& m);
Cochain Gamma(const PervObj& m);
inline Cochain IShriek(const PervObj& m) { return GammaC(m); }
inline Cochain IStar(const PervObj& m) { return Gamma(m); }
// Gamma_c / Gamma applied to a morphism.
ChainMap GammaCMor(const PervMor& f);
ChainMap GammaMor(const PervMor& f);

LocObj JPull(const PervObj& m);
PervObj JShriek(const LocObj& l);     // (Psi, Psi, 1, 1 - T)
PervObj JLowerStar(const LocObj& l);  // (Psi, Psi, 1 - T, 1)
// j_! j^* M -> M, (u, 1).
PervMor CounitJ(const PervObj& m);
// M -> j_* j^* M, (v, 1).
PervMor UnitJ(const PervObj& m);

struct AdjunctionReport {
  uint64_t left_perv_homs = 0;   // |Hom(j_! L, M)|
  uint64_t left_loc_homs = 0;    // |Hom(L, j^* M)|
  uint64_t right_perv_homs = 0;  // |Hom(M, j_* L)|
  uint64_t right_loc_homs = 0;   // |Hom(j^* M, L)|
  Verdict left;
  Verdict right;

  bool ok() const { return left.passed() && right.passed(); }
};

std::vector<GroupHom> LocHoms(const LocObj& a, const LocObj& b, uint64_t cap = kDefaultHomCap);
std::vector<PervMor> PervHoms(const PervObj& a, const PervObj& b, uint64_t cap = kDefaultHomCap);
// Both hom-sets are enumerated and the restriction map (f_phi, f_psi) |->
// f_psi is checked to be a bijection. ResourceError above the cap.
AdjunctionReport AdjunctionCheck(const LocObj& l, const PervObj& m, uint64_t cap = kDefaultHomCap);

// Componentwise complexes of a diagram with chain maps u and v.
struct DiscComplex {
  Cochain phi_cplx;
  Cochain psi_cplx;
  ChainMap u_chain;  // psi -> phi
  ChainMap v_chain;  // phi -> psi
};

struct DiscCone {
  DiscComplex cone;
  MappingCone phi;
  MappingCone psi;
};

// Componentwise mapping cones of f_phi and f_psi (objects placed in degree
// 0) with the chain maps induced by u and v.
DiscCone ConeOf(const PervMor& f);

struct TriangleReport {
  std::string name;
  Verdict nullhomotopy;  // composite of the two maps, canonical homotopy
  Verdict third_term;    // cone cohomology against the third term
  Verdict long_exact;    // cohomology sequences of both components
  bool ok() const { return nullhomotopy.passed() && third_term.passed() && long_exact.passed(); }
};

// i_! i^! M -> M -> j_* j^* M and j_! j^* M -> M -> i_* i^* M.
std::vector<TriangleReport> StdTriangles(const PervObj& m);

struct CheckEntry {
  std::string name;
  Verdict verdict;
};
using CheckReport = std::vector<CheckEntry>;

// (i) ring axioms on Phi and Psi, (ii) u multiplicative and unital,
// (iii) v(u(y) x) = y v(x).
CheckReport RingObjectCheck(const PervObj& b);
// (iv) module axioms, (v) u(a x) = u(a) u(x), (vi) literal
// v(b y) = v(b) v(y), (vi') v(u(a) y) = a v(y).
CheckReport ModuleObjectCheck(const PervObj& b, const PervObj& n);

}  // namespace wittperv
