#pragma once

// Universal Witt structure polynomials and truncated p-typical Witt rings
// W_n(k) over finite F_p-algebras.
//
// Variable layout for all universal polynomials: X_i is variable 2i and
// Y_i is variable 2i+1. Unary polynomials (negation, Frobenius) only use
// the X variables. With this layout the i-th structure polynomial does not
// depend on the truncation length, so one cache entry per (op, p) serves
// every length.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wittperv/basering.hpp"
#include "wittperv/intpoly.hpp"

namespace wittperv {

enum class WittOp { kSum, kProduct, kNegation };

constexpr size_t XVar(size_t i) { return 2 * i; }
constexpr size_t YVar(size_t i) { return 2 * i + 1; }
// "X0", "Y3", ...
std::string WittVariableName(size_t var);

// w_i(X) = sum_{j<=i} p^j X_j^{p^{i-j}}.
IntPoly GhostPoly(size_t i, uint32_t p);
// w_i evaluated on arbitrary polynomial components.
IntPoly GhostOf(const std::vector<IntPoly>& components, size_t i, uint32_t p);

// S_0..S_{n-1} (resp. P, N) from the ghost recursion. Cached and safe to
// call concurrently. An inexact division aborts with InvariantViolation.
std::vector<IntPoly> StructurePolys(WittOp op, size_t n, uint32_t p);

// F_0..F_{n-1} with w_i(F) = w_{i+1}(X); F_i involves X_0..X_{i+1}.
std::vector<IntPoly> FrobeniusPolys(size_t n, uint32_t p);

struct WittVector {
  AlgebraPtr base;
  std::vector<AlgElement> coords;

  size_t length() const { return coords.size(); }
  bool operator==(const WittVector& other) const { return coords == other.coords; }
  bool operator!=(const WittVector& other) const { return !(*this == other); }
};

std::string FormatWitt(const WittVector& x);

// W_n(k). Elements have ids numbered lexicographically on the coordinate
// sequence with x_0 most significant, so the zero vector has id 0.
class WittRing {
 public:
  static constexpr size_t kMaxLength = 12;
  using Coords = std::array<uint32_t, kMaxLength>;

  WittRing(AlgebraPtr k, size_t length);

  const AlgebraPtr& base() const { return base_; }
  size_t length() const { return length_; }
  uint32_t prime() const { return base_->prime(); }
  uint64_t size() const { return size_; }
  const AlgebraTables& tables() const { return *tables_; }

  WittVector Zero() const;
  WittVector One() const;
  WittVector Make(std::vector<AlgElement> coords) const;
  WittVector Teichmuller(const AlgElement& a) const;

  // Structure-polynomial evaluation.
  WittVector Add(const WittVector& a, const WittVector& b) const;
  WittVector Mul(const WittVector& a, const WittVector& b) const;
  WittVector Neg(const WittVector& a) const;
  // a added to itself p times.
  WittVector MulP(const WittVector& a) const;

  uint64_t Encode(const WittVector& x) const;
  WittVector Decode(uint64_t id) const;
  Coords CoordsOf(uint64_t id) const;
  uint64_t IdOf(const Coords& coords) const;

  uint64_t AddIds(uint64_t a, uint64_t b) const;
  uint64_t MulIds(uint64_t a, uint64_t b) const;
  uint64_t NegIds(uint64_t a) const;

  // Addition through Teichmuller carries: x + y = x + sum_i V^i[y_i], with
  // [a] + [b] tabulated once from the sum polynomials. Agrees with AddIds
  // and is much cheaper for bulk enumeration.
  uint64_t FastAddIds(uint64_t a, uint64_t b) const;

 private:
  void CheckMember(const WittVector& x) const;
  template <typename Polys>
  uint64_t EvalBinary(const Polys& polys, uint64_t a, uint64_t b) const;
  // z + [b] on a suffix of length len, written in place.
  void AddTeichmullerInPlace(uint32_t* z, size_t len, uint32_t b) const;
  void AddInPlace(uint32_t* x, const uint32_t* y, size_t len) const;

  AlgebraPtr base_;
  size_t length_;
  uint64_t size_;
  std::shared_ptr<const AlgebraTables> tables_;
  std::vector<ModPPoly> sum_;
  std::vector<ModPPoly> prod_;
  std::vector<ModPPoly> neg_;
  // teich_sum_[a * |k| + b] holds the coordinates of [a] + [b].
  std::vector<Coords> teich_sum_;
};

// Shared ring instance for (k, n); rings are cached per algebra value.
std::shared_ptr<const WittRing> WittRingFor(const AlgebraPtr& k, size_t length);

WittVector WittAdd(const WittVector& a, const WittVector& b);
WittVector WittMul(const WittVector& a, const WittVector& b);
WittVector WittNeg(const WittVector& a);
WittVector Teichmuller(const AlgElement& a, size_t length);
WittVector MulP(const WittVector& x);

// (x_0, ..., x_n) -> (x_0^p, ..., x_{n-1}^p); length must be >= 2.
WittVector FrobMixed(const WittVector& x);
// (x_0, ..., x_{n-1}) -> (x_0^p, ..., x_{n-1}^p).
WittVector FrobEndo(const WittVector& x);
// (x_0, ..., x_{n-1}) -> (0, x_0, ..., x_{n-1}).
WittVector VerschMixed(const WittVector& x);
// (x_0, ..., x_{n-1}) -> (0, x_0, ..., x_{n-2}).
WittVector VerschEndo(const WittVector& x);
// Drops the top coordinate: W_{n+1} -> W_n; length must be >= 2.
WittVector Restrict(const WittVector& x);

}  // namespace wittperv
