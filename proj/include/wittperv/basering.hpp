#pragma once

// Finite commutative F_p-algebras k = F_p[x]/(f).

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace wittperv {

class FpAlgebra;
using AlgebraPtr = std::shared_ptr<const FpAlgebra>;

// An element of F_p[x]/(f): exactly deg(f) residues, ascending powers of x.
struct AlgElement {
  AlgebraPtr parent;
  std::vector<uint32_t> coeffs;

  bool operator==(const AlgElement& other) const;
  bool operator!=(const AlgElement& other) const { return !(*this == other); }
};

class FpAlgebra : public std::enable_shared_from_this<FpAlgebra> {
 public:
  // `modulus` is the ascending coefficient sequence of f. Coefficients are
  // reduced into [0, p); f must be monic of degree >= 1 and p must be prime.
  static AlgebraPtr Create(uint32_t p, const std::vector<int64_t>& modulus, char variable = 'x');
  // Parses strings such as "x^2+x+1" or "t^2" (see ParseModulus).
  static AlgebraPtr Parse(uint32_t p, std::string_view modulus);

  uint32_t prime() const { return p_; }
  size_t degree() const { return modulus_.size() - 1; }
  // p^degree.
  uint32_t size() const { return size_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  char variable() const { return variable_; }
  std::string ModulusString() const;

  AlgElement Zero() const;
  AlgElement One() const;
  // The class of the variable itself.
  AlgElement Generator() const;
  AlgElement FromCoeffs(const std::vector<int64_t>& coeffs) const;

  // Elements are numbered lexicographically on their coefficient sequence
  // (constant term most significant), so 0 has id 0.
  AlgElement FromId(uint32_t id) const;
  uint32_t IdOf(const AlgElement& a) const;
  std::vector<AlgElement> Enumerate() const;

  std::string Format(const AlgElement& a) const;

  bool operator==(const FpAlgebra& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

 private:
  FpAlgebra(uint32_t p, std::vector<uint32_t> modulus, char variable);
  AlgebraPtr Self() const { return shared_from_this(); }

  uint32_t p_;
  std::vector<uint32_t> modulus_;
  char variable_;
  uint32_t size_;
};

// Parses a single-variable polynomial with integer coefficients into an
// ascending coefficient sequence. Terms may appear in any order and
// coefficients are optional; the variable letter is reported through
// `variable` (defaults to 'x' for constant input).
std::vector<int64_t> ParseModulus(std::string_view text, char* variable = nullptr);

bool IsPrime(uint64_t n);

AlgElement AlgAdd(const AlgElement& a, const AlgElement& b);
AlgElement AlgSub(const AlgElement& a, const AlgElement& b);
AlgElement AlgMul(const AlgElement& a, const AlgElement& b);
AlgElement AlgNeg(const AlgElement& a);
AlgElement AlgPow(const AlgElement& a, uint64_t e);

// a^p.
AlgElement Frobenius(const AlgElement& a);

// True iff the Frobenius is a bijection of k.
bool IsPerfect(const FpAlgebra& k);

// { r : r^p = 0 }, in enumeration order.
std::vector<AlgElement> PNilpotents(const FpAlgebra& k);

// Dense id-indexed arithmetic for the hot loops of Witt vector evaluation.
class AlgebraTables {
 public:
  explicit AlgebraTables(const FpAlgebra& k);

  uint32_t size() const { return size_; }
  uint32_t prime() const { return p_; }
  uint32_t Add(uint32_t a, uint32_t b) const { return add_[a * size_ + b]; }
  uint32_t Mul(uint32_t a, uint32_t b) const { return mul_[a * size_ + b]; }
  uint32_t Neg(uint32_t a) const { return neg_[a]; }
  uint32_t Pow(uint32_t a, uint64_t e) const;
  // Adds the residue c (as an element of F_p inside k) times a.
  uint32_t ScalarMul(uint32_t c, uint32_t a) const;
  uint32_t Frobenius(uint32_t a) const { return frob_[a]; }
  uint32_t one() const { return one_; }

 private:
  uint32_t size_;
  uint32_t p_;
  uint32_t one_;
  std::vector<uint32_t> add_;
  std::vector<uint32_t> mul_;
  std::vector<uint32_t> neg_;
  std::vector<uint32_t> frob_;
  std::vector<uint32_t> scalar_;  // scalar_[c * size + a] = c·a
};

}  // namespace wittperv
