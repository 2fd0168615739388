#pragma once

// Sparse multivariate polynomials with arbitrary-precision integer
// coefficients. Variables are plain indices; exponent vectors are stored
// without trailing zeros so a polynomial does not depend on how many
// variables the caller has in mind.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace wittperv {

class IntPoly {
 public:
  using Exponents = std::vector<uint32_t>;
  using Terms = std::map<Exponents, mpz_class>;

  IntPoly() = default;
  static IntPoly Constant(const mpz_class& c);
  static IntPoly Variable(size_t index);
  static IntPoly Monomial(const mpz_class& c, Exponents exponents);

  const Terms& terms() const { return terms_; }
  bool IsZero() const { return terms_.empty(); }
  size_t NumTerms() const { return terms_.size(); }
  // One past the largest variable index that occurs.
  size_t NumVariables() const;
  uint64_t TotalDegree() const;
  mpz_class Coefficient(const Exponents& exponents) const;

  IntPoly& operator+=(const IntPoly& other);
  IntPoly& operator-=(const IntPoly& other);
  IntPoly& operator*=(const mpz_class& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator-(IntPoly a) { return a *= -1; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }
  bool operator==(const IntPoly& other) const { return terms_ == other.terms_; }
  bool operator!=(const IntPoly& other) const { return !(*this == other); }

  IntPoly Pow(uint64_t e) const;

  // Divides every coefficient by d; throws InvariantViolation naming the
  // offending monomial if some coefficient is not divisible.
  IntPoly ExactDiv(const mpz_class& d) const;

  // Coefficients reduced into [0, m), zero terms dropped.
  IntPoly ReduceMod(const mpz_class& m) const;

  // Replaces variable i by values[i]; variables beyond values.size() are
  // not allowed.
  IntPoly Substitute(const std::vector<IntPoly>& values) const;

  std::string ToString(const std::function<std::string(size_t)>& name) const;

 private:
  void AddTerm(const Exponents& exponents, const mpz_class& c);

  Terms terms_;
};

// Polynomial reduced mod p, compiled for fast evaluation on id-encoded
// elements of a finite F_p-algebra.
class ModPPoly {
 public:
  struct Factor {
    uint32_t variable;
    uint32_t exponent;
  };
  struct Term {
    uint32_t coeff;  // in [1, p)
    std::vector<Factor> factors;
  };

  ModPPoly() = default;
  ModPPoly(const IntPoly& poly, uint32_t p);

  const std::vector<Term>& terms() const { return terms_; }
  size_t NumVariables() const { return num_vars_; }

  // `values[i]` is the id of the algebra element substituted for variable i.
  template <typename Tables, typename Values>
  uint32_t Evaluate(const Tables& k, const Values& values) const {
    uint32_t acc = 0;
    for (const auto& term : terms_) {
      uint32_t prod = k.one();
      for (const auto& f : term.factors) {
        prod = k.Mul(prod, k.Pow(values[f.variable], f.exponent));
        if (prod == 0) break;
      }
      if (prod != 0) acc = k.Add(acc, k.ScalarMul(term.coeff, prod));
    }
    return acc;
  }

 private:
  std::vector<Term> terms_;
  size_t num_vars_ = 0;
};

}  // namespace wittperv
