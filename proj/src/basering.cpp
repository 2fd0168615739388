#include "wittperv/basering.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

constexpr uint64_t kMaxAlgebraSize = uint64_t{1} << 31;
constexpr uint32_t kMaxTabulatedSize = 1024;

const FpAlgebra& ParentOf(const AlgElement& a) {
  if (!a.parent) throw DomainError("algebra element without parent");
  return *a.parent;
}

const FpAlgebra& CommonParent(const AlgElement& a, const AlgElement& b) {
  const FpAlgebra& k = ParentOf(a);
  if (!(k == ParentOf(b))) {
    throw DomainError("algebra elements from different parents: F_" + std::to_string(k.prime()) +
                      "[" + std::string(1, k.variable()) + "]/(" + k.ModulusString() + ") vs F_" +
                      std::to_string(b.parent->prime()) + "[" +
                      std::string(1, b.parent->variable()) + "]/(" +
                      b.parent->ModulusString() + ")");
  }
  return k;
}

// Reduces an ascending integer polynomial mod p and mod the monic f.
std::vector<uint32_t> Reduce(std::vector<uint64_t> poly, const std::vector<uint32_t>& f,
                             uint32_t p) {
  const size_t d = f.size() - 1;
  for (auto& c : poly) c %= p;
  for (size_t top = poly.size(); top-- > d;) {
    const uint64_t c = poly[top];
    if (c == 0) continue;
    // Subtract c·x^(top-d)·f; f is monic so the top term vanishes.
    for (size_t i = 0; i <= d; ++i) {
      const size_t idx = top - d + i;
      poly[idx] = (poly[idx] + (p - c) * f[i]) % p;
    }
  }
  std::vector<uint32_t> out(d, 0);
  for (size_t i = 0; i < d && i < poly.size(); ++i) out[i] = static_cast<uint32_t>(poly[i]);
  return out;
}

}  // namespace

bool AlgElement::operator==(const AlgElement& other) const {
  if (coeffs != other.coeffs) return false;
  if (parent == other.parent) return true;
  if (!parent || !other.parent) return false;
  return *parent == *other.parent;
}

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<int64_t> ParseModulus(std::string_view text, char* variable) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty modulus polynomial");

  char var = 0;
  std::vector<int64_t> coeffs;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw DomainError("cannot parse modulus \"" + std::string(text) + "\": " + why);
  };
  while (i < s.size()) {
    int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-' at position " + std::to_string(i));
    }
    if (i >= s.size()) fail("dangling sign");

    bool has_coeff = false;
    int64_t coeff = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = coeff * 10 + (s[i] - '0');
      has_coeff = true;
      ++i;
      if (coeff > (int64_t{1} << 40)) fail("coefficient too large");
    }
    if (i < s.size() && s[i] == '*') {
      if (!has_coeff) fail("'*' without coefficient");
      ++i;
    }
    size_t exponent = 0;
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      if (var != 0 && var != s[i]) fail("more than one variable letter");
      var = s[i];
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t e = 0;
        bool any = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + static_cast<size_t>(s[i] - '0');
          any = true;
          ++i;
          if (e > 64) fail("exponent too large");
        }
        if (!any) fail("missing exponent after '^'");
        exponent = e;
      }
    } else if (!has_coeff) {
      fail("empty term");
    }
    if (!has_coeff) coeff = 1;
    if (coeffs.size() <= exponent) coeffs.resize(exponent + 1, 0);
    coeffs[exponent] += sign * coeff;
  }
  if (variable != nullptr) *variable = var == 0 ? 'x' : var;
  return coeffs;
}

FpAlgebra::FpAlgebra(uint32_t p, std::vector<uint32_t> modulus, char variable)
    : p_(p), modulus_(std::move(modulus)), variable_(variable) {
  uint64_t size = 1;
  for (size_t i = 0; i < degree(); ++i) {
    size *= p_;
    if (size > kMaxAlgebraSize) throw ResourceError("algebra too large to enumerate");
  }
  size_ = static_cast<uint32_t>(size);
}

AlgebraPtr FpAlgebra::Create(uint32_t p, const std::vector<int64_t>& modulus, char variable) {
  if (!IsPrime(p)) throw DomainError(std::to_string(p) + " is not prime");
  std::vector<uint32_t> f;
  f.reserve(modulus.size());
  for (int64_t c : modulus) {
    const int64_t r = ((c % static_cast<int64_t>(p)) + p) % p;
    f.push_back(static_cast<uint32_t>(r));
  }
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() < 2) throw DomainError("modulus must have degree >= 1 mod p");
  if (f.back() != 1) throw DomainError("modulus must be monic");
  return AlgebraPtr(new FpAlgebra(p, std::move(f), variable));
}

AlgebraPtr FpAlgebra::Parse(uint32_t p, std::string_view modulus) {
  char var = 'x';
  const auto coeffs = ParseModulus(modulus, &var);
  return Create(p, coeffs, var);
}

std::string FpAlgebra::ModulusString() const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = modulus_.size(); i-- > 0;) {
    const uint32_t coeff = modulus_[i];
    if (coeff == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << coeff;
      continue;
    }
    if (coeff != 1) out << coeff;
    out << variable_;
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

AlgElement FpAlgebra::Zero() const { return AlgElement{Self(), std::vector<uint32_t>(degree(), 0)}; }

AlgElement FpAlgebra::One() const {
  AlgElement e = Zero();
  e.coeffs[0] = 1;
  return e;
}

AlgElement FpAlgebra::Generator() const { return FromCoeffs({0, 1}); }

AlgElement FpAlgebra::FromCoeffs(const std::vector<int64_t>& coeffs) const {
  std::vector<uint64_t> poly;
  poly.reserve(coeffs.size());
  for (int64_t c : coeffs) {
    poly.push_back(static_cast<uint64_t>(((c % static_cast<int64_t>(p_)) + p_) % p_));
  }
  return AlgElement{Self(), Reduce(std::move(poly), modulus_, p_)};
}

AlgElement FpAlgebra::FromId(uint32_t id) const {
  if (id >= size_) throw DomainError("algebra element id out of range");
  AlgElement e = Zero();
  for (size_t i = degree(); i-- > 0;) {
    e.coeffs[i] = id % p_;
    id /= p_;
  }
  return e;
}

uint32_t FpAlgebra::IdOf(const AlgElement& a) const {
  if (!a.parent || !(*a.parent == *this)) throw DomainError("element does not belong to algebra");
  uint32_t id = 0;
  for (uint32_t c : a.coeffs) id = id * p_ + c;
  return id;
}

std::vector<AlgElement> FpAlgebra::Enumerate() const {
  std::vector<AlgElement> out;
  out.reserve(size_);
  for (uint32_t id = 0; id < size_; ++id) out.push_back(FromId(id));
  return out;
}

std::string FpAlgebra::Format(const AlgElement& a) const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = a.coeffs.size(); i-- > 0;) {
    const uint32_t c = a.coeffs[i];
    if (c == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << c;
      continue;
    }
    if (c != 1) out << c;
    out << variable_;
    if (i > 1) out << '^' << i;
  }
  if (first) out << '0';
  return out.str();
}

AlgElement AlgAdd(const AlgElement& a, const AlgElement& b) {
  const FpAlgebra& k = CommonParent(a, b);
  AlgElement out = a;
  for (size_t i = 0; i < out.coeffs.size(); ++i) {
    out.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % k.prime();
  }
  return out;
}

AlgElement AlgNeg(const AlgElement& a) {
  const FpAlgebra& k = ParentOf(a);
  AlgElement out = a;
  for (auto& c : out.coeffs) c = (k.prime() - c) % k.prime();
  return out;
}

AlgElement AlgSub(const AlgElement& a, const AlgElement& b) { return AlgAdd(a, AlgNeg(b)); }

AlgElement AlgMul(const AlgElement& a, const AlgElement& b) {
  const FpAlgebra& k = CommonParent(a, b);
  const uint64_t p = k.prime();
  std::vector<uint64_t> prod(a.coeffs.size() + b.coeffs.size(), 0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      prod[i + j] = (prod[i + j] + uint64_t{a.coeffs[i]} * b.coeffs[j]) % p;
    }
  }
  return AlgElement{a.parent, Reduce(std::move(prod), k.modulus(), k.prime())};
}

AlgElement AlgPow(const AlgElement& a, uint64_t e) {
  AlgElement result = ParentOf(a).One();
  result.parent = a.parent;
  AlgElement base = a;
  while (e > 0) {
    if (e & 1) result = AlgMul(result, base);
    e >>= 1;
    if (e > 0) base = AlgMul(base, base);
  }
  return result;
}

AlgElement Frobenius(const AlgElement& a) { return AlgPow(a, ParentOf(a).prime()); }

bool IsPerfect(const FpAlgebra& k) {
  std::vector<bool> hit(k.size(), false);
  for (const auto& a : k.Enumerate()) {
    const uint32_t id = k.IdOf(Frobenius(a));
    if (hit[id]) return false;
    hit[id] = true;
  }
  return true;
}

std::vector<AlgElement> PNilpotents(const FpAlgebra& k) {
  std::vector<AlgElement> out;
  for (const auto& a : k.Enumerate()) {
    const AlgElement fa = Frobenius(a);
    if (std::all_of(fa.coeffs.begin(), fa.coeffs.end(), [](uint32_t c) { return c == 0; })) {
      out.push_back(a);
    }
  }
  return out;
}

AlgebraTables::AlgebraTables(const FpAlgebra& k) : size_(k.size()), p_(k.prime()) {
  if (size_ > kMaxTabulatedSize) {
    throw ResourceError("algebra of size " + std::to_string(size_) + " exceeds table cap " +
                        std::to_string(kMaxTabulatedSize));
  }
  const auto elems = k.Enumerate();
  one_ = k.IdOf(k.One());
  add_.resize(size_t{size_} * size_);
  mul_.resize(size_t{size_} * size_);
  neg_.resize(size_);
  frob_.resize(size_);
  scalar_.resize(size_t{p_} * size_);
  for (uint32_t a = 0; a < size_; ++a) {
    neg_[a] = k.IdOf(AlgNeg(elems[a]));
    frob_[a] = k.IdOf(wittperv::Frobenius(elems[a]));
    for (uint32_t b = 0; b < size_; ++b) {
      add_[size_t{a} * size_ + b] = k.IdOf(AlgAdd(elems[a], elems[b]));
      mul_[size_t{a} * size_ + b] = k.IdOf(AlgMul(elems[a], elems[b]));
    }
  }
  for (uint32_t c = 0; c < p_; ++c) {
    const uint32_t cid = k.IdOf(k.FromCoeffs({static_cast<int64_t>(c)}));
    for (uint32_t a = 0; a < size_; ++a) scalar_[size_t{c} * size_ + a] = Mul(cid, a);
  }
}

uint32_t AlgebraTables::Pow(uint32_t a, uint64_t e) const {
  uint32_t result = one_;
  uint32_t base = a;
  while (e > 0) {
    if (e & 1) result = Mul(result, base);
    e >>= 1;
    if (e > 0) base = Mul(base, base);
  }
  return result;
}

uint32_t AlgebraTables::ScalarMul(uint32_t c, uint32_t a) const {
  return scalar_[size_t{c % p_} * size_ + a];
}

}  // namespace wittperv
