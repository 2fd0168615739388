#include "wittperv/witt.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

mpz_class PowerOf(uint32_t p, uint64_t e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

uint64_t SmallPow(uint64_t base, uint64_t e) {
  uint64_t out = 1;
  for (uint64_t i = 0; i < e; ++i) out *= base;
  return out;
}

std::vector<IntPoly> XVariables(size_t n) {
  std::vector<IntPoly> out;
  for (size_t i = 0; i < n; ++i) out.push_back(IntPoly::Variable(XVar(i)));
  return out;
}

std::vector<IntPoly> YVariables(size_t n) {
  std::vector<IntPoly> out;
  for (size_t i = 0; i < n; ++i) out.push_back(IntPoly::Variable(YVar(i)));
  return out;
}

// sum_{j<k} p^j comps[j]^{p^{k-j}}
IntPoly GhostPrefix(const std::vector<IntPoly>& comps, size_t k, uint32_t p) {
  IntPoly out;
  for (size_t j = 0; j < k; ++j) {
    out += comps[j].Pow(SmallPow(p, k - j)) * PowerOf(p, j);
  }
  return out;
}

struct PolyCache {
  std::mutex mu;
  std::map<std::pair<int, uint32_t>, std::vector<IntPoly>> entries;
};

PolyCache& Cache() {
  static PolyCache cache;
  return cache;
}

// Cache slot -1 holds the Frobenius polynomials.
constexpr int kFrobeniusSlot = -1;

void ExtendStructure(WittOp op, uint32_t p, std::vector<IntPoly>& polys, size_t n) {
  for (size_t k = polys.size(); k < n; ++k) {
    const auto xs = XVariables(k + 1);
    IntPoly target;
    switch (op) {
      case WittOp::kSum:
        target = GhostOf(xs, k, p) + GhostOf(YVariables(k + 1), k, p);
        break;
      case WittOp::kProduct:
        target = GhostOf(xs, k, p) * GhostOf(YVariables(k + 1), k, p);
        break;
      case WittOp::kNegation:
        target = -GhostOf(xs, k, p);
        break;
    }
    IntPoly rest = target - GhostPrefix(polys, k, p);
    polys.push_back(rest.ExactDiv(PowerOf(p, k)));
  }
}

void ExtendFrobenius(uint32_t p, std::vector<IntPoly>& polys, size_t n) {
  for (size_t k = polys.size(); k < n; ++k) {
    const IntPoly target = GhostOf(XVariables(k + 2), k + 1, p);
    IntPoly rest = target - GhostPrefix(polys, k, p);
    polys.push_back(rest.ExactDiv(PowerOf(p, k)));
  }
}

const FpAlgebra& BaseOf(const WittVector& x) {
  if (!x.base) throw DomainError("Witt vector without base algebra");
  return *x.base;
}

}  // namespace

std::string WittVariableName(size_t var) {
  return std::string(var % 2 == 0 ? "X" : "Y") + std::to_string(var / 2);
}

IntPoly GhostOf(const std::vector<IntPoly>& components, size_t i, uint32_t p) {
  if (components.size() <= i) throw DomainError("ghost component needs i+1 inputs");
  return GhostPrefix(components, i, p) + components[i] * PowerOf(p, i);
}

IntPoly GhostPoly(size_t i, uint32_t p) { return GhostOf(XVariables(i + 1), i, p); }

std::vector<IntPoly> StructurePolys(WittOp op, size_t n, uint32_t p) {
  if (n == 0) throw DomainError("structure polynomials need n >= 1");
  if (!IsPrime(p)) throw DomainError(std::to_string(p) + " is not prime");
  PolyCache& cache = Cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto& polys = cache.entries[{static_cast<int>(op), p}];
  ExtendStructure(op, p, polys, n);
  return std::vector<IntPoly>(polys.begin(), polys.begin() + static_cast<std::ptrdiff_t>(n));
}

std::vector<IntPoly> FrobeniusPolys(size_t n, uint32_t p) {
  if (n == 0) throw DomainError("Frobenius polynomials need n >= 1");
  if (!IsPrime(p)) throw DomainError(std::to_string(p) + " is not prime");
  PolyCache& cache = Cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto& polys = cache.entries[{kFrobeniusSlot, p}];
  ExtendFrobenius(p, polys, n);
  return std::vector<IntPoly>(polys.begin(), polys.begin() + static_cast<std::ptrdiff_t>(n));
}

std::string FormatWitt(const WittVector& x) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < x.coords.size(); ++i) {
    if (i) out << ",";
    out << BaseOf(x).Format(x.coords[i]);
  }
  out << ")";
  return out.str();
}

WittRing::WittRing(AlgebraPtr k, size_t length) : base_(std::move(k)), length_(length) {
  if (!base_) throw DomainError("Witt ring needs a base algebra");
  if (length_ == 0 || length_ > kMaxLength) {
    throw DomainError("Witt length must be in [1, " + std::to_string(kMaxLength) + "]");
  }
  size_ = 1;
  for (size_t i = 0; i < length_; ++i) {
    size_ *= base_->size();
    if (size_ > (uint64_t{1} << 31)) throw ResourceError("W_n(k) too large to enumerate");
  }
  tables_ = std::make_shared<AlgebraTables>(*base_);
  const uint32_t p = base_->prime();
  for (const auto& poly : StructurePolys(WittOp::kSum, length_, p)) sum_.emplace_back(poly, p);
  for (const auto& poly : StructurePolys(WittOp::kProduct, length_, p)) {
    prod_.emplace_back(poly, p);
  }
  for (const auto& poly : StructurePolys(WittOp::kNegation, length_, p)) {
    neg_.emplace_back(poly, p);
  }

  const uint32_t q = base_->size();
  teich_sum_.resize(size_t{q} * q);
  std::array<uint32_t, 2 * kMaxLength> values{};
  for (uint32_t a = 0; a < q; ++a) {
    for (uint32_t b = 0; b < q; ++b) {
      values.fill(0);
      values[XVar(0)] = a;
      values[YVar(0)] = b;
      Coords& out = teich_sum_[size_t{a} * q + b];
      out.fill(0);
      for (size_t i = 0; i < length_; ++i) out[i] = sum_[i].Evaluate(*tables_, values);
    }
  }
}

void WittRing::CheckMember(const WittVector& x) const {
  if (!(BaseOf(x) == *base_)) throw DomainError("Witt vector over a different base algebra");
  if (x.length() != length_) {
    throw DomainError("Witt vector of length " + std::to_string(x.length()) +
                      " used in W_" + std::to_string(length_));
  }
}

WittVector WittRing::Zero() const {
  return WittVector{base_, std::vector<AlgElement>(length_, base_->Zero())};
}

WittVector WittRing::One() const { return Teichmuller(base_->One()); }

WittVector WittRing::Make(std::vector<AlgElement> coords) const {
  WittVector x{base_, std::move(coords)};
  CheckMember(x);
  for (const auto& c : x.coords) {
    if (!c.parent || !(*c.parent == *base_)) throw DomainError("coordinate from another algebra");
  }
  return x;
}

WittVector WittRing::Teichmuller(const AlgElement& a) const {
  if (!a.parent || !(*a.parent == *base_)) throw DomainError("coordinate from another algebra");
  WittVector x = Zero();
  x.coords[0] = a;
  return x;
}

uint64_t WittRing::IdOf(const Coords& coords) const {
  uint64_t id = 0;
  for (size_t i = 0; i < length_; ++i) id = id * base_->size() + coords[i];
  return id;
}

WittRing::Coords WittRing::CoordsOf(uint64_t id) const {
  Coords c{};
  for (size_t i = length_; i-- > 0;) {
    c[i] = static_cast<uint32_t>(id % base_->size());
    id /= base_->size();
  }
  return c;
}

uint64_t WittRing::Encode(const WittVector& x) const {
  CheckMember(x);
  Coords c{};
  for (size_t i = 0; i < length_; ++i) c[i] = base_->IdOf(x.coords[i]);
  return IdOf(c);
}

WittVector WittRing::Decode(uint64_t id) const {
  if (id >= size_) throw DomainError("Witt vector id out of range");
  const Coords c = CoordsOf(id);
  WittVector x = Zero();
  for (size_t i = 0; i < length_; ++i) x.coords[i] = base_->FromId(c[i]);
  return x;
}

template <typename Polys>
uint64_t WittRing::EvalBinary(const Polys& polys, uint64_t a, uint64_t b) const {
  const Coords ca = CoordsOf(a);
  const Coords cb = CoordsOf(b);
  std::array<uint32_t, 2 * kMaxLength> values{};
  for (size_t i = 0; i < length_; ++i) {
    values[XVar(i)] = ca[i];
    values[YVar(i)] = cb[i];
  }
  Coords out{};
  for (size_t i = 0; i < length_; ++i) out[i] = polys[i].Evaluate(*tables_, values);
  return IdOf(out);
}

uint64_t WittRing::AddIds(uint64_t a, uint64_t b) const { return EvalBinary(sum_, a, b); }
uint64_t WittRing::MulIds(uint64_t a, uint64_t b) const { return EvalBinary(prod_, a, b); }
uint64_t WittRing::NegIds(uint64_t a) const { return EvalBinary(neg_, a, 0); }

void WittRing::AddTeichmullerInPlace(uint32_t* z, size_t len, uint32_t b) const {
  if (b == 0) return;
  const Coords& s = teich_sum_[size_t{z[0]} * base_->size() + b];
  z[0] = s[0];
  if (len > 1) AddInPlace(z + 1, s.data() + 1, len - 1);
}

void WittRing::AddInPlace(uint32_t* x, const uint32_t* y, size_t len) const {
  for (size_t i = 0; i < len; ++i) {
    if (y[i] != 0) AddTeichmullerInPlace(x + i, len - i, y[i]);
  }
}

uint64_t WittRing::FastAddIds(uint64_t a, uint64_t b) const {
  Coords x = CoordsOf(a);
  const Coords y = CoordsOf(b);
  AddInPlace(x.data(), y.data(), length_);
  return IdOf(x);
}

WittVector WittRing::Add(const WittVector& a, const WittVector& b) const {
  return Decode(AddIds(Encode(a), Encode(b)));
}

WittVector WittRing::Mul(const WittVector& a, const WittVector& b) const {
  return Decode(MulIds(Encode(a), Encode(b)));
}

WittVector WittRing::Neg(const WittVector& a) const { return Decode(NegIds(Encode(a))); }

WittVector WittRing::MulP(const WittVector& a) const {
  const uint64_t x = Encode(a);
  uint64_t acc = 0;
  for (uint32_t i = 0; i < prime(); ++i) acc = AddIds(acc, x);
  return Decode(acc);
}

std::shared_ptr<const WittRing> WittRingFor(const AlgebraPtr& k, size_t length) {
  if (!k) throw DomainError("Witt ring needs a base algebra");
  using Key = std::tuple<uint32_t, std::vector<uint32_t>, char, size_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const WittRing>> rings;
  const Key key{k->prime(), k->modulus(), k->variable(), length};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = rings.find(key);
    if (it != rings.end()) return it->second;
  }
  // Built outside the lock; a racing duplicate is discarded.
  auto ring = std::make_shared<const WittRing>(k, length);
  std::lock_guard<std::mutex> lock(mu);
  auto it = rings.emplace(key, std::move(ring)).first;
  return it->second;
}

namespace {

const WittRing& CommonRing(const WittVector& a, const WittVector& b,
                           std::shared_ptr<const WittRing>& holder) {
  if (!(BaseOf(a) == BaseOf(b))) throw DomainError("Witt vectors over different base algebras");
  if (a.length() != b.length()) {
    throw DomainError("Witt vectors of different lengths " + std::to_string(a.length()) +
                      " and " + std::to_string(b.length()));
  }
  holder = WittRingFor(a.base, a.length());
  return *holder;
}

}  // namespace

WittVector WittAdd(const WittVector& a, const WittVector& b) {
  std::shared_ptr<const WittRing> ring;
  return CommonRing(a, b, ring).Add(a, b);
}

WittVector WittMul(const WittVector& a, const WittVector& b) {
  std::shared_ptr<const WittRing> ring;
  return CommonRing(a, b, ring).Mul(a, b);
}

WittVector WittNeg(const WittVector& a) { return WittRingFor(a.base, a.length())->Neg(a); }

WittVector Teichmuller(const AlgElement& a, size_t length) {
  if (!a.parent) throw DomainError("algebra element without parent");
  return WittRingFor(a.parent, length)->Teichmuller(a);
}

WittVector MulP(const WittVector& x) { return WittRingFor(x.base, x.length())->MulP(x); }

WittVector FrobMixed(const WittVector& x) {
  BaseOf(x);
  if (x.length() < 2) throw DomainError("frob_mixed needs length >= 2 (no target level 0)");
  WittVector out{x.base, {}};
  for (size_t i = 0; i + 1 < x.length(); ++i) out.coords.push_back(Frobenius(x.coords[i]));
  return out;
}

WittVector FrobEndo(const WittVector& x) {
  BaseOf(x);
  WittVector out{x.base, {}};
  for (const auto& c : x.coords) out.coords.push_back(Frobenius(c));
  return out;
}

WittVector VerschMixed(const WittVector& x) {
  WittVector out{x.base, {BaseOf(x).Zero()}};
  out.coords.insert(out.coords.end(), x.coords.begin(), x.coords.end());
  return out;
}

WittVector VerschEndo(const WittVector& x) {
  WittVector out = VerschMixed(x);
  out.coords.pop_back();
  return out;
}

WittVector Restrict(const WittVector& x) {
  BaseOf(x);
  if (x.length() < 2) throw DomainError("restriction needs length >= 2");
  WittVector out = x;
  out.coords.pop_back();
  return out;
}

}  // namespace wittperv
