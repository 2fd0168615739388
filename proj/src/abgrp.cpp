#include "wittperv/abgrp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "wittperv/basering.hpp"
#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();
constexpr uint64_t kMaxOrder = uint64_t{1} << 32;

// Returns e with p^e = n, or nullopt if n is not a power of p.
std::optional<uint32_t> LogP(uint64_t n, uint32_t p) {
  uint32_t e = 0;
  while (n > 1) {
    if (n % p != 0) return std::nullopt;
    n /= p;
    ++e;
  }
  return n == 1 ? std::optional<uint32_t>(e) : std::nullopt;
}

uint64_t Mod(int64_t c, uint64_t m) {
  int64_t r = c % static_cast<int64_t>(m);
  return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(m) : r);
}

std::vector<uint64_t> Weights(const std::vector<uint64_t>& orders) {
  std::vector<uint64_t> w(orders.size());
  uint64_t acc = 1;
  for (size_t i = 0; i < orders.size(); ++i) {
    w[i] = acc;
    acc *= orders[i];
  }
  return w;
}

std::string DescribeGroup(const FinAbGroup& g) {
  return g.label().empty() ? "group of order " + std::to_string(g.order()) : g.label();
}

}  // namespace

GroupPtr FinAbGroup::FromOperation(uint32_t p, uint64_t order, const AddFn& add, std::string label,
                                   NameFn namer) {
  if (!IsPrime(p)) throw DomainError("group prime " + std::to_string(p) + " is not prime");
  if (order == 0 || order >= kMaxOrder) {
    throw DomainError("carrier size " + std::to_string(order) + " out of range");
  }
  if (!LogP(order, p)) {
    throw DomainError("carrier size " + std::to_string(order) + " is not a power of " +
                      std::to_string(p) + "; not a p-group");
  }
  const auto n = static_cast<uint32_t>(order);
  for (uint32_t x = 0; x < n; ++x) {
    if (add(0, x) != x || add(x, 0) != x) {
      throw DomainError("id 0 is not an identity element: fails at " + std::to_string(x));
    }
  }

  auto scale = [&](uint64_t c, Elem x) {
    Elem acc = 0;
    Elem base = x;
    while (c > 0) {
      if (c & 1) acc = add(acc, base);
      c >>= 1;
      if (c > 0) base = add(base, base);
    }
    return acc;
  };

  // radix[x] is the packed coordinate vector of x in the span found so far.
  std::vector<uint32_t> radix(n, kNone);
  std::vector<Elem> elems{0};
  radix[0] = 0;
  std::vector<uint64_t> orders;
  std::vector<Elem> basis;

  while (elems.size() < n) {
    const uint64_t max_possible = n / elems.size();
    Elem best = 0;
    uint64_t best_order = 0;
    for (Elem x = 0; x < n && best_order < max_possible; ++x) {
      if (radix[x] != kNone) continue;
      uint64_t ord = 1;
      Elem y = x;
      while (radix[y] == kNone) {
        y = scale(p, y);
        ord *= p;
        if (ord > max_possible) {
          throw DomainError("element " + std::to_string(x) +
                            " has no finite order modulo the span; operation is not a group law");
        }
      }
      if (ord > best_order) {
        best = x;
        best_order = ord;
      }
    }
    // Lift best to an element of the same order: p^e·best = sum c_i g_i with
    // p^e | c_i, then subtract (c_i / p^e)·g_i.
    uint64_t r = radix[scale(best_order, best)];
    Elem lifted = best;
    for (size_t i = 0; i < basis.size(); ++i) {
      const uint64_t c = r % orders[i];
      r /= orders[i];
      if (c % best_order != 0) {
        throw DomainError("element " + std::to_string(best) +
                          " cannot be lifted to a complement; operation is not an abelian group law");
      }
      const uint64_t q = c / best_order;
      if (q != 0) lifted = add(lifted, scale(orders[i] - q, basis[i]));
    }
    if (scale(best_order, lifted) != 0) {
      throw DomainError("lifted element " + std::to_string(lifted) +
                        " has the wrong order; operation is not an abelian group law");
    }
    const size_t h = elems.size();
    elems.reserve(h * best_order);
    Elem step = lifted;
    for (uint64_t c = 1; c < best_order; ++c) {
      for (size_t j = 0; j < h; ++j) {
        const Elem z = add(elems[j], step);
        if (z >= n || radix[z] != kNone) {
          throw DomainError("sum of " + std::to_string(elems[j]) + " and " + std::to_string(step) +
                            " collides; operation is not a group law");
        }
        radix[z] = static_cast<uint32_t>(c * h + j);
        elems.push_back(z);
      }
      step = add(step, lifted);
    }
    basis.push_back(lifted);
    orders.push_back(best_order);
  }

  auto g = std::shared_ptr<FinAbGroup>(new FinAbGroup());
  g->kind_ = Kind::kTable;
  g->p_ = p;
  g->order_ = order;
  g->label_ = std::move(label);
  g->namer_ = std::move(namer);
  g->basis_orders_ = std::move(orders);
  g->radix_weights_ = Weights(g->basis_orders_);
  g->radix_of_ = std::move(radix);
  g->from_radix_ = std::move(elems);
  return g;
}

GroupPtr FinAbGroup::Trivial(uint32_t p) {
  // One shared instance per prime so that zero objects compare equal.
  static std::mutex mu;
  static std::map<uint32_t, GroupPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = Cyclic(p, 0, "0");
  return slot;
}

GroupPtr FinAbGroup::Cyclic(uint32_t p, uint32_t exponent, std::string label) {
  if (!IsPrime(p)) throw DomainError("group prime " + std::to_string(p) + " is not prime");
  uint64_t n = 1;
  for (uint32_t i = 0; i < exponent; ++i) {
    n *= p;
    if (n >= kMaxOrder) throw DomainError("cyclic group too large");
  }
  auto g = std::shared_ptr<FinAbGroup>(new FinAbGroup());
  g->kind_ = Kind::kStandard;
  g->p_ = p;
  g->order_ = n;
  g->label_ = label.empty() ? (n == 1 ? "0" : "Z/" + std::to_string(n)) : std::move(label);
  if (n > 1) g->basis_orders_ = {n};
  g->radix_weights_ = Weights(g->basis_orders_);
  return g;
}

GroupPtr FinAbGroup::FromCyclicOrders(const std::vector<uint64_t>& orders, std::string label,
                                      NameFn namer) {
  uint32_t p = 0;
  uint64_t total = 1;
  std::vector<uint64_t> kept;
  for (uint64_t o : orders) {
    if (o == 0) throw DomainError("cyclic order 0 is not finite");
    if (o == 1) continue;
    uint32_t q = 2;
    while (o % q != 0) ++q;
    if (p == 0) p = q;
    if (q != p || !LogP(o, p)) {
      throw DomainError("cyclic order " + std::to_string(o) + " is not a power of " +
                        std::to_string(p) + "; not a p-group");
    }
    total *= o;
    if (total >= kMaxOrder) throw DomainError("group too large");
    kept.push_back(o);
  }
  auto g = std::shared_ptr<FinAbGroup>(new FinAbGroup());
  g->kind_ = Kind::kStandard;
  g->p_ = p == 0 ? 2 : p;
  g->order_ = total;
  if (label.empty()) {
    if (kept.empty()) {
      label = "0";
    } else {
      for (size_t i = 0; i < kept.size(); ++i) {
        label += (i ? "+" : "") + std::string("Z/") + std::to_string(kept[i]);
      }
    }
  }
  g->label_ = std::move(label);
  g->namer_ = std::move(namer);
  // Ids keep the caller's factor order; trivial factors contribute nothing.
  g->basis_orders_ = std::move(kept);
  g->radix_weights_ = Weights(g->basis_orders_);
  return g;
}

GroupPtr FinAbGroup::DirectSum(GroupPtr a, GroupPtr b, std::string label) {
  if (a->prime() != b->prime() && a->order() > 1 && b->order() > 1) {
    throw DomainError("direct sum of groups for different primes");
  }
  const uint64_t total = a->order() * b->order();
  if (total >= kMaxOrder) throw DomainError("direct sum too large: " + std::to_string(total));
  auto g = std::shared_ptr<FinAbGroup>(new FinAbGroup());
  g->kind_ = Kind::kSum;
  g->p_ = a->order() > 1 ? a->prime() : b->prime();
  g->order_ = total;
  g->label_ = label.empty() ? "(" + a->label() + ")+(" + b->label() + ")" : std::move(label);
  g->basis_orders_ = a->basis_orders();
  g->basis_orders_.insert(g->basis_orders_.end(), b->basis_orders().begin(),
                          b->basis_orders().end());
  if (g->basis_orders_.size() > kMaxRank) throw DomainError("direct sum rank too large");
  g->radix_weights_ = Weights(g->basis_orders_);
  g->a_ = std::move(a);
  g->b_ = std::move(b);
  return g;
}

std::string FinAbGroup::Name(Elem x) const {
  if (namer_) return namer_(x);
  if (kind_ == Kind::kSum) {
    auto [a, b] = Split(x);
    return "(" + a_->Name(a) + "," + b_->Name(b) + ")";
  }
  return std::to_string(x);
}

uint64_t FinAbGroup::RadixAdd(uint64_t r1, uint64_t r2) const {
  uint64_t out = 0;
  for (size_t i = 0; i < basis_orders_.size(); ++i) {
    const uint64_t o = basis_orders_[i];
    const uint64_t d = r1 % o + r2 % o;
    out += (d >= o ? d - o : d) * radix_weights_[i];
    r1 /= o;
    r2 /= o;
  }
  return out;
}

uint64_t FinAbGroup::RadixScale(int64_t c, uint64_t r) const {
  uint64_t out = 0;
  for (size_t i = 0; i < basis_orders_.size(); ++i) {
    const uint64_t o = basis_orders_[i];
    const uint64_t cm = Mod(c, o);
    out += static_cast<uint64_t>((static_cast<unsigned __int128>(cm) * (r % o)) % o) *
           radix_weights_[i];
    r /= o;
  }
  return out;
}

Elem FinAbGroup::Add(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::kStandard:
      return static_cast<Elem>(RadixAdd(a, b));
    case Kind::kTable:
      return from_radix_[RadixAdd(radix_of_[a], radix_of_[b])];
    case Kind::kSum: {
      const uint64_t na = a_->order();
      return static_cast<Elem>(a_->Add(static_cast<Elem>(a % na), static_cast<Elem>(b % na)) +
                               na * b_->Add(static_cast<Elem>(a / na), static_cast<Elem>(b / na)));
    }
  }
  return 0;
}

Elem FinAbGroup::Neg(Elem a) const { return Scale(-1, a); }

Elem FinAbGroup::Scale(int64_t c, Elem a) const {
  switch (kind_) {
    case Kind::kStandard:
      return static_cast<Elem>(RadixScale(c, a));
    case Kind::kTable:
      return from_radix_[RadixScale(c, radix_of_[a])];
    case Kind::kSum: {
      const uint64_t na = a_->order();
      return static_cast<Elem>(a_->Scale(c, static_cast<Elem>(a % na)) +
                               na * b_->Scale(c, static_cast<Elem>(a / na)));
    }
  }
  return 0;
}

uint64_t FinAbGroup::ElementOrder(Elem a) const {
  uint64_t ord = 1;
  while (a != 0) {
    a = Scale(p_, a);
    ord *= p_;
  }
  return ord;
}

Elem FinAbGroup::BasisElement(size_t i) const {
  if (i >= rank()) throw DomainError("basis index out of range");
  return FromRadix(radix_weights_[i]);
}

uint64_t FinAbGroup::RadixOf(Elem x) const {
  switch (kind_) {
    case Kind::kStandard:
      return x;
    case Kind::kTable:
      return radix_of_[x];
    case Kind::kSum: {
      const uint64_t na = a_->order();
      return a_->RadixOf(static_cast<Elem>(x % na)) + na * b_->RadixOf(static_cast<Elem>(x / na));
    }
  }
  return 0;
}

Elem FinAbGroup::FromRadix(uint64_t r) const {
  switch (kind_) {
    case Kind::kStandard:
      return static_cast<Elem>(r);
    case Kind::kTable:
      return from_radix_[r];
    case Kind::kSum: {
      const uint64_t na = a_->order();
      return static_cast<Elem>(a_->FromRadix(r % na) + na * b_->FromRadix(r / na));
    }
  }
  return 0;
}

FinAbGroup::Coords FinAbGroup::CoordinatesOf(Elem x) const {
  Coords c{};
  uint64_t r = RadixOf(x);
  for (size_t i = 0; i < basis_orders_.size(); ++i) {
    c[i] = r % basis_orders_[i];
    r /= basis_orders_[i];
  }
  return c;
}

Elem FinAbGroup::FromCoordinates(const Coords& c) const {
  uint64_t r = 0;
  for (size_t i = 0; i < basis_orders_.size(); ++i) r += (c[i] % basis_orders_[i]) * radix_weights_[i];
  return FromRadix(r);
}

Elem FinAbGroup::Pair(Elem a, Elem b) const {
  if (kind_ != Kind::kSum) throw DomainError("Pair on a group that is not a direct sum");
  return static_cast<Elem>(a + a_->order() * b);
}

std::pair<Elem, Elem> FinAbGroup::Split(Elem x) const {
  if (kind_ != Kind::kSum) throw DomainError("Split on a group that is not a direct sum");
  const uint64_t na = a_->order();
  return {static_cast<Elem>(x % na), static_cast<Elem>(x / na)};
}

std::vector<uint64_t> InvariantFactors(const FinAbGroup& g) {
  if (g.order() == 1) return {};
  const uint32_t p = g.prime();
  const auto exp_total = LogP(g.order(), p);
  if (!exp_total) throw DomainError("carrier is not a p-group");
  // counts[k] = |G[p^k]|, from the order of every element.
  std::vector<uint64_t> by_exponent(*exp_total + 1, 0);
  for (uint64_t x = 0; x < g.order(); ++x) {
    uint32_t e = 0;
    Elem y = static_cast<Elem>(x);
    while (y != 0) {
      y = g.Scale(p, y);
      ++e;
      if (e > *exp_total) throw DomainError("element of infinite order; not a p-group");
    }
    ++by_exponent[e];
  }
  std::vector<uint64_t> counts(by_exponent.size());
  std::partial_sum(by_exponent.begin(), by_exponent.end(), counts.begin());
  // log_p |G[p^k]| - log_p |G[p^{k-1}]| = number of factors of order >= p^k.
  std::vector<uint32_t> at_least(counts.size(), 0);
  for (size_t k = 1; k < counts.size(); ++k) {
    at_least[k] = *LogP(counts[k], p) - *LogP(counts[k - 1], p);
  }
  std::vector<uint64_t> factors;
  for (size_t k = counts.size() - 1; k >= 1; --k) {
    const uint32_t exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    uint64_t pk = 1;
    for (size_t i = 0; i < k; ++i) pk *= p;
    for (uint32_t i = 0; i < exactly; ++i) factors.push_back(pk);
  }
  return factors;
}

bool AreIsomorphic(const FinAbGroup& g, const FinAbGroup& h) {
  if (g.order() != h.order()) return false;
  if (g.order() == 1) return true;
  return g.prime() == h.prime() && InvariantFactors(g) == InvariantFactors(h);
}

std::string FormatFactors(const std::vector<uint64_t>& factors) {
  std::string out = "[";
  for (size_t i = 0; i < factors.size(); ++i) out += (i ? "," : "") + std::to_string(factors[i]);
  return out + "]";
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::make_shared<const std::vector<Elem>>(std::move(images))) {
  Validate();
}

GroupHom GroupHom::FromFunction(GroupPtr source, GroupPtr target,
                                const std::function<Elem(Elem)>& f) {
  std::vector<Elem> images(source->order());
  for (uint64_t x = 0; x < source->order(); ++x) images[x] = f(static_cast<Elem>(x));
  return GroupHom(std::move(source), std::move(target), std::move(images));
}

GroupHom GroupHom::Identity(GroupPtr g) {
  std::vector<Elem> images(g->order());
  std::iota(images.begin(), images.end(), Elem{0});
  return Trusted(g, g, std::move(images));
}

GroupHom GroupHom::Zero(GroupPtr source, GroupPtr target) {
  std::vector<Elem> images(source->order(), 0);
  return Trusted(std::move(source), std::move(target), std::move(images));
}

GroupHom GroupHom::Trusted(GroupPtr source, GroupPtr target, std::vector<Elem> images) {
  if (images.size() != source->order()) {
    throw DomainError("image table has " + std::to_string(images.size()) + " entries, source has " +
                      std::to_string(source->order()));
  }
  return GroupHom(std::move(source), std::move(target),
                  std::make_shared<const std::vector<Elem>>(std::move(images)));
}

void GroupHom::Validate() const {
  const FinAbGroup& s = *source_;
  const FinAbGroup& t = *target_;
  const auto& img = *images_;
  if (img.size() != s.order()) {
    throw DomainError("image table has " + std::to_string(img.size()) + " entries, source " +
                      DescribeGroup(s) + " has " + std::to_string(s.order()));
  }
  for (uint64_t x = 0; x < img.size(); ++x) {
    if (img[x] >= t.order()) {
      throw DomainError("image of " + s.Name(static_cast<Elem>(x)) + " is id " +
                        std::to_string(img[x]) + ", outside the target");
    }
  }
  if (img[0] != 0) throw DomainError("map sends zero to " + t.Name(img[0]) + "; not a homomorphism");
  std::vector<Elem> gens(s.rank());
  for (size_t i = 0; i < s.rank(); ++i) {
    gens[i] = img[s.BasisElement(i)];
    if (t.Scale(static_cast<int64_t>(s.basis_orders()[i]), gens[i]) != 0) {
      throw DomainError("generator " + s.Name(s.BasisElement(i)) + " of order " +
                        std::to_string(s.basis_orders()[i]) + " maps to " + t.Name(gens[i]) +
                        ", whose order does not divide it; not a homomorphism");
    }
  }
  // expected[r] is the linear extension at radix r, built from r minus the
  // weight of its lowest nonzero digit.
  std::vector<Elem> expected(s.order());
  expected[0] = 0;
  const auto& orders = s.basis_orders();
  for (uint64_t r = 1; r < s.order(); ++r) {
    size_t i = 0;
    uint64_t w = 1;
    uint64_t rr = r;
    while (rr % orders[i] == 0) {
      rr /= orders[i];
      w *= orders[i];
      ++i;
    }
    expected[r] = t.Add(expected[r - w], gens[i]);
    const Elem x = s.FromRadix(r);
    if (img[x] != expected[r]) {
      throw DomainError("map is not additive at " + s.Name(x) + ": image " + t.Name(img[x]) +
                        " but generator images force " + t.Name(expected[r]));
    }
  }
}

bool GroupHom::IsInjective() const {
  if (source_->order() > target_->order()) return false;
  std::vector<bool> seen(target_->order(), false);
  for (Elem y : *images_) {
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

bool GroupHom::IsSurjective() const {
  if (source_->order() < target_->order()) return false;
  std::vector<bool> seen(target_->order(), false);
  uint64_t hit = 0;
  for (Elem y : *images_) {
    if (!seen[y]) {
      seen[y] = true;
      ++hit;
    }
  }
  return hit == target_->order();
}

bool GroupHom::IsZero() const {
  return std::all_of(images_->begin(), images_->end(), [](Elem y) { return y == 0; });
}

std::optional<std::pair<Elem, Elem>> GroupHom::FindAdditivityFailure() const {
  const FinAbGroup& s = *source_;
  const FinAbGroup& t = *target_;
  for (uint64_t a = 0; a < s.order(); ++a) {
    for (uint64_t b = a; b < s.order(); ++b) {
      const auto ea = static_cast<Elem>(a);
      const auto eb = static_cast<Elem>(b);
      if ((*images_)[s.Add(ea, eb)] != t.Add((*images_)[ea], (*images_)[eb])) {
        return std::make_pair(ea, eb);
      }
    }
  }
  return std::nullopt;
}

bool GroupHom::operator==(const GroupHom& other) const {
  return source_ == other.source_ && target_ == other.target_ &&
         (images_ == other.images_ || *images_ == *other.images_);
}

GroupHom Compose(const GroupHom& after, const GroupHom& before) {
  if (before.target() != after.source()) {
    throw DomainError("cannot compose: target " + DescribeGroup(*before.target()) +
                      " is not the source " + DescribeGroup(*after.source()));
  }
  std::vector<Elem> images(before.source()->order());
  for (size_t x = 0; x < images.size(); ++x) images[x] = after(before(static_cast<Elem>(x)));
  return GroupHom::Trusted(before.source(), after.target(), std::move(images));
}

GroupHom AddHoms(const GroupHom& f, const GroupHom& g) {
  if (f.source() != g.source() || f.target() != g.target()) {
    throw DomainError("cannot add homomorphisms with different source or target");
  }
  const FinAbGroup& t = *f.target();
  std::vector<Elem> images(f.source()->order());
  for (size_t x = 0; x < images.size(); ++x) {
    images[x] = t.Add(f(static_cast<Elem>(x)), g(static_cast<Elem>(x)));
  }
  return GroupHom::Trusted(f.source(), f.target(), std::move(images));
}

GroupHom SubtractHoms(const GroupHom& f, const GroupHom& g) {
  return AddHoms(f, ScaleHom(-1, g));
}

GroupHom ScaleHom(int64_t c, const GroupHom& f) {
  const FinAbGroup& t = *f.target();
  std::vector<Elem> images(f.source()->order());
  for (size_t x = 0; x < images.size(); ++x) images[x] = t.Scale(c, f(static_cast<Elem>(x)));
  return GroupHom::Trusted(f.source(), f.target(), std::move(images));
}

std::optional<Elem> Subgroup::LocalId(Elem parent_elem) const {
  auto it = std::lower_bound(members.begin(), members.end(), parent_elem);
  if (it == members.end() || *it != parent_elem) return std::nullopt;
  return static_cast<Elem>(it - members.begin());
}

Subgroup MakeSubgroup(const GroupPtr& parent, std::vector<Elem> members, std::string label) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members.front() != 0) {
    throw DomainError("subgroup of " + DescribeGroup(*parent) + " must contain zero");
  }
  auto shared = std::make_shared<const std::vector<Elem>>(std::move(members));
  const auto& m = *shared;
  auto local = [&m](Elem x) -> Elem {
    auto it = std::lower_bound(m.begin(), m.end(), x);
    if (it == m.end() || *it != x) return kNone;
    return static_cast<Elem>(it - m.begin());
  };
  const FinAbGroup* par = parent.get();
  GroupPtr group = FinAbGroup::FromOperation(
      parent->prime(), m.size(),
      [&](Elem a, Elem b) {
        const Elem z = local(par->Add(m[a], m[b]));
        if (z == kNone) {
          throw DomainError("subset is not closed under addition: " + par->Name(m[a]) + " + " +
                            par->Name(m[b]));
        }
        return z;
      },
      std::move(label), [parent, shared](Elem x) { return parent->Name((*shared)[x]); });
  GroupHom inclusion = GroupHom::Trusted(group, parent, m);
  return Subgroup{group, inclusion, m};
}

Subgroup Kernel(const GroupHom& f) {
  std::vector<Elem> members;
  for (uint64_t x = 0; x < f.source()->order(); ++x) {
    if (f(static_cast<Elem>(x)) == 0) members.push_back(static_cast<Elem>(x));
  }
  return MakeSubgroup(f.source(), std::move(members), "Ker");
}

Subgroup Image(const GroupHom& f) {
  std::vector<Elem> members(f.images());
  return MakeSubgroup(f.target(), std::move(members), "Im");
}

Quotient MakeQuotient(const GroupPtr& parent, const std::vector<Elem>& sub_members,
                      std::string label) {
  const uint64_t n = parent->order();
  std::vector<uint32_t> coset(n, kNone);
  std::vector<Elem> reps;
  // Scanning in id order makes each coset's first visit its minimal element.
  for (uint64_t x = 0; x < n; ++x) {
    if (coset[x] != kNone) continue;
    const auto idx = static_cast<uint32_t>(reps.size());
    reps.push_back(static_cast<Elem>(x));
    for (Elem s : sub_members) {
      const Elem y = parent->Add(static_cast<Elem>(x), s);
      if (coset[y] != kNone && coset[y] != idx) {
        throw DomainError("subset is not a subgroup: cosets overlap at " + parent->Name(y));
      }
      coset[y] = idx;
    }
  }
  if (reps.size() * sub_members.size() != n) {
    throw DomainError("subset is not a subgroup of " + DescribeGroup(*parent));
  }
  auto shared_reps = std::make_shared<const std::vector<Elem>>(reps);
  const FinAbGroup* par = parent.get();
  GroupPtr group = FinAbGroup::FromOperation(
      parent->prime(), reps.size(),
      [&](Elem a, Elem b) { return coset[par->Add(reps[a], reps[b])]; }, std::move(label),
      [parent, shared_reps](Elem x) { return "[" + parent->Name((*shared_reps)[x]) + "]"; });
  GroupHom projection = GroupHom::Trusted(parent, group, std::move(coset));
  return Quotient{group, projection, std::move(reps)};
}

Quotient Cokernel(const GroupHom& f) {
  std::vector<Elem> members(f.images());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return MakeQuotient(f.target(), members, "Coker");
}

Verdict IsExactAt(const GroupHom& f, const GroupHom& g) {
  if (f.target() != g.source()) {
    throw DomainError("exactness check on non-composable maps: " + DescribeGroup(*f.target()) +
                      " vs " + DescribeGroup(*g.source()));
  }
  const FinAbGroup& mid = *f.target();
  std::vector<bool> in_image(mid.order(), false);
  for (Elem y : f.images()) in_image[y] = true;
  for (uint64_t y = 0; y < mid.order(); ++y) {
    const bool in_kernel = g(static_cast<Elem>(y)) == 0;
    if (in_image[y] && !in_kernel) {
      return Verdict::Fail("element " + mid.Name(static_cast<Elem>(y)) +
                           " is in the image but not in the kernel");
    }
    if (!in_image[y] && in_kernel) {
      return Verdict::Fail("element " + mid.Name(static_cast<Elem>(y)) +
                           " is in the kernel but not in the image");
    }
  }
  return Verdict::Pass();
}

namespace {

// For each basis element of g, the elements of h killed by its order.
std::vector<std::vector<Elem>> GeneratorCandidates(const FinAbGroup& g, const FinAbGroup& h) {
  std::vector<std::vector<Elem>> cands(g.rank());
  for (size_t i = 0; i < g.rank(); ++i) {
    const auto ord = static_cast<int64_t>(g.basis_orders()[i]);
    for (uint64_t y = 0; y < h.order(); ++y) {
      if (h.Scale(ord, static_cast<Elem>(y)) == 0) cands[i].push_back(static_cast<Elem>(y));
    }
  }
  return cands;
}

std::vector<Elem> ExtendLinearly(const FinAbGroup& g, const FinAbGroup& h,
                                 const std::vector<Elem>& gens) {
  std::vector<Elem> by_radix(g.order());
  by_radix[0] = 0;
  const auto& orders = g.basis_orders();
  for (uint64_t r = 1; r < g.order(); ++r) {
    size_t i = 0;
    uint64_t w = 1;
    uint64_t rr = r;
    while (rr % orders[i] == 0) {
      rr /= orders[i];
      w *= orders[i];
      ++i;
    }
    by_radix[r] = h.Add(by_radix[r - w], gens[i]);
  }
  std::vector<Elem> images(g.order());
  for (uint64_t r = 0; r < g.order(); ++r) images[g.FromRadix(r)] = by_radix[r];
  return images;
}

}  // namespace

uint64_t CountHomCandidates(const GroupPtr& g, const GroupPtr& h) {
  uint64_t total = 1;
  for (const auto& c : GeneratorCandidates(*g, *h)) {
    total *= c.size();
    if (total > (uint64_t{1} << 62)) return total;
  }
  return total;
}

std::vector<GroupHom> HomEnumerate(const GroupPtr& g, const GroupPtr& h, uint64_t cap) {
  const auto cands = GeneratorCandidates(*g, *h);
  uint64_t total = 1;
  for (const auto& c : cands) {
    total *= c.size();
    if (total > cap) {
      throw ResourceError("hom enumeration " + DescribeGroup(*g) + " -> " + DescribeGroup(*h) +
                          " exceeds the cap of " + std::to_string(cap) + " assignments");
    }
  }
  std::vector<GroupHom> out;
  out.reserve(total);
  std::vector<size_t> idx(cands.size(), 0);
  std::vector<Elem> gens(cands.size());
  for (uint64_t k = 0; k < total; ++k) {
    for (size_t i = 0; i < cands.size(); ++i) gens[i] = cands[i][idx[i]];
    out.push_back(GroupHom::Trusted(g, h, ExtendLinearly(*g, *h, gens)));
    for (size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < cands[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

GroupHom RandomHom(const GroupPtr& g, const GroupPtr& h, std::mt19937_64& rng) {
  const auto cands = GeneratorCandidates(*g, *h);
  std::vector<Elem> gens(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    std::uniform_int_distribution<size_t> pick(0, cands[i].size() - 1);
    gens[i] = cands[i][pick(rng)];
  }
  return GroupHom::Trusted(g, h, ExtendLinearly(*g, *h, gens));
}

}  // namespace wittperv
