#pragma once

// Finite abelian p-groups with enumerated carriers, homomorphisms as image
// tables, and the kernel / image / cokernel / exactness toolkit built on
// top of them.
//
// Every group carries an explicit basis: elements correspond bijectively to
// coordinate vectors (c_0, ..., c_{r-1}) with 0 <= c_i < basis_order(i).
// The "radix" of an element packs its coordinates with c_0 least
// significant. Element ids are independent of the basis and always put the
// zero element at id 0.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wittperv/verdict.hpp"

namespace wittperv {

using Elem = uint32_t;

class FinAbGroup;
using GroupPtr = std::shared_ptr<const FinAbGroup>;

class FinAbGroup {
 public:
  static constexpr size_t kMaxRank = 32;
  using Coords = std::array<uint64_t, kMaxRank>;
  using AddFn = std::function<Elem(Elem, Elem)>;
  using NameFn = std::function<std::string(Elem)>;

  // Builds a group from a native addition on ids 0..order-1 with 0 as the
  // identity. A basis is extracted by repeatedly lifting an element of
  // maximal order modulo the span found so far; any violation of the group
  // law met on the way raises DomainError.
  static GroupPtr FromOperation(uint32_t p, uint64_t order, const AddFn& add, std::string label,
                                NameFn namer = {});
  static GroupPtr Trivial(uint32_t p);
  // Z/p^e.
  static GroupPtr Cyclic(uint32_t p, uint32_t exponent, std::string label = "");
  // Z/n_0 + Z/n_1 + ...; each n_i a power of one common prime. The id of
  // (c_0, c_1, ...) is c_0 + n_0 c_1 + n_0 n_1 c_2 + ...
  static GroupPtr FromCyclicOrders(const std::vector<uint64_t>& orders, std::string label = "",
                                   NameFn namer = {});
  // A + B with id(a, b) = a + |A| b.
  static GroupPtr DirectSum(GroupPtr a, GroupPtr b, std::string label = "");

  uint32_t prime() const { return p_; }
  uint64_t order() const { return order_; }
  Elem zero() const { return 0; }
  const std::string& label() const { return label_; }
  std::string Name(Elem x) const;

  Elem Add(Elem a, Elem b) const;
  Elem Neg(Elem a) const;
  Elem Sub(Elem a, Elem b) const { return Add(a, Neg(b)); }
  // c·a for any integer c.
  Elem Scale(int64_t c, Elem a) const;
  uint64_t ElementOrder(Elem a) const;

  size_t rank() const { return basis_orders_.size(); }
  const std::vector<uint64_t>& basis_orders() const { return basis_orders_; }
  Elem BasisElement(size_t i) const;
  uint64_t RadixOf(Elem x) const;
  Elem FromRadix(uint64_t r) const;
  Coords CoordinatesOf(Elem x) const;
  Elem FromCoordinates(const Coords& c) const;

  // Direct-sum helpers; only valid on groups made by DirectSum.
  bool IsDirectSum() const { return kind_ == Kind::kSum; }
  const GroupPtr& summand_a() const { return a_; }
  const GroupPtr& summand_b() const { return b_; }
  Elem Pair(Elem a, Elem b) const;
  std::pair<Elem, Elem> Split(Elem x) const;

 private:
  enum class Kind { kStandard, kTable, kSum };

  FinAbGroup() = default;
  uint64_t RadixAdd(uint64_t r1, uint64_t r2) const;
  uint64_t RadixScale(int64_t c, uint64_t r) const;

  Kind kind_ = Kind::kStandard;
  uint32_t p_ = 2;
  uint64_t order_ = 1;
  std::string label_;
  NameFn namer_;
  std::vector<uint64_t> basis_orders_;
  std::vector<uint64_t> radix_weights_;
  // kTable only.
  std::vector<uint32_t> radix_of_;
  std::vector<Elem> from_radix_;
  // kSum only.
  GroupPtr a_, b_;
};

// Orders of the cyclic factors, descending, read off the torsion counts
// |G[p^k]|.
std::vector<uint64_t> InvariantFactors(const FinAbGroup& g);
bool AreIsomorphic(const FinAbGroup& g, const FinAbGroup& h);
std::string FormatFactors(const std::vector<uint64_t>& factors);

class GroupHom {
 public:
  // Validates that the table is a homomorphism (basis certificate: the
  // image of every element equals the combination of generator images, and
  // every generator image is killed by the generator's order). Throws
  // DomainError with a witness element otherwise.
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> images);

  static GroupHom FromFunction(GroupPtr source, GroupPtr target,
                               const std::function<Elem(Elem)>& f);
  static GroupHom Identity(GroupPtr g);
  static GroupHom Zero(GroupPtr source, GroupPtr target);
  // For tables that are homomorphisms by construction.
  static GroupHom Trusted(GroupPtr source, GroupPtr target, std::vector<Elem> images);

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<Elem>& images() const { return *images_; }
  Elem operator()(Elem x) const { return (*images_)[x]; }

  bool IsInjective() const;
  bool IsSurjective() const;
  bool IsBijective() const { return IsInjective() && IsSurjective(); }
  bool IsZero() const;
  // Pairwise additivity check f(a+b) = f(a)+f(b) over all pairs. Quadratic;
  // returns the first failing pair.
  std::optional<std::pair<Elem, Elem>> FindAdditivityFailure() const;

  bool operator==(const GroupHom& other) const;
  bool operator!=(const GroupHom& other) const { return !(*this == other); }

 private:
  GroupHom(GroupPtr source, GroupPtr target, std::shared_ptr<const std::vector<Elem>> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}
  void Validate() const;

  GroupPtr source_;
  GroupPtr target_;
  std::shared_ptr<const std::vector<Elem>> images_;
};

// after ∘ before.
GroupHom Compose(const GroupHom& after, const GroupHom& before);
GroupHom AddHoms(const GroupHom& f, const GroupHom& g);
GroupHom SubtractHoms(const GroupHom& f, const GroupHom& g);
GroupHom ScaleHom(int64_t c, const GroupHom& f);

struct Subgroup {
  GroupPtr group;
  GroupHom inclusion;
  // Parent ids of the members, ascending; local id i is members[i].
  std::vector<Elem> members;

  std::optional<Elem> LocalId(Elem parent_elem) const;
};

struct Quotient {
  GroupPtr group;
  GroupHom projection;
  // Minimal parent id of every coset; local id i is the coset of
  // representatives[i].
  std::vector<Elem> representatives;
};

// `members` must be a subgroup of `parent` (checked by FromOperation).
Subgroup MakeSubgroup(const GroupPtr& parent, std::vector<Elem> members, std::string label = "");
Subgroup Kernel(const GroupHom& f);
Subgroup Image(const GroupHom& f);
Quotient MakeQuotient(const GroupPtr& parent, const std::vector<Elem>& sub_members,
                      std::string label = "");
Quotient Cokernel(const GroupHom& f);

// f: A -> B and g: B -> C; exact iff image(f) = kernel(g).
Verdict IsExactAt(const GroupHom& f, const GroupHom& g);

// Every homomorphism G -> H, enumerated by images of the basis of G inside
// the matching torsion of H. Throws ResourceError if the number of
// candidate assignments exceeds `cap`.
constexpr uint64_t kDefaultHomCap = uint64_t{1} << 16;
std::vector<GroupHom> HomEnumerate(const GroupPtr& g, const GroupPtr& h,
                                   uint64_t cap = kDefaultHomCap);
uint64_t CountHomCandidates(const GroupPtr& g, const GroupPtr& h);

// Uniformly random homomorphism G -> H.
GroupHom RandomHom(const GroupPtr& g, const GroupPtr& h, std::mt19937_64& rng);

}  // namespace wittperv
