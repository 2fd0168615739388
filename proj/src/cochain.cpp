#include "wittperv/cochain.hpp"

#include <algorithm>
#include <limits>

#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

constexpr uint32_t kNone = std::numeric_limits<uint32_t>::max();

// First element where two maps with the same source disagree.
std::optional<Elem> FirstDifference(const GroupHom& f, const GroupHom& g) {
  for (size_t x = 0; x < f.images().size(); ++x) {
    if (f.images()[x] != g.images()[x]) return static_cast<Elem>(x);
  }
  return std::nullopt;
}

}  // namespace

Cochain::Cochain(uint32_t p, int start, std::vector<GroupPtr> objects,
                 std::vector<GroupHom> differentials)
    : p_(p),
      start_(start),
      objects_(std::move(objects)),
      differentials_(std::move(differentials)),
      trivial_(FinAbGroup::Trivial(p)) {
  const size_t expected = objects_.empty() ? 0 : objects_.size() - 1;
  if (differentials_.size() != expected) {
    throw DomainError("complex with " + std::to_string(objects_.size()) + " objects needs " +
                      std::to_string(expected) + " differentials");
  }
  for (size_t i = 0; i < differentials_.size(); ++i) {
    if (differentials_[i].source() != objects_[i] || differentials_[i].target() != objects_[i + 1]) {
      throw DomainError("differential in degree " + std::to_string(start_ + static_cast<int>(i)) +
                        " does not connect the adjacent objects");
    }
  }
  for (size_t i = 0; i + 1 < differentials_.size(); ++i) {
    const GroupHom dd = Compose(differentials_[i + 1], differentials_[i]);
    for (size_t x = 0; x < dd.images().size(); ++x) {
      if (dd.images()[x] != 0) {
        throw DomainError("d∘d is nonzero in degree " + std::to_string(start_ + static_cast<int>(i)) +
                          " at " + objects_[i]->Name(static_cast<Elem>(x)));
      }
    }
  }
}

Cochain Cochain::Zero(uint32_t p) { return Cochain(p, 0, {}, {}); }

Cochain Cochain::TwoTerm(const GroupHom& f, int start) {
  return Cochain(f.source()->prime() != f.target()->prime() && f.source()->order() == 1
                     ? f.target()->prime()
                     : f.source()->prime(),
                 start, {f.source(), f.target()}, {f});
}

const GroupPtr& Cochain::Object(int degree) const {
  if (degree < start_ || degree > end()) return trivial_;
  return objects_[degree - start_];
}

GroupHom Cochain::Differential(int degree) const {
  if (degree >= start_ && degree < end()) return differentials_[degree - start_];
  return GroupHom::Zero(Object(degree), Object(degree + 1));
}

bool Cochain::IsZero() const {
  return std::all_of(objects_.begin(), objects_.end(),
                     [](const GroupPtr& g) { return g->order() == 1; });
}

Cochain Shift(const Cochain& x, int k) {
  std::vector<GroupPtr> objects;
  std::vector<GroupHom> diffs;
  for (int d = x.start(); d <= x.end(); ++d) objects.push_back(x.Object(d));
  for (int d = x.start(); d < x.end(); ++d) {
    const GroupHom dx = x.Differential(d);
    diffs.push_back(k % 2 == 0 ? dx : ScaleHom(-1, dx));
  }
  return Cochain(x.prime(), x.start() - k, std::move(objects), std::move(diffs));
}

ChainMap::ChainMap(Cochain source, Cochain target, int lo, std::vector<GroupHom> components)
    : source_(std::move(source)),
      target_(std::move(target)),
      lo_(lo),
      components_(std::move(components)) {
  for (size_t i = 0; i < components_.size(); ++i) {
    const int d = lo_ + static_cast<int>(i);
    if (components_[i].source() != source_.Object(d) ||
        components_[i].target() != target_.Object(d)) {
      throw DomainError("chain map component in degree " + std::to_string(d) +
                        " does not match the complexes");
    }
  }
  const int from = std::min({lo_, source_.start(), target_.start()}) - 1;
  const int to = std::max({lo_ + static_cast<int>(components_.size()), source_.end(), target_.end()});
  for (int d = from; d <= to; ++d) {
    const GroupHom left = Compose(Component(d + 1), source_.Differential(d));
    const GroupHom right = Compose(target_.Differential(d), Component(d));
    if (auto x = FirstDifference(left, right)) {
      throw DomainError("chain map square in degree " + std::to_string(d) + " fails at " +
                        source_.Object(d)->Name(*x));
    }
  }
}

GroupHom ChainMap::Component(int degree) const {
  const int i = degree - lo_;
  if (i >= 0 && i < static_cast<int>(components_.size())) return components_[i];
  return GroupHom::Zero(source_.Object(degree), target_.Object(degree));
}

ChainMap ComposeChainMaps(const ChainMap& after, const ChainMap& before) {
  const int lo = std::min(before.source().start(), after.target().start());
  const int hi = std::max(before.source().end(), after.target().end());
  std::vector<GroupHom> comps;
  for (int d = lo; d <= hi; ++d) comps.push_back(Compose(after.Component(d), before.Component(d)));
  return ChainMap(before.source(), after.target(), lo, std::move(comps));
}

MappingCone Cone(const ChainMap& f) {
  const Cochain& x = f.source();
  const Cochain& y = f.target();
  const uint32_t p = x.IsZero() ? y.prime() : x.prime();
  const bool x_empty = x.end() < x.start();
  const bool y_empty = y.end() < y.start();
  if (x_empty && y_empty) {
    Cochain zero = Cochain::Zero(p);
    return {zero, ChainMap(y, zero, 0, {}), ChainMap(zero, Shift(x, 1), 0, {})};
  }
  const int lo = x_empty ? y.start() : y_empty ? x.start() - 1 : std::min(x.start() - 1, y.start());
  const int hi = x_empty ? y.end() : y_empty ? x.end() - 1 : std::max(x.end() - 1, y.end());

  std::vector<GroupPtr> objects;
  for (int i = lo; i <= hi; ++i) objects.push_back(FinAbGroup::DirectSum(x.Object(i + 1), y.Object(i)));
  std::vector<GroupHom> diffs;
  for (int i = lo; i < hi; ++i) {
    const FinAbGroup& src = *objects[i - lo];
    const FinAbGroup& dst = *objects[i - lo + 1];
    const GroupHom dx = x.Differential(i + 1);
    const GroupHom dy = y.Differential(i);
    const GroupHom fi = f.Component(i + 1);
    const FinAbGroup& x2 = *x.Object(i + 2);
    const FinAbGroup& y1 = *y.Object(i + 1);
    std::vector<Elem> images(src.order());
    for (uint64_t z = 0; z < src.order(); ++z) {
      const auto [a, b] = src.Split(static_cast<Elem>(z));
      images[z] = dst.Pair(x2.Neg(dx(a)), y1.Add(fi(a), dy(b)));
    }
    diffs.push_back(GroupHom::Trusted(objects[i - lo], objects[i - lo + 1], std::move(images)));
  }
  Cochain cone(p, lo, objects, std::move(diffs));

  std::vector<GroupHom> incl;
  for (int i = y.start(); i <= y.end(); ++i) {
    const FinAbGroup& c = *cone.Object(i);
    std::vector<Elem> images(y.Object(i)->order());
    for (size_t b = 0; b < images.size(); ++b) images[b] = c.Pair(0, static_cast<Elem>(b));
    incl.push_back(GroupHom::Trusted(y.Object(i), cone.Object(i), std::move(images)));
  }
  Cochain x1 = Shift(x, 1);
  std::vector<GroupHom> proj;
  for (int i = x1.start(); i <= x1.end(); ++i) {
    const FinAbGroup& c = *cone.Object(i);
    std::vector<Elem> images(c.order());
    for (size_t z = 0; z < images.size(); ++z) images[z] = c.Split(static_cast<Elem>(z)).first;
    proj.push_back(GroupHom::Trusted(cone.Object(i), x1.Object(i), std::move(images)));
  }
  ChainMap inclusion(y, cone, y.start(), std::move(incl));
  ChainMap projection(cone, x1, x1.start(), std::move(proj));
  return MappingCone{std::move(cone), std::move(inclusion), std::move(projection)};
}

Elem CohomologyGroup::ClassOf(Elem cycle) const {
  const auto local = cycles.LocalId(cycle);
  if (!local) {
    throw DomainError("element " + cycles.inclusion.target()->Name(cycle) + " in degree " +
                      std::to_string(degree) + " is not a cycle");
  }
  return classes.projection(*local);
}

Elem CohomologyGroup::Representative(Elem cls) const {
  return cycles.members[classes.representatives[cls]];
}

CohomologyGroup Cohomology(const Cochain& c, int degree) {
  Subgroup cycles = Kernel(c.Differential(degree));
  const GroupHom incoming = c.Differential(degree - 1);
  std::vector<Elem> boundaries(incoming.images());
  std::sort(boundaries.begin(), boundaries.end());
  boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());
  for (Elem& b : boundaries) {
    const auto local = cycles.LocalId(b);
    if (!local) {
      throw InvariantViolation("boundary " + c.Object(degree)->Name(b) + " in degree " +
                               std::to_string(degree) + " is not a cycle");
    }
    b = *local;
  }
  Quotient classes = MakeQuotient(cycles.group, boundaries, "H^" + std::to_string(degree));
  return CohomologyGroup{degree, std::move(cycles), std::move(classes)};
}

std::map<int, CohomologyGroup> AllCohomology(const Cochain& c) {
  std::map<int, CohomologyGroup> out;
  for (int d = c.start(); d <= c.end(); ++d) out.emplace(d, Cohomology(c, d));
  return out;
}

bool IsAcyclic(const Cochain& c) {
  for (int d = c.start(); d <= c.end(); ++d) {
    if (Cohomology(c, d).order() != 1) return false;
  }
  return true;
}

GroupHom InducedOnCohomology(const ChainMap& f, const CohomologyGroup& h_source,
                             const CohomologyGroup& h_target) {
  if (h_source.degree != h_target.degree) {
    throw DomainError("induced map between cohomology in different degrees");
  }
  const GroupHom fd = f.Component(h_source.degree);
  std::vector<Elem> images(h_source.order());
  for (size_t c = 0; c < images.size(); ++c) {
    images[c] = h_target.ClassOf(fd(h_source.Representative(static_cast<Elem>(c))));
  }
  return GroupHom(h_source.group(), h_target.group(), std::move(images));
}

void CheckShortExact(const ShortExactSequence& ses) {
  const Cochain& a = ses.i.source();
  const Cochain& b = ses.i.target();
  const Cochain& c = ses.q.target();
  if (ses.q.source().start() != b.start() || ses.q.source().end() != b.end()) {
    throw DomainError("short exact sequence maps do not share the middle complex");
  }
  const int lo = std::min({a.start(), b.start(), c.start()});
  const int hi = std::max({a.end(), b.end(), c.end()});
  for (int d = lo; d <= hi; ++d) {
    const GroupHom i = ses.i.Component(d);
    const GroupHom q = ses.q.Component(d);
    if (!i.IsInjective()) {
      throw DomainError("first map is not injective in degree " + std::to_string(d));
    }
    if (!q.IsSurjective()) {
      throw DomainError("second map is not surjective in degree " + std::to_string(d));
    }
    const Verdict mid = IsExactAt(i, q);
    if (!mid.passed()) {
      throw DomainError("not exact in the middle in degree " + std::to_string(d) + ": " +
                        mid.detail());
    }
  }
}

GroupHom ConnectingHom(const ShortExactSequence& ses, const CohomologyGroup& h_c,
                       const CohomologyGroup& h_a) {
  const int d = h_c.degree;
  if (h_a.degree != d + 1) throw DomainError("connecting map must raise the degree by one");
  const Cochain& b = ses.i.target();
  const GroupHom q = ses.q.Component(d);
  const GroupHom db = b.Differential(d);
  const GroupHom i_next = ses.i.Component(d + 1);
  const GroupHom dc = ses.q.target().Differential(d);

  std::vector<uint32_t> i_inverse(i_next.target()->order(), kNone);
  for (size_t a = 0; a < i_next.images().size(); ++a) {
    i_inverse[i_next.images()[a]] = static_cast<uint32_t>(a);
  }
  std::vector<uint32_t> table(h_c.order(), kNone);
  const FinAbGroup& bd = *b.Object(d);
  for (uint64_t x = 0; x < bd.order(); ++x) {
    const Elem z = q(static_cast<Elem>(x));
    if (dc(z) != 0) continue;
    const uint32_t a = i_inverse[db(static_cast<Elem>(x))];
    if (a == kNone) {
      throw InvariantViolation("d of the lift " + bd.Name(static_cast<Elem>(x)) +
                               " does not come from the first complex in degree " +
                               std::to_string(d + 1));
    }
    const Elem cls_z = h_c.ClassOf(z);
    const Elem cls_a = h_a.ClassOf(a);
    if (table[cls_z] == kNone) {
      table[cls_z] = cls_a;
    } else if (table[cls_z] != cls_a) {
      throw InvariantViolation("connecting map is not well defined: lift " +
                               bd.Name(static_cast<Elem>(x)) + " of " +
                               h_c.group()->Name(cls_z) + " gives " + h_a.group()->Name(cls_a) +
                               " instead of " + h_a.group()->Name(table[cls_z]));
    }
  }
  for (size_t c = 0; c < table.size(); ++c) {
    if (table[c] == kNone) {
      throw DomainError("class " + h_c.group()->Name(static_cast<Elem>(c)) +
                        " has no lift; the second map is not surjective");
    }
  }
  return GroupHom(h_c.group(), h_a.group(), std::vector<Elem>(table.begin(), table.end()));
}

bool LongExactSequence::AllExact() const {
  return std::all_of(exactness.begin(), exactness.end(), [](const Verdict& v) { return v.passed(); });
}

int LongExactSequence::Find(const std::string& label) const {
  for (size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == label) return static_cast<int>(j);
  }
  return -1;
}

LongExactSequence BuildLongExactSequence(const ShortExactSequence& ses, const std::string& name_a,
                                         const std::string& name_b, const std::string& name_c) {
  CheckShortExact(ses);
  const Cochain& a = ses.i.source();
  const Cochain& b = ses.i.target();
  const Cochain& c = ses.q.target();
  const int lo = std::min({a.start(), b.start(), c.start()});
  const int hi = std::max({a.end(), b.end(), c.end()});
  const GroupPtr zero = FinAbGroup::Trivial(b.prime());

  auto label = [](const std::string& name, int d) { return "H^" + std::to_string(d) + "(" + name + ")"; };

  LongExactSequence les;
  les.terms.push_back(zero);
  les.labels.push_back("0");
  std::vector<CohomologyGroup> ha, hb, hc;
  for (int d = lo; d <= hi + 1; ++d) {
    ha.push_back(Cohomology(a, d));
    hb.push_back(Cohomology(b, d));
    hc.push_back(Cohomology(c, d));
  }
  les.maps.push_back(GroupHom::Zero(zero, ha[0].group()));
  for (int d = lo; d <= hi; ++d) {
    const size_t k = d - lo;
    les.terms.push_back(ha[k].group());
    les.labels.push_back(label(name_a, d));
    les.maps.push_back(InducedOnCohomology(ses.i, ha[k], hb[k]));
    les.terms.push_back(hb[k].group());
    les.labels.push_back(label(name_b, d));
    les.maps.push_back(InducedOnCohomology(ses.q, hb[k], hc[k]));
    les.terms.push_back(hc[k].group());
    les.labels.push_back(label(name_c, d));
    if (d < hi) {
      les.maps.push_back(ConnectingHom(ses, hc[k], ha[k + 1]));
    } else {
      les.maps.push_back(GroupHom::Zero(hc[k].group(), zero));
    }
  }
  les.terms.push_back(zero);
  les.labels.push_back("0");

  les.exactness.push_back(Verdict::Pass());
  for (size_t j = 1; j + 1 < les.terms.size(); ++j) {
    Verdict v = IsExactAt(les.maps[j - 1], les.maps[j]);
    les.exactness.push_back(v.passed() ? v : Verdict::Fail("at " + les.labels[j] + ": " + v.detail()));
  }
  les.exactness.push_back(Verdict::Pass());
  return les;
}

Verdict CheckNullhomotopy(const ChainMap& f, int lo, const std::vector<GroupHom>& h) {
  const Cochain& x = f.source();
  const Cochain& y = f.target();
  auto hom = [&](int d) {
    const int i = d - lo;
    if (i >= 0 && i < static_cast<int>(h.size())) return h[i];
    return GroupHom::Zero(x.Object(d), y.Object(d - 1));
  };
  for (size_t i = 0; i < h.size(); ++i) {
    const int d = lo + static_cast<int>(i);
    if (h[i].source() != x.Object(d) || h[i].target() != y.Object(d - 1)) {
      throw DomainError("homotopy component in degree " + std::to_string(d) +
                        " does not match the complexes");
    }
  }
  const int from = std::min({x.start(), y.start(), lo});
  const int to = std::max({x.end(), y.end(), lo + static_cast<int>(h.size())});
  for (int d = from; d <= to; ++d) {
    const GroupHom dh = Compose(y.Differential(d - 1), hom(d));
    const GroupHom hd = Compose(hom(d + 1), x.Differential(d));
    const GroupHom sum = AddHoms(dh, hd);
    if (auto e = FirstDifference(sum, f.Component(d))) {
      return Verdict::Fail("f != dh + hd in degree " + std::to_string(d) + " at " +
                           x.Object(d)->Name(*e));
    }
  }
  return Verdict::Pass();
}

}  // namespace wittperv
