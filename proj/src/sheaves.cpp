#include "wittperv/sheaves.hpp"

#include <algorithm>

#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

uint64_t Power(uint64_t base, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

void CheckCap(uint64_t size, uint64_t cap, const std::string& what) {
  if (size > cap) {
    throw ResourceError(what + " has " + std::to_string(size) + " elements, above the cap of " +
                        std::to_string(cap));
  }
}

}  // namespace

std::string QuotRingSpec::Name() const {
  return base == QuotBase::kIntegers ? "Z" : "F_" + std::to_string(p) + "[t]";
}

std::string QuotRingSpec::BName() const {
  return base == QuotBase::kIntegers ? std::to_string(p) : "t";
}

QuotRing::QuotRing(QuotRingSpec spec, uint32_t exponent, uint64_t cap)
    : spec_(spec), exponent_(exponent) {
  if (!IsPrime(spec.p)) throw DomainError("b = " + std::to_string(spec.p) + " is not prime");
  if (exponent > 40) throw ResourceError("exponent too large");
  CheckCap(Power(spec.p, exponent), cap, spec.Name() + "/(" + spec.BName() + "^" +
                                             std::to_string(exponent) + ")");
  const std::string label = spec.Name() + "/(" + spec.BName() + "^" + std::to_string(exponent) + ")";
  if (exponent == 0) {
    group_ = FinAbGroup::Trivial(spec.p);
  } else if (spec.base == QuotBase::kIntegers) {
    group_ = FinAbGroup::Cyclic(spec.p, exponent, label);
  } else {
    const QuotRing self_copy = *this;
    group_ = FinAbGroup::FromCyclicOrders(std::vector<uint64_t>(exponent, spec.p), label,
                                          [self_copy](Elem x) { return self_copy.Name(x); });
  }
}

Elem QuotRing::Mul(Elem a, Elem b) const {
  const uint64_t n = size();
  if (spec_.base == QuotBase::kIntegers) return static_cast<Elem>((uint64_t{a} * b) % n);
  const uint32_t p = spec_.p;
  std::vector<uint64_t> da(exponent_), db(exponent_), out(exponent_, 0);
  for (uint32_t i = 0; i < exponent_; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  for (uint32_t i = 0; i < exponent_; ++i) {
    for (uint32_t j = 0; i + j < exponent_; ++j) out[i + j] = (out[i + j] + da[i] * db[j]) % p;
  }
  uint64_t id = 0;
  for (uint32_t i = exponent_; i-- > 0;) id = id * p + out[i];
  return static_cast<Elem>(id);
}

Elem QuotRing::MulB(uint32_t m, Elem x) const {
  if (m >= exponent_) return 0;
  return static_cast<Elem>((uint64_t{x} * Power(spec_.p, m)) % size());
}

std::string QuotRing::Name(Elem x) const {
  if (spec_.base == QuotBase::kIntegers) return std::to_string(x);
  std::vector<uint32_t> digits;
  for (uint32_t i = 0; i < exponent_; ++i) {
    digits.push_back(x % spec_.p);
    x /= spec_.p;
  }
  std::string out;
  for (size_t i = digits.size(); i-- > 0;) {
    if (digits[i] == 0) continue;
    if (!out.empty()) out += "+";
    const std::string c = digits[i] == 1 && i > 0 ? "" : std::to_string(digits[i]);
    out += c;
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

PervObj MakeMAb(const QuotRingSpec& spec, uint32_t m, uint32_t n, uint64_t cap) {
  if (n == 0) throw DomainError("M(A,b)_{m,n} needs n >= 1");
  if (m == 0) {
    throw DomainError("m = 0 gives vu = 1, so 1 - vu = 0 is not invertible on the nonzero ring " +
                      spec.Name() + "/(" + spec.BName() + "^" + std::to_string(n) + ")");
  }
  const QuotRing phi(spec, n, cap);
  const QuotRing psi(spec, n + m, cap);
  const uint64_t n_phi = phi.size();
  std::vector<Elem> u(psi.size());
  for (uint64_t y = 0; y < psi.size(); ++y) u[y] = static_cast<Elem>(y % n_phi);
  std::vector<Elem> v(phi.size());
  for (uint64_t x = 0; x < phi.size(); ++x) v[x] = psi.MulB(m, static_cast<Elem>(x));
  // b^m · (lift of x) must not depend on the lift.
  for (uint64_t y = 0; y < psi.size(); ++y) {
    if (v[u[y]] != psi.MulB(m, static_cast<Elem>(y))) {
      throw InvariantViolation("multiplication by b^m is not well defined at " +
                               psi.Name(static_cast<Elem>(y)));
    }
  }
  const std::string label = "M(" + spec.Name() + "," + spec.BName() + ")_{" + std::to_string(m) +
                            "," + std::to_string(n) + "}";
  PervObj out = MakePerv(phi.group(), psi.group(), GroupHom(psi.group(), phi.group(), std::move(u)),
                         GroupHom(phi.group(), psi.group(), std::move(v)), label);
  out.ring = RingStructure{[phi](Elem a, Elem b) { return phi.Mul(a, b); },
                           [psi](Elem a, Elem b) { return psi.Mul(a, b); }, phi.One(), psi.One()};
  return out;
}

PervObj MakeMAbModule(const QuotRingSpec& spec, uint32_t rank, uint32_t m, uint32_t n,
                      uint64_t cap) {
  if (n == 0) throw DomainError("M_{m,n}(N,b) needs n >= 1");
  if (m == 0) throw DomainError("m = 0 gives 1 - vu = 0; not an object");
  const QuotRing phi(spec, n, cap);
  const QuotRing psi(spec, n + m, cap);
  const std::string label = "M_{" + std::to_string(m) + "," + std::to_string(n) + "}(" +
                            spec.Name() + "^" + std::to_string(rank) + "," + spec.BName() + ")";
  if (rank == 0) {
    PervObj zero = ZeroPerv(spec.p);
    zero.label = label;
    zero.module = ModuleStructure{[](Elem, Elem) { return Elem{0}; }, [](Elem, Elem) { return Elem{0}; }};
    return zero;
  }
  CheckCap(Power(psi.size(), rank), cap, label);
  auto factors = [&](const QuotRing& r) {
    std::vector<uint64_t> out;
    for (uint32_t i = 0; i < rank; ++i) {
      if (spec.base == QuotBase::kIntegers) {
        out.push_back(r.size());
      } else {
        out.insert(out.end(), r.exponent(), spec.p);
      }
    }
    return out;
  };
  // Componentwise helpers on ids a_0 + |R| a_1 + ...
  struct Free {
    QuotRing r;
    uint32_t rank;
    std::vector<Elem> Split(Elem x) const {
      std::vector<Elem> c(rank);
      for (uint32_t i = 0; i < rank; ++i) {
        c[i] = static_cast<Elem>(x % r.size());
        x = static_cast<Elem>(x / r.size());
      }
      return c;
    }
    Elem Join(const std::vector<Elem>& c) const {
      uint64_t id = 0;
      for (uint32_t i = rank; i-- > 0;) id = id * r.size() + c[i];
      return static_cast<Elem>(id);
    }
    std::string Name(Elem x) const {
      std::string out = "(";
      const auto c = Split(x);
      for (uint32_t i = 0; i < rank; ++i) out += (i ? "," : "") + r.Name(c[i]);
      return out + ")";
    }
  };
  const Free n0{phi, rank};
  const Free n1{psi, rank};
  GroupPtr g0 = FinAbGroup::FromCyclicOrders(factors(phi), "", [n0](Elem x) { return n0.Name(x); });
  GroupPtr g1 = FinAbGroup::FromCyclicOrders(factors(psi), "", [n1](Elem x) { return n1.Name(x); });
  std::vector<Elem> u(g1->order());
  for (uint64_t y = 0; y < u.size(); ++y) {
    auto c = n1.Split(static_cast<Elem>(y));
    for (auto& e : c) e = static_cast<Elem>(e % phi.size());
    u[y] = n0.Join(c);
  }
  std::vector<Elem> v(g0->order());
  for (uint64_t x = 0; x < v.size(); ++x) {
    auto c = n0.Split(static_cast<Elem>(x));
    for (auto& e : c) e = psi.MulB(m, e);
    v[x] = n1.Join(c);
  }
  PervObj out = MakePerv(g0, g1, GroupHom(g1, g0, std::move(u)), GroupHom(g0, g1, std::move(v)), label);
  auto act = [](const Free& f) {
    return [f](Elem a, Elem x) {
      auto c = f.Split(x);
      for (auto& e : c) e = f.r.Mul(a, e);
      return f.Join(c);
    };
  };
  out.module = ModuleStructure{act(n0), act(n1)};
  return out;
}

void CheckProMap(const ProMap& f) {
  const size_t levels = f.maps.size();
  if (f.source.levels.size() != levels || f.target.levels.size() != levels) {
    throw DomainError("pro map level count mismatch");
  }
  for (size_t i = 0; i + 1 < levels; ++i) {
    const GroupHom left = Compose(f.target.transitions[i], f.maps[i + 1]);
    const GroupHom right = Compose(f.maps[i], f.source.transitions[i]);
    if (left != right) {
      throw DomainError("selected maps do not commute with the transition from level " +
                        std::to_string(i + 2) + " to " + std::to_string(i + 1));
    }
  }
}

ProGroup ProKernel(const ProMap& f) {
  CheckProMap(f);
  ProGroup out;
  std::vector<Subgroup> subs;
  for (const GroupHom& g : f.maps) {
    subs.push_back(Kernel(g));
    out.levels.push_back(subs.back().group);
  }
  for (size_t i = 0; i + 1 < subs.size(); ++i) {
    const GroupHom& t = f.source.transitions[i];
    std::vector<Elem> images(subs[i + 1].members.size());
    for (size_t x = 0; x < images.size(); ++x) {
      images[x] = *subs[i].LocalId(t(subs[i + 1].members[x]));
    }
    out.transitions.push_back(GroupHom(subs[i + 1].group, subs[i].group, std::move(images)));
  }
  return out;
}

ProGroup ProCokernel(const ProMap& f) {
  CheckProMap(f);
  ProGroup out;
  std::vector<Quotient> quots;
  for (const GroupHom& g : f.maps) {
    quots.push_back(Cokernel(g));
    out.levels.push_back(quots.back().group);
  }
  for (size_t i = 0; i + 1 < quots.size(); ++i) {
    const GroupHom& t = f.target.transitions[i];
    std::vector<Elem> images(quots[i + 1].representatives.size());
    for (size_t c = 0; c < images.size(); ++c) {
      images[c] = quots[i].projection(t(quots[i + 1].representatives[c]));
    }
    out.transitions.push_back(GroupHom(quots[i + 1].group, quots[i].group, std::move(images)));
  }
  return out;
}

ProGroup PhiTower(const ProPerv& t) {
  ProGroup out;
  for (const auto& l : t.levels) out.levels.push_back(l.phi);
  for (const auto& m : t.transitions) out.transitions.push_back(m.f_phi);
  return out;
}

ProGroup PsiTower(const ProPerv& t) {
  ProGroup out;
  for (const auto& l : t.levels) out.levels.push_back(l.psi);
  for (const auto& m : t.transitions) out.transitions.push_back(m.f_psi);
  return out;
}

ProMap SelectMap(const ProPerv& t, PervSelector s) {
  ProMap f;
  switch (s) {
    case PervSelector::kVU:
    case PervSelector::kIdentity:
      f.source = PsiTower(t);
      f.target = f.source;
      break;
    case PervSelector::kV:
      f.source = PhiTower(t);
      f.target = PsiTower(t);
      break;
    case PervSelector::kU:
      f.source = PsiTower(t);
      f.target = PhiTower(t);
      break;
  }
  for (const auto& l : t.levels) {
    switch (s) {
      case PervSelector::kVU:
        f.maps.push_back(Compose(l.v, l.u));
        break;
      case PervSelector::kIdentity:
        f.maps.push_back(GroupHom::Identity(l.psi));
        break;
      case PervSelector::kV:
        f.maps.push_back(l.v);
        break;
      case PervSelector::kU:
        f.maps.push_back(l.u);
        break;
    }
  }
  return f;
}

ProGroup ProKernel(const ProPerv& t, PervSelector s) { return ProKernel(SelectMap(t, s)); }
ProGroup ProCokernel(const ProPerv& t, PervSelector s) { return ProCokernel(SelectMap(t, s)); }

bool IsProZero(const ProGroup& t, size_t window) {
  if (window < 1 || window + 1 > t.levels.size()) {
    throw DomainError("pro-zero window " + std::to_string(window) + " needs at least " +
                      std::to_string(window + 1) + " levels, tower has " +
                      std::to_string(t.levels.size()));
  }
  for (size_t w = 1; w <= window; ++w) {
    bool all_zero = true;
    for (size_t i = 0; i + w < t.levels.size() && all_zero; ++i) {
      // levels[i + w] -> levels[i].
      GroupHom comp = t.transitions[i + w - 1];
      for (size_t k = i + w - 1; k-- > i;) comp = Compose(t.transitions[k], comp);
      all_zero = comp.IsZero();
    }
    if (all_zero) return true;
  }
  return false;
}

bool IsMittagLefflerSurjective(const ProGroup& t) {
  return std::all_of(t.transitions.begin(), t.transitions.end(),
                     [](const GroupHom& f) { return f.IsSurjective(); });
}

bool HasStableImages(const ProGroup& t) {
  if (t.levels.size() < 3) throw DomainError("stable images need at least three levels");
  for (size_t n = 0; n + 2 < t.levels.size(); ++n) {
    GroupHom comp = t.transitions[n];
    const std::vector<Elem> first = Image(comp).members;
    for (size_t m = n + 1; m + 1 < t.levels.size(); ++m) {
      comp = Compose(comp, t.transitions[m]);
      if (Image(comp).members != first) return false;
    }
  }
  return true;
}

MAbTower TowerMAb(const QuotRingSpec& spec, uint32_t m, uint32_t n_max, uint64_t cap) {
  if (n_max < 1) throw DomainError("tower needs at least one level");
  MAbTower out;
  for (uint32_t n = 1; n <= n_max; ++n) {
    out.tower.levels.push_back(MakeMAb(spec, m, n, cap));
    const PervObj& level = out.tower.levels.back();
    const QuotRing psi(spec, n + m, cap);
    const GroupHom t = JPull(level).t;
    bool ok = true;
    std::string witness;
    for (uint64_t y = 0; y < psi.size() && ok; ++y) {
      const auto ey = static_cast<Elem>(y);
      if (t(ey) != psi.group()->Sub(ey, psi.MulB(m, ey))) {
        ok = false;
        witness = "T(" + psi.Name(ey) + ") differs from (1 - b^m)(" + psi.Name(ey) + ")";
      }
    }
    out.monodromy_matches.push_back(Verdict::FromBool(ok && t.IsBijective(), witness));
  }
  for (uint32_t n = 1; n < n_max; ++n) {
    const PervObj& hi = out.tower.levels[n];
    const PervObj& lo = out.tower.levels[n - 1];
    std::vector<Elem> fphi(hi.phi->order()), fpsi(hi.psi->order());
    for (size_t x = 0; x < fphi.size(); ++x) fphi[x] = static_cast<Elem>(x % lo.phi->order());
    for (size_t y = 0; y < fpsi.size(); ++y) fpsi[y] = static_cast<Elem>(y % lo.psi->order());
    out.tower.transitions.push_back(MakePervMor(hi, lo, GroupHom(hi.phi, lo.phi, std::move(fphi)),
                                                GroupHom(hi.psi, lo.psi, std::move(fpsi))));
  }
  return out;
}

bool MDirectionSearch::NoneNonzeroOnPhi() const {
  return std::all_of(nonzero_commuting.begin(), nonzero_commuting.end(),
                     [](const CommutingCandidate& c) { return c.phi_zero; });
}

MDirectionSearch SearchMDirection(const QuotRingSpec& spec, uint32_t m, uint32_t n, uint64_t cap) {
  if (m < 2) throw DomainError("m-direction maps need m >= 2 so that the target has m - 1 >= 1");
  const PervObj src = MakeMAb(spec, m, n, cap);
  const PervObj tgt = MakeMAb(spec, m - 1, n, cap);
  const QuotRing phi(spec, n, cap);
  const QuotRing psi(spec, n + m, cap);
  const uint64_t n_tgt_psi = tgt.psi->order();

  auto fphi = [&](uint32_t i) {
    std::vector<Elem> t(phi.size());
    for (size_t x = 0; x < t.size(); ++x) t[x] = phi.MulB(i, static_cast<Elem>(x));
    return GroupHom(src.phi, tgt.phi, std::move(t));
  };
  auto fpsi = [&](uint32_t j) {
    std::vector<Elem> t(psi.size());
    for (size_t y = 0; y < t.size(); ++y) t[y] = static_cast<Elem>(psi.MulB(j, static_cast<Elem>(y)) % n_tgt_psi);
    return GroupHom(src.psi, tgt.psi, std::move(t));
  };

  MDirectionSearch out;
  out.named.push_back({"(id, proj)", CheckSquares(src, tgt, fphi(0), fpsi(0))});
  out.named.push_back({"(b, proj)", CheckSquares(src, tgt, fphi(1), fpsi(0))});
  out.named.push_back({"(b, b then proj)", CheckSquares(src, tgt, fphi(1), fpsi(1))});
  for (uint32_t i = 0; i <= n + m; ++i) {
    const GroupHom a = fphi(i);
    for (uint32_t j = 0; j <= n + m; ++j) {
      const GroupHom c = fpsi(j);
      if (a.IsZero() && c.IsZero()) continue;
      if (CheckSquares(src, tgt, a, c).passed()) out.nonzero_commuting.push_back({i, j, a.IsZero()});
    }
  }
  return out;
}

GroupPtr AdditiveGroup(const AlgebraPtr& k) {
  auto tables = std::make_shared<AlgebraTables>(*k);
  return FinAbGroup::FromOperation(
      k->prime(), k->size(), [tables](Elem a, Elem b) { return tables->Add(a, b); },
      "k", [k](Elem x) { return k->Format(k->FromId(x)); });
}

WittFamily::WittFamily(AlgebraPtr k, uint64_t cap) : k_(std::move(k)), cap_(cap) {}

const GroupPtr& WittFamily::Group(size_t n) {
  auto it = groups_.find(n);
  if (it != groups_.end()) return it->second;
  if (n < 1) throw DomainError("Witt length must be at least 1");
  uint64_t size = 1;
  for (size_t i = 0; i < n; ++i) {
    size *= k_->size();
    if (size > cap_) break;
  }
  CheckCap(size, cap_, "W_" + std::to_string(n) + "(" + k_->ModulusString() + ")");
  auto ring = WittRingFor(k_, n);
  GroupPtr g = FinAbGroup::FromOperation(
      k_->prime(), ring->size(),
      [ring](Elem a, Elem b) { return static_cast<Elem>(ring->FastAddIds(a, b)); },
      "W_" + std::to_string(n), [ring](Elem x) { return FormatWitt(ring->Decode(x)); });
  return groups_.emplace(n, std::move(g)).first->second;
}

const GroupPtr& WittFamily::Additive() {
  if (!additive_) additive_ = AdditiveGroup(k_);
  return additive_;
}

GroupHom WittFamily::Cached(const std::string& key, const std::function<GroupHom()>& make) {
  auto it = homs_.find(key);
  if (it != homs_.end()) return it->second;
  return homs_.emplace(key, make()).first->second;
}

GroupHom WittFamily::FrobMixed(size_t n) {
  return Cached("F" + std::to_string(n), [&] {
    const GroupPtr& src = Group(n + 1);
    const GroupPtr& dst = Group(n);
    auto r1 = Ring(n + 1);
    auto r0 = Ring(n);
    const AlgebraTables& t = r1->tables();
    std::vector<Elem> images(src->order());
    for (uint64_t x = 0; x < images.size(); ++x) {
      WittRing::Coords c = r1->CoordsOf(x);
      for (size_t i = 0; i < n; ++i) c[i] = t.Frobenius(c[i]);
      images[x] = static_cast<Elem>(r0->IdOf(c));
    }
    return GroupHom(src, dst, std::move(images));
  });
}

GroupHom WittFamily::VerschMixed(size_t n) {
  return Cached("V" + std::to_string(n), [&] {
    const GroupPtr& src = Group(n);
    const GroupPtr& dst = Group(n + 1);
    // (0, x_0, ..., x_{n-1}) has the same id as (x_0, ..., x_{n-1}).
    std::vector<Elem> images(src->order());
    for (uint64_t x = 0; x < images.size(); ++x) images[x] = static_cast<Elem>(x);
    return GroupHom(src, dst, std::move(images));
  });
}

GroupHom WittFamily::FrobEndo(size_t n) {
  return Cached("Fe" + std::to_string(n), [&] {
    const GroupPtr& g = Group(n);
    auto r = Ring(n);
    const AlgebraTables& t = r->tables();
    std::vector<Elem> images(g->order());
    for (uint64_t x = 0; x < images.size(); ++x) {
      WittRing::Coords c = r->CoordsOf(x);
      for (size_t i = 0; i < n; ++i) c[i] = t.Frobenius(c[i]);
      images[x] = static_cast<Elem>(r->IdOf(c));
    }
    return GroupHom(g, g, std::move(images));
  });
}

GroupHom WittFamily::VerschEndo(size_t n) {
  return Cached("Ve" + std::to_string(n), [&] {
    const GroupPtr& g = Group(n);
    const uint64_t q = k_->size();
    std::vector<Elem> images(g->order());
    for (uint64_t x = 0; x < images.size(); ++x) images[x] = static_cast<Elem>(x / q);
    return GroupHom(g, g, std::move(images));
  });
}

GroupHom WittFamily::MulP(size_t n) {
  return Cached("p" + std::to_string(n), [&] {
    const GroupPtr& g = Group(n);
    std::vector<Elem> images(g->order());
    for (uint64_t x = 0; x < images.size(); ++x) images[x] = g->Scale(k_->prime(), static_cast<Elem>(x));
    return GroupHom(g, g, std::move(images));
  });
}

GroupHom WittFamily::Restrict(size_t n) {
  return Cached("R" + std::to_string(n), [&] {
    const GroupPtr& src = Group(n + 1);
    const GroupPtr& dst = Group(n);
    const uint64_t q = k_->size();
    std::vector<Elem> images(src->order());
    for (uint64_t x = 0; x < images.size(); ++x) images[x] = static_cast<Elem>(x / q);
    return GroupHom(src, dst, std::move(images));
  });
}

GroupHom WittFamily::X0(size_t n) {
  return Cached("x0_" + std::to_string(n), [&] {
    const GroupPtr& src = Group(n);
    const GroupPtr& dst = Additive();
    uint64_t scale = 1;
    for (size_t i = 1; i < n; ++i) scale *= k_->size();
    std::vector<Elem> images(src->order());
    for (uint64_t x = 0; x < images.size(); ++x) images[x] = static_cast<Elem>(x / scale);
    return GroupHom(src, dst, std::move(images));
  });
}

RingStructure WittFamily::RingOn(size_t phi_level, size_t psi_level) const {
  auto rphi = Ring(phi_level);
  auto rpsi = Ring(psi_level);
  const WittRing::Coords one_phi = rphi->CoordsOf(rphi->Encode(rphi->One()));
  return RingStructure{
      [rphi](Elem a, Elem b) { return static_cast<Elem>(rphi->MulIds(a, b)); },
      [rpsi](Elem a, Elem b) { return static_cast<Elem>(rpsi->MulIds(a, b)); },
      static_cast<Elem>(rphi->IdOf(one_phi)), static_cast<Elem>(rpsi->Encode(rpsi->One()))};
}

std::string ModelName(WittModel m) { return m == WittModel::kEndo ? "endo" : "mixed"; }

PervObj MakeWittSheaf(WittFamily& fam, size_t n, WittModel model, bool dual) {
  const std::string label = std::string(dual ? "W^v" : "W") + "(" + fam.base()->ModulusString() +
                            ")_" + std::to_string(n) + "," + ModelName(model);
  PervObj out = [&] {
    if (model == WittModel::kEndo) {
      const GroupPtr& g = fam.Group(n);
      return dual ? MakePerv(g, g, fam.VerschEndo(n), fam.FrobEndo(n), label)
                  : MakePerv(g, g, fam.FrobEndo(n), fam.VerschEndo(n), label);
    }
    if (dual) return MakePerv(fam.Group(n + 1), fam.Group(n), fam.VerschMixed(n), fam.FrobMixed(n), label);
    return MakePerv(fam.Group(n), fam.Group(n + 1), fam.FrobMixed(n), fam.VerschMixed(n), label);
  }();
  if (model == WittModel::kEndo) {
    out.ring = fam.RingOn(n, n);
  } else {
    out.ring = dual ? fam.RingOn(n + 1, n) : fam.RingOn(n, n + 1);
  }
  return out;
}

PervObj MakeWittSheaf(const AlgebraPtr& k, size_t n, WittModel model, bool dual, uint64_t cap) {
  WittFamily fam(k, cap);
  return MakeWittSheaf(fam, n, model, dual);
}

ProPerv WittSheafTower(WittFamily& fam, size_t n_max, WittModel model, bool dual) {
  ProPerv out;
  for (size_t n = 1; n <= n_max; ++n) out.levels.push_back(MakeWittSheaf(fam, n, model, dual));
  for (size_t n = 1; n < n_max; ++n) {
    const PervObj& hi = out.levels[n];
    const PervObj& lo = out.levels[n - 1];
    GroupHom fphi = model == WittModel::kEndo ? fam.Restrict(n)
                    : dual                    ? fam.Restrict(n + 1)
                                              : fam.Restrict(n);
    GroupHom fpsi = model == WittModel::kEndo ? fam.Restrict(n)
                    : dual                    ? fam.Restrict(n)
                                              : fam.Restrict(n + 1);
    out.transitions.push_back(MakePervMor(hi, lo, std::move(fphi), std::move(fpsi)));
  }
  return out;
}

ProGroup WittTower(WittFamily& fam, size_t n_max) {
  ProGroup out;
  for (size_t n = 1; n <= n_max; ++n) out.levels.push_back(fam.Group(n));
  for (size_t n = 1; n < n_max; ++n) out.transitions.push_back(fam.Restrict(n));
  return out;
}

PervObj MakeDieudonneSheaf(const DieudonneModule& d, Variation variation) {
  if (d.f.source() != d.m || d.f.target() != d.m || d.v.source() != d.m || d.v.target() != d.m) {
    throw DomainError("F and V must be endomorphisms of M");
  }
  const FinAbGroup& m = *d.m;
  for (uint64_t x = 0; x < m.order(); ++x) {
    const auto ex = static_cast<Elem>(x);
    const Elem vf = d.v(d.f(ex));
    const Elem px = m.Scale(m.prime(), ex);
    if (vf != px) {
      throw DomainError("VF != p at x = " + m.Name(ex) + ": V(F(x)) = " + m.Name(vf) + ", p x = " +
                        m.Name(px));
    }
  }
  return variation == Variation::kV ? MakePerv(d.m, d.m, d.f, d.v, "M(D)")
                                    : MakePerv(d.m, d.m, d.v, d.f, "M(D)^T");
}

}  // namespace wittperv
