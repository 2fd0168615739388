#include "wittperv/intpoly.hpp"

#include <algorithm>
#include <sstream>

#include "wittperv/errors.hpp"

namespace wittperv {

namespace {

void Trim(IntPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

IntPoly::Exponents AddExponents(const IntPoly::Exponents& a, const IntPoly::Exponents& b) {
  IntPoly::Exponents out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace

IntPoly IntPoly::Constant(const mpz_class& c) {
  IntPoly out;
  out.AddTerm({}, c);
  return out;
}

IntPoly IntPoly::Variable(size_t index) {
  Exponents e(index + 1, 0);
  e[index] = 1;
  return Monomial(1, std::move(e));
}

IntPoly IntPoly::Monomial(const mpz_class& c, Exponents exponents) {
  Trim(exponents);
  IntPoly out;
  out.AddTerm(exponents, c);
  return out;
}

void IntPoly::AddTerm(const Exponents& exponents, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

size_t IntPoly::NumVariables() const {
  size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return n;
}

uint64_t IntPoly::TotalDegree() const {
  uint64_t deg = 0;
  for (const auto& [e, c] : terms_) {
    uint64_t d = 0;
    for (uint32_t x : e) d += x;
    deg = std::max(deg, d);
  }
  return deg;
}

mpz_class IntPoly::Coefficient(const Exponents& exponents) const {
  Exponents e = exponents;
  Trim(e);
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  for (const auto& [e, c] : other.terms_) AddTerm(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
  for (const auto& [e, c] : other.terms_) AddTerm(e, -c);
  return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly out;
  mpz_class prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      prod = ca * cb;
      out.AddTerm(AddExponents(ea, eb), prod);
    }
  }
  return out;
}

IntPoly IntPoly::Pow(uint64_t e) const {
  IntPoly result = Constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

IntPoly IntPoly::ExactDiv(const mpz_class& d) const {
  if (d == 0) throw InvariantViolation("division of polynomial by zero");
  IntPoly out;
  for (const auto& [e, c] : terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
      std::ostringstream msg;
      msg << "inexact division by " << d.get_str() << ": coefficient " << c.get_str()
          << " of monomial with exponents [";
      for (size_t i = 0; i < e.size(); ++i) msg << (i ? "," : "") << e[i];
      msg << "]";
      throw InvariantViolation(msg.str());
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    out.terms_.emplace(e, std::move(q));
  }
  return out;
}

IntPoly IntPoly::ReduceMod(const mpz_class& m) const {
  IntPoly out;
  for (const auto& [e, c] : terms_) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (r != 0) out.terms_.emplace(e, std::move(r));
  }
  return out;
}

IntPoly IntPoly::Substitute(const std::vector<IntPoly>& values) const {
  // Powers are cached per variable since the same power recurs across terms.
  std::vector<std::map<uint32_t, IntPoly>> powers(values.size());
  auto power = [&](size_t var, uint32_t exp) -> const IntPoly& {
    auto it = powers[var].find(exp);
    if (it == powers[var].end()) it = powers[var].emplace(exp, values[var].Pow(exp)).first;
    return it->second;
  };
  IntPoly out;
  for (const auto& [e, c] : terms_) {
    if (e.size() > values.size()) {
      throw DomainError("substitution is missing a value for variable " +
                        std::to_string(e.size() - 1));
    }
    IntPoly term = Constant(c);
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] != 0) term = term * power(v, e[v]);
    }
    out += term;
  }
  return out;
}

std::string IntPoly::ToString(const std::function<std::string(size_t)>& name) const {
  if (terms_.empty()) return "0";
  // Highest total degree first, then reverse-lexicographic on exponents.
  std::vector<std::pair<Exponents, mpz_class>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    uint64_t da = 0, db = 0;
    for (auto x : a.first) da += x;
    for (auto x : b.first) db += x;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool constant = e.empty();
    if (mag != 1 || constant) {
      out << mag.get_str();
      if (!constant) out << "*";
    }
    bool first_factor = true;
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!first_factor) out << "*";
      first_factor = false;
      out << name(v);
      if (e[v] > 1) out << "^" << e[v];
    }
  }
  return out.str();
}

ModPPoly::ModPPoly(const IntPoly& poly, uint32_t p) {
  const IntPoly reduced = poly.ReduceMod(p);
  num_vars_ = reduced.NumVariables();
  for (const auto& [e, c] : reduced.terms()) {
    Term term;
    term.coeff = static_cast<uint32_t>(c.get_ui());
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] != 0) term.factors.push_back({static_cast<uint32_t>(v), e[v]});
    }
    terms_.push_back(std::move(term));
  }
}

}  // namespace wittperv
