#pragma once

#include <map>
#include <sstream>
#include <utility>

#include "vertexlab/vartable.hpp"

namespace vertexlab {

/// Exact multivariate Laurent polynomial on the half-integer lattice.
class LaurentPoly {
 public:
  TablePtr tab;
  std::map<Monomial, Rational> terms;  // no zero coefficients stored

  LaurentPoly() = default;
  explicit LaurentPoly(TablePtr t) : tab(std::move(t)) {}

  static LaurentPoly zero(TablePtr t) { return LaurentPoly(std::move(t)); }
  static LaurentPoly constant(TablePtr t, const Rational& c) {
    LaurentPoly p(std::move(t));
    if (c != 0) p.terms.emplace(Monomial(p.tab->size()), c);
    return p;
  }
  static LaurentPoly monomial(TablePtr t, const Monomial& m, const Rational& c = Rational(1)) {
    LaurentPoly p(std::move(t));
    if (c != 0) p.terms.emplace(m, c);
    return p;
  }
  static LaurentPoly var(TablePtr t, const std::string& n, long num = 1, long den = 1) {
    return monomial(t, varMono(t, n, num, den));
  }

  bool isZero() const { return terms.empty(); }
  bool isOne() const {
    return terms.size() == 1 && terms.begin()->first.isOne() && terms.begin()->second == 1;
  }
  bool isConstant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.isOne());
  }
  bool isMonomial() const { return terms.size() == 1; }

  Rational coeff(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Rational(0) : it->second;
  }
  Rational constantTerm() const { return coeff(Monomial(tab->size())); }

  void addTerm(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  LaurentPoly& addEq(const LaurentPoly& o) {
    for (auto& [m, c] : o.terms) addTerm(m, c);
    return *this;
  }
  LaurentPoly add(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r.addEq(o);
    return r;
  }
  LaurentPoly sub(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (auto& [m, c] : o.terms) r.addTerm(m, -c);
    return r;
  }
  LaurentPoly neg() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
  }
  LaurentPoly mulScalar(const Rational& s) const {
    LaurentPoly r(tab);
    if (s == 0) return r;
    r.terms = terms;
    for (auto& [m, c] : r.terms) c *= s;
    return r;
  }
  LaurentPoly mulMonomial(const Monomial& w, const Rational& s = Rational(1)) const {
    LaurentPoly r(tab);
    if (s == 0) return r;
    for (auto& [m, c] : terms) r.terms.emplace(m.mul(w), c * s);
    return r;
  }
  LaurentPoly mul(const LaurentPoly& o) const {
    LaurentPoly r(tab);
    if (terms.empty() || o.terms.empty()) return r;
    for (auto& [m1, c1] : terms)
      for (auto& [m2, c2] : o.terms) r.addTerm(m1.mul(m2), c1 * c2);
    return r;
  }
  LaurentPoly pow(unsigned k) const {
    LaurentPoly acc = constant(tab, Rational(1));
    LaurentPoly b = *this;
    while (k) {
      if (k & 1) acc = acc.mul(b);
      if (k >>= 1) b = b.mul(b);
    }
    return acc;
  }

  /// Dual character: inverts every variable.
  LaurentPoly dual() const {
    LaurentPoly r(tab);
    for (auto& [m, c] : terms) r.terms.emplace(m.inv(), c);
    return r;
  }

  /// Adams operation: raises every variable to the n-th power.
  LaurentPoly psi(long n) const {
    LaurentPoly r(tab);
    for (auto& [m, c] : terms) r.terms.emplace(m.pow(n), c);
    return r;
  }

  /// Monomial content: componentwise minimum exponent over the support.
  Monomial content() const {
    Monomial m(tab->size());
    bool first = true;
    for (auto& [k, c] : terms) {
      if (first) {
        m = k;
        first = false;
      } else {
        for (size_t i = 0; i < m.e2.size(); ++i) m.e2[i] = std::min(m.e2[i], k.e2[i]);
      }
    }
    return m;
  }

  LaurentPoly substituted(const VarMap& vm) const {
    LaurentPoly r(vm.dst);
    for (auto& [m, c] : terms) {
      auto [s, img] = vm.applyMono(m);
      r.addTerm(img, c * s);
    }
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return terms == o.terms; }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string ms = monoStr(tab, m);
      if (ms == "1")
        os << ratStr(a);
      else if (a == 1)
        os << ms;
      else
        os << ratStr(a) << "*" << ms;
    }
    return os.str();
  }
};

/// Exact division by (1 - w); returns false when not divisible.
/// Grades the support by <e, w>; divisibility forces the quotient grades to
/// stay below maxGrade(p) - |w|^2.
inline bool tryDivideOneMinus(const LaurentPoly& p, const Monomial& w, LaurentPoly& out) {
  if (w.isOne()) throw PoleError("division by (1 - 1)");
  out = LaurentPoly::zero(p.tab);
  if (p.isZero()) return true;
  const long step = w.dot(w);
  long maxGrade = 0;
  bool first = true;
  std::map<long, LaurentPoly> buckets;
  for (auto& [m, c] : p.terms) {
    long g = m.dot(w);
    if (first || g > maxGrade) maxGrade = g;
    first = false;
    auto it = buckets.find(g);
    if (it == buckets.end()) it = buckets.emplace(g, LaurentPoly::zero(p.tab)).first;
    it->second.addTerm(m, c);
  }
  LaurentPoly q(p.tab);
  while (!buckets.empty()) {
    auto it = buckets.begin();
    long g = it->first;
    LaurentPoly part = std::move(it->second);
    buckets.erase(it);
    if (part.isZero()) continue;
    if (g > maxGrade - step) return false;
    q.addEq(part);
    LaurentPoly carry = part.mulMonomial(w);
    auto jt = buckets.find(g + step);
    if (jt == buckets.end())
      buckets.emplace(g + step, std::move(carry));
    else
      jt->second.addEq(carry);
  }
  out = std::move(q);
  return true;
}

}  // namespace vertexlab
