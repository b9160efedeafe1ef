#pragma once

#include <algorithm>
#include <vector>

#include "vertexlab/laurent.hpp"

namespace vertexlab {

/// num * unit / prod_i (1 - den[i]).
/// Denominator factors are kept factored and oriented: the first nonzero
/// exponent of each factor monomial is positive (1/(1-w) = -w^{-1}/(1-w^{-1})
/// reorients the others). Cancellation against the numerator happens eagerly.
class RationalFunction {
 public:
  LaurentPoly num;
  Monomial unit;
  std::vector<Monomial> den;

  RationalFunction() = default;
  explicit RationalFunction(LaurentPoly n)
      : num(std::move(n)), unit(num.tab->size()) {}
  RationalFunction(LaurentPoly n, Monomial u, std::vector<Monomial> d)
      : num(std::move(n)), unit(std::move(u)), den(std::move(d)) {
    normalize();
  }

  static RationalFunction zero(TablePtr t) { return RationalFunction(LaurentPoly::zero(t)); }
  static RationalFunction one(TablePtr t) {
    return RationalFunction(LaurentPoly::constant(t, Rational(1)));
  }
  static RationalFunction constant(TablePtr t, const Rational& c) {
    return RationalFunction(LaurentPoly::constant(t, c));
  }
  static RationalFunction fromPoly(LaurentPoly p) { return RationalFunction(std::move(p)); }

  TablePtr table() const { return num.tab; }
  bool isZero() const { return num.isZero(); }
  bool isOne() const { return den.empty() && unit.isOne() && num.isOne(); }

  /// True when the value is a bare polynomial (no denominator factors).
  bool isPolynomial() const { return den.empty(); }

  LaurentPoly asPolynomial() const {
    if (!den.empty()) throw DomainError("rational function is not a polynomial");
    return num.mulMonomial(unit);
  }

  void normalize() {
    if (num.isZero()) {
      unit = Monomial(num.tab->size());
      den.clear();
      return;
    }
    // orient factors
    for (auto& w : den) {
      if (w.isOne()) throw PoleError("denominator factor (1 - 1)");
      bool flip = false;
      for (auto v : w.e2) {
        if (v != 0) {
          flip = v < 0;
          break;
        }
      }
      if (flip) {
        // 1/(1-w) = -w^{-1} / (1-w^{-1})
        unit.mulEq(w.inv());
        num = num.neg();
        w = w.inv();
      }
    }
    std::sort(den.begin(), den.end());
    // cancel factors dividing the numerator
    for (size_t i = 0; i < den.size();) {
      LaurentPoly q;
      if (tryDivideOneMinus(num, den[i], q)) {
        num = std::move(q);
        den.erase(den.begin() + static_cast<long>(i));
      } else {
        ++i;
      }
    }
    // pull the monomial content of the numerator into the unit
    Monomial c = num.content();
    if (!c.isOne()) {
      unit.mulEq(c);
      LaurentPoly shifted(num.tab);
      Monomial cinv = c.inv();
      for (auto& [m, co] : num.terms) shifted.terms.emplace(m.mul(cinv), co);
      num = std::move(shifted);
    }
  }

  RationalFunction mul(const RationalFunction& o) const {
    RationalFunction r;
    r.num = num.mul(o.num);
    r.unit = unit.mul(o.unit);
    r.den = den;
    r.den.insert(r.den.end(), o.den.begin(), o.den.end());
    r.normalize();
    return r;
  }
  RationalFunction mulPoly(const LaurentPoly& p) const {
    RationalFunction r;
    r.num = num.mul(p);
    r.unit = unit;
    r.den = den;
    r.normalize();
    return r;
  }
  RationalFunction mulScalar(const Rational& s) const {
    RationalFunction r = *this;
    r.num = r.num.mulScalar(s);
    if (s == 0) r.normalize();
    return r;
  }
  RationalFunction mulMonomial(const Monomial& m) const {
    RationalFunction r = *this;
    r.unit.mulEq(m);
    return r;
  }
  RationalFunction neg() const {
    RationalFunction r = *this;
    r.num = r.num.neg();
    return r;
  }

  /// Multiply by 1/(1-w).
  RationalFunction divOneMinus(const Monomial& w) const {
    RationalFunction r = *this;
    r.den.push_back(w);
    r.normalize();
    return r;
  }

  /// Reciprocal; only defined for a monomial value.
  RationalFunction reciprocal() const {
    if (!den.empty() || num.terms.size() != 1)
      throw DomainError("reciprocal requires a monomial value");
    auto& [m, c] = *num.terms.begin();
    RationalFunction r = one(num.tab);
    r.num = LaurentPoly::constant(num.tab, Rational(1) / c);
    r.unit = unit.mul(m).inv();
    return r;
  }

  RationalFunction add(const RationalFunction& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    // common denominator: multiset union with max multiplicities
    std::vector<Monomial> common = den;
    {
      std::vector<Monomial> extra;
      auto a = den.begin();
      for (auto b = o.den.begin(); b != o.den.end(); ++b) {
        while (a != den.end() && *a < *b) ++a;
        if (a != den.end() && *a == *b)
          ++a;
        else
          extra.push_back(*b);
      }
      common.insert(common.end(), extra.begin(), extra.end());
      std::sort(common.begin(), common.end());
    }
    auto complement = [&](const std::vector<Monomial>& d) {
      std::vector<Monomial> rest;
      auto a = d.begin();
      for (auto& w : common) {
        if (a != d.end() && *a == w)
          ++a;
        else
          rest.push_back(w);
      }
      return rest;
    };
    LaurentPoly lhs = num.mulMonomial(unit);
    for (auto& w : complement(den))
      lhs = lhs.sub(lhs.mulMonomial(w));
    LaurentPoly rhs = o.num.mulMonomial(o.unit);
    for (auto& w : complement(o.den))
      rhs = rhs.sub(rhs.mulMonomial(w));
    RationalFunction r;
    r.num = lhs.add(rhs);
    r.unit = Monomial(num.tab->size());
    r.den = common;
    r.normalize();
    return r;
  }
  RationalFunction sub(const RationalFunction& o) const { return add(o.neg()); }

  /// Exact equality by cross-multiplication of cleared numerators.
  bool equals(const RationalFunction& o) const {
    if (isZero()) return o.isZero();
    if (o.isZero()) return false;
    // strip shared factors first
    std::vector<Monomial> da, db;
    {
      auto a = den.begin();
      auto b = o.den.begin();
      while (a != den.end() && b != o.den.end()) {
        if (*a == *b) {
          ++a;
          ++b;
        } else if (*a < *b) {
          da.push_back(*a++);
        } else {
          db.push_back(*b++);
        }
      }
      da.insert(da.end(), a, den.end());
      db.insert(db.end(), b, o.den.end());
    }
    LaurentPoly lhs = num.mulMonomial(unit);
    for (auto& w : db) lhs = lhs.sub(lhs.mulMonomial(w));
    LaurentPoly rhs = o.num.mulMonomial(o.unit);
    for (auto& w : da) rhs = rhs.sub(rhs.mulMonomial(w));
    return lhs == rhs;
  }

  RationalFunction substituted(const VarMap& vm) const {
    RationalFunction r;
    r.num = num.substituted(vm);
    auto [uc, um] = vm.applyMono(unit);
    r.unit = um;
    r.num = r.num.mulScalar(uc);
    for (auto& w : den) {
      auto [c, img] = vm.applyMono(w);
      if (c != 1)
        throw PoleError("substitution sends a denominator factor off the (1-w) form");
      if (img.isOne()) throw PoleError("substitution sends a denominator factor to 1");
      r.den.push_back(img);
    }
    r.normalize();
    return r;
  }

  std::string str() const {
    if (isZero()) return "0";
    std::string s;
    LaurentPoly n = num.mulMonomial(unit);
    bool par = n.terms.size() > 1 && !den.empty();
    s += par ? "(" + n.str() + ")" : n.str();
    if (!den.empty()) {
      s += " / (";
      for (size_t i = 0; i < den.size(); ++i) {
        if (i) s += "*";
        s += "(1-" + monoStr(num.tab, den[i]) + ")";
      }
      s += ")";
    }
    return s;
  }
};

}  // namespace vertexlab
