#pragma once

#include <array>

#include "vertexlab/series.hpp"
#include "vertexlab/slope.hpp"

namespace vertexlab {

/// Virtual torus characters are integer-coefficient Laurent polynomials in
/// t1,t2,t3 on the half-integer lattice; kappa = t1 t2 t3.
struct CY3 {
  TablePtr tab;
  std::array<int, 3> tIdx;

  explicit CY3(TablePtr t, const std::array<std::string, 3>& names = {"t1", "t2", "t3"})
      : tab(std::move(t)),
        tIdx{tab->indexOrThrow(names[0]), tab->indexOrThrow(names[1]),
             tab->indexOrThrow(names[2])} {}

  Monomial kappaHalf(long k = 1) const {  // kappa^{k/2}
    Monomial m(tab->size());
    for (int i : tIdx) m.e2[i] = static_cast<int32_t>(k);
    return m;
  }
  Monomial tvar(int axis, long num = 1, long den = 1) const {
    Monomial m(tab->size());
    m.e2[tIdx[axis]] = static_cast<int32_t>(den == 1 ? 2 * num : num);
    return m;
  }
};

inline void requireIntegerCoeffs(const LaurentPoly& V) {
  for (auto& [m, c] : V.terms)
    if (!isIntegerRat(c)) throw DomainError("character has a non-integer coefficient");
}

/// Serre symmetry V = -V^dual * kappa.
inline bool serreCheck(const CY3& cy, const LaurentPoly& V) {
  return V == V.dual().mulMonomial(cy.kappaHalf(2)).neg();
}

/// Signed count of attracting weights; requires no sigma-fixed weight.
inline long indexOf(const CY3& cy, const LaurentPoly& V, const Slope& sigma) {
  requireIntegerCoeffs(V);
  long idx = 0;
  for (auto& [m, c] : V.terms) {
    int s = gradeSign(sigma.grade(m, cy.tIdx));
    if (s == 0) throw RegimeError("sigma-fixed weight " + monoStr(cy.tab, m));
    if (s > 0) idx += static_cast<long>(numerator(c));
  }
  return idx;
}

/// (-kappa^{1/2})^{index}.
inline LaurentPoly rigidLimit(const CY3& cy, const LaurentPoly& V, const Slope& sigma) {
  long ind = indexOf(cy, V, sigma);
  Rational sign((ind % 2 == 0) ? 1 : -1);
  return LaurentPoly::monomial(cy.tab, cy.kappaHalf(ind), sign);
}

/// a-hat genus of a virtual character: prod over negative part of
/// (v^{1/2}-v^{-1/2}) over prod over positive part of (u^{1/2}-u^{-1/2}).
inline RationalFunction ahat(const CY3& cy, const LaurentPoly& V) {
  requireIntegerCoeffs(V);
  std::vector<Monomial> us, vs;
  for (auto& [m, c] : V.terms) {
    if (m.isOne()) throw PoleError("trivial weight in a-hat argument");
    long k = static_cast<long>(numerator(c));
    for (long i = 0; i < k; ++i) us.push_back(m);
    for (long i = 0; i < -k; ++i) vs.push_back(m);
  }
  // (w^{1/2}-w^{-1/2}) = -w^{-1/2}(1-w)
  RationalFunction r = RationalFunction::one(cy.tab);
  LaurentPoly num = LaurentPoly::constant(cy.tab, Rational(((us.size() + vs.size()) % 2) ? -1 : 1));
  Monomial unit(cy.tab->size());
  for (auto& v : vs) {
    num = num.sub(num.mulMonomial(v));  // multiply by (1 - v)
    unit.mulEq(v.pow(-1));              // doubled units: w^{-1/2}
  }
  for (auto& u : us) unit.mulEq(u);  // dividing by u^{-1/2}
  r.num = std::move(num);
  // halve the accumulated unit exponents: vs contributed w^{-1}, us w^{+1},
  // but the true factors are half powers
  for (auto& e : unit.e2) {
    if (e % 2 != 0) throw LatticeError("a-hat unit leaves the half-integer lattice");
    e = static_cast<int32_t>(e / 2);
  }
  r.unit = unit;
  r.den = us;
  r.normalize();
  return r;
}

/// Exact limit of an A-balanced rational function under a generic slope:
/// orient all denominator factors attracting, then the limit is the
/// grade-zero part of the cleared numerator.
inline RationalFunction balancedLimit(const CY3& cy, const RationalFunction& f,
                                      const Slope& sigma) {
  if (f.isZero()) return f;
  LaurentPoly num = f.num.mulMonomial(f.unit);
  for (auto& w : f.den) {
    int s = gradeSign(sigma.grade(w, cy.tIdx));
    if (s == 0) throw RegimeError("sigma-fixed denominator weight " + monoStr(cy.tab, w));
    if (s < 0) num = num.mulMonomial(w.inv()).neg();  // 1/(1-w) = -w^{-1}/(1-w^{-1})
  }
  LaurentPoly p0(cy.tab);
  for (auto& [m, c] : num.terms) {
    int s = gradeSign(sigma.grade(m, cy.tIdx));
    if (s < 0)
      throw RegimeError("limit diverges: repelling numerator weight " + monoStr(cy.tab, m));
    if (s == 0) p0.addTerm(m, c);
  }
  return RationalFunction::fromPoly(p0);
}

/// Sym^* of a finite virtual character: prod (1-v_j) / prod (1-u_i).
inline RationalFunction plethSymFinite(const TablePtr& tab, const LaurentPoly& V) {
  requireIntegerCoeffs(V);
  RationalFunction r = RationalFunction::one(tab);
  LaurentPoly num = LaurentPoly::constant(tab, Rational(1));
  std::vector<Monomial> den;
  for (auto& [m, c] : V.terms) {
    long k = static_cast<long>(numerator(c));
    if (k > 0 && m.isOne()) throw DomainError("Sym of a character with a trivial positive weight");
    for (long i = 0; i < k; ++i) den.push_back(m);
    for (long i = 0; i < -k; ++i) num = num.sub(num.mulMonomial(m));
  }
  r.num = std::move(num);
  r.den = std::move(den);
  r.normalize();
  return r;
}

/// Plethystic exponential of a series with no constant term:
/// exp(sum_{n>=1} psi^n(arg)/n), Adams operations raising every variable.
inline TruncatedSeries plethSymSeries(const TruncatedSeries& arg) {
  if (arg.coef.count(Monomial(arg.tab->size())))
    throw DomainError("plethystic exponential: argument has a constant term");
  if (arg.isZero()) return TruncatedSeries::one(arg.tab, arg.trunc);
  long nmax = arg.iterationBound();
  TruncatedSeries acc = TruncatedSeries::zero(arg.tab, arg.trunc);
  for (long n = 1; n <= nmax; ++n)
    acc = acc.add(arg.psi(n).mulScalar(Rational(1) / Rational(n)));
  return acc.expSeries();
}

}  // namespace vertexlab
