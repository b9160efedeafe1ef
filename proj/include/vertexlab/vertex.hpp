#pragma once

#include <cstdlib>
#include <set>

#include "vertexlab/character.hpp"
#include "vertexlab/parallel.hpp"
#include "vertexlab/partition3d.hpp"
#include "vertexlab/report.hpp"
#include "vertexlab/schur.hpp"

namespace vertexlab {

enum class PsiTag { t1inv, t2inv, t3, t3inv };

/// Diagonal classifier of a partition nu: which torus weight a box at diagonal
/// c = b2-b1 contributes, read off the interleaved corner list.
inline PsiTag psiNu(const Corners& c, long diag) {
  if (diag > c.inner[0]) return PsiTag::t2inv;
  size_t d = c.outer.size();
  for (size_t i = 0; i < d; ++i) {
    if (diag == c.inner[i]) return PsiTag::t3;
    if (diag > c.outer[i]) return PsiTag::t1inv;  // inner[i] > diag > outer[i]
    if (diag == c.outer[i]) return PsiTag::t3inv;
    if (diag > c.inner[i + 1]) return PsiTag::t2inv;  // outer[i] > diag > inner[i+1]
  }
  if (diag == c.inner[d]) return PsiTag::t3;
  return PsiTag::t1inv;
}
inline PsiTag psiNu(const Partition& nu, const Box& b) {
  return psiNu(corners(nu), static_cast<long>(b[1]) - b[0]);
}

inline Monomial psiMonomial(const CY3& cy, PsiTag tag) {
  switch (tag) {
    case PsiTag::t1inv: return cy.tvar(0, -1);
    case PsiTag::t2inv: return cy.tvar(1, -1);
    case PsiTag::t3: return cy.tvar(2, 1);
    default: return cy.tvar(2, -1);
  }
}

/// Under a preferred slope with tiny third exponent, attracting psi-values
/// count as t = -Q kappa^{1/2} and repelling ones as q = -Q kappa^{-1/2}.
/// Returns +1 for t, -1 for q.
inline int psiSigma(const CY3& cy, const Slope& sigma, PsiTag tag) {
  if (!sigma.preferred || sigma.smallAxis != 2)
    throw RegimeError("psi dispatch needs a preferred slope with tiny third axis");
  int s = gradeSign(sigma.grade(psiMonomial(cy, tag), cy.tIdx));
  if (s == 0) throw RegimeError("psi value is sigma-fixed");
  return s;
}

/// Finite virtual character whose index computes preferred-slope vertex limits:
/// W = sum over boxes of psi_{nu}(1-delta_3) - (delta_1+delta_2) psi_empty.
inline LaurentPoly Wchar(const CY3& cy, const Partition3D& pi) {
  const Partition& nu = pi.legs[2];
  Corners cn = corners(nu);
  Corners c0 = corners(Partition{});
  long window = (nu.empty() ? 0 : nu.parts[0]) + nu.length() + 2;
  for (auto& l : pi.legs) {
    window = std::max<long>(window, l.length() + 2);
    window = std::max<long>(window, (l.empty() ? 0 : l.parts[0]) + 2);
  }
  for (auto& b : pi.extra) window = std::max<long>(window, std::max(b[0], b[1]) + 2);

  std::set<Box> cand(pi.extra.begin(), pi.extra.end());
  for (auto [i, j] : pi.legs[0].boxes())  // leg boxes (b, i, j)
    for (long b = std::max<long>(0, i - window); b <= i + window; ++b)
      cand.insert({static_cast<int>(b), i, j});
  for (auto [i, j] : pi.legs[1].boxes())  // leg boxes (j, b, i)
    for (long b = std::max<long>(0, j - window); b <= j + window; ++b)
      cand.insert({j, static_cast<int>(b), i});

  LaurentPoly W(cy.tab);
  for (auto& b : cand) {
    int mask = pi.legMask(b);
    long diag = static_cast<long>(b[1]) - b[0];
    bool d1 = mask & 1, d2 = mask & 2, d3 = mask & 4;
    if (!d3) W.addTerm(psiMonomial(cy, psiNu(cn, diag)), Rational(1));
    if (d1) W.addTerm(psiMonomial(cy, psiNu(c0, diag)), Rational(-1));
    if (d2) W.addTerm(psiMonomial(cy, psiNu(c0, diag)), Rational(-1));
  }
  return W;
}

/// Virtual tangent character of a finite box configuration:
/// O - O^dual kappa - O O^dual (1-t1)(1-t2)(1-t3).
inline LaurentPoly vertexCharacterFinite(const CY3& cy, const Partition3D& pi) {
  if (!(pi.legs[0].empty() && pi.legs[1].empty() && pi.legs[2].empty()))
    throw DomainError("finite vertex character needs empty asymptotics");
  LaurentPoly O(cy.tab);
  for (auto& b : pi.extra) {
    Monomial m(cy.tab->size());
    for (int k = 0; k < 3; ++k) m.e2[cy.tIdx[k]] = static_cast<int32_t>(-2 * b[k]);
    O.addTerm(m, Rational(1));
  }
  if (O.isZero()) return O;
  LaurentPoly Od = O.dual();
  LaurentPoly hook = LaurentPoly::constant(cy.tab, Rational(1));
  for (int k = 0; k < 3; ++k)
    hook = hook.sub(hook.mulMonomial(cy.tvar(k)));
  return O.sub(Od.mulMonomial(cy.kappaHalf(2)))
      .sub(O.mul(Od).mul(hook));
}

struct QTVars {
  TablePtr tab;
  int qi, ti;
  QTVars(TablePtr t, const std::string& qn = "q", const std::string& tn = "t")
      : tab(std::move(t)), qi(tab->indexOrThrow(qn)), ti(tab->indexOrThrow(tn)) {}
  Monomial mono(long t2, long q2) const {  // t^{t2/2} q^{q2/2}
    Monomial m(tab->size());
    m.e2[ti] = static_cast<int32_t>(t2);
    m.e2[qi] = static_cast<int32_t>(q2);
    return m;
  }
};

/// Q^{chi} (-kappa^{1/2})^{ind} written in t,q: t^{(chi+ind)/2} q^{(chi-ind)/2}.
inline Monomial chiIndexToQT(const QTVars& qt, long chi, long ind) {
  if ((chi + ind) % 2 != 0) throw LatticeError("chi+index parity violation");
  return qt.mono(chi + ind, chi - ind);
}

/// Box-counting limit of the vertex via the index of W - kappa W^dual.
inline TruncatedSeries vertexLimitIndexRoute(const CY3& cy, const QTVars& qt,
                                             const Partition& l1, const Partition& l2,
                                             const Partition& l3, const Slope& sigma,
                                             long maxQ) {
  if (!sigma.preferred || sigma.smallAxis != 2)
    throw RegimeError("box-counting route needs a slope preferred along the third axis");
  Truncation tr = Truncation::single(qt.tab, {qt.tab->name(qt.qi), qt.tab->name(qt.ti)},
                                     maxQ);
  TruncatedSeries out(qt.tab, tr);
  for (auto& pi : enumerate3D(l1, l2, l3, maxQ)) {
    LaurentPoly W = Wchar(cy, pi);
    LaurentPoly V = W.sub(W.dual().mulMonomial(cy.kappaHalf(2)));
    long chi = pi.renormVolume();
    long ind = indexOf(cy, V, sigma);
    out.addMixedTerm(Rational(1), chiIndexToQT(qt, chi, ind));
  }
  return out;
}

/// Same limit through the direct product of psi-weights over a slab |b2-b1|<=N,
/// normalized by the slab products over the first two legs.
inline TruncatedSeries vertexLimitPsiRoute(const CY3& cy, const QTVars& qt,
                                           const Partition& l1, const Partition& l2,
                                           const Partition& l3, const Slope& sigma,
                                           long maxQ, long slabN = -1) {
  if (!sigma.preferred || sigma.smallAxis != 2)
    throw RegimeError("box-counting route needs a slope preferred along the third axis");
  long N = slabN;
  if (N < 0) {
    N = maxQ + 4;
    for (auto& l : {l1, l2, l3}) N += l.size();
  }
  Corners cn = corners(l3);
  auto psiCount = [&](const Partition3D& pi, long& tPow, long& qPow) {
    std::set<Box> boxes(pi.extra.begin(), pi.extra.end());
    for (auto [i, j] : pi.legs[0].boxes())
      for (long b = std::max<long>(0, i - N); b <= i + N; ++b)
        boxes.insert({static_cast<int>(b), i, j});
    for (auto [i, j] : pi.legs[1].boxes())
      for (long b = std::max<long>(0, j - N); b <= j + N; ++b)
        boxes.insert({j, static_cast<int>(b), i});
    for (auto& b : boxes) {
      long diag = static_cast<long>(b[1]) - b[0];
      if (std::abs(diag) > N) continue;
      if (pi.inLeg(2, b)) continue;
      (psiSigma(cy, sigma, psiNu(cn, diag)) > 0 ? tPow : qPow)++;
    }
  };
  // leg normalizations: slab products over legs 1 and 2 of psi_empty weights
  Corners c0 = corners(Partition{});
  long denT = 0, denQ = 0;
  for (auto [i, j] : l1.boxes())
    for (long b = std::max<long>(0, i - N); b <= i + N; ++b) {
      long diag = i - b;
      if (std::abs(diag) > N) continue;
      (psiSigma(cy, sigma, psiNu(c0, diag)) > 0 ? denT : denQ)++;
    }
  for (auto [i, j] : l2.boxes())
    for (long b = std::max<long>(0, j - N); b <= j + N; ++b) {
      long diag = b - j;
      if (std::abs(diag) > N) continue;
      (psiSigma(cy, sigma, psiNu(c0, diag)) > 0 ? denT : denQ)++;
    }
  Truncation tr = Truncation::single(qt.tab, {qt.tab->name(qt.qi), qt.tab->name(qt.ti)},
                                     maxQ);
  TruncatedSeries out(qt.tab, tr);
  for (auto& pi : enumerate3D(l1, l2, l3, maxQ)) {
    long tPow = 0, qPow = 0;
    psiCount(pi, tPow, qPow);
    out.addMixedTerm(Rational(1), qt.mono(2 * (tPow - denT), 2 * (qPow - denQ)));
  }
  return out;
}

/// Degree-zero vertex: 1 / prod_{i,j>=0} (1 - q^i t^{j+1}), truncated.
inline TruncatedSeries vacuumVertex(const QTVars& qt, long maxQ, bool swapped = false) {
  Truncation tr = Truncation::single(qt.tab, {qt.tab->name(qt.qi), qt.tab->name(qt.ti)},
                                     maxQ);
  TruncatedSeries acc = TruncatedSeries::one(qt.tab, tr);
  for (long i = 0; i <= maxQ; ++i)
    for (long j = 0; j + i + 1 <= maxQ; ++j) {
      Monomial w = swapped ? qt.mono(2 * i, 2 * (j + 1)) : qt.mono(2 * (j + 1), 2 * i);
      acc = acc.mul(expandFactor(qt.tab, w, {}, tr));
    }
  return acc;
}

/// Refined topological vertex C(lambda,mu,nu)(t,q); swapped exchanges t and q.
inline TruncatedSeries refinedVertexC(const QTVars& qt, const Partition& lam,
                                      const Partition& mu, const Partition& nu,
                                      long order, bool swapped = false) {
  long slack = (lam.conjugate().norm2() + mu.norm2()) / 2 + 2 * nu.size() + 4;
  long cap = order + slack;
  Truncation tr = Truncation::single(qt.tab, {qt.tab->name(qt.qi), qt.tab->name(qt.ti)},
                                     cap);
  const std::string tn = qt.tab->name(swapped ? qt.qi : qt.ti);
  const std::string qn = qt.tab->name(swapped ? qt.ti : qt.qi);
  auto tmono = [&](long num, long den) { return varMono(qt.tab, tn, num, den); };
  auto qmono = [&](long num, long den) { return varMono(qt.tab, qn, num, den); };

  int nvars = static_cast<int>(cap + std::max(nu.length(), nu.empty() ? 0 : nu.parts[0]) + 3);
  Alphabet A = Alphabet::rho(qt.tab, tn, qn, nu.conjugate(), nvars);
  Alphabet B = Alphabet::rho(qt.tab, qn, tn, nu, nvars);
  SchurEvaluator evA(qt.tab, A, tr), evB(qt.tab, B, tr);

  TruncatedSeries sum = TruncatedSeries::zero(qt.tab, tr);
  Partition mut = mu.conjugate();
  // eta runs over partitions contained in both lambda and mu^t
  std::vector<int> prof;
  for (int i = 0; i < std::min(lam.length(), mut.length()); ++i)
    prof.push_back(std::min(lam.part(i), mut.part(i)));
  std::vector<Partition> etas{Partition{}};
  {
    std::vector<std::vector<int>> stack{{}};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      int row = static_cast<int>(cur.size());
      if (row < static_cast<int>(prof.size())) {
        int hi = std::min(prof[row], row > 0 ? cur[row - 1] : prof[row]);
        for (int v = 1; v <= hi; ++v) {
          auto nxt = cur;
          nxt.push_back(v);
          etas.emplace_back();
          etas.back() = Partition(nxt);
          stack.push_back(nxt);
        }
      }
    }
  }
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
  for (auto& eta : etas) {
    TruncatedSeries s1 = evA.skewSchur(lam, eta);
    if (s1.isZero()) continue;
    TruncatedSeries s2 = evB.skewSchur(mut, eta);
    if (s2.isZero()) continue;
    Monomial qt2 = qmono(eta.size(), 2).mul(tmono(-eta.size(), 2));  // (q/t)^{|eta|/2}
    sum = sum.add(s1.mul(s2).mulMixedTerm(Rational(1), qt2));
  }
  TruncatedSeries pref = TruncatedSeries::term(
      qt.tab, tr, Rational(1),
      tmono(-lam.conjugate().norm2(), 2).mul(qmono(-mu.norm2(), 2)));
  sum = sum.mul(pref);
  for (auto [b1, b2] : nu.boxes()) {
    auto [a, l] = nu.armLeg(b1, b2);
    sum = sum.mul(expandFactor(qt.tab, qmono(l, 1).mul(tmono(a + 1, 1)), {}, tr));
  }
  Truncation want = Truncation::single(qt.tab, {qt.tab->name(qt.qi), qt.tab->name(qt.ti)},
                                       order);
  if (!sum.trunc.covers(want))
    throw TruncationError("refined vertex lost precision; increase slack");
  return sum.truncated(want);
}

/// Degree-zero partition function of affine three-space against its plethystic
/// closed form, exact in t1,t2,t3,kappa^{1/2} coefficient by coefficient.
inline Report nekrasovCheck(long maxN, int jobs = 1) {
  auto tab = VarTable::make({{"t1", VarKind::equivariant},
                             {"t2", VarKind::equivariant},
                             {"t3", VarKind::equivariant},
                             {"Q", VarKind::counting}});
  CY3 cy(tab);
  Truncation tr = Truncation::single(tab, {"Q"}, maxN);
  Monomial Q = varMono(tab, "Q");

  // localization side: sum over finite box configurations of (-Q)^n a-hat(V)
  TruncatedSeries lhs = TruncatedSeries::one(tab, tr);
  for (long n = 1; n <= maxN; ++n) {
    auto pis = finite3DOfSize(static_cast<int>(n));
    RationalFunction coeff = parallelMapReduce<RationalFunction>(
        pis.size(), jobs,
        [&](size_t i) { return ahat(cy, vertexCharacterFinite(cy, pis[i])); },
        [](RationalFunction a, RationalFunction b) { return a.add(b); },
        RationalFunction::zero(tab));
    lhs.addTerm(Q.pow(n), coeff.mulScalar(Rational(n % 2 ? -1 : 1)));
  }

  // plethystic side: Sym of -Q/((1-Q k^{1/2})(1-Q k^{-1/2})) prod_k (k^{1/2}/t_k - k^{-1/2})/(1-1/t_k)
  RationalFunction G = RationalFunction::one(tab);
  for (int k = 0; k < 3; ++k) {
    LaurentPoly num = LaurentPoly::monomial(tab, cy.kappaHalf(1).mul(cy.tvar(k, -1)))
                          .sub(LaurentPoly::monomial(tab, cy.kappaHalf(-1)));
    G = G.mul(RationalFunction(num, Monomial(tab->size()), {cy.tvar(k, -1)}));
  }
  TruncatedSeries arg = TruncatedSeries::fromRF(G.neg(), tr).mulMixedTerm(Rational(1), Q);
  arg = arg.mul(expandFactor(tab, Q.mul(cy.kappaHalf(1)), {}, tr));
  arg = arg.mul(expandFactor(tab, Q.mul(cy.kappaHalf(-1)), {}, tr));
  TruncatedSeries rhs = plethSymSeries(arg);

  Report rep;
  rep.title = "nekrasov[maxN=" + std::to_string(maxN) + "]";
  for (long n = 0; n <= maxN; ++n) {
    RationalFunction a = lhs.coefficient(Q.pow(n));
    RationalFunction b = rhs.coefficient(Q.pow(n));
    rep.add("Q^" + std::to_string(n), a.equals(b),
            "lhs = " + a.str() + "  rhs = " + b.str());
  }
  return rep;
}

}  // namespace vertexlab
