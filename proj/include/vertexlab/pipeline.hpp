#pragma once

#include "vertexlab/toric.hpp"

namespace vertexlab {

/// Rational-function coefficient table for the final specialization: the
/// box-count pair q,t is symbolic, the Kahler pair u,v counts.
inline TablePtr pipeTable() {
  return VarTable::make({{"q", VarKind::equivariant},
                         {"t", VarKind::equivariant},
                         {"m1", VarKind::equivariant},
                         {"m2", VarKind::equivariant},
                         {"m3", VarKind::equivariant},
                         {"u", VarKind::counting},
                         {"v", VarKind::counting}});
}
inline Truncation pipeTruncation(const TablePtr& tab, long uCap, long vCap) {
  return Truncation::single(tab, {"u"}, uCap).with(tab, {"v"}, vCap);
}

namespace detail {

/// Box sum common to both specialized series: outer^{|lam|} prod over boxes of
/// (1 - a W)(1 - b W)(1 - inner c W^{-1}) / ((1-q^l t^{a+1})(1-q^{-l-1} t^{-a})
/// (inner - W)) with W = q^{b1} t^{-b2}.
inline TruncatedSeries intSum(const TablePtr& tab, const Truncation& tr,
                              const std::string& outer, const std::string& inner,
                              const std::string& mA, const std::string& mB,
                              const std::string& mC, long outerCap) {
  Monomial q = varMono(tab, "q"), t = varMono(tab, "t");
  TruncatedSeries total = TruncatedSeries::zero(tab, tr);
  for (auto& lam : partitionsUpTo(static_cast<int>(outerCap))) {
    TruncatedSeries s = TruncatedSeries::term(tab, tr, Rational(1),
                                              varMono(tab, outer, lam.size()));
    RationalFunction hooks = RationalFunction::one(tab);
    for (auto [b1, b2] : lam.boxes()) {
      auto [a, l] = lam.armLeg(b1, b2);
      hooks.den.push_back(q.pow(l).mul(t.pow(a + 1)));
      hooks.den.push_back(q.pow(-l - 1).mul(t.pow(-a)));
    }
    hooks.normalize();
    s = s.mulRF(hooks);
    for (auto [b1, b2] : lam.boxes()) {
      Monomial W = q.pow(b1).mul(t.pow(-b2));
      TruncatedSeries fA(tab, tr), fB(tab, tr), fC(tab, tr);
      fA.addMixedTerm(Rational(1), Monomial(tab->size()));
      fA.addMixedTerm(Rational(-1), varMono(tab, mA).mul(W));
      fB.addMixedTerm(Rational(1), Monomial(tab->size()));
      fB.addMixedTerm(Rational(-1), varMono(tab, mB).mul(W));
      fC.addMixedTerm(Rational(1), Monomial(tab->size()));
      fC.addMixedTerm(Rational(-1), varMono(tab, inner).mul(varMono(tab, mC)).mul(W.inv()));
      s = s.mul(fA).mul(fB).mul(fC);
      // 1/(inner - W) = -W^{-1}/(1 - inner W^{-1})
      s = s.mulMixedTerm(Rational(-1), W.inv());
      s = s.mul(expandFactorC(tab, Rational(1), varMono(tab, inner).mul(W.inv()), {}, tr));
    }
    total = total.add(s);
  }
  return total;
}

/// Sym of -(outer) q (1-mA)(1-mB) / ((1-q)(1-t)), exact coefficients.
inline TruncatedSeries intTail(const TablePtr& tab, const Truncation& tr,
                               const std::string& outer, const std::string& mA,
                               const std::string& mB) {
  Monomial q = varMono(tab, "q"), t = varMono(tab, "t");
  LaurentPoly num = LaurentPoly::monomial(tab, q, Rational(-1));
  num = num.sub(num.mulMonomial(varMono(tab, mA)));
  num = num.sub(num.mulMonomial(varMono(tab, mB)));
  RationalFunction arg(num, Monomial(tab->size()), {q, t});
  return plethSymSeries(TruncatedSeries::fromRF(arg, tr)
                            .mulMixedTerm(Rational(1), varMono(tab, outer)));
}

}  // namespace detail

/// The two fully cancelled specializations, with exact rational-function
/// coefficients in q,t,m1,m2,m3.
inline TruncatedSeries intOneExact(const TablePtr& tab, long uCap, long vCap) {
  Truncation tr = pipeTruncation(tab, uCap, vCap);
  return detail::intSum(tab, tr, "v", "u", "m2", "m3", "m1", vCap)
      .mul(detail::intTail(tab, tr, "v", "m2", "m3"));
}
inline TruncatedSeries intTwoExact(const TablePtr& tab, long uCap, long vCap) {
  Truncation tr = pipeTruncation(tab, uCap, vCap);
  return detail::intSum(tab, tr, "u", "v", "m1", "m2", "m3", uCap)
      .mul(detail::intTail(tab, tr, "u", "m1", "m2"));
}

/// Rewrites a series with rational-function coefficients into a target table
/// where some of those variables count, expanding every coefficient in the
/// default positive directions.
inline TruncatedSeries expandSeriesCoefficients(const TruncatedSeries& s, const VarMap& vm,
                                                const Truncation& dstTr) {
  TruncatedSeries out = TruncatedSeries::zero(vm.dst, dstTr);
  for (auto& [k, c] : s.coef) {
    auto [kc, km] = vm.applyMono(k);
    RationalFunction rf;
    rf.num = c.num.substituted(vm);
    auto [uc, um] = vm.applyMono(c.unit);
    rf.unit = um;
    rf.num = rf.num.mulScalar(uc * kc);
    for (auto& w : c.den) {
      auto [wc, wi] = vm.applyMono(w);
      if (wc != 1 || wi.isOne()) throw PoleError("coefficient expansion hit a bad factor");
      rf.den.push_back(wi);
    }
    out = out.add(expandRF(rf, {}, dstTr).mulMixedTerm(Rational(1), km));
  }
  return out;
}

/// The shared infinite product cancelled between the two specializations:
/// prod (1-q^{i+1}t^j) (1-m1 q^i t^{j+1}) (1-m2 q^i t^{j+1}) (1-m3 q^i t^{j+1}).
inline TruncatedSeries pipelineCommonFactor(const TablePtr& stab, const Truncation& tr) {
  Monomial q = varMono(stab, "q"), t = varMono(stab, "t");
  long capPlain = 0;
  for (auto& g : tr.groups)
    if (g.cap2 < Truncation::INF) capPlain = std::max(capPlain, g.cap2 / 2);
  TruncatedSeries acc = TruncatedSeries::one(stab, tr);
  for (long i = 0; i <= capPlain; ++i)
    for (long j = 0; j <= capPlain - i; ++j) {
      {
        TruncatedSeries f(stab, tr);
        f.addMixedTerm(Rational(1), Monomial(stab->size()));
        f.addMixedTerm(Rational(-1), q.pow(i + 1).mul(t.pow(j)));
        acc = acc.mul(f);
      }
      for (auto& m : {"m1", "m2", "m3"}) {
        TruncatedSeries f(stab, tr);
        f.addMixedTerm(Rational(1), Monomial(stab->size()));
        f.addMixedTerm(Rational(-1), varMono(stab, m).mul(q.pow(i)).mul(t.pow(j + 1)));
        acc = acc.mul(f);
      }
    }
  return acc;
}

/// prod (1-x mA q^{i+1} t^j)(1-x mB q^{i+1} t^j)
///  / ((1-x q^{i+1} t^j)(1-x mA mB q^{i+1} t^j)) for a Kahler variable x.
inline TruncatedSeries middleBlock(const TablePtr& stab, const Truncation& tr,
                                   const std::string& x, const std::string& mA,
                                   const std::string& mB) {
  Monomial q = varMono(stab, "q"), t = varMono(stab, "t");
  long capPlain = 0;
  for (auto& g : tr.groups)
    if (g.cap2 < Truncation::INF) capPlain = std::max(capPlain, g.cap2 / 2);
  TruncatedSeries acc = TruncatedSeries::one(stab, tr);
  for (long i = 0; i <= capPlain; ++i)
    for (long j = 0; j <= capPlain - i; ++j) {
      Monomial base = varMono(stab, x).mul(q.pow(i + 1)).mul(t.pow(j));
      for (auto& m : {mA, mB}) {
        TruncatedSeries f(stab, tr);
        f.addMixedTerm(Rational(1), Monomial(stab->size()));
        f.addMixedTerm(Rational(-1), base.mul(varMono(stab, m)));
        acc = acc.mul(f);
      }
      acc = acc.mul(expandFactor(stab, base, directionFor(stab, base), tr));
      acc = acc.mul(expandFactor(stab, base.mul(varMono(stab, mA)).mul(varMono(stab, mB)),
                                 directionFor(stab, base), tr));
    }
  return acc;
}

/// Fixture forms of the two specialized limits before the common factor is
/// cancelled, coded directly from their box-sum expressions.
inline TruncatedSeries specializedFixture(bool firstForm, const TablePtr& stab,
                                          const Truncation& tr, long outerCapBoxes) {
  Monomial q = varMono(stab, "q"), t = varMono(stab, "t");
  const std::string outer = firstForm ? "v" : "u";
  const std::string inner = firstForm ? "u" : "v";
  const std::string mA = firstForm ? "m2" : "m1";
  const std::string mB = firstForm ? "m3" : "m2";
  const std::string mC = firstForm ? "m1" : "m3";
  TruncatedSeries sum = TruncatedSeries::zero(stab, tr);
  for (auto& lam : partitionsUpTo(static_cast<int>(outerCapBoxes))) {
    TruncatedSeries s = TruncatedSeries::term(
        stab, tr, Rational(1),
        varMono(stab, outer, lam.size()).mul(q.pow(lam.size())).mul(t.pow(lam.norm2() - lam.size())));
    for (auto [b1, b2] : lam.boxes()) {
      auto [a, l] = lam.armLeg(b1, b2);
      Monomial W = q.pow(b1).mul(t.pow(-b2));
      for (auto& m : {mA, mB}) {
        TruncatedSeries f(stab, tr);
        f.addMixedTerm(Rational(1), Monomial(stab->size()));
        f.addMixedTerm(Rational(-1), varMono(stab, m).mul(W));
        s = s.mul(f);
      }
      TruncatedSeries f(stab, tr);
      f.addMixedTerm(Rational(1), Monomial(stab->size()));
      f.addMixedTerm(Rational(-1),
                     varMono(stab, inner).mul(varMono(stab, mC)).mul(W.inv()));
      s = s.mul(f);
      s = s.mul(expandFactor(stab, q.pow(l).mul(t.pow(a + 1)), {}, tr));
      s = s.mul(expandFactor(stab, q.pow(l + 1).mul(t.pow(a)), {}, tr));
      Monomial innerW = varMono(stab, inner).mul(W.inv());
      s = s.mul(expandFactorC(stab, Rational(1), innerW, directionFor(stab, innerW), tr));
    }
    sum = sum.add(s);
  }
  const std::string nA = firstForm ? "m1" : "m2";
  const std::string nB = firstForm ? "m2" : "m3";
  return sum.mul(middleBlock(stab, tr, inner, nA, nB)).mul(pipelineCommonFactor(stab, tr));
}

struct PipelineOptions {
  long uvCap = 2;    // u,v orders of the exact comparison
  long qtOrder = 4;  // series-mode order in q,t
  long kahlerDeg = 2;
  int jobs = 1;
};

/// The full specialization chain: kill the fourth Chern slot, check the
/// vanishing strata, apply the primed substitutions, cancel the common factor,
/// and compare both routes against the exact forms and the Hilbert-scheme
/// series.
inline Report substitutionPipeline(const PipelineOptions& opt) {
  Report rep;
  rep.title = "pipeline";
  TablePtr stab = dtTable();
  Monomial q = varMono(stab, "q"), t = varMono(stab, "t");
  std::pair<Rational, Monomial> m4{
      Rational(-1), varMono(stab, "q", 1, 2).mul(varMono(stab, "t", -1, 2))};

  long slack = 2 * opt.kahlerDeg * opt.kahlerDeg + 2 * opt.kahlerDeg + 6;
  detail::CFState S = detail::cfState(opt.kahlerDeg, opt.qtOrder, slack, m4);
  Truncation want = dtTruncation(stab, opt.kahlerDeg, opt.qtOrder);

  // vanishing strata under the fourth-slot specialization
  bool vanish = true;
  for (auto& p1 : partitionsUpTo(static_cast<int>(opt.kahlerDeg))) {
    if (p1.empty()) continue;
    for (auto& p2 : partitionsUpTo(static_cast<int>(opt.kahlerDeg - p1.size()))) {
      if (!detail::x1StratumA(S, p1, p2).isZero()) vanish = false;
      if (!detail::x1StratumB(S, p2, p1).isZero()) vanish = false;
    }
  }
  rep.add("strata with a nonempty specialized leg vanish", vanish);

  TruncatedSeries S1 = TruncatedSeries::zero(stab, S.tr);
  TruncatedSeries S2 = TruncatedSeries::zero(stab, S.tr);
  for (auto& p2 : partitionsUpTo(static_cast<int>(opt.kahlerDeg))) {
    S1 = S1.add(detail::x1StratumA(S, Partition{}, p2));
    S2 = S2.add(detail::x1StratumB(S, p2, Partition{}));
  }

  // primed substitutions: u -> u q/t, v -> v q/t, m_i -> -m_i (t/q)^{1/2}
  VarMap prime = VarMap::identity(stab);
  Monomial qOverT = q.mul(t.inv());
  prime.set("u", Rational(1), varMono(stab, "u").mul(qOverT));
  prime.set("v", Rational(1), varMono(stab, "v").mul(qOverT));
  for (auto& m : {"m1", "m2", "m3"})
    prime.set(m, Rational(-1),
              varMono(stab, m).mul(varMono(stab, "t", 1, 2)).mul(varMono(stab, "q", -1, 2)));
  TruncatedSeries S1p = S1.substituted(prime, S1.trunc);
  TruncatedSeries S2p = S2.substituted(prime, S2.trunc);

  Monomial w;
  TruncatedSeries fix1 = specializedFixture(true, stab, S.tr, static_cast<int>(opt.kahlerDeg));
  bool f1 = S1p.equalsWithin(fix1, want, &w);
  rep.add("first specialized series matches its box-sum form", f1,
          f1 ? "" : "first mismatch at " + monoStr(stab, w));
  TruncatedSeries fix2 = specializedFixture(false, stab, S.tr, static_cast<int>(opt.kahlerDeg));
  bool f2 = S2p.equalsWithin(fix2, want, &w);
  rep.add("second specialized series matches its box-sum form", f2,
          f2 ? "" : "first mismatch at " + monoStr(stab, w));

  // exact forms and their expansions
  TablePtr ptab = pipeTable();
  TruncatedSeries i1 = intOneExact(ptab, opt.uvCap, opt.uvCap);
  TruncatedSeries i2 = intTwoExact(ptab, opt.uvCap, opt.uvCap);
  bool eq = i1.equalsWithin(i2, pipeTruncation(ptab, opt.uvCap, opt.uvCap), &w);
  rep.add("the two cancelled forms agree as exact rational functions", eq,
          eq ? "" : "first mismatch at " + monoStr(ptab, w));

  // divisibility: the full cancelled factor (shared infinite product and both
  // middle blocks) times the expanded exact form recovers each series
  VarMap toSeries = VarMap::renaming(ptab, stab);
  Truncation exTr = dtTruncation(stab, opt.kahlerDeg, opt.qtOrder + slack / 2);
  TruncatedSeries fullCommon = pipelineCommonFactor(stab, exTr)
                                   .mul(middleBlock(stab, exTr, "u", "m1", "m2"))
                                   .mul(middleBlock(stab, exTr, "v", "m2", "m3"));
  TruncatedSeries i1s = expandSeriesCoefficients(
      intOneExact(ptab, opt.kahlerDeg, opt.kahlerDeg), toSeries, exTr);
  TruncatedSeries i2s = expandSeriesCoefficients(
      intTwoExact(ptab, opt.kahlerDeg, opt.kahlerDeg), toSeries, exTr);
  bool d1 = fullCommon.mul(i1s).equalsWithin(S1p, want, &w);
  rep.add("first series divisible by the cancelled factor, quotient exact", d1,
          d1 ? "" : "first mismatch at " + monoStr(stab, w));
  bool d2 = fullCommon.mul(i2s).equalsWithin(S2p, want, &w);
  rep.add("second series divisible by the cancelled factor, quotient exact", d2,
          d2 ? "" : "first mismatch at " + monoStr(stab, w));

  // cross-check against the Hilbert scheme series at t1 -> q, t2 -> 1/t
  FContext ctx{opt.uvCap, opt.uvCap, opt.jobs};
  TruncatedSeries F = computeF(ctx);
  TruncatedSeries R = F.mul(F.atZero("y").inverse());
  VarMap toPipe = VarMap::renaming(hilbTable(), ptab);
  toPipe.setVar("t1", "q").setVar("t2", "t", -1).setVar("z", "u").setVar("y", "v");
  TruncatedSeries Rp = R.substituted(toPipe, pipeTruncation(ptab, opt.uvCap, opt.uvCap));
  bool fr = Rp.equalsWithin(i2, pipeTruncation(ptab, opt.uvCap, opt.uvCap), &w);
  rep.add("agreement with the Hilbert-scheme route", fr,
          fr ? "" : "first mismatch at " + monoStr(ptab, w));
  return rep;
}

}  // namespace vertexlab
