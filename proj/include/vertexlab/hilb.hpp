#pragma once

#include "vertexlab/character.hpp"
#include "vertexlab/edge.hpp"
#include "vertexlab/parallel.hpp"
#include "vertexlab/report.hpp"

namespace vertexlab {

/// Truncated expansion of 1/(1 - c w).
inline TruncatedSeries expandFactorC(const TablePtr& tab, const Rational& c, const Monomial& w,
                                     const std::map<int, int>& dirs, const Truncation& tr) {
  if (c == 0) return TruncatedSeries::one(tab, tr);
  if (w.isOne() && c == 1) throw PoleError("expansion of 1/(1-1)");
  long grade = 0;
  for (int i : tab->countingIdx()) {
    auto it = dirs.find(i);
    grade += static_cast<long>(it == dirs.end() ? 1 : it->second) * w.e2[i];
  }
  if (grade == 0) throw DirectionError("factor has no counting grade: " + monoStr(tab, w));
  Monomial base = w;
  Rational cc = c, sign(1);
  Monomial shift(tab->size());
  Rational shiftC(1);
  if (grade < 0) {  // 1/(1-cw) = -(cw)^{-1}/(1-(cw)^{-1})
    base = w.inv();
    cc = Rational(1) / c;
    sign = Rational(-1);
    shift = w.inv();
    shiftC = Rational(1) / c;
  }
  long kmax = -1;
  for (auto& g : tr.groups) {
    if (g.cap2 >= Truncation::INF) continue;
    long d = g.deg(base);
    if (d > 0) {
      long room = g.cap2 + std::max<long>(0, -g.deg(shift));
      kmax = kmax < 0 ? room / d : std::min(kmax, room / d);
    }
  }
  if (kmax < 0) throw DirectionError("factor escapes every truncation cap: " + monoStr(tab, w));
  TruncatedSeries s(tab, tr);
  Monomial acc = shift;
  Rational accC = sign * shiftC;
  for (long k = 0; k <= kmax; ++k) {
    s.addMixedTerm(accC, acc);
    acc = acc.mul(base);
    accC *= cc;
  }
  return s;
}

/// Argument slot of the localization series: coeff * monomial (coeff 0 = the
/// slot is switched off).
struct FArg {
  Rational c;
  Monomial m;
  static FArg off(const TablePtr& tab) { return {Rational(0), Monomial(tab->size())}; }
  static FArg var(const TablePtr& tab, const std::string& n) {
    return {Rational(1), varMono(tab, n)};
  }
  bool isOff() const { return c == 0; }
};

struct FParams {
  FArg box, m1, m2, m3, segre;
  Monomial w1, w2;  // tangent weights of the chart
};

/// Localization sum over partitions with at most maxBoxes boxes:
///   sum_lam box^{|lam|} / Lambda(T_lam(w1,w2)^dual)
///     prod (1-m1 W)(1-m2 W)(1-m3 segre W^{-1}) / (segre - W),  W = w1^{b1} w2^{b2}.
/// The last factor expands in positive powers of the segre slot.
inline TruncatedSeries computeFGeneral(const TablePtr& tab, const FParams& par,
                                       const Truncation& tr, int maxBoxes, int jobs = 1) {
  auto lams = partitionsUpTo(maxBoxes);
  auto summand = [&](size_t li) {
    const Partition& lam = lams[li];
    // 1 / Lambda(T^dual): denominator factors are the inverted tangent weights
    RationalFunction coeff = RationalFunction::one(tab);
    for (auto [b1, b2] : lam.boxes()) {
      auto [a, l] = lam.armLeg(b1, b2);
      coeff.den.push_back(par.w1.pow(l).mul(par.w2.pow(-a - 1)));
      coeff.den.push_back(par.w1.pow(-l - 1).mul(par.w2.pow(a)));
    }
    coeff.normalize();
    TruncatedSeries s = TruncatedSeries::fromRF(coeff, tr);
    s = s.mulMixedTerm(ratPow(par.box.c, lam.size()), par.box.m.pow(lam.size()));
    for (auto [b1, b2] : lam.boxes()) {
      Monomial W = par.w1.pow(b1).mul(par.w2.pow(b2));
      for (const FArg* mi : {&par.m1, &par.m2}) {
        if (mi->isOff()) continue;
        TruncatedSeries f(tab, tr);
        f.addMixedTerm(Rational(1), Monomial(tab->size()));
        f.addMixedTerm(-mi->c, mi->m.mul(W));
        s = s.mul(f);
      }
      if (!par.m3.isOff() && !par.segre.isOff()) {
        TruncatedSeries f(tab, tr);
        f.addMixedTerm(Rational(1), Monomial(tab->size()));
        f.addMixedTerm(-par.m3.c * par.segre.c, par.m3.m.mul(par.segre.m).mul(W.inv()));
        s = s.mul(f);
      }
      // 1/(segre - W) = -W^{-1} / (1 - segre W^{-1})
      s = s.mulMixedTerm(Rational(-1), W.inv());
      if (!par.segre.isOff())
        s = s.mul(expandFactorC(tab, par.segre.c, par.segre.m.mul(W.inv()), {}, tr));
    }
    return s;
  };
  return parallelMapReduce<TruncatedSeries>(
      lams.size(), jobs, summand,
      [](TruncatedSeries a, TruncatedSeries b) { return a.add(b); },
      TruncatedSeries::zero(tab, tr));
}

/// Working table for the Hilbert scheme of points on the plane: z,y counting;
/// the Chern slots m1,m2,m3 stay symbolic inside the coefficients.
inline TablePtr hilbTable() {
  return VarTable::make({{"t1", VarKind::equivariant},
                         {"t2", VarKind::equivariant},
                         {"m1", VarKind::equivariant},
                         {"m2", VarKind::equivariant},
                         {"m3", VarKind::equivariant},
                         {"z", VarKind::counting},
                         {"y", VarKind::counting}});
}

struct FContext {
  long Nz = 2, Ny = 2;
  int jobs = 1;
};

inline TruncatedSeries computeF(const FContext& ctx) {
  auto tab = hilbTable();
  Truncation tr = Truncation::single(tab, {"z"}, ctx.Nz).with(tab, {"y"}, ctx.Ny);
  FParams par{FArg::var(tab, "z"),  FArg::var(tab, "m1"), FArg::var(tab, "m2"),
              FArg::var(tab, "m3"), FArg::var(tab, "y"),  varMono(tab, "t1"),
              varMono(tab, "t2")};
  return computeFGeneral(tab, par, tr, static_cast<int>(ctx.Nz), ctx.jobs);
}

/// F(z,m1,m2,m3,0) against the plethystic exponential of
/// -z (1-m1)(1-m2) / ((1-1/t1)(1-1/t2)), coefficient by coefficient.
inline Report verifyDenominator(long Nz, int jobs = 1, bool corrupt = false) {
  auto tab = hilbTable();
  Truncation tr = Truncation::single(tab, {"z"}, Nz).with(tab, {"y"}, 0);
  FParams par{FArg::var(tab, "z"),  FArg::var(tab, "m1"), FArg::var(tab, "m2"),
              FArg::var(tab, "m3"), FArg::var(tab, "y"),  varMono(tab, "t1"),
              varMono(tab, "t2")};
  TruncatedSeries F0 = computeFGeneral(tab, par, tr, static_cast<int>(Nz), jobs).atZero("y");

  LaurentPoly num = LaurentPoly::constant(tab, Rational(-1));
  for (auto& m : {"m1", "m2"})
    num = num.sub(num.mulMonomial(varMono(tab, m)));
  RationalFunction arg1(num, Monomial(tab->size()),
                        {varMono(tab, "t1", -1), varMono(tab, "t2", -1)});
  if (corrupt) arg1 = arg1.neg();
  TruncatedSeries arg = TruncatedSeries::fromRF(arg1, tr).mulMixedTerm(Rational(1),
                                                                       varMono(tab, "z"));
  TruncatedSeries rhs = plethSymSeries(arg);

  Report rep;
  rep.title = "denominator[Nz=" + std::to_string(Nz) + "]";
  Monomial z = varMono(tab, "z");
  for (long n = 0; n <= Nz; ++n) {
    RationalFunction a = F0.coefficient(z.pow(n));
    RationalFunction b = rhs.coefficient(z.pow(n));
    rep.add("z^" + std::to_string(n), a.equals(b), "lhs = " + a.str() + "  rhs = " + b.str());
  }
  return rep;
}

/// The three normalized series related by the Chern-slot swap and the
/// box-count/Segre swap, compared as exact rational functions per coefficient.
inline Report verifySymmetry(long Nz, long Ny, int jobs = 1) {
  auto tab = hilbTable();
  long K = std::max(Nz, Ny);
  FContext ctx{K, K, jobs};
  TruncatedSeries F = computeF(ctx);
  TruncatedSeries R = F.mul(F.atZero("y").inverse());

  VarMap swapM = VarMap::identity(tab);
  swapM.setVar("m2", "m3").setVar("m3", "m2");
  TruncatedSeries Rm = R.substituted(swapM, R.trunc);

  VarMap swapZY = VarMap::identity(tab);
  swapZY.setVar("z", "y").setVar("y", "z");
  TruncatedSeries Rs = R.substituted(swapZY, R.trunc);

  Truncation want = Truncation::single(tab, {"z"}, Nz).with(tab, {"y"}, Ny);
  Report rep;
  rep.title = "symmetry[Nz=" + std::to_string(Nz) + ",Ny=" + std::to_string(Ny) + "]";
  Monomial w;
  bool okM = R.equalsWithin(Rm, want, &w);
  rep.add("chern swap m2<->m3", okM, okM ? "" : "first mismatch at " + monoStr(tab, w));
  bool okS = R.equalsWithin(Rs, want, &w);
  rep.add("box-count/segre swap", okS, okS ? "" : "first mismatch at " + monoStr(tab, w));
  return rep;
}

}  // namespace vertexlab
