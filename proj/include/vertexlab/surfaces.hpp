#pragma once

#include "vertexlab/hilb.hpp"

namespace vertexlab {

/// Working table for tautological series over surfaces: z (box count), m
/// (exterior slot), y (symmetric slot) counting; t1,t2 equivariant.
inline TablePtr surfTable() {
  return VarTable::make({{"t1", VarKind::equivariant},
                         {"t2", VarKind::equivariant},
                         {"z", VarKind::counting},
                         {"m", VarKind::counting},
                         {"y", VarKind::counting}});
}

struct SurfacePoint {
  Monomial w1, w2;                // tangent weights
  std::vector<Monomial> bundle;   // fiber weights of the equivariant bundle
};

struct ToricSurfaceData {
  std::string label;
  std::vector<SurfacePoint> pts;
};

/// Projective plane with the standard fan; O(d) trivialized by the d-th power
/// of the corresponding coordinate at each fixed point.
inline ToricSurfaceData makeP2(const TablePtr& tab, const std::vector<int>& degs) {
  Monomial t1 = varMono(tab, "t1"), t2 = varMono(tab, "t2");
  ToricSurfaceData S;
  S.label = "P2";
  SurfacePoint p0{t1, t2, {}}, p1{t1.inv(), t1.inv().mul(t2), {}},
      p2{t2.inv(), t1.mul(t2.inv()), {}};
  for (int d : degs) {
    p0.bundle.push_back(Monomial(tab->size()));
    p1.bundle.push_back(t1.pow(d));
    p2.bundle.push_back(t2.pow(d));
  }
  S.pts = {p0, p1, p2};
  return S;
}

/// Product of two lines; O(a,b) with the analogous linearization.
inline ToricSurfaceData makeP1P1(const TablePtr& tab,
                                 const std::vector<std::pair<int, int>>& degs) {
  Monomial t1 = varMono(tab, "t1"), t2 = varMono(tab, "t2");
  ToricSurfaceData S;
  S.label = "P1xP1";
  SurfacePoint p00{t1, t2, {}}, p10{t1.inv(), t2, {}}, p01{t1, t2.inv(), {}},
      p11{t1.inv(), t2.inv(), {}};
  for (auto [a, b] : degs) {
    p00.bundle.push_back(Monomial(tab->size()));
    p10.bundle.push_back(t1.pow(a));
    p01.bundle.push_back(t2.pow(b));
    p11.bundle.push_back(t1.pow(a).mul(t2.pow(b)));
  }
  S.pts = {p00, p10, p01, p11};
  return S;
}

/// Cotangent bundle data: fiber weights are the inverted tangent weights.
inline ToricSurfaceData cotangentP1P1(const TablePtr& tab) {
  ToricSurfaceData S = makeP1P1(tab, {});
  S.label = "P1xP1 cotangent";
  for (auto& p : S.pts) p.bundle = {p.w1.inv(), p.w2.inv()};
  return S;
}

/// chi of an equivariant bundle on the surface itself, by localization:
/// sum_i (sum of fiber weights) / ((1-w1^{-1})(1-w2^{-1})).
inline RationalFunction chiSurfaceBundle(const TablePtr& tab, const ToricSurfaceData& S) {
  RationalFunction acc = RationalFunction::zero(tab);
  for (auto& p : S.pts) {
    LaurentPoly num(tab);
    for (auto& b : p.bundle) num.addTerm(b, Rational(1));
    acc = acc.add(RationalFunction(num, Monomial(tab->size()),
                                   {p.w1.inv(), p.w2.inv()}));
  }
  return acc;
}

enum class Functor { lambda, sym, gseries };

/// Equivariant tautological series on the Hilbert schemes of one chart:
///   lambda:  sum_lam z^{|lam|} / L(T^dual) prod_box prod_l (1 - m l W^{-1})
///   sym:     sum_lam z^{|lam|} / L(T^dual) prod_box 1/(1 - y l W^{-1})
///   gseries: sum_lam (y l)^{|lam|} / L(T^dual) prod_box (1 - z W^{-1})(-W^{-1})
inline TruncatedSeries chartSeries(const TablePtr& tab, const SurfacePoint& p, Functor f,
                                   const Truncation& tr, int maxBoxes) {
  TruncatedSeries total = TruncatedSeries::zero(tab, tr);
  for (auto& lam : partitionsUpTo(maxBoxes)) {
    RationalFunction coeff = RationalFunction::one(tab);
    for (auto [b1, b2] : lam.boxes()) {
      auto [a, l] = lam.armLeg(b1, b2);
      coeff.den.push_back(p.w1.pow(l).mul(p.w2.pow(-a - 1)));
      coeff.den.push_back(p.w1.pow(-l - 1).mul(p.w2.pow(a)));
    }
    coeff.normalize();
    TruncatedSeries s = TruncatedSeries::fromRF(coeff, tr);
    if (f == Functor::gseries) {
      if (p.bundle.size() != 1) throw DomainError("rank-one series needs one fiber weight");
      s = s.mulMixedTerm(Rational(1),
                         varMono(tab, "y", lam.size()).mul(p.bundle[0].pow(lam.size())));
    } else {
      s = s.mulMixedTerm(Rational(1), varMono(tab, "z", lam.size()));
    }
    for (auto [b1, b2] : lam.boxes()) {
      Monomial Winv = p.w1.pow(-b1).mul(p.w2.pow(-b2));
      if (f == Functor::lambda) {
        for (auto& l : p.bundle) {
          TruncatedSeries fac(tab, tr);
          fac.addMixedTerm(Rational(1), Monomial(tab->size()));
          fac.addMixedTerm(Rational(-1), varMono(tab, "m").mul(l).mul(Winv));
          s = s.mul(fac);
        }
      } else if (f == Functor::sym) {
        if (p.bundle.size() != 1) throw DomainError("symmetric series needs a line bundle");
        s = s.mul(expandFactorC(tab, Rational(1), varMono(tab, "y").mul(p.bundle[0]).mul(Winv),
                                {}, tr));
      } else {
        TruncatedSeries fac(tab, tr);
        fac.addMixedTerm(Rational(1), Monomial(tab->size()));
        fac.addMixedTerm(Rational(-1), varMono(tab, "z").mul(Winv));
        s = s.mul(fac);
        s = s.mulMixedTerm(Rational(-1), Winv);
      }
    }
    total = total.add(s);
  }
  return total;
}

/// Product over the fixed points of the chart series.
inline TruncatedSeries surfaceSeries(const TablePtr& tab, const ToricSurfaceData& S, Functor f,
                                     const Truncation& tr, int maxBoxes, int jobs = 1) {
  std::vector<TruncatedSeries> parts = parallelMapReduce<std::vector<TruncatedSeries>>(
      S.pts.size(), jobs,
      [&](size_t i) {
        return std::vector<TruncatedSeries>{chartSeries(tab, S.pts[i], f, tr, maxBoxes)};
      },
      [](std::vector<TruncatedSeries> a, std::vector<TruncatedSeries> b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      },
      {});
  TruncatedSeries acc = TruncatedSeries::one(tab, tr);
  for (auto& p : parts) acc = acc.mul(p);
  return acc;
}

/// Exact limit t1,t2 -> 1 of one equivariant coefficient: substitute
/// t1 = s^a, t2 = s^b for a generic pair, cancel all (1-s) factors, evaluate.
/// Performed for two pairs and cross-checked on every call.
class NonequivariantSpecializer {
 public:
  explicit NonequivariantSpecializer(TablePtr tab)
      : tab_(std::move(tab)),
        i1_(tab_->indexOrThrow("t1")),
        i2_(tab_->indexOrThrow("t2")) {}

  Rational value(const RationalFunction& rf) const {
    auto [a, b] = pickPair(rf, 0);
    Rational v1 = valueWith(rf, a, b);
    auto [c, d] = pickPair(rf, 1);
    Rational v2 = valueWith(rf, c, d);
    if (v1 != v2)
      throw DomainError("nonequivariant limit depends on the substitution direction");
    return v1;
  }

  TruncatedSeries apply(const TruncatedSeries& s) const {
    TruncatedSeries out(s.tab, s.trunc);
    for (auto& [k, c] : s.coef)
      out.addTerm(k, RationalFunction::constant(s.tab, value(c)));
    return out;
  }

 private:
  std::pair<long, long> pickPair(const RationalFunction& rf, int skip) const {
    static const std::vector<std::pair<long, long>> pairs{
        {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}, {1, 4}, {4, 1}, {3, 4}, {4, 3}};
    int found = 0;
    for (auto [a, b] : pairs) {
      bool ok = true;
      for (auto& w : rf.den)
        if (a * w.e2[i1_] + b * w.e2[i2_] == 0) ok = false;
      if (ok && found++ == skip) return {a, b};
    }
    throw DomainError("no admissible substitution pair");
  }

  Rational valueWith(const RationalFunction& rf, long a, long b) const {
    // numerator as a univariate Laurent polynomial in s
    std::map<long, Rational> num;
    auto expOf = [&](const Monomial& m) {
      for (size_t i = 0; i < m.e2.size(); ++i)
        if (m.e2[i] != 0 && static_cast<int>(i) != i1_ && static_cast<int>(i) != i2_)
          throw DomainError("coefficient carries a variable other than t1,t2");
      return a * m.e2[i1_] + b * m.e2[i2_];
    };
    long shift = expOf(rf.unit);
    for (auto& [m, c] : rf.num.terms) {
      long e = shift + expOf(m);
      auto it = num.find(e);
      if (it == num.end())
        num.emplace(e, c);
      else {
        it->second += c;
        if (it->second == 0) num.erase(it);
      }
    }
    // denominator (1 - s^k): orient to positive k, collect pole order at s=1
    Rational scale(1);
    std::vector<long> ks;
    for (auto& w : rf.den) {
      long k = expOf(w);
      if (k == 0) throw PoleError("denominator weight annihilated by the substitution");
      if (k < 0) {
        // 1/(1-s^{-j}) = -s^{j}/(1-s^{j})
        k = -k;
        scale = -scale;
        std::map<long, Rational> shifted;
        for (auto& [e, c] : num) shifted.emplace(e + k, c);
        num = std::move(shifted);
      }
      ks.push_back(k);
    }
    // divide by (1-s) once per factor: p = (1-s) q  =>  q_e = sum_{e' <= e} p_{e'}
    for (size_t r = 0; r < ks.size(); ++r) {
      if (num.empty()) break;
      std::map<long, Rational> q;
      long lo = num.begin()->first, hi = num.rbegin()->first;
      Rational acc(0);
      for (long e = lo; e <= hi; ++e) {
        auto it = num.find(e);
        if (it != num.end()) acc += it->second;
        if (acc != 0) q.emplace(e, acc);
      }
      if (acc != 0) throw PoleError("residual pole at the nonequivariant point");
      num = std::move(q);
    }
    Rational v(0);
    for (auto& [e, c] : num) v += c;
    for (long k : ks) v /= Rational(k);
    return v * scale;
  }

  TablePtr tab_;
  int i1_, i2_;
};

}  // namespace vertexlab
