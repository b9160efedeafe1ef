#pragma once

#include <climits>
#include <functional>
#include <map>
#include <optional>

#include "vertexlab/ratfunc.hpp"

namespace vertexlab {

/// Truncation metadata: groups of counting variables with a doubled-degree cap.
/// Arithmetic never extends precision: binary operations recompute the caps of
/// the result from both operands.
struct Truncation {
  static constexpr long INF = LONG_MAX / 8;

  struct Group {
    std::vector<int> vars;
    std::vector<int> weight;  // empty = all +1; degree = sum weight_i * exp_i
    long cap2 = INF;

    long deg(const Monomial& m) const {
      long s = 0;
      for (size_t i = 0; i < vars.size(); ++i)
        s += static_cast<long>(weight.empty() ? 1 : weight[i]) * m.e2[vars[i]];
      return s;
    }
  };
  std::vector<Group> groups;

  static Truncation none() { return {}; }
  static Truncation single(const TablePtr& tab, const std::vector<std::string>& vars,
                           long cap /*plain units*/) {
    Truncation t;
    Group g;
    for (auto& v : vars) g.vars.push_back(tab->indexOrThrow(v));
    g.cap2 = 2 * cap;
    t.groups.push_back(std::move(g));
    return t;
  }
  Truncation with(const TablePtr& tab, const std::vector<std::string>& vars, long cap) const {
    Truncation t = *this;
    Group g;
    for (auto& v : vars) g.vars.push_back(tab->indexOrThrow(v));
    g.cap2 = 2 * cap;
    t.groups.push_back(std::move(g));
    return t;
  }
  Truncation withWeighted(const TablePtr& tab,
                          const std::vector<std::pair<std::string, int>>& vw, long cap) const {
    Truncation t = *this;
    Group g;
    for (auto& [v, w] : vw) {
      g.vars.push_back(tab->indexOrThrow(v));
      g.weight.push_back(w);
    }
    g.cap2 = 2 * cap;
    t.groups.push_back(std::move(g));
    return t;
  }

  bool admits(const Monomial& m) const {
    for (auto& g : groups)
      if (g.deg(m) > g.cap2) return false;
    return true;
  }

  bool sameShape(const Truncation& o) const {
    if (groups.size() != o.groups.size()) return false;
    for (size_t i = 0; i < groups.size(); ++i)
      if (groups[i].vars != o.groups[i].vars || groups[i].weight != o.groups[i].weight)
        return false;
    return true;
  }

  /// Caps at least as tight as the argument's, group by group.
  bool covers(const Truncation& req) const {
    if (!sameShape(req)) return false;
    for (size_t i = 0; i < groups.size(); ++i)
      if (groups[i].cap2 < req.groups[i].cap2) return false;
    return true;
  }

  static Truncation minCaps(const Truncation& a, const Truncation& b) {
    if (!a.sameShape(b)) throw TruncationError("mismatched truncation shapes");
    Truncation t = a;
    for (size_t i = 0; i < t.groups.size(); ++i)
      t.groups[i].cap2 = std::min(t.groups[i].cap2, b.groups[i].cap2);
    return t;
  }
};

inline long satAdd(long a, long b) {
  if (a >= Truncation::INF || b >= Truncation::INF) return Truncation::INF;
  return a + b;
}

/// Multivariate power series in counting variables, truncated per Truncation,
/// with coefficients that are rational functions in the equivariant variables.
class TruncatedSeries {
 public:
  TablePtr tab;
  Truncation trunc;
  std::map<Monomial, RationalFunction> coef;  // keys: counting monomials

  TruncatedSeries() = default;
  TruncatedSeries(TablePtr t, Truncation tr) : tab(std::move(t)), trunc(std::move(tr)) {}

  static TruncatedSeries zero(TablePtr t, Truncation tr) {
    return TruncatedSeries(std::move(t), std::move(tr));
  }
  static TruncatedSeries one(TablePtr t, Truncation tr) {
    TruncatedSeries s(std::move(t), std::move(tr));
    s.addTerm(Monomial(s.tab->size()), RationalFunction::one(s.tab));
    return s;
  }
  static TruncatedSeries term(TablePtr t, Truncation tr, const Rational& c, const Monomial& m) {
    TruncatedSeries s(std::move(t), std::move(tr));
    s.addMixedTerm(c, m);
    return s;
  }
  /// Constant coefficient (no counting variables inside rf).
  static TruncatedSeries fromRF(RationalFunction rf, Truncation tr) {
    TruncatedSeries s(rf.table(), std::move(tr));
    s.addTerm(Monomial(s.tab->size()), std::move(rf));
    return s;
  }

  bool isZero() const { return coef.empty(); }

  void checkCoeffFree(const RationalFunction& rf) const {
    auto freeOfCounting = [&](const Monomial& m) {
      for (int i : tab->countingIdx())
        if (m.e2[i] != 0) return false;
      return true;
    };
    if (!freeOfCounting(rf.unit)) throw DomainError("coefficient unit carries counting variables");
    for (auto& [m, c] : rf.num.terms)
      if (!freeOfCounting(m)) throw DomainError("coefficient carries counting variables");
    for (auto& w : rf.den)
      if (!freeOfCounting(w)) throw DomainError("coefficient denominator carries counting variables");
  }

  void addTerm(const Monomial& key, const RationalFunction& rf) {
    if (rf.isZero()) return;
    checkCoeffFree(rf);
    if (!trunc.admits(key)) return;
    auto it = coef.find(key);
    if (it == coef.end()) {
      coef.emplace(key, rf);
    } else {
      it->second = it->second.add(rf);
      if (it->second.isZero()) coef.erase(it);
    }
  }

  /// Adds c * m where m may mix counting and equivariant variables.
  void addMixedTerm(const Rational& c, const Monomial& m) {
    if (c == 0) return;
    Monomial key(tab->size()), eq(tab->size());
    for (size_t i = 0; i < m.e2.size(); ++i)
      (tab->isCounting(static_cast<int>(i)) ? key : eq).e2[i] = m.e2[i];
    RationalFunction rf = RationalFunction::one(tab);
    rf.unit = eq;
    rf.num = rf.num.mulScalar(c);
    addTerm(key, rf);
  }

  RationalFunction coefficient(const Monomial& key) const {
    auto it = coef.find(key);
    return it == coef.end() ? RationalFunction::zero(tab) : it->second;
  }
  RationalFunction coefficientOf(const std::vector<std::pair<std::string, long>>& exps) const {
    Monomial key(tab->size());
    for (auto& [n, e] : exps) key.e2[tab->indexOrThrow(n)] = static_cast<int32_t>(2 * e);
    return coefficient(key);
  }

  /// Minimal doubled degree of the stored support on a group; INF when empty.
  long minDegOn(const Truncation::Group& g) const {
    long m = Truncation::INF;
    for (auto& [k, c] : coef) m = std::min(m, g.deg(k));
    return m;
  }

  TruncatedSeries truncated(const Truncation& t) const {
    TruncatedSeries r(tab, t);
    for (auto& [k, c] : coef)
      if (t.admits(k)) r.coef.emplace(k, c);
    return r;
  }

  TruncatedSeries add(const TruncatedSeries& o) const {
    TruncatedSeries r(tab, Truncation::minCaps(trunc, o.trunc));
    r.coef = coef;
    for (auto& [k, c] : o.coef) {
      auto it = r.coef.find(k);
      if (it == r.coef.end())
        r.coef.emplace(k, c);
      else {
        it->second = it->second.add(c);
        if (it->second.isZero()) r.coef.erase(it);
      }
    }
    // drop outside the tightened caps
    for (auto it = r.coef.begin(); it != r.coef.end();)
      it = r.trunc.admits(it->first) ? std::next(it) : r.coef.erase(it);
    return r;
  }
  TruncatedSeries neg() const {
    TruncatedSeries r = *this;
    for (auto& [k, c] : r.coef) c = c.neg();
    return r;
  }
  TruncatedSeries sub(const TruncatedSeries& o) const { return add(o.neg()); }
  TruncatedSeries mulScalar(const Rational& s) const {
    TruncatedSeries r(tab, trunc);
    if (s == 0) return r;
    r.coef = coef;
    for (auto& [k, c] : r.coef) c = c.mulScalar(s);
    return r;
  }
  TruncatedSeries mulRF(const RationalFunction& rf) const {
    TruncatedSeries r(tab, trunc);
    if (rf.isZero()) return r;
    checkCoeffFree(rf);
    for (auto& [k, c] : coef) r.coef.emplace(k, c.mul(rf));
    return r;
  }

  /// Product caps: cap_g(fg) = min over operands of cap_g(x) + lower bound on
  /// the full degree of the other operand in group g.
  static Truncation mulCaps(const TruncatedSeries& a, const TruncatedSeries& b) {
    Truncation t = Truncation::minCaps(a.trunc, b.trunc);
    for (size_t i = 0; i < t.groups.size(); ++i) {
      const auto& ga = a.trunc.groups[i];
      const auto& gb = b.trunc.groups[i];
      long mina = std::min(a.minDegOn(ga), satAdd(ga.cap2, 1));
      long minb = std::min(b.minDegOn(gb), satAdd(gb.cap2, 1));
      t.groups[i].cap2 = std::min(satAdd(ga.cap2, minb), satAdd(gb.cap2, mina));
    }
    return t;
  }

  TruncatedSeries mul(const TruncatedSeries& o) const {
    TruncatedSeries r(tab, mulCaps(*this, o));
    const TruncatedSeries& small = coef.size() <= o.coef.size() ? *this : o;
    const TruncatedSeries& big = coef.size() <= o.coef.size() ? o : *this;
    for (auto& [k1, c1] : small.coef)
      for (auto& [k2, c2] : big.coef) {
        Monomial k = k1.mul(k2);
        if (!r.trunc.admits(k)) continue;
        RationalFunction p = c1.mul(c2);
        if (p.isZero()) continue;
        auto it = r.coef.find(k);
        if (it == r.coef.end())
          r.coef.emplace(std::move(k), std::move(p));
        else {
          it->second = it->second.add(p);
          if (it->second.isZero()) r.coef.erase(it);
        }
      }
    return r;
  }

  /// Multiply by c * m with m mixing counting and equivariant parts.
  TruncatedSeries mulMixedTerm(const Rational& c, const Monomial& m) const {
    TruncatedSeries f(tab, trunc);
    for (auto& g : f.trunc.groups) g.cap2 = Truncation::INF;
    f.addMixedTerm(c, m);
    return mul(f);
  }

  TruncatedSeries pow(unsigned k) const {
    TruncatedSeries acc = one(tab, trunc);
    TruncatedSeries b = *this;
    while (k) {
      if (k & 1) acc = acc.mul(b);
      if (k >>= 1) b = b.mul(b);
    }
    return acc;
  }

  /// Largest j for which x^j can still meet the truncation: needs a capped
  /// group where every term of x has strictly positive degree.
  long iterationBound() const {
    long best = -1;
    for (auto& g : trunc.groups) {
      if (g.cap2 >= Truncation::INF) continue;
      long md = minDegOn(g);
      if (md <= 0 || md >= Truncation::INF) continue;
      best = std::max(best, g.cap2 / md);
    }
    if (best < 0) throw TruncationError("series has no positively graded capped group");
    return best;
  }

  /// 1/f for f with invertible (monomial) constant coefficient.
  TruncatedSeries inverse() const {
    Monomial unitKey(tab->size());
    RationalFunction c0 = coefficient(unitKey);
    if (c0.isZero()) throw DomainError("series inverse: constant term is zero");
    RationalFunction c0inv = c0.reciprocal();
    TruncatedSeries x = mulRF(c0inv);
    x.coef.erase(unitKey);  // x = f/c0 - 1
    if (x.isZero()) return one(tab, trunc).mulRF(c0inv);
    long jmax = x.iterationBound();
    TruncatedSeries acc = one(tab, trunc);
    TruncatedSeries p = one(tab, trunc);
    for (long j = 1; j <= jmax; ++j) {
      p = p.mul(x).neg();
      acc = acc.add(p);
    }
    return acc.mulRF(c0inv);
  }

  /// exp(f), f without constant term.
  TruncatedSeries expSeries() const {
    if (coef.count(Monomial(tab->size())))
      throw DomainError("exp: argument has a constant term");
    if (isZero()) return one(tab, trunc);
    long jmax = iterationBound();
    TruncatedSeries acc = one(tab, trunc);
    TruncatedSeries p = one(tab, trunc);
    Rational fact(1);
    for (long j = 1; j <= jmax; ++j) {
      p = p.mul(*this);
      fact *= j;
      acc = acc.add(p.mulScalar(Rational(1) / fact));
    }
    return acc;
  }

  /// log(f), constant term 1.
  TruncatedSeries logSeries() const {
    Monomial unitKey(tab->size());
    if (!coefficient(unitKey).isOne()) throw DomainError("log: constant term must be 1");
    TruncatedSeries x = *this;
    x.coef.erase(unitKey);
    if (x.isZero()) return zero(tab, trunc);
    long jmax = x.iterationBound();
    TruncatedSeries acc = zero(tab, trunc);
    TruncatedSeries p = one(tab, trunc);
    for (long j = 1; j <= jmax; ++j) {
      p = p.mul(x);
      Rational c = Rational((j % 2) ? 1 : -1) / Rational(j);
      acc = acc.add(p.mulScalar(c));
    }
    return acc;
  }

  /// Adams operation on the whole series (keys and coefficients).
  TruncatedSeries psi(long n) const {
    Truncation t = trunc;
    for (auto& g : t.groups)
      if (g.cap2 < Truncation::INF) { /* caps stay: psi only fills sparser lattice */
      }
    TruncatedSeries r(tab, t);
    for (auto& [k, c] : coef) {
      Monomial kk = k.pow(n);
      if (!t.admits(kk)) continue;
      RationalFunction cc;
      cc.num = c.num.psi(n);
      cc.unit = c.unit.pow(n);
      for (auto& w : c.den) cc.den.push_back(w.pow(n));
      cc.normalize();
      r.addTerm(kk, cc);
    }
    return r;
  }

  /// Keeps only terms with exponent zero in the named counting variable.
  TruncatedSeries atZero(const std::string& var) const {
    int i = tab->indexOrThrow(var);
    TruncatedSeries r(tab, trunc);
    for (auto& [k, c] : coef)
      if (k.e2[i] == 0) r.coef.emplace(k, c);
    return r;
  }

  TruncatedSeries substituted(const VarMap& vm, const Truncation& newTrunc) const {
    // soundness: every finite-cap source group must map onto a target group of
    // the same cap with every variable's image degree matching its source degree
    for (auto& g : trunc.groups) {
      if (g.cap2 >= Truncation::INF) continue;
      bool matched = false;
      for (auto& h : newTrunc.groups) {
        if (h.cap2 != g.cap2) continue;
        bool ok = true;
        for (size_t v = 0; v < vm.src->size(); ++v) {
          long want = 0;
          for (int gv : g.vars)
            if (gv == static_cast<int>(v)) want = 2;
          long got = h.deg(vm.image[v]);
          if (got != want || (want != 0 && vm.coeff[v] == 0)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          matched = true;
          break;
        }
      }
      if (!matched)
        throw TruncationError("substitution does not preserve a truncation group");
    }
    TruncatedSeries r(vm.dst, newTrunc);
    for (auto& [k, c] : coef) {
      auto [s, img] = vm.applyMono(k);
      RationalFunction rc = c.substituted(vm).mulScalar(s);
      if (rc.isZero()) continue;
      // the image key may now mix counting and equivariant target variables
      Monomial key(vm.dst->size()), eq(vm.dst->size());
      for (size_t i = 0; i < img.e2.size(); ++i)
        (vm.dst->isCounting(static_cast<int>(i)) ? key : eq).e2[i] = img.e2[i];
      if (!eq.isOne()) rc = rc.mulMonomial(eq);
      // counting variables hiding in the substituted coefficient move to keys
      if (!r.trunc.admits(key)) continue;
      bool pureEq = true;
      for (int ci : vm.dst->countingIdx())
        if (rc.unit.e2[ci] != 0) pureEq = false;
      for (auto& [m, cc] : rc.num.terms)
        for (int ci : vm.dst->countingIdx())
          if (m.e2[ci] != 0) pureEq = false;
      if (pureEq) {
        r.addTerm(key, rc);
      } else {
        for (auto& w : rc.den) r.checkCoeffFree(RationalFunction(LaurentPoly::monomial(vm.dst, w)));
        Monomial ukey(vm.dst->size()), ueq(vm.dst->size());
        for (size_t i = 0; i < rc.unit.e2.size(); ++i)
          (vm.dst->isCounting(static_cast<int>(i)) ? ukey : ueq).e2[i] = rc.unit.e2[i];
        for (auto& [m, cc] : rc.num.terms) {
          Monomial mkey = ukey, meq = ueq;
          for (size_t i = 0; i < m.e2.size(); ++i)
            (vm.dst->isCounting(static_cast<int>(i)) ? mkey : meq).e2[i] += m.e2[i];
          RationalFunction part(LaurentPoly::monomial(vm.dst, meq, cc));
          part.den = rc.den;
          part.normalize();
          r.addTerm(key.mul(mkey), part);
        }
      }
    }
    return r;
  }

  bool equalsWithin(const TruncatedSeries& o, const Truncation& req, Monomial* witness = nullptr) const {
    if (!trunc.covers(req) || !o.trunc.covers(req))
      throw TruncationError("comparison requested beyond computed precision");
    auto check = [&](const std::map<Monomial, RationalFunction>& a,
                     const std::map<Monomial, RationalFunction>& b) {
      for (auto& [k, c] : a) {
        if (!req.admits(k)) continue;
        auto it = b.find(k);
        RationalFunction other = it == b.end() ? RationalFunction::zero(tab) : it->second;
        if (!c.equals(other)) {
          if (witness) *witness = k;
          return false;
        }
      }
      return true;
    };
    return check(coef, o.coef) && check(o.coef, coef);
  }

  std::string str() const {
    if (coef.empty()) return "0";
    std::string s;
    for (auto& [k, c] : coef) {
      if (!s.empty()) s += "  +  ";
      s += "[" + monoStr(tab, k) + "] (" + c.str() + ")";
    }
    return s;
  }
};

/// Truncated expansion of 1/(1-w).
/// The orientation assigns each counting variable a direction; w must have a
/// nonzero counting grade under it, otherwise there is no consistent expansion.
inline TruncatedSeries expandFactor(const TablePtr& tab, const Monomial& w,
                                    const std::map<int, int>& dirs, const Truncation& tr) {
  if (w.isOne()) throw PoleError("expansion of 1/(1-1)");
  long grade = 0;
  for (int i : tab->countingIdx()) {
    auto it = dirs.find(i);
    grade += static_cast<long>(it == dirs.end() ? 1 : it->second) * w.e2[i];
  }
  if (grade == 0) throw DirectionError("factor has no counting grade: " + monoStr(tab, w));
  Monomial base = w;
  Rational sign(1);
  Monomial shift(tab->size());
  if (grade < 0) {  // 1/(1-w) = -w^{-1}/(1-w^{-1})
    base = w.inv();
    sign = Rational(-1);
    shift = w.inv();
  }
  // bound the power: every capped group in which base grows positively
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
  for (long k = 0; k <= kmax; ++k) {
    s.addMixedTerm(sign, acc);
    acc = acc.mul(base);
  }
  return s;
}

/// Truncated expansion of a whole rational function under the orientation.
inline TruncatedSeries expandRF(const RationalFunction& rf, const std::map<int, int>& dirs,
                                const Truncation& tr) {
  TablePtr tab = rf.table();
  TruncatedSeries s(tab, tr);
  for (auto& g : s.trunc.groups) g.cap2 = Truncation::INF;
  s = TruncatedSeries::zero(tab, tr);
  TruncatedSeries acc(tab, tr);
  // numerator terms and unit may carry counting variables
  for (auto& [m, c] : rf.num.terms) acc.addMixedTerm(c, m.mul(rf.unit));
  for (auto& w : rf.den) acc = acc.mul(expandFactor(tab, w, dirs, tr));
  return acc;
}

}  // namespace vertexlab
