#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "vertexlab/character.hpp"
#include "vertexlab/halfpower.hpp"
#include "vertexlab/series.hpp"

using namespace vertexlab;

namespace {

TablePtr smallTab() {
  return VarTable::make({{"t1", VarKind::equivariant},
                         {"t2", VarKind::equivariant},
                         {"z", VarKind::counting}});
}

LaurentPoly randomPoly(const TablePtr& tab, std::mt19937& rng, int nterms, int maxExp) {
  std::uniform_int_distribution<int> e(-maxExp, maxExp), c(-5, 5);
  LaurentPoly p(tab);
  for (int i = 0; i < nterms; ++i) {
    Monomial m(tab->size());
    for (auto& v : m.e2) v = static_cast<int32_t>(2 * e(rng));
    p.addTerm(m, Rational(c(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("ring axioms on random Laurent polynomials") {
  auto tab = smallTab();
  std::mt19937 rng(12345);
  for (int it = 0; it < 40; ++it) {
    LaurentPoly a = randomPoly(tab, rng, 4, 3);
    LaurentPoly b = randomPoly(tab, rng, 4, 3);
    LaurentPoly c = randomPoly(tab, rng, 3, 3);
    REQUIRE(a.mul(b.mul(c)) == a.mul(b).mul(c));
    REQUIRE(a.mul(b.add(c)) == a.mul(b).add(a.mul(c)));
    REQUIRE(a.mul(b) == b.mul(a));
    REQUIRE(a.add(b.neg()).add(b) == a);
  }
}

TEST_CASE("division by (1-w)") {
  auto tab = smallTab();
  std::mt19937 rng(99);
  Monomial w = varMono(tab, "t1", 2).mul(varMono(tab, "t2", -1));
  for (int it = 0; it < 25; ++it) {
    LaurentPoly q = randomPoly(tab, rng, 5, 2);
    LaurentPoly p = q.sub(q.mulMonomial(w));  // q (1-w)
    LaurentPoly back(tab);
    REQUIRE(tryDivideOneMinus(p, w, back));
    REQUIRE(back == q);
  }
  LaurentPoly notDiv = LaurentPoly::constant(tab, Rational(1));
  LaurentPoly dummy(tab);
  REQUIRE_FALSE(tryDivideOneMinus(notDiv, w, dummy));
}

TEST_CASE("rational function equality is an equivalence under cross multiplication") {
  auto tab = smallTab();
  Monomial t1 = varMono(tab, "t1"), t2 = varMono(tab, "t2");
  // (1-t1^2)/( (1-t1)(1-t2) ) == (1+t1)/(1-t2)
  RationalFunction a(LaurentPoly::constant(tab, Rational(1))
                         .sub(LaurentPoly::monomial(tab, t1.pow(2))),
                     Monomial(tab->size()), {t1, t2});
  RationalFunction b(LaurentPoly::constant(tab, Rational(1))
                         .add(LaurentPoly::monomial(tab, t1)),
                     Monomial(tab->size()), {t2});
  REQUIRE(a.equals(b));
  REQUIRE(a.den.size() == 1);  // the (1-t1) factor cancelled eagerly
  RationalFunction c = b.add(RationalFunction::one(tab));
  REQUIRE_FALSE(a.equals(c));
  // a/b = c/d iff ad = cb on random data
  std::mt19937 rng(7);
  for (int it = 0; it < 10; ++it) {
    LaurentPoly n1 = randomPoly(tab, rng, 3, 2);
    RationalFunction f(n1, Monomial(tab->size()), {t1});
    RationalFunction g = f.mul(RationalFunction(LaurentPoly::constant(tab, Rational(1)),
                                                Monomial(tab->size()), {t2}));
    RationalFunction h = g.mul(RationalFunction::fromPoly(
        LaurentPoly::constant(tab, Rational(1)).sub(LaurentPoly::monomial(tab, t2))));
    REQUIRE(h.equals(f));
  }
}

TEST_CASE("rational function addition and orientation") {
  auto tab = smallTab();
  Monomial t1 = varMono(tab, "t1");
  // 1/(1-t1) + 1/(1-t1^{-1}) == 1
  RationalFunction a = RationalFunction::one(tab).divOneMinus(t1);
  RationalFunction b = RationalFunction::one(tab).divOneMinus(t1.inv());
  REQUIRE(a.add(b).equals(RationalFunction::one(tab)));
}

TEST_CASE("series expansion of 1/(1-w) in both directions") {
  auto tab = VarTable::make({{"t", VarKind::counting}});
  Monomial t = varMono(tab, "t");
  Truncation tr = Truncation::single(tab, {"t"}, 3);
  auto plus = expandFactor(tab, t, {}, tr);
  TruncatedSeries expect(tab, tr);
  for (int k = 0; k <= 3; ++k) expect.addMixedTerm(Rational(1), t.pow(k));
  REQUIRE(plus.equalsWithin(expect, tr));

  // negative direction: truncation caps the directed degree
  Truncation trNeg = Truncation::none().withWeighted(tab, {{"t", -1}}, 3);
  auto minus = expandFactor(tab, t, {{tab->indexOrThrow("t"), -1}}, trNeg);
  REQUIRE(minus.coefficient(t.pow(-1)).equals(RationalFunction::constant(tab, Rational(-1))));
  REQUIRE(minus.coefficient(t.pow(-2)).equals(RationalFunction::constant(tab, Rational(-1))));
  REQUIRE(minus.coefficient(t.pow(-3)).equals(RationalFunction::constant(tab, Rational(-1))));
  REQUIRE(minus.coefficient(Monomial(tab->size())).isZero());

  // expand(w) * (1-w) == 1 up to truncation, both directions
  TruncatedSeries oneMinus(tab, tr);
  oneMinus.addMixedTerm(Rational(1), Monomial(tab->size()));
  oneMinus.addMixedTerm(Rational(-1), t);
  TruncatedSeries one = TruncatedSeries::one(tab, tr);
  REQUIRE(plus.mul(oneMinus).equalsWithin(one, tr));
  TruncatedSeries oneMinusNeg(tab, trNeg);
  oneMinusNeg.addMixedTerm(Rational(1), Monomial(tab->size()));
  oneMinusNeg.addMixedTerm(Rational(-1), t);
  auto prodMinus = minus.mul(oneMinusNeg);
  Truncation trNeg2 = Truncation::none().withWeighted(tab, {{"t", -1}}, 2);
  REQUIRE(prodMinus.equalsWithin(TruncatedSeries::one(tab, trNeg2), trNeg2));

  REQUIRE_THROWS_AS(expandFactor(tab, Monomial(tab->size()), {}, tr), PoleError);
}

TEST_CASE("monomial substitution") {
  auto src = VarTable::make({{"t1", VarKind::equivariant}, {"t2", VarKind::equivariant}});
  auto dst = VarTable::make({{"q", VarKind::equivariant}, {"t", VarKind::equivariant}});
  VarMap vm = VarMap::renaming(src, dst);
  vm.setVar("t1", "q").setVar("t2", "t", -1);
  // (1-t1^{-1})(1-t2^{-1}) factors -> (1-q^{-1})(1-t)
  RationalFunction f = RationalFunction::one(src)
                           .divOneMinus(varMono(src, "t1", -1))
                           .divOneMinus(varMono(src, "t2", -1));
  RationalFunction g = f.substituted(vm);
  RationalFunction expect = RationalFunction::one(dst)
                                .divOneMinus(varMono(dst, "q", -1))
                                .divOneMinus(varMono(dst, "t"));
  REQUIRE(g.equals(expect));

  // m4 -> -(q/t)^{1/2} on a polynomial in m4 lands on the half-integer lattice
  auto src2 = VarTable::make({{"m4", VarKind::equivariant}});
  VarMap vm2 = VarMap::renaming(src2, dst);
  vm2.set("m4", Rational(-1), varMono(dst, "q", 1, 2).mul(varMono(dst, "t", -1, 2)));
  LaurentPoly p = LaurentPoly::constant(src2, Rational(1))
                      .add(LaurentPoly::var(src2, "m4"));
  LaurentPoly q = p.substituted(vm2);
  LaurentPoly expect2 = LaurentPoly::constant(dst, Rational(1))
                            .sub(LaurentPoly::monomial(
                                dst, varMono(dst, "q", 1, 2).mul(varMono(dst, "t", -1, 2))));
  REQUIRE(q == expect2);

  // identity map
  VarMap id = VarMap::identity(src);
  REQUIRE(f.substituted(id).equals(f));

  // a substitution sending a denominator factor to 1 is a pole
  VarMap bad = VarMap::renaming(src, dst);
  bad.set("t1", Rational(1), Monomial(dst->size()));
  bad.setVar("t2", "t");
  REQUIRE_THROWS_AS(f.substituted(bad), PoleError);
}

TEST_CASE("half-power conversion dictionary and homomorphism") {
  auto qt = VarTable::make({{"t", VarKind::counting}, {"q", VarKind::counting}});
  auto Qk = VarTable::make({{"Q", VarKind::counting}, {"kappa", VarKind::equivariant}});
  auto conv = [&](const LaurentPoly& p) { return halfPowerConvert(p, "t", "q", Qk); };

  // t^{1/2} q^{1/2} -> Q (calibrated branch)
  LaurentPoly thalfqhalf =
      LaurentPoly::monomial(qt, varMono(qt, "t", 1, 2).mul(varMono(qt, "q", 1, 2)));
  REQUIRE(conv(thalfqhalf) == LaurentPoly::var(Qk, "Q"));
  // t^2 q -> -Q^3 kappa^{1/2}
  LaurentPoly t2q = LaurentPoly::monomial(qt, varMono(qt, "t", 2).mul(varMono(qt, "q", 1)));
  REQUIRE(conv(t2q) ==
          LaurentPoly::monomial(Qk, varMono(Qk, "Q", 3).mul(varMono(Qk, "kappa", 1, 2)),
                                Rational(-1)));
  // tq -> Q^2 (consistency with the square of the branch)
  LaurentPoly tq = LaurentPoly::monomial(qt, varMono(qt, "t").mul(varMono(qt, "q")));
  REQUIRE(conv(tq) == LaurentPoly::var(Qk, "Q", 2));

  // off-lattice input
  REQUIRE_THROWS_AS(conv(LaurentPoly::monomial(qt, varMono(qt, "t", 1, 2))), LatticeError);

  // ring homomorphism on random convertible polynomials
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> e(-4, 4), cd(-3, 3);
  auto randomConvertible = [&]() {
    LaurentPoly p(qt);
    for (int k = 0; k < 3; ++k) {
      int a2 = e(rng), b2;
      do { b2 = e(rng); } while ((a2 + b2) % 2 != 0);
      Monomial m(qt->size());
      m.e2[0] = static_cast<int32_t>(a2);
      m.e2[1] = static_cast<int32_t>(b2);
      p.addTerm(m, Rational(cd(rng)));
    }
    return p;
  };
  for (int it = 0; it < 50; ++it) {
    LaurentPoly x = randomConvertible();
    LaurentPoly y = randomConvertible();
    REQUIRE(conv(x.mul(y)) == conv(x).mul(conv(y)));
    REQUIRE(halfPowerConvertBack(conv(x), "Q", "kappa", qt) == x);
  }
}

TEST_CASE("truncated series arithmetic respects caps") {
  auto tab = VarTable::make({{"z", VarKind::counting}, {"t1", VarKind::equivariant}});
  Truncation tr = Truncation::single(tab, {"z"}, 4);
  Monomial z = varMono(tab, "z");
  TruncatedSeries f = TruncatedSeries::one(tab, tr);
  f.addMixedTerm(Rational(1), z);
  TruncatedSeries g = f.inverse();
  // 1/(1+z) = 1 - z + z^2 - ...
  REQUIRE(g.coefficient(z.pow(3)).equals(RationalFunction::constant(tab, Rational(-1))));
  REQUIRE(f.mul(g).equalsWithin(TruncatedSeries::one(tab, tr), tr));

  // multiplying by z shifts the reliable window up
  TruncatedSeries zf = f.mulMixedTerm(Rational(1), z);
  REQUIRE(zf.trunc.groups[0].cap2 == 2 * 5);

  // exp/log round trip
  TruncatedSeries x = TruncatedSeries::term(tab, tr, Rational(1), z);
  REQUIRE(x.expSeries().logSeries().equalsWithin(x, tr));
}
