#include <catch2/catch_amalgamated.hpp>

#include "vertexlab/hilb.hpp"

using namespace vertexlab;

TEST_CASE("localization series, low coefficients") {
  TruncatedSeries F = computeF({2, 2, 1});
  auto tab = F.tab;
  Monomial z = varMono(tab, "z"), y = varMono(tab, "y");

  REQUIRE(F.coefficient(Monomial(tab->size())).isOne());

  RationalFunction c10 = F.coefficient(z);
  LaurentPoly num = LaurentPoly::constant(tab, Rational(-1));
  num = num.sub(num.mulMonomial(varMono(tab, "m1")));
  num = num.sub(num.mulMonomial(varMono(tab, "m2")));
  RationalFunction expect(num, Monomial(tab->size()),
                          {varMono(tab, "t1", -1), varMono(tab, "t2", -1)});
  REQUIRE(c10.equals(expect));

  // single-box summand, y-linear part: -(1-m1)(1-m2) (m3 y + (y - m3 y)/(1-..)) ...
  // checked against an independent expansion of the box factor
  RationalFunction c11 = F.coefficient(z.mul(y));
  // by hand: -(1-m1)(1-m2) [ m3 + 1 ] ... with W=1 the box gives
  //   (1-m1)(1-m2)(1-m3 y) * (-(1+y+y^2+...)) => y^1: -(1-m1)(1-m2)(1 - m3)
  LaurentPoly n2 = num;
  n2 = n2.sub(n2.mulMonomial(varMono(tab, "m3")));
  RationalFunction expect11(n2, Monomial(tab->size()),
                            {varMono(tab, "t1", -1), varMono(tab, "t2", -1)});
  REQUIRE(c11.equals(expect11));
}

TEST_CASE("tangent factor count") {
  auto tab = hilbTable();
  for (auto& lam : partitionsUpTo(4)) {
    RationalFunction coeff = RationalFunction::one(tab);
    for (auto [b1, b2] : lam.boxes()) {
      auto [a, l] = lam.armLeg(b1, b2);
      coeff.den.push_back(varMono(tab, "t1", l).mul(varMono(tab, "t2", -a - 1)));
      coeff.den.push_back(varMono(tab, "t1", -l - 1).mul(varMono(tab, "t2", a)));
    }
    coeff.normalize();
    REQUIRE(coeff.den.size() == 2 * static_cast<size_t>(lam.size()));
    REQUIRE_FALSE(coeff.isZero());
  }
}

TEST_CASE("plethystic denominator identity") {
  Report r = verifyDenominator(3);
  INFO(r.firstFailure());
  REQUIRE(r.pass());
  // negative control: a flipped sign is caught with a witness
  Report bad = verifyDenominator(2, 1, /*corrupt=*/true);
  REQUIRE_FALSE(bad.pass());
  REQUIRE_FALSE(bad.firstFailure().empty());
}

TEST_CASE("threefold symmetry of the normalized series") {
  Report r = verifySymmetry(2, 2);
  INFO(r.firstFailure());
  REQUIRE(r.pass());
}

TEST_CASE("structural symmetries of F") {
  TruncatedSeries F = computeF({3, 1, 1});
  auto tab = F.tab;
  // symmetric under m1 <-> m2 by construction
  VarMap swap12 = VarMap::identity(tab);
  swap12.setVar("m1", "m2").setVar("m2", "m1");
  REQUIRE(F.equalsWithin(F.substituted(swap12, F.trunc), F.trunc));
}

TEST_CASE("degenerate denominator: all Chern slots off") {
  auto tab = hilbTable();
  Truncation tr = Truncation::single(tab, {"z"}, 3).with(tab, {"y"}, 0);
  FParams par{FArg::var(tab, "z"), FArg::off(tab), FArg::off(tab),
              FArg::off(tab),      FArg::off(tab), varMono(tab, "t1"),
              varMono(tab, "t2")};
  TruncatedSeries F = computeFGeneral(tab, par, tr, 3).atZero("y");
  RationalFunction arg1(LaurentPoly::constant(tab, Rational(-1)), Monomial(tab->size()),
                        {varMono(tab, "t1", -1), varMono(tab, "t2", -1)});
  TruncatedSeries arg =
      TruncatedSeries::fromRF(arg1, tr).mulMixedTerm(Rational(1), varMono(tab, "z"));
  REQUIRE(F.equalsWithin(plethSymSeries(arg), tr));
}

TEST_CASE("box-count bound on Chern degrees after the swap") {
  // coefficient of z^n in the swapped ratio carries m1-degree at most n
  auto tab = hilbTable();
  FContext ctx{2, 2, 1};
  TruncatedSeries F = computeF(ctx);
  TruncatedSeries R = F.mul(F.atZero("y").inverse());
  VarMap swapZY = VarMap::identity(tab);
  swapZY.setVar("z", "y").setVar("y", "z");
  TruncatedSeries Rs = R.substituted(swapZY, R.trunc);
  int m1 = tab->indexOrThrow("m1");
  Monomial z = varMono(tab, "z"), y = varMono(tab, "y");
  for (long k = 0; k <= 2; ++k) {
    RationalFunction c = Rs.coefficient(z.mul(y.pow(k)));
    LaurentPoly cleared = c.num.mulMonomial(c.unit);
    for (auto& [m, co] : cleared.terms) REQUIRE(m.e2[m1] <= 2 * 1);
  }
}
