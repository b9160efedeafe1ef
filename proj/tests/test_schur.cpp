#include <catch2/catch_amalgamated.hpp>

#include "vertexlab/schur.hpp"

using namespace vertexlab;

namespace {

/// Skew semistandard tableau enumeration: the independent oracle for small
/// alphabets.
LaurentPoly ssytSum(const TablePtr& tab, const Partition& lam, const Partition& eta,
                    const std::vector<Monomial>& letters) {
  int rows = lam.length();
  LaurentPoly acc(tab);
  std::vector<std::vector<int>> fill(rows);
  for (int i = 0; i < rows; ++i) fill[i].assign(lam.part(i), 0);
  std::function<void(int, int, Monomial)> rec = [&](int r, int c, Monomial m) {
    if (r == rows) {
      acc.addTerm(m, Rational(1));
      return;
    }
    if (c == lam.part(r)) {
      rec(r + 1, eta.part(r + 1), m);
      return;
    }
    if (c < eta.part(r)) {
      rec(r, c + 1, m);
      return;
    }
    int lo = 1;
    if (c > eta.part(r) && c > 0) lo = std::max(lo, fill[r][c - 1]);
    if (r > 0 && c < lam.part(r - 1) && c >= eta.part(r - 1)) lo = std::max(lo, fill[r - 1][c] + 1);
    for (int v = lo; v <= static_cast<int>(letters.size()); ++v) {
      fill[r][c] = v;
      rec(r, c + 1, m.mul(letters[v - 1]));
    }
    fill[r][c] = 0;
  };
  if (rows == 0) return LaurentPoly::constant(tab, Rational(1));
  for (int i = 0; i < eta.length(); ++i)
    if (eta.part(i) > lam.part(i)) return acc;
  rec(0, eta.part(0), Monomial(tab->size()));
  return acc;
}

}  // namespace

TEST_CASE("skew Schur against tableau enumeration") {
  auto tab = VarTable::make({{"x1", VarKind::equivariant},
                             {"x2", VarKind::equivariant},
                             {"x3", VarKind::equivariant}});
  std::vector<Monomial> xs{varMono(tab, "x1"), varMono(tab, "x2"), varMono(tab, "x3")};
  Alphabet alph = Alphabet::finiteMonomials(xs);
  Truncation tr = Truncation::none();
  SchurEvaluator ev(tab, alph, tr);

  // s_(1)(x1,x2,x3) = x1+x2+x3
  LaurentPoly s1 = ev.skewSchur(Partition{1}, Partition{}).coefficient(Monomial(tab->size()))
                        .asPolynomial();
  LaurentPoly expect(tab);
  for (auto& x : xs) expect.addTerm(x, Rational(1));
  REQUIRE(s1 == expect);

  // eta not contained in lambda
  REQUIRE(ev.skewSchur(Partition{1}, Partition{2}).isZero());

  for (auto& lam : partitionsUpTo(4))
    for (auto& eta : partitionsUpTo(static_cast<int>(lam.size()))) {
      TruncatedSeries s = ev.skewSchur(lam, eta);
      LaurentPoly got = s.isZero() ? LaurentPoly::zero(tab)
                                   : s.coefficient(Monomial(tab->size())).asPolynomial();
      REQUIRE(got == ssytSum(tab, lam, eta, xs));
    }
}

TEST_CASE("principal specialization") {
  auto tab = VarTable::make({{"t", VarKind::counting}, {"q", VarKind::counting}});
  Truncation tr = Truncation::single(tab, {"t", "q"}, 5);
  // s_(1)(t^{-rho}) = t^{1/2} + t^{3/2} + ... : geometric ladder
  Alphabet rho = Alphabet::rho(tab, "t", "q", Partition{}, 12);
  SchurEvaluator ev(tab, rho, tr);
  TruncatedSeries s = ev.skewSchur(Partition{1}, Partition{});
  for (int k = 0; k < 5; ++k)
    REQUIRE(s.coefficient(varMono(tab, "t", 2 * k + 1, 2))
                .equals(RationalFunction::one(tab)));

  // stabilization: doubling the letter count does not move low coefficients;
  // the evaluators run with slack because decorated letters dip below degree 0
  Truncation trSlack = Truncation::single(tab, {"t", "q"}, 11);
  Alphabet rho2 = Alphabet::rho(tab, "t", "q", Partition{2, 1}, 18);
  Alphabet rho4 = Alphabet::rho(tab, "t", "q", Partition{2, 1}, 36);
  SchurEvaluator e2(tab, rho2, trSlack), e4(tab, rho4, trSlack);
  for (auto& lam : partitionsUpTo(3)) {
    TruncatedSeries a = e2.skewSchur(lam, Partition{});
    TruncatedSeries b = e4.skewSchur(lam, Partition{});
    REQUIRE(a.trunc.covers(tr));
    REQUIRE(a.equalsWithin(b, tr));
  }
}

namespace {

/// Both skew Schur summation identities used to collapse edge assignments,
/// checked with fully symbolic finite alphabets.
bool schurIdentity(int which, const Partition& eta1, const Partition& eta2, int nLetters,
                   int uOrder) {
  std::vector<std::pair<std::string, VarKind>> vars{{"u", VarKind::counting}};
  for (int i = 1; i <= nLetters; ++i) {
    vars.push_back({"x" + std::to_string(i), VarKind::equivariant});
    vars.push_back({"y" + std::to_string(i), VarKind::equivariant});
  }
  auto tab = VarTable::make(vars);
  Monomial u = varMono(tab, "u");
  std::vector<Monomial> xs, ys;
  for (int i = 1; i <= nLetters; ++i) {
    xs.push_back(varMono(tab, "x" + std::to_string(i)));
    ys.push_back(varMono(tab, "y" + std::to_string(i)));
  }
  Truncation tr = Truncation::single(tab, {"u"}, uOrder);
  Alphabet X = Alphabet::finiteMonomials(xs), Y = Alphabet::finiteMonomials(ys);
  SchurEvaluator evX(tab, X, tr), evY(tab, Y, tr);
  Alphabet uX = X.scaled(Rational(1), u), uY = Y.scaled(Rational(1), u);
  SchurEvaluator evuX(tab, uX, tr), evuY(tab, uY, tr);

  TruncatedSeries lhs = TruncatedSeries::zero(tab, tr);
  for (int n = 0; n <= uOrder; ++n)
    for (auto& lam : partitionsOf(n)) {
      TruncatedSeries t1 = evX.skewSchur(lam, eta1);
      if (t1.isZero()) continue;
      TruncatedSeries t2 = which == 1 ? evY.skewSchur(lam, eta2)
                                      : evY.skewSchur(lam.conjugate(), eta2);
      if (t2.isZero()) continue;
      lhs = lhs.add(t1.mul(t2).mulMixedTerm(Rational(1), u.pow(n)));
    }

  TruncatedSeries rhs = TruncatedSeries::zero(tab, tr);
  for (int n = 0; n <= uOrder; ++n)
    for (auto& lam : partitionsOf(n)) {
      TruncatedSeries t1, t2;
      if (which == 1) {
        t1 = evuY.skewSchur(eta1, lam);
        t2 = evuX.skewSchur(eta2, lam);
      } else {
        t1 = evuY.skewSchur(eta1.conjugate(), lam.conjugate());
        t2 = evuX.skewSchur(eta2.conjugate(), lam);
      }
      if (t1.isZero() || t2.isZero()) continue;
      rhs = rhs.add(t1.mul(t2).mulMixedTerm(Rational(1), u.pow(n)));
    }
  for (auto& x : xs)
    for (auto& y : ys) {
      Monomial w = u.mul(x).mul(y);
      if (which == 1)
        rhs = rhs.mul(expandFactor(tab, w, {}, tr));
      else {
        TruncatedSeries f(tab, tr);
        f.addMixedTerm(Rational(1), Monomial(tab->size()));
        f.addMixedTerm(Rational(1), w);
        rhs = rhs.mul(f);
      }
    }
  return lhs.equalsWithin(rhs, tr);
}

}  // namespace

TEST_CASE("skew Schur summation identities") {
  for (int which : {1, 2})
    for (auto& eta1 : partitionsUpTo(2))
      for (auto& eta2 : partitionsUpTo(2))
        REQUIRE(schurIdentity(which, eta1, eta2, 3, 3));
}
