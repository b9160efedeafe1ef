#pragma once

#include "vertexlab/character.hpp"
#include "vertexlab/partition.hpp"
#include "vertexlab/vertex.hpp"

namespace vertexlab {

/// Tangent character of the Hilbert scheme fixed point, in weights (x, y):
/// sum over boxes of x^{-l} y^{a+1} + x^{l+1} y^{-a}.
inline LaurentPoly tangentChar2D(const TablePtr& tab, const Partition& lam, const Monomial& x,
                                 const Monomial& y) {
  LaurentPoly T(tab);
  for (auto [b1, b2] : lam.boxes()) {
    auto [a, l] = lam.armLeg(b1, b2);
    T.addTerm(x.pow(-l).mul(y.pow(a + 1)), Rational(1));
    T.addTerm(x.pow(l + 1).mul(y.pow(-a)), Rational(1));
  }
  return T;
}

enum class EdgeKind { m1m1, zm2 };  // normal bundle degrees (-1,-1) or (0,-2)

inline std::pair<int, int> edgeDegrees(EdgeKind k) {
  return k == EdgeKind::m1m1 ? std::pair<int, int>{-1, -1} : std::pair<int, int>{0, -2};
}

/// chi(lambda,(l,l')) = sum over boxes of (1 - l b1 - l' b2).
inline long edgeEuler(const Partition& lam, EdgeKind kind) {
  auto [l, lp] = edgeDegrees(kind);
  long chi = 0;
  for (auto [b1, b2] : lam.boxes()) chi += 1 - static_cast<long>(l) * b1 - static_cast<long>(lp) * b2;
  return chi;
}

/// Exact edge character: T_lam(w2,w3)/(1-w1^{-1}) + T_lam^t(w1^{-l'} w3, w1^{-l} w2)/(1-w1),
/// always a Laurent polynomial after cancellation.
inline LaurentPoly edgeCharacter(const CY3& cy, const Partition& lam, EdgeKind kind,
                                 const std::array<Monomial, 3>& w) {
  auto [l, lp] = edgeDegrees(kind);
  LaurentPoly T1 = tangentChar2D(cy.tab, lam, w[1], w[2]);
  LaurentPoly T2 = tangentChar2D(cy.tab, lam.conjugate(), w[0].pow(-lp).mul(w[2]),
                                 w[0].pow(-l).mul(w[1]));
  // 1/(1-w^{-1}) = -w/(1-w)
  LaurentPoly num = T1.mulMonomial(w[0]).neg().add(T2);
  LaurentPoly out(cy.tab);
  if (!tryDivideOneMinus(num, w[0], out))
    throw DomainError("edge character does not simplify to a Laurent polynomial");
  return out;
}
inline LaurentPoly edgeCharacter(const CY3& cy, const Partition& lam, EdgeKind kind) {
  return edgeCharacter(cy, lam, kind, {cy.tvar(0), cy.tvar(1), cy.tvar(2)});
}

/// Preferred-regime sign pattern of an edge chart: which local axis scales with
/// the dominant positive exponent, which with the tiny one (and its sign); the
/// remaining axis is forced dominant negative.
struct EdgePattern {
  int big = 0;       // 0-based local axis
  int small = 1;     // 0-based local axis
  int smallSign = 1;
};

/// Preferred-slope limit of the hatted edge contribution, as a monomial in
/// t,q. The tabulated entries are written for the transposed partition in the
/// (-1,-1) case; that orientation is frozen by the degree-one and degree-two
/// calibrations and checked against the exact character in the tests.
inline Monomial edgeLimitQT(const QTVars& qt, const Partition& lam, EdgeKind kind,
                            const EdgePattern& pat) {
  long n = lam.size(), n2 = lam.norm2(), n2t = lam.conjugate().norm2();
  auto entry = [&](long tExp2, long qExp2) { return qt.mono(tExp2, qExp2); };
  int big = pat.big, small = pat.small, sign = pat.smallSign;
  bool swapped = false;
  if (kind == EdgeKind::m1m1) {
    if (sign < 0) {  // use ind(-sigma) = -ind(sigma): negate and swap t,q
      int third = 3 - big - small;
      big = third;
      sign = 1;
      swapped = true;
    }
    // rows with small positive sign:
    //   (1,2),(2,1),(2,3) -> t^{|l^t|^2/2} q^{|l|^2/2}; (1,3),(3,1),(3,2) -> swapped
    bool tconj;
    if ((big == 0 && small == 1) || (big == 1 && small == 0) || (big == 1 && small == 2))
      tconj = true;
    else if ((big == 0 && small == 2) || (big == 2 && small == 0) || (big == 2 && small == 1))
      tconj = false;
    else
      throw RegimeError("untabulated (-1,-1) edge regime");
    if (swapped) tconj = !tconj;
    return tconj ? entry(n2t, n2) : entry(n2, n2t);
  }
  // (0,-2): eight tabulated regimes, none with tiny third axis
  if (small == 2) throw RegimeError("untabulated (0,-2) edge regime");
  if (big == 0 && small == 1 && sign > 0) return entry(n2 + n, n2 - n);
  if (big == 1 && small == 0 && sign > 0) return entry(2 * n2, 0);
  if (big == 0 && small == 1 && sign < 0) return entry(n2 - n, n2 + n);
  if (big == 1 && small == 0 && sign < 0) return entry(2 * n2, 0);
  if (big == 2 && small == 1 && sign < 0) return entry(n2 - n, n2 + n);
  if (big == 2 && small == 0 && sign < 0) return entry(0, 2 * n2);
  if (big == 2 && small == 1 && sign > 0) return entry(n2 + n, n2 - n);
  if (big == 2 && small == 0 && sign > 0) return entry(0, 2 * n2);
  throw RegimeError("untabulated (0,-2) edge regime");
}

/// The frozen transpose convention relating the printed tables to the exact
/// edge character.
inline Partition edgeTableArgument(const Partition& lam, EdgeKind kind) {
  return kind == EdgeKind::m1m1 ? lam.conjugate() : lam;
}

inline Slope patternSlope(const EdgePattern& pat) {
  return Slope::preferredSlope(pat.big, 1, pat.small, pat.smallSign);
}

inline std::vector<EdgePattern> tabulatedPatterns(EdgeKind kind) {
  std::vector<EdgePattern> out;
  if (kind == EdgeKind::m1m1) {
    for (int big = 0; big < 3; ++big)
      for (int small = 0; small < 3; ++small)
        if (big != small) out.push_back({big, small, 1});
  } else {
    out = {{0, 1, 1}, {1, 0, 1}, {0, 1, -1}, {1, 0, -1},
           {2, 1, -1}, {2, 0, -1}, {2, 1, 1}, {2, 0, 1}};
  }
  return out;
}

}  // namespace vertexlab
