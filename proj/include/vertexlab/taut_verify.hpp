#pragma once

#include "vertexlab/report.hpp"
#include "vertexlab/surfaces.hpp"

namespace vertexlab {

inline Rational chiValue(const TablePtr& tab, const ToricSurfaceData& S) {
  return NonequivariantSpecializer(tab).value(chiSurfaceBundle(tab, S));
}

struct GenPair {
  ToricSurfaceData S;
  std::array<long, 4> gamma;  // (c1(L)^2, c1(L)c1(S), c1(S)^2, c2(S))
};

inline std::vector<GenPair> cobordismGenerators(const TablePtr& tab) {
  return {{makeP2(tab, {0}), {0, 0, 9, 3}},
          {makeP2(tab, {1}), {1, 3, 9, 3}},
          {makeP1P1(tab, {{0, 0}}), {0, 0, 8, 4}},
          {makeP1P1(tab, {{1, 0}}), {0, 2, 8, 4}}};
}

/// Exact inverse of the 4x4 Chern-number matrix of the generators.
inline std::array<std::array<Rational, 4>, 4> gammaInverse(
    const std::vector<GenPair>& gens) {
  std::array<std::array<Rational, 8>, 4> m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i][j] = Rational(gens[i].gamma[j]);
    m[i][4 + i] = 1;
  }
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("generator Chern numbers are linearly dependent");
    std::swap(m[col], m[piv]);
    Rational d = m[col][col];
    for (int j = 0; j < 8; ++j) m[col][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int j = 0; j < 8; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::array<std::array<Rational, 4>, 4> inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = m[i][4 + j];
  return inv;
}

/// Universal series of the exterior or symmetric tautological generating
/// function, solved from the four toric generators.
inline std::array<TruncatedSeries, 4> universalSolve(const TablePtr& tab, Functor f, long Nz,
                                                     long Nother, int jobs = 1) {
  if (f == Functor::gseries) throw DomainError("universal series solve expects lambda or sym");
  Truncation tr = Truncation::single(tab, {"z"}, Nz).with(
      tab, {f == Functor::lambda ? "m" : "y"}, Nother);
  auto gens = cobordismGenerators(tab);
  NonequivariantSpecializer sp(tab);
  std::array<TruncatedSeries, 4> logs{
      TruncatedSeries::zero(tab, tr), TruncatedSeries::zero(tab, tr),
      TruncatedSeries::zero(tab, tr), TruncatedSeries::zero(tab, tr)};
  for (int i = 0; i < 4; ++i)
    logs[i] =
        sp.apply(surfaceSeries(tab, gens[i].S, f, tr, static_cast<int>(Nz), jobs)).logSeries();
  auto inv = gammaInverse(gens);
  std::array<TruncatedSeries, 4> A{
      TruncatedSeries::zero(tab, tr), TruncatedSeries::zero(tab, tr),
      TruncatedSeries::zero(tab, tr), TruncatedSeries::zero(tab, tr)};
  // gamma_i . A = log_i  =>  A = gammaMatrix^{-1} log
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) A[j] = A[j].add(logs[i].mulScalar(inv[j][i]));
  return A;
}

inline TruncatedSeries powSeries(const TruncatedSeries& s, long e) {
  if (e >= 0) return s.pow(static_cast<unsigned>(e));
  return s.inverse().pow(static_cast<unsigned>(-e));
}

/// Every corollary-level consequence checked at desk scale.
inline Report verifyCorollaries(long nMax = 5, int jobs = 1) {
  Report rep;
  rep.title = "tautological corollaries";
  TablePtr tab = surfTable();
  NonequivariantSpecializer sp(tab);
  Monomial z = varMono(tab, "z"), mv = varMono(tab, "m"), y = varMono(tab, "y");
  auto coeffAt = [&](const TruncatedSeries& s, long n, const Monomial& other, long k) {
    RationalFunction c = s.coefficient(z.pow(n).mul(other.pow(k)));
    return c.isZero() ? Rational(0) : c.asPolynomial().constantTerm();
  };

  // (a) exterior powers of a line bundle over all four generators
  {
    bool ok = true;
    std::string wit;
    for (auto& g : cobordismGenerators(tab)) {
      Truncation tr = Truncation::single(tab, {"z"}, nMax).with(tab, {"m"}, nMax);
      TruncatedSeries chiL =
          sp.apply(surfaceSeries(tab, g.S, Functor::lambda, tr, static_cast<int>(nMax), jobs));
      long chiO = toLong(chiValue(tab, ToricSurfaceData{g.S.label,
                                                        [&] {
                                                          auto pts = g.S.pts;
                                                          for (auto& p : pts)
                                                            p.bundle = {Monomial(tab->size())};
                                                          return pts;
                                                        }()}));
      long chiLv = toLong(chiValue(tab, g.S));
      for (long n = 0; n <= nMax && ok; ++n)
        for (long k = 0; k <= n && ok; ++k) {
          Rational got = coeffAt(chiL, n, mv, k) * Rational(k % 2 ? -1 : 1);
          Rational want = binomialRat(n - k + chiO - 1, n - k) * binomialRat(chiLv, k);
          if (got != want) {
            ok = false;
            wit = g.S.label + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                  " got " + ratStr(got) + " want " + ratStr(want);
          }
        }
    }
    rep.add("exterior-power binomial formula", ok, wit);
  }

  // (b) symmetric-power stability for chi(O)=1
  {
    bool ok = true;
    std::string wit;
    for (int d : {0, 1, 2}) {
      ToricSurfaceData S = makeP2(tab, {d});
      Truncation tr = Truncation::single(tab, {"z"}, nMax).with(tab, {"y"}, 3);
      TruncatedSeries chiS =
          sp.apply(surfaceSeries(tab, S, Functor::sym, tr, static_cast<int>(nMax), jobs));
      long chiLv = toLong(chiValue(tab, S));
      for (long k = 0; k <= 3 && ok; ++k)
        for (long n = k; n <= nMax && ok; ++n) {
          Rational got = coeffAt(chiS, n, y, k);
          Rational want = binomialRat(chiLv + k - 1, k);
          if (got != want) {
            ok = false;
            wit = "O(" + std::to_string(d) + ") n=" + std::to_string(n) +
                  " k=" + std::to_string(k);
          }
        }
    }
    rep.add("symmetric-power stability on the plane", ok, wit);
  }

  // (c) symmetric powers up to degree three over the generators
  {
    bool ok = true;
    std::string wit;
    for (auto& g : cobordismGenerators(tab)) {
      Truncation tr = Truncation::single(tab, {"z"}, nMax).with(tab, {"y"}, 3);
      TruncatedSeries chiS =
          sp.apply(surfaceSeries(tab, g.S, Functor::sym, tr, static_cast<int>(nMax), jobs));
      auto powered = [&](int p) {  // bundle L^{tensor p}
        auto pts = g.S.pts;
        for (auto& pt : pts) pt.bundle = {pt.bundle[0].pow(p)};
        return ToricSurfaceData{g.S.label, pts};
      };
      auto lCubedCotangent = [&] {  // L^3 tensor the cotangent bundle
        auto pts = g.S.pts;
        for (auto& pt : pts)
          pt.bundle = {pt.bundle[0].pow(3).mul(pt.w1.inv()),
                       pt.bundle[0].pow(3).mul(pt.w2.inv())};
        return ToricSurfaceData{g.S.label, pts};
      }();
      long chiO = toLong(chiValue(tab, powered(0)));
      long chiL = toLong(chiValue(tab, g.S));
      long chiL2 = toLong(chiValue(tab, powered(2)));
      long chiL3 = toLong(chiValue(tab, powered(3)));
      long chiL3T = toLong(chiValue(tab, lCubedCotangent));
      for (long n = 0; n <= nMax && ok; ++n) {
        std::array<Rational, 4> want{
            binomialRat(chiO + n - 1, n),
            binomialRat(chiO + n - 2, n - 1) * Rational(chiL),
            binomialRat(chiO + n - 3, n - 1) * Rational(chiL2) +
                binomialRat(chiO + n - 3, n - 2) * binomialRat(chiL + 1, 2),
            binomialRat(chiO + n - 3, n - 1) * Rational(chiL3) +
                binomialRat(chiO + n - 4, n - 2) *
                    (Rational(chiL2) * Rational(chiL) - Rational(chiL3T)) +
                binomialRat(chiO + n - 4, n - 3) * binomialRat(chiL + 2, 3)};
        for (long k = 0; k <= 3 && ok; ++k) {
          Rational got = coeffAt(chiS, n, y, k);
          if (got != want[k]) {
            ok = false;
            wit = g.S.label + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                  " got " + ratStr(got) + " want " + ratStr(want[k]);
          }
        }
      }
    }
    rep.add("symmetric powers to degree three", ok, wit);
  }

  // (d) the symmetric series factors through the once-twisted series
  {
    bool ok = true;
    std::string wit;
    for (auto& g : cobordismGenerators(tab)) {
      Truncation tr = Truncation::single(tab, {"z"}, nMax).with(tab, {"y"}, 3);
      TruncatedSeries chiS =
          sp.apply(surfaceSeries(tab, g.S, Functor::sym, tr, static_cast<int>(nMax), jobs));
      TruncatedSeries G = sp.apply(surfaceSeries(tab, g.S, Functor::gseries, tr, 3, jobs));
      long chiO = toLong(chiValue(tab, ToricSurfaceData{g.S.label,
                                                        [&] {
                                                          auto pts = g.S.pts;
                                                          for (auto& p : pts)
                                                            p.bundle = {Monomial(tab->size())};
                                                          return pts;
                                                        }()}));
      long chiL = toLong(chiValue(tab, g.S));
      TruncatedSeries rhs = G;
      for (long i = 0; i < chiO; ++i) rhs = rhs.mul(expandFactor(tab, z, {}, tr));
      for (long i = 0; i < chiL; ++i) rhs = rhs.mul(expandFactor(tab, y, {}, tr));
      Monomial w;
      if (!chiS.equalsWithin(rhs, tr, &w)) {
        ok = false;
        wit = g.S.label + " at " + monoStr(tab, w);
      }
    }
    rep.add("symmetric series = twisted series over (1-z)^chiO (1-y)^chiL", ok, wit);
  }

  // (e) rank-two exterior powers with split bundles
  {
    bool ok = true;
    std::string wit;
    long n2 = std::min<long>(nMax, 4);
    std::vector<ToricSurfaceData> rank2{makeP2(tab, {1, 2}), makeP1P1(tab, {{1, 0}, {0, 1}})};
    for (auto& S : rank2) {
      Truncation tr = Truncation::single(tab, {"z"}, n2).with(tab, {"m"}, 3);
      TruncatedSeries chiL =
          sp.apply(surfaceSeries(tab, S, Functor::lambda, tr, static_cast<int>(n2), jobs));
      long chiO = toLong(chiValue(tab, ToricSurfaceData{S.label,
                                                        [&] {
                                                          auto pts = S.pts;
                                                          for (auto& p : pts)
                                                            p.bundle = {Monomial(tab->size())};
                                                          return pts;
                                                        }()}));
      long chiV = toLong(chiValue(tab, S));
      // Lambda^2 V = det = l1 l2; V tensor det = (l1^2 l2) + (l1 l2^2)
      auto detS = S;
      for (auto& pt : detS.pts) pt.bundle = {pt.bundle[0].mul(pt.bundle[1])};
      long chiDet = toLong(chiValue(tab, detS));
      auto vDetS = S;
      for (auto& pt : vDetS.pts)
        pt.bundle = {pt.bundle[0].pow(2).mul(pt.bundle[1]),
                     pt.bundle[0].mul(pt.bundle[1].pow(2))};
      long chiVDet = toLong(chiValue(tab, vDetS));
      for (long n = 1; n <= n2 && ok; ++n) {
        std::array<Rational, 4> want{
            Rational(0),
            binomialRat(chiO + n - 2, n - 1) * Rational(chiV),
            binomialRat(chiO + n - 3, n - 2) * binomialRat(chiV, 2) +
                binomialRat(chiO + n - 3, n - 1) * Rational(chiDet),
            binomialRat(chiO + n - 4, n - 3) * binomialRat(chiV, 3) +
                binomialRat(chiO + n - 4, n - 2) *
                    (Rational(chiV) * Rational(chiDet) - Rational(chiVDet))};
        for (long k = 1; k <= 3 && ok; ++k) {
          Rational got = coeffAt(chiL, n, mv, k) * Rational(k % 2 ? -1 : 1);
          if (got != want[k]) {
            ok = false;
            wit = S.label + " rank2 n=" + std::to_string(n) + " k=" + std::to_string(k) +
                  " got " + ratStr(got) + " want " + ratStr(want[k]);
          }
        }
      }
      // n = 1: the tautological bundle is the bundle itself
      Rational got1 = coeffAt(chiL, 1, mv, 1) * Rational(-1);
      if (got1 != Rational(chiV)) {
        ok = false;
        wit = S.label + " rank2 n=1 value";
      }
    }
    rep.add("rank-two exterior powers", ok, wit);
  }

  // cotangent Euler characteristic of the quadric
  {
    Rational v = chiValue(tab, cotangentP1P1(tab));
    rep.add("cotangent bundle of the quadric has chi = -2", v == Rational(-2),
            "got " + ratStr(v));
  }

  // fifth-surface reconstruction from the universal series
  {
    long Nz = std::min<long>(nMax, 4), Nm = std::min<long>(nMax, 4);
    Truncation tr = Truncation::single(tab, {"z"}, Nz).with(tab, {"m"}, Nm);
    auto gens = cobordismGenerators(tab);
    auto A = universalSolve(tab, Functor::lambda, Nz, Nm, jobs);
    ToricSurfaceData fifth = makeP2(tab, {2});
    std::array<long, 4> gamma{4, 6, 9, 3};
    TruncatedSeries viaUniversal = TruncatedSeries::zero(tab, tr);
    for (int i = 0; i < 4; ++i) viaUniversal = viaUniversal.add(A[i].mulScalar(Rational(gamma[i])));
    viaUniversal = viaUniversal.expSeries();
    TruncatedSeries direct =
        sp.apply(surfaceSeries(tab, fifth, Functor::lambda, tr, static_cast<int>(Nz), jobs));
    Monomial w;
    bool ok = viaUniversal.equalsWithin(direct, tr, &w);
    rep.add("fifth-surface reconstruction from universal series", ok,
            ok ? "" : "at " + monoStr(tab, w));

    // multiplicative form: the product of generator series with the solved
    // integer exponents reproduces the direct series
    auto inv = gammaInverse(gens);
    std::array<Rational, 4> a{};
    for (int i = 0; i < 4; ++i) {
      a[i] = Rational(0);
      for (int j = 0; j < 4; ++j) a[i] += Rational(gamma[j]) * inv[j][i];
    }
    TruncatedSeries prod = TruncatedSeries::one(tab, tr);
    bool integral = true;
    for (int i = 0; i < 4; ++i) {
      if (!isIntegerRat(a[i])) integral = false;
    }
    if (integral) {
      for (int i = 0; i < 4; ++i) {
        TruncatedSeries gi = sp.apply(
            surfaceSeries(tab, gens[i].S, Functor::lambda, tr, static_cast<int>(Nz), jobs));
        prod = prod.mul(powSeries(gi, toLong(a[i])));
      }
      bool ok2 = prod.equalsWithin(direct, tr, &w);
      rep.add("cobordism multiplicativity for a non-generator pair", ok2,
              ok2 ? "" : "at " + monoStr(tab, w));
    } else {
      rep.add("cobordism multiplicativity for a non-generator pair", false,
              "non-integral exponents");
    }
  }

  return rep;
}

}  // namespace vertexlab
