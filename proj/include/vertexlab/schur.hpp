#pragma once

#include <map>

#include "vertexlab/partition.hpp"
#include "vertexlab/series.hpp"

namespace vertexlab {

/// Alphabet of monomial letters (finitely many, or a principal-type sequence
/// truncated at `count` letters). Letter i (1-based) of a rho-type alphabet is
///   pref * base^{i-1/2} * dec^{-decoration_i}.
struct Alphabet {
  std::vector<std::pair<Rational, Monomial>> letters;

  static Alphabet finite(std::vector<std::pair<Rational, Monomial>> ls) {
    Alphabet a;
    a.letters = std::move(ls);
    return a;
  }
  static Alphabet finiteMonomials(const std::vector<Monomial>& ms) {
    Alphabet a;
    for (auto& m : ms) a.letters.emplace_back(Rational(1), m);
    return a;
  }
  /// base^{-rho} dec^{-decoration}: (base^{1/2} dec^{-d_1}, base^{3/2} dec^{-d_2}, ...)
  static Alphabet rho(const TablePtr& tab, const std::string& baseVar,
                      const std::string& decVar, const Partition& decoration, int count,
                      const Monomial& pref = Monomial(), const Rational& prefC = Rational(1)) {
    Alphabet a;
    Monomial p = pref.e2.empty() ? Monomial(tab->size()) : pref;
    for (int i = 1; i <= count; ++i) {
      Monomial m = p.mul(varMono(tab, baseVar, 2 * i - 1, 2));
      if (decoration.part(i - 1) != 0)
        m.mulEq(varMono(tab, decVar, -decoration.part(i - 1)));
      a.letters.emplace_back(prefC, m);
    }
    return a;
  }

  Alphabet scaled(const Rational& c, const Monomial& m) const {
    Alphabet a = *this;
    for (auto& [lc, lm] : a.letters) {
      lc *= c;
      lm.mulEq(m);
    }
    return a;
  }
};

/// Memoized power sums and complete homogeneous functions of one alphabet,
/// evaluated as truncated series; skew Schur functions via Jacobi-Trudi.
class SchurEvaluator {
 public:
  SchurEvaluator(TablePtr tab, Alphabet alph, Truncation tr)
      : tab_(std::move(tab)), alph_(std::move(alph)), tr_(std::move(tr)) {}

  const TruncatedSeries& h(int k) {
    if (k < 0) throw DomainError("negative homogeneous index");
    while (static_cast<int>(h_.size()) <= k) {
      int n = static_cast<int>(h_.size());
      if (n == 0) {
        h_.push_back(TruncatedSeries::one(tab_, tr_));
        continue;
      }
      // n h_n = sum_{i=1}^{n} p_i h_{n-i}
      TruncatedSeries acc = TruncatedSeries::zero(tab_, tr_);
      for (int i = 1; i <= n; ++i) acc = acc.add(p(i).mul(h_[n - i]));
      h_.push_back(acc.mulScalar(Rational(1) / Rational(n)));
    }
    return h_[k];
  }

  /// s_{lambda/eta}; zero unless eta is contained in lambda.
  TruncatedSeries skewSchur(const Partition& lam, const Partition& eta) {
    int n = lam.length();
    for (int i = 0; i < eta.length(); ++i)
      if (eta.part(i) > lam.part(i)) return TruncatedSeries::zero(tab_, tr_);
    if (n == 0) return TruncatedSeries::one(tab_, tr_);
    // det( h_{lam_i - eta_j - i + j} )_{1<=i,j<=n}
    std::vector<std::vector<int>> idx(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) idx[i][j] = lam.part(i) - eta.part(j) - i + j;
    return det(idx);
  }

 private:
  TruncatedSeries det(const std::vector<std::vector<int>>& idx) {
    size_t n = idx.size();
    std::vector<int> cols(n);
    for (size_t j = 0; j < n; ++j) cols[j] = static_cast<int>(j);
    return detRec(idx, 0, cols);
  }
  TruncatedSeries detRec(const std::vector<std::vector<int>>& idx, size_t row,
                         std::vector<int>& cols) {
    if (cols.empty()) return TruncatedSeries::one(tab_, tr_);
    TruncatedSeries acc = TruncatedSeries::zero(tab_, tr_);
    for (size_t j = 0; j < cols.size(); ++j) {
      int k = idx[row][cols[j]];
      if (k < 0) continue;
      std::vector<int> rest;
      for (size_t m = 0; m < cols.size(); ++m)
        if (m != j) rest.push_back(cols[m]);
      TruncatedSeries minor = detRec(idx, row + 1, rest);
      TruncatedSeries term = h(k).mul(minor);
      acc = (j % 2 == 0) ? acc.add(term) : acc.sub(term);
    }
    return acc;
  }

  const TruncatedSeries& p(int i) {
    while (static_cast<int>(p_.size()) < i) {
      int n = static_cast<int>(p_.size()) + 1;
      TruncatedSeries acc = TruncatedSeries::zero(tab_, tr_);
      for (auto& [c, m] : alph_.letters) acc.addMixedTerm(ratPow(c, n), m.pow(n));
      p_.push_back(acc);
    }
    return p_[i - 1];
  }

  TablePtr tab_;
  Alphabet alph_;
  Truncation tr_;
  std::vector<TruncatedSeries> p_, h_;
};

inline TruncatedSeries skewSchur(const TablePtr& tab, const Partition& lam, const Partition& eta,
                                 const Alphabet& alph, const Truncation& tr) {
  SchurEvaluator ev(tab, alph, tr);
  return ev.skewSchur(lam, eta);
}

}  // namespace vertexlab
