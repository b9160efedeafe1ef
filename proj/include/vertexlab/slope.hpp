#pragma once

#include <array>

#include "vertexlab/vartable.hpp"

namespace vertexlab {

/// Lexicographic grade (dominant, subdominant); positive = attracting.
using GradePair = std::pair<long, long>;

inline int gradeSign(const GradePair& g) {
  if (g.first != 0) return g.first > 0 ? 1 : -1;
  if (g.second != 0) return g.second > 0 ? 1 : -1;
  return 0;
}

/// One-parameter subgroup of the Calabi-Yau torus ker(t1 t2 t3), either an
/// explicit integer exponent triple summing to zero, or a preferred regime
/// "r_big of huge magnitude, r_small tiny, third axis balancing" evaluated
/// lexicographically so no magnitude tuning ever enters.
struct Slope {
  bool preferred = false;
  std::array<long, 3> r{0, 0, 0};
  int bigAxis = 0, smallAxis = 1;  // 0-based
  int bigSign = 1, smallSign = 1;

  static Slope explicitSlope(long r1, long r2, long r3) {
    if (r1 + r2 + r3 != 0) throw DomainError("slope exponents must sum to zero");
    Slope s;
    s.preferred = false;
    s.r = {r1, r2, r3};
    return s;
  }
  static Slope preferredSlope(int bigAxis, int bigSign, int smallAxis, int smallSign) {
    if (bigAxis == smallAxis) throw DomainError("preferred slope axes must differ");
    Slope s;
    s.preferred = true;
    s.bigAxis = bigAxis;
    s.smallAxis = smallAxis;
    s.bigSign = bigSign;
    s.smallSign = smallSign;
    return s;
  }
  /// "rA>>rB>0>>rC" or "rA>>0>rB>>rC" with A,B in {1,2,3}.
  static Slope parse(const std::string& txt) {
    auto bad = [&] { return DomainError("unrecognized slope regime: " + txt); };
    std::vector<std::string> tok;
    std::string cur;
    for (size_t i = 0; i < txt.size(); ++i) {
      if (txt[i] == '>') {
        if (!cur.empty()) tok.push_back(cur);
        cur.clear();
        while (i + 1 < txt.size() && txt[i + 1] == '>') ++i;
      } else
        cur += txt[i];
    }
    if (!cur.empty()) tok.push_back(cur);
    if (tok.size() != 4) throw bad();
    auto axis = [&](const std::string& s) {
      if (s.size() != 2 || s[0] != 'r' || s[1] < '1' || s[1] > '3') throw bad();
      return s[1] - '1';
    };
    if (tok[1] == "0") {  // rA >> 0 > rB >> rC
      return preferredSlope(axis(tok[0]), 1, axis(tok[2]), -1);
    }
    if (tok[2] != "0") throw bad();
    return preferredSlope(axis(tok[0]), 1, axis(tok[1]), 1);
  }

  Slope negated() const {
    Slope s = *this;
    if (preferred) {
      s.bigSign = -bigSign;
      s.smallSign = -smallSign;
    } else {
      for (auto& v : s.r) v = -v;
    }
    return s;
  }

  int thirdAxis() const { return 3 - bigAxis - smallAxis; }

  /// Grade of a monomial given the table positions of t1,t2,t3.
  GradePair grade(const Monomial& m, const std::array<int, 3>& tIdx) const {
    std::array<long, 3> e{};
    for (int k = 0; k < 3; ++k) e[k] = m.e2[tIdx[k]];
    if (!preferred) {
      long g = 0;
      for (int k = 0; k < 3; ++k) g += r[k] * e[k];
      return {g, 0};
    }
    int c = thirdAxis();
    return {static_cast<long>(bigSign) * (e[bigAxis] - e[c]),
            static_cast<long>(smallSign) * (e[smallAxis] - e[c])};
  }

  std::string str() const {
    if (!preferred)
      return "(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," +
             std::to_string(r[2]) + ")";
    auto rn = [](int a) { return "r" + std::to_string(a + 1); };
    if (smallSign > 0)
      return rn(bigAxis) + ">>" + rn(smallAxis) + ">0>>" + rn(thirdAxis());
    return rn(bigAxis) + ">>0>" + rn(smallAxis) + ">>" + rn(thirdAxis());
  }
};

}  // namespace vertexlab
