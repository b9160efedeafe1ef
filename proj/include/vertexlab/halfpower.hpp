#pragma once

#include "vertexlab/laurent.hpp"

namespace vertexlab {

/// Change of variables t = -Q kappa^{1/2}, q = -Q kappa^{-1/2}; defined on the
/// sublattice where the total (t,q)-exponent is an integer, with the branch
/// t^{1/2} q^{1/2} = Q fixed by the degree-one edge calibration.
/// Monomial rule: t^a q^b -> (-1)^{a-b} Q^{a+b} kappa^{(a-b)/2}.
inline LaurentPoly halfPowerConvert(const LaurentPoly& p, const std::string& tName,
                                    const std::string& qName, const TablePtr& dst,
                                    const std::string& QName = "Q",
                                    const std::string& kName = "kappa") {
  int ti = p.tab->indexOrThrow(tName), qi = p.tab->indexOrThrow(qName);
  for (size_t i = 0; i < p.tab->size(); ++i)
    if (static_cast<int>(i) != ti && static_cast<int>(i) != qi)
      for (auto& [m, c] : p.terms)
        if (m.e2[i] != 0)
          throw LatticeError("expression involves a variable other than " + tName + "," + qName);
  int Qi = dst->indexOrThrow(QName), ki = dst->indexOrThrow(kName);
  LaurentPoly out(dst);
  for (auto& [m, c] : p.terms) {
    long a2 = m.e2[ti], b2 = m.e2[qi];
    if ((a2 + b2) % 2 != 0)
      throw LatticeError("monomial off the convertible sublattice: " + monoStr(p.tab, m));
    long d = (a2 - b2) / 2;  // a - b
    Monomial img(dst->size());
    img.e2[Qi] = static_cast<int32_t>(a2 + b2);
    img.e2[ki] = static_cast<int32_t>(d);
    out.addTerm(img, (d % 2 == 0 ? c : -c));
  }
  return out;
}

/// Inverse direction: Q^n kappa^{k/2} -> (t,q) monomials.
inline LaurentPoly halfPowerConvertBack(const LaurentPoly& p, const std::string& QName,
                                        const std::string& kName, const TablePtr& dst,
                                        const std::string& tName = "t",
                                        const std::string& qName = "q") {
  int Qi = p.tab->indexOrThrow(QName), ki = p.tab->indexOrThrow(kName);
  int ti = dst->indexOrThrow(tName), qi = dst->indexOrThrow(qName);
  LaurentPoly out(dst);
  for (auto& [m, c] : p.terms) {
    long n2 = m.e2[Qi], k2 = m.e2[ki];  // Q^{n2/2}, kappa^{k2/2}
    if (n2 % 2 != 0) throw LatticeError("half power of Q cannot be converted back");
    long a2 = n2 / 2 + k2, b2 = n2 / 2 - k2;  // t^{a2/2} q^{b2/2}
    Monomial img(dst->size());
    img.e2[ti] = static_cast<int32_t>(a2);
    img.e2[qi] = static_cast<int32_t>(b2);
    out.addTerm(img, (k2 % 2 == 0 ? c : -c));
  }
  return out;
}

}  // namespace vertexlab
