#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "vertexlab/rational.hpp"

namespace vertexlab {

enum class VarKind { equivariant, counting };

/// Ordered variable list shared by every algebraic object in one computation.
class VarTable {
 public:
  static std::shared_ptr<const VarTable> make(
      std::vector<std::pair<std::string, VarKind>> vars) {
    auto t = std::make_shared<VarTable>();
    for (auto& [n, k] : vars) {
      t->names_.push_back(n);
      t->kinds_.push_back(k);
    }
    for (size_t i = 0; i < t->names_.size(); ++i)
      for (size_t j = i + 1; j < t->names_.size(); ++j)
        if (t->names_[i] == t->names_[j])
          throw DomainError("duplicate variable name " + t->names_[i]);
    for (size_t i = 0; i < t->kinds_.size(); ++i)
      if (t->kinds_[i] == VarKind::counting) t->counting_.push_back(static_cast<int>(i));
    return t;
  }

  size_t size() const { return names_.size(); }
  const std::string& name(int i) const { return names_[i]; }
  VarKind kind(int i) const { return kinds_[i]; }
  bool isCounting(int i) const { return kinds_[i] == VarKind::counting; }
  const std::vector<int>& countingIdx() const { return counting_; }

  int index(const std::string& n) const {
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return static_cast<int>(i);
    return -1;
  }
  int indexOrThrow(const std::string& n) const {
    int i = index(n);
    if (i < 0) throw DomainError("unknown variable " + n);
    return i;
  }

  bool sameAs(const VarTable& o) const {
    return names_ == o.names_ && kinds_ == o.kinds_;
  }

  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::vector<int> counting_;
};

using TablePtr = std::shared_ptr<const VarTable>;

/// Exponent vector in doubled units: stored entry 2e encodes variable power e,
/// so odd entries are genuine half-integer powers.
struct Monomial {
  std::vector<int32_t> e2;

  Monomial() = default;
  explicit Monomial(size_t n) : e2(n, 0) {}

  static Monomial one(size_t n) { return Monomial(n); }

  bool isOne() const {
    return std::all_of(e2.begin(), e2.end(), [](int32_t v) { return v == 0; });
  }

  Monomial& mulEq(const Monomial& o) {
    for (size_t i = 0; i < e2.size(); ++i) e2[i] += o.e2[i];
    return *this;
  }
  Monomial mul(const Monomial& o) const {
    Monomial r = *this;
    r.mulEq(o);
    return r;
  }
  Monomial inv() const {
    Monomial r = *this;
    for (auto& v : r.e2) v = -v;
    return r;
  }
  Monomial pow(long k) const {
    Monomial r = *this;
    for (auto& v : r.e2) v = static_cast<int32_t>(v * k);
    return r;
  }

  long dot(const Monomial& w) const {
    long s = 0;
    for (size_t i = 0; i < e2.size(); ++i) s += static_cast<long>(e2[i]) * w.e2[i];
    return s;
  }

  /// Total doubled degree over the given variable indices.
  long degreeOn(const std::vector<int>& idx) const {
    long s = 0;
    for (int i : idx) s += e2[i];
    return s;
  }

  bool allEven() const {
    return std::all_of(e2.begin(), e2.end(), [](int32_t v) { return v % 2 == 0; });
  }

  auto operator<=>(const Monomial&) const = default;
};

/// Builds table-sized monomial var^(num/den); den must be 1 or 2.
inline Monomial varMono(const TablePtr& tab, const std::string& n, long num = 1, long den = 1) {
  if (den != 1 && den != 2) throw LatticeError("exponent denominator must be 1 or 2");
  Monomial m(tab->size());
  long e2 = (den == 1) ? 2 * num : num;
  m.e2[tab->indexOrThrow(n)] = static_cast<int32_t>(e2);
  return m;
}

inline std::string monoStr(const TablePtr& tab, const Monomial& m) {
  std::string s;
  for (size_t i = 0; i < m.e2.size(); ++i) {
    if (m.e2[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += tab->name(static_cast<int>(i));
    int32_t e = m.e2[i];
    if (e != 2) {
      s += "^";
      if (e % 2 == 0)
        s += std::to_string(e / 2);
      else
        s += std::to_string(e) + "/2";
    }
  }
  return s.empty() ? "1" : s;
}

/// Monomial substitution map between tables: each source variable goes to
/// coeff * monomial in the destination table; unmapped names carry over.
struct VarMap {
  TablePtr src, dst;
  std::vector<Rational> coeff;
  std::vector<Monomial> image;

  static VarMap renaming(TablePtr src, TablePtr dst) {
    VarMap vm;
    vm.src = src;
    vm.dst = dst;
    vm.coeff.assign(src->size(), Rational(1));
    vm.image.assign(src->size(), Monomial(dst->size()));
    for (size_t i = 0; i < src->size(); ++i) {
      int j = dst->index(src->name(static_cast<int>(i)));
      if (j >= 0) vm.image[i].e2[j] = 2;
      // otherwise defaults to the throwing "unmapped" marker below
      else
        vm.coeff[i] = Rational(0);
    }
    return vm;
  }

  static VarMap identity(TablePtr tab) { return renaming(tab, tab); }

  VarMap& set(const std::string& var, Rational c, Monomial img) {
    int i = src->indexOrThrow(var);
    coeff[i] = std::move(c);
    image[i] = std::move(img);
    return *this;
  }
  VarMap& setVar(const std::string& var, const std::string& dstVar, long num = 1, long den = 1) {
    return set(var, Rational(1), varMono(dst, dstVar, num, den));
  }

  /// Image of a monomial: (scalar, monomial) pair.
  std::pair<Rational, Monomial> applyMono(const Monomial& m) const {
    Monomial out(dst->size());
    Rational c(1);
    for (size_t i = 0; i < m.e2.size(); ++i) {
      int32_t e = m.e2[i];
      if (e == 0) continue;
      if (coeff[i] == 0 && image[i].isOne())
        throw DomainError("variable " + src->name(static_cast<int>(i)) +
                          " has no image in the target table");
      // out *= image^(e/2) in doubled units
      for (size_t j = 0; j < out.e2.size(); ++j) {
        long add = static_cast<long>(e) * image[i].e2[j];
        if (add % 2 != 0)
          throw LatticeError("substitution would create a quarter-integer exponent");
        out.e2[j] += static_cast<int32_t>(add / 2);
      }
      if (coeff[i] != 1) {
        if (e % 2 != 0)
          throw LatticeError("half power of a non-monic image of " +
                             src->name(static_cast<int>(i)));
        c *= ratPow(coeff[i], e / 2);
      }
    }
    return {c, out};
  }
};

}  // namespace vertexlab
