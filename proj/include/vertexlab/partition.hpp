#pragma once

#include <array>
#include <compare>
#include <functional>
#include <string>
#include <vector>

#include "vertexlab/rational.hpp"

namespace vertexlab {

/// Two-dimensional partition: weakly decreasing positive parts.
/// Boxes are pairs (b1,b2) with 0 <= b2 <= parts[b1]-1.
class Partition {
 public:
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p) : parts(p) { validate(); }
  explicit Partition(std::vector<int> p) : parts(std::move(p)) { validate(); }

  void validate() const {
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw DomainError("partition parts must be positive");
      if (i + 1 < parts.size() && parts[i] < parts[i + 1])
        throw DomainError("partition parts must be weakly decreasing");
    }
  }

  bool empty() const { return parts.empty(); }
  long size() const {
    long s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts.size()); }
  int part(int i) const { return i < length() ? parts[i] : 0; }  // 0-based
  long norm2() const {
    long s = 0;
    for (int p : parts) s += static_cast<long>(p) * p;
    return s;
  }

  bool contains(int b1, int b2) const {
    return b1 >= 0 && b2 >= 0 && b1 < length() && b2 < parts[b1];
  }

  Partition conjugate() const {
    std::vector<int> c;
    if (parts.empty()) return Partition{};
    c.assign(parts[0], 0);
    for (int p : parts)
      for (int j = 0; j < p; ++j) c[j]++;
    return Partition(std::move(c));
  }

  /// a = lambda_{b1+1} - b2 - 1, l = lambda^t_{b2+1} - b1 - 1.
  std::pair<int, int> armLeg(int b1, int b2) const {
    if (!contains(b1, b2)) throw DomainError("box outside partition");
    int a = parts[b1] - b2 - 1;
    int l = 0;
    for (size_t i = b1 + 1; i < parts.size(); ++i)
      if (parts[i] > b2) ++l;
    return {a, l};
  }

  std::vector<std::pair<int, int>> boxes() const {
    std::vector<std::pair<int, int>> b;
    for (int i = 0; i < length(); ++i)
      for (int j = 0; j < parts[i]; ++j) b.emplace_back(i, j);
    return b;
  }

  auto operator<=>(const Partition&) const = default;

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }
};

/// All partitions of exactly n.
inline std::vector<Partition> partitionsOf(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxPart) {
    if (rem == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rem, maxPart); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::vector<Partition> partitionsUpTo(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k) {
    auto v = partitionsOf(k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// Inner and outer corner diagonals of a partition, ordered and interleaved
/// c^-_0 > c^+_1 > c^-_1 > ... ; the empty partition has inner = {0}.
struct Corners {
  std::vector<long> inner;  // c^-_0 .. c^-_d
  std::vector<long> outer;  // c^+_1 .. c^+_d
};

inline Corners corners(const Partition& nu) {
  Corners c;
  // distinct parts n_1 > ... > n_d with multiplicities m_1..m_d
  std::vector<long> n, m;
  for (int p : nu.parts) {
    if (!n.empty() && n.back() == p)
      m.back()++;
    else {
      n.push_back(p);
      m.push_back(1);
    }
  }
  long d = static_cast<long>(n.size());
  long acc = 0;
  for (long i = 0; i <= d; ++i) {
    long ni1 = (i < d) ? n[i] : 0;  // n_{i+1}, with n_{d+1} = 0
    c.inner.push_back(ni1 - acc);
    if (i < d) {
      acc += m[i];
      c.outer.push_back(n[i] - acc);
    }
  }
  return c;
}

}  // namespace vertexlab
