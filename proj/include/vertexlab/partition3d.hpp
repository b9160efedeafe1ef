#pragma once

#include <set>

#include "vertexlab/partition.hpp"

namespace vertexlab {

using Box = std::array<int, 3>;

/// Three-dimensional partition in canonical form: the union of the three
/// infinite legs determined by the asymptotic partitions, plus a finite set of
/// extra boxes keeping the whole configuration downward closed.
class Partition3D {
 public:
  std::array<Partition, 3> legs;  // asymptotics along axes 1,2,3
  std::vector<Box> extra;         // sorted, disjoint from the legs

  Partition3D() = default;
  Partition3D(Partition l1, Partition l2, Partition l3, std::vector<Box> ex = {})
      : legs{std::move(l1), std::move(l2), std::move(l3)}, extra(std::move(ex)) {
    std::sort(extra.begin(), extra.end());
    validate();
  }

  static Partition3D finite(const std::vector<Box>& boxes) {
    return Partition3D(Partition{}, Partition{}, Partition{}, boxes);
  }

  /// Leg membership per the axis conventions:
  ///   leg1 = {(b, i, j)  : (i, j) in legs[0]},
  ///   leg2 = {(j, b, i)  : (i, j) in legs[1]},
  ///   leg3 = {(i, j, b)  : (i, j) in legs[2]}.
  bool inLeg(int k, const Box& b) const {
    switch (k) {
      case 0: return legs[0].contains(b[1], b[2]);
      case 1: return legs[1].contains(b[2], b[0]);
      default: return legs[2].contains(b[0], b[1]);
    }
  }
  int legMask(const Box& b) const {
    return (inLeg(0, b) ? 1 : 0) | (inLeg(1, b) ? 2 : 0) | (inLeg(2, b) ? 4 : 0);
  }
  int legCount(const Box& b) const {
    int m = legMask(b);
    return (m & 1) + ((m >> 1) & 1) + ((m >> 2) & 1);
  }
  bool inExtra(const Box& b) const {
    return std::binary_search(extra.begin(), extra.end(), b);
  }
  bool contains(const Box& b) const {
    if (b[0] < 0 || b[1] < 0 || b[2] < 0) return false;
    return legMask(b) != 0 || inExtra(b);
  }

  const std::array<Partition, 3>& asymptotics() const { return legs; }

  void validate() const {
    for (size_t i = 0; i + 1 < extra.size(); ++i)
      if (extra[i] == extra[i + 1]) throw DomainError("duplicate extra box");
    for (auto& b : extra) {
      if (b[0] < 0 || b[1] < 0 || b[2] < 0) throw DomainError("negative box coordinate");
      if (legMask(b) != 0) throw DomainError("extra box lies inside a leg");
      for (int k = 0; k < 3; ++k) {
        if (b[k] == 0) continue;
        Box p = b;
        p[k]--;
        if (!contains(p)) throw DomainError("box set is not downward closed");
      }
    }
  }

  /// Renormalized volume: sum over boxes of (1 - #legs through the box);
  /// only extra boxes and multi-leg boxes contribute.
  long renormVolume() const {
    long chi = static_cast<long>(extra.size());
    int B = 1;
    for (auto& l : legs) {
      B = std::max(B, l.length());
      B = std::max(B, l.empty() ? 1 : l.parts[0]);
    }
    for (int x = 0; x < B; ++x)
      for (int y = 0; y < B; ++y)
        for (int z = 0; z < B; ++z) {
          int c = legCount({x, y, z});
          if (c >= 2) chi += 1 - c;
        }
    return chi;
  }

  auto operator<=>(const Partition3D&) const = default;
};

/// Boxes that can be added while staying downward closed.
inline std::vector<Box> addableBoxes(const Partition3D& pi) {
  int B = 2;
  for (auto& l : pi.legs) {
    B = std::max(B, l.length() + 1);
    B = std::max(B, (l.empty() ? 0 : l.parts[0]) + 1);
  }
  for (auto& b : pi.extra) B = std::max({B, b[0] + 2, b[1] + 2, b[2] + 2});
  std::vector<Box> out;
  for (int x = 0; x < B; ++x)
    for (int y = 0; y < B; ++y)
      for (int z = 0; z < B; ++z) {
        Box b{x, y, z};
        if (pi.contains(b)) continue;
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
          if (b[k] == 0) continue;
          Box p = b;
          p[k]--;
          ok = pi.contains(p);
        }
        if (ok) out.push_back(b);
      }
  return out;
}

/// All pi with the given asymptotics and renormalized volume <= maxVol,
/// breadth-first by volume, deterministic order within a stratum.
inline std::vector<Partition3D> enumerate3D(const Partition& l1, const Partition& l2,
                                            const Partition& l3, long maxVol) {
  Partition3D minimal(l1, l2, l3);
  long chi0 = minimal.renormVolume();
  std::vector<Partition3D> out;
  if (chi0 > maxVol) return out;
  std::set<std::vector<Box>> seen;
  std::vector<Partition3D> frontier{minimal};
  seen.insert(minimal.extra);
  out.push_back(minimal);
  for (long chi = chi0 + 1; chi <= maxVol; ++chi) {
    std::vector<Partition3D> next;
    for (auto& pi : frontier)
      for (auto& b : addableBoxes(pi)) {
        std::vector<Box> ex = pi.extra;
        ex.insert(std::lower_bound(ex.begin(), ex.end(), b), b);
        if (seen.insert(ex).second)
          next.emplace_back(pi.legs[0], pi.legs[1], pi.legs[2], ex);
      }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

/// Finite 3d partitions of exactly n boxes (plane partitions of n).
inline std::vector<Partition3D> finite3DOfSize(int n) {
  std::vector<Partition3D> all = enumerate3D(Partition{}, Partition{}, Partition{}, n);
  std::vector<Partition3D> out;
  for (auto& p : all)
    if (static_cast<int>(p.extra.size()) == n) out.push_back(p);
  return out;
}

/// Recomputes asymptotics of an explicit box membership predicate by probing
/// far along each axis; used as a test oracle for the canonical form.
inline std::array<Partition, 3> asymptoticsOf(const std::function<bool(const Box&)>& member,
                                              int bound) {
  auto grab = [&](int axis) {
    std::vector<int> parts;
    for (int i = 0;; ++i) {
      int row = 0;
      for (int j = 0;; ++j) {
        Box b{};
        // leg conventions: axis 1 -> (B, i, j), axis 2 -> (j, B, i), axis 3 -> (i, j, B)
        if (axis == 0) b = {bound, i, j};
        else if (axis == 1) b = {j, bound, i};
        else b = {i, j, bound};
        if (member(b))
          ++row;
        else
          break;
      }
      if (row == 0) break;
      parts.push_back(row);
    }
    return Partition(parts);
  };
  return {grab(0), grab(1), grab(2)};
}

}  // namespace vertexlab
