#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>

#include "vertexlab/partition3d.hpp"

using namespace vertexlab;

TEST_CASE("arms and legs") {
  Partition lam{4, 4, 2, 1};
  auto [a, l] = lam.armLeg(1, 0);
  REQUIRE(a == 3);
  REQUIRE(l == 2);
  Partition one{1};
  REQUIRE(one.armLeg(0, 0) == std::pair<int, int>(0, 0));
  Partition p31{3, 1};
  REQUIRE(p31.armLeg(0, 1) == std::pair<int, int>(1, 0));
  REQUIRE_THROWS_AS(p31.armLeg(1, 2), DomainError);
}

TEST_CASE("conjugate and norm identities") {
  std::mt19937 rng(31337);
  for (auto& lam : partitionsUpTo(8)) {
    REQUIRE(lam.conjugate().conjugate() == lam);
    REQUIRE(lam.conjugate().size() == lam.size());
    long s = 0, rowsum = 0;
    for (auto [b1, b2] : lam.boxes()) {
      auto [a, l] = lam.armLeg(b1, b2);
      s += 2 * a + 1;
      rowsum += b1;
    }
    REQUIRE(s == lam.norm2());
    REQUIRE(2 * rowsum == lam.conjugate().norm2() - lam.size());
  }
}

TEST_CASE("corner diagonals") {
  Corners c0 = corners(Partition{});
  REQUIRE(c0.inner == std::vector<long>{0});
  REQUIRE(c0.outer.empty());

  Corners c1 = corners(Partition{3, 3, 1, 1});
  REQUIRE(c1.inner == std::vector<long>({3, -1, -4}));
  REQUIRE(c1.outer == std::vector<long>({1, -3}));

  Corners c2 = corners(Partition{1});
  REQUIRE(c2.inner == std::vector<long>({1, -1}));
  REQUIRE(c2.outer == std::vector<long>({0}));

  // strict interleaving c^-_0 > c^+_1 > c^-_1 > ...
  for (auto& lam : partitionsUpTo(7)) {
    Corners c = corners(lam);
    REQUIRE(c.inner.size() == c.outer.size() + 1);
    for (size_t i = 0; i < c.outer.size(); ++i) {
      REQUIRE(c.inner[i] > c.outer[i]);
      REQUIRE(c.outer[i] > c.inner[i + 1]);
    }
  }
}

TEST_CASE("renormalized volume") {
  REQUIRE(Partition3D::finite({{0, 0, 0}}).renormVolume() == 1);
  REQUIRE(Partition3D(Partition{1}, Partition{}, Partition{}).renormVolume() == 0);
  REQUIRE(Partition3D(Partition{1}, Partition{1}, Partition{1}).renormVolume() == -2);

  // adding extra boxes raises the volume by exactly their count
  Partition3D base(Partition{2, 1}, Partition{1}, Partition{});
  long chi0 = base.renormVolume();
  auto adds = addableBoxes(base);
  REQUIRE_FALSE(adds.empty());
  Partition3D grown(base.legs[0], base.legs[1], base.legs[2], {adds[0]});
  REQUIRE(grown.renormVolume() == chi0 + 1);
}

TEST_CASE("canonical form validation") {
  REQUIRE_THROWS_AS(Partition3D(Partition{}, Partition{}, Partition{}, {{1, 0, 0}}),
                    DomainError);
  REQUIRE_THROWS_AS(Partition3D(Partition{1}, Partition{}, Partition{}, {{0, 0, 0}}),
                    DomainError);
}

TEST_CASE("enumeration counts plane partitions") {
  std::map<long, int> byChi;
  for (auto& pi : enumerate3D(Partition{}, Partition{}, Partition{}, 6))
    byChi[pi.renormVolume()]++;
  // monomial-ideal colength counts in three variables
  std::map<long, int> expect{{0, 1}, {1, 1}, {2, 3}, {3, 6}, {4, 13}, {5, 24}, {6, 48}};
  REQUIRE(byChi == expect);
}

TEST_CASE("enumeration with legs") {
  auto single = enumerate3D(Partition{1}, Partition{}, Partition{}, 0);
  REQUIRE(single.size() == 1);
  REQUIRE(single[0].extra.empty());

  auto minimal = enumerate3D(Partition{1}, Partition{1}, Partition{1}, -2);
  REQUIRE(minimal.size() == 1);
  REQUIRE(minimal[0].renormVolume() == -2);

  // deterministic ordering: breadth-first by volume, then lexicographic
  auto strata = enumerate3D(Partition{1}, Partition{}, Partition{}, 2);
  for (size_t i = 1; i < strata.size(); ++i) {
    REQUIRE(strata[i - 1].renormVolume() <= strata[i].renormVolume());
    if (strata[i - 1].renormVolume() == strata[i].renormVolume())
      REQUIRE(strata[i - 1].extra < strata[i].extra);
  }
}

TEST_CASE("asymptotics and leg membership") {
  Partition3D pi(Partition{2, 1, 1}, Partition{1}, Partition{3, 2});
  auto asym = asymptoticsOf([&](const Box& b) { return pi.contains(b); }, 12);
  REQUIRE(asym[0] == Partition{2, 1, 1});
  REQUIRE(asym[1] == Partition{1});
  REQUIRE(asym[2] == Partition{3, 2});

  Partition3D m(Partition{1}, Partition{1}, Partition{1});
  REQUIRE(m.legMask({0, 0, 0}) == 7);

  REQUIRE(Partition3D::finite({{0, 0, 0}}).asymptotics() ==
          std::array<Partition, 3>{Partition{}, Partition{}, Partition{}});
}
