#include <gtest/gtest.h>

#include "oracles.hpp"

using tfact::CollapsedAdjacency;
using tfact::CosetSpace;
using tfact::Permutation;
using tfact::PermGroup;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<tfact::Point>> cycles) {
  return Permutation::from_cycles(n, cycles);
}

using Matrix = std::vector<std::vector<std::uint64_t>>;

struct Instance {
  std::string name;
  PermGroup g;
  PermGroup a;
};

std::vector<Instance> oracle_instances() {
  return {{"S3/S2", oracle::symmetric(3), oracle::symmetric_on(3, 2)},
          {"S3/<(1 2)>", oracle::symmetric(3), PermGroup(3, {cyc(3, {{1, 2}})})},
          {"S4/S3", oracle::symmetric(4), oracle::symmetric_on(4, 3)},
          {"S4/<(1 2)>", oracle::symmetric(4), PermGroup(4, {cyc(4, {{1, 2}})})},
          {"S5/S4", oracle::symmetric(5), oracle::symmetric_on(5, 4)},
          {"PSL(2,7)/B", oracle::load("psl27").group, oracle::load("psl27_borel").group},
          {"Alt5/Alt4", oracle::load("alt5").group, oracle::load("alt5_stab").group}};
}

}  // namespace

TEST(Hecke, S4ModS3Matrices) {
  const auto cs = CosetSpace::build(oracle::symmetric(4), oracle::symmetric_on(4, 3));
  const CollapsedAdjacency ca(cs);
  ASSERT_EQ(ca.rank(), 2u);
  EXPECT_EQ(ca.orbital_matrix(1), (Matrix{{0, 3}, {1, 2}}));
  EXPECT_EQ(ca.matrix(1), (Matrix{{0, 1}, {3, 2}}));
  EXPECT_EQ(ca.matrix(0), (Matrix{{1, 0}, {0, 1}}));
  EXPECT_FALSE(tfact::squares_to_group(ca, 0));
  EXPECT_TRUE(tfact::squares_to_group(ca, 1));
  EXPECT_THROW(tfact::squares_to_group(ca, 2), tfact::InputError);
}

TEST(Hecke, S3ModTransposition) {
  const auto cs = CosetSpace::build(oracle::symmetric(3), PermGroup(3, {cyc(3, {{1, 2}})}));
  const CollapsedAdjacency ca(cs);
  EXPECT_EQ(ca.orbital_matrix(1), (Matrix{{0, 2}, {1, 1}}));
  EXPECT_EQ(ca.matrix(1), (Matrix{{0, 1}, {2, 1}}));
}

// Full tensor against the group-algebra computation.
TEST(Hecke, TensorMatchesGroupAlgebra) {
  for (const auto& inst : oracle_instances()) {
    SCOPED_TRACE(inst.name);
    const auto cs = CosetSpace::build(inst.g, inst.a);
    const CollapsedAdjacency ca(cs);
    const auto g_all = oracle::closure(inst.g);
    const auto a_all = oracle::closure(inst.a);
    const auto dcs = oracle::double_cosets(g_all, a_all);
    const auto t = oracle::hecke_tensor(dcs, a_all.size());
    ASSERT_EQ(dcs.cosets.size(), ca.rank());
    std::vector<std::size_t> label(dcs.cosets.size());
    for (std::size_t k = 0; k < label.size(); ++k) label[k] = cs.dc_index(*dcs.cosets[k].begin());
    for (std::size_t x = 0; x < label.size(); ++x) {
      for (std::size_t y = 0; y < label.size(); ++y) {
        for (std::size_t j = 0; j < label.size(); ++j) {
          EXPECT_EQ(ca.a(label[x], label[y], label[j]), t[x][y][j]);
        }
      }
    }
  }
}

TEST(Hecke, OrbitalMatrixIsTransposedHeckeConstant) {
  for (const auto& inst : oracle_instances()) {
    const auto cs = CosetSpace::build(inst.g, inst.a);
    const CollapsedAdjacency ca(cs);
    for (std::size_t y = 0; y < ca.rank(); ++y) {
      const auto m = ca.orbital_matrix(y);
      for (std::size_t x = 0; x < ca.rank(); ++x) {
        for (std::size_t j = 0; j < ca.rank(); ++j) {
          EXPECT_EQ(m[x][j], ca.a(cs.inverse_label(y), j, x)) << inst.name;
        }
      }
    }
  }
}

TEST(Hecke, InvariantsOnShippedInstances) {
  std::vector<Instance> all = oracle_instances();
  for (const auto& [g, a] : std::vector<std::pair<std::string, std::string>>{
           {"alt6", "alt6_stab"}, {"alt7", "alt7_stab"}, {"alt8", "alt8_stab"},
           {"m11", "m11_stab"}, {"m12", "m12_stab"}}) {
    all.push_back({g, oracle::load(g).group, oracle::load(a).group});
  }
  for (const auto& inst : all) {
    SCOPED_TRACE(inst.name);
    const auto cs = CosetSpace::build(inst.g, inst.a);
    const CollapsedAdjacency ca(cs);
    EXPECT_TRUE(tfact::mass_conserved(ca));
    const auto c = tfact::boolean_constants(ca);
    const std::size_t r = ca.rank();
    for (std::size_t x = 0; x < r; ++x) {
      for (std::size_t y = 0; y < r; ++y) {
        EXPECT_EQ(ca.a(0, y, x), x == y ? 1u : 0u);
        EXPECT_EQ(ca.a(x, 0, y), x == y ? 1u : 0u);
        std::vector<char> marks(r, 0);
        for (std::size_t j = 0; j < r; ++j) marks[j] = c[(x * r + y) * r + j] ? 1 : 0;
        EXPECT_EQ(CosetSpace::marks_to_labels(marks), cs.dc_product_labels(x, cs.rep(y)));
      }
      EXPECT_EQ(tfact::squares_to_group(ca, x), tfact::square_dc_check_rep(cs, x));
    }
  }
}
