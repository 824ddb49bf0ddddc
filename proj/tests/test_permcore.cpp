#include <gtest/gtest.h>

#include "oracles.hpp"

using tfact::Permutation;
using tfact::PermGroup;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<tfact::Point>> cycles) {
  return Permutation::from_cycles(n, cycles);
}

Permutation random_perm(std::size_t n, tfact::SplitMix64& rng) {
  std::vector<tfact::Point> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<tfact::Point>(k);
  for (std::size_t k = n; k > 1; --k) std::swap(images[k - 1], images[rng.below(k)]);
  return Permutation::from_images(images);
}

const std::vector<std::string> kShipped = {"alt5", "alt5_stab", "alt6", "alt6_stab", "alt7",
                                           "alt7_stab", "alt8", "alt8_stab", "m11", "m11_stab",
                                           "m12", "m12_stab", "psl27", "psl27_borel"};

}  // namespace

TEST(Permutation, RightActionConvention) {
  // point^(pq) = (point^p)^q
  const Permutation p = cyc(3, {{1, 2}});
  const Permutation q = cyc(3, {{2, 3}});
  const Permutation pq = p * q;
  for (tfact::Point x = 0; x < 3; ++x) EXPECT_EQ(pq[x], q[p[x]]);
  EXPECT_EQ(pq, cyc(3, {{1, 3, 2}}));
}

TEST(Permutation, CycleArithmetic) {
  EXPECT_TRUE((cyc(3, {{1, 2}}) * cyc(3, {{1, 2}})).is_identity());
  EXPECT_EQ(cyc(3, {{1, 2, 3}}) * cyc(3, {{1, 2, 3}}), cyc(3, {{1, 3, 2}}));
  EXPECT_EQ(cyc(5, {{1, 2}, {3, 4, 5}}).to_cycles(), "(1,2)(3,4,5)");
  EXPECT_EQ(Permutation(4).to_cycles(), "()");
  EXPECT_EQ(cyc(6, {{1, 2}, {3, 4, 5}}).order(), 6u);
}

TEST(Permutation, InverseLaws) {
  tfact::SplitMix64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Permutation p = random_perm(9, rng);
    const Permutation q = random_perm(9, rng);
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_EQ((p * q).inverse(), q.inverse() * p.inverse());
  }
}

TEST(Permutation, RejectsBadInput) {
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), tfact::InputError);
  EXPECT_THROW(cyc(3, {{1, 4}}), tfact::InputError);
  EXPECT_THROW(cyc(3, {{1, 2}, {2, 3}}), tfact::InputError);
  EXPECT_THROW(cyc(3, {{1, 2}}) * Permutation(4), tfact::InputError);
  EXPECT_THROW(tfact::parse_cycles("(1,2", 3), tfact::InputError);
  EXPECT_THROW(tfact::parse_cycles("(1,x)", 3), tfact::InputError);
  EXPECT_THROW(tfact::parse_cycles("(0,1)", 3), tfact::InputError);
}

TEST(Permutation, ParseCycles) {
  EXPECT_EQ(tfact::parse_cycles(" ( 1 , 2 ) (3,4,5) ", 5), cyc(5, {{1, 2}, {3, 4, 5}}));
  EXPECT_TRUE(tfact::parse_cycles("()", 4).is_identity());
  EXPECT_TRUE(tfact::parse_cycles("", 4).is_identity());
}

TEST(PermGroup, ConjugateSubgroup) {
  const PermGroup a(3, {cyc(3, {{1, 2}})});
  const PermGroup ax = tfact::conjugate_subgroup(a, cyc(3, {{1, 3}}));
  ASSERT_EQ(ax.generators().size(), 1u);
  EXPECT_EQ(ax.generators()[0], cyc(3, {{2, 3}}));

  // Alt(4) point stabilizer of 4 conjugated by (1 4)(2 3) fixes 1.
  const PermGroup stab = oracle::alternating_on(4, 3);
  const PermGroup conj = tfact::conjugate_subgroup(stab, cyc(4, {{1, 4}, {2, 3}}));
  EXPECT_EQ(conj.orbit(0), std::vector<tfact::Point>{0});
  EXPECT_EQ(conj.order(), 3u);
  EXPECT_THROW(tfact::conjugate_subgroup(a, Permutation(4)), tfact::InputError);
}

TEST(PermGroup, Orbits) {
  const PermGroup s3 = oracle::symmetric(3);
  EXPECT_EQ(s3.orbit(0), (std::vector<tfact::Point>{0, 1, 2}));
  EXPECT_EQ(PermGroup::trivial(3).orbit(1), std::vector<tfact::Point>{1});
  EXPECT_THROW(s3.orbit(3), tfact::InputError);
  EXPECT_EQ(oracle::load("m11").group.orbit(0).size(), 11u);
}

TEST(PermGroup, Orders) {
  EXPECT_EQ(oracle::symmetric(3).order(), 6u);
  EXPECT_EQ(PermGroup(4, {cyc(4, {{1, 2}, {3, 4}}), cyc(4, {{1, 3}, {2, 4}})}).order(), 4u);
  EXPECT_EQ(oracle::load("m11").group.order(), 7920u);
  EXPECT_EQ(oracle::load("m12").group.order(), 95040u);
  EXPECT_EQ(oracle::symmetric(10).order(), 3628800u);
}

TEST(PermGroup, Membership) {
  const PermGroup a4 = oracle::alternating_on(4, 4);
  EXPECT_FALSE(a4.contains(cyc(4, {{1, 2}})));
  EXPECT_TRUE(a4.contains(cyc(4, {{1, 2}, {3, 4}})));
  EXPECT_THROW(a4.contains(Permutation(5)), tfact::InputError);
  const PermGroup m11 = oracle::load("m11").group;
  tfact::SplitMix64 rng(3);
  Permutation w = m11.identity();
  for (int k = 0; k < 50; ++k) {
    w = w * m11.generators()[rng.below(m11.generators().size())];
    EXPECT_TRUE(m11.contains(w));
  }
  EXPECT_FALSE(m11.contains(cyc(11, {{1, 2}})));
}

TEST(PermGroup, Elements) {
  EXPECT_EQ(oracle::symmetric(3).elements().size(), 6u);
  EXPECT_EQ(oracle::load("psl27").group.elements().size(), 168u);
  EXPECT_THROW(oracle::load("m12").group.elements(1000), tfact::ResourceError);
  try {
    oracle::load("m12").group.elements(1000);
  } catch (const tfact::ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
  }
}

// Chain order, membership and enumeration against breadth-first closure.
TEST(PermGroup, ChainAgreesWithClosureOnShippedGroups) {
  tfact::SplitMix64 rng(11);
  for (const auto& name : kShipped) {
    SCOPED_TRACE(name);
    const auto file = oracle::load(name);
    const PermGroup& g = file.group;
    ASSERT_TRUE(file.declared_order.has_value());
    EXPECT_EQ(g.order(), *file.declared_order);
    for (const auto& gen : g.generators()) EXPECT_TRUE(g.contains(gen));
    if (g.order() > 10000) continue;
    const auto all = oracle::closure(g);
    EXPECT_EQ(all.size(), g.order());
    const auto listed = g.elements();
    EXPECT_EQ(oracle::ElementSet(listed.begin(), listed.end()), all);
    for (int t = 0; t < 200; ++t) {
      const Permutation p = random_perm(g.degree(), rng);
      EXPECT_EQ(g.contains(p), all.count(p) == 1);
    }
  }
}

TEST(PermGroup, SubgroupOrderDivides) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"alt5", "alt5_stab"}, {"alt6", "alt6_stab"}, {"alt7", "alt7_stab"}, {"alt8", "alt8_stab"},
      {"m11", "m11_stab"},   {"m12", "m12_stab"},   {"psl27", "psl27_borel"}};
  for (const auto& [big, small] : pairs) {
    const PermGroup g = oracle::load(big).group;
    const PermGroup h = oracle::load(small).group;
    ASSERT_TRUE(g.contains_all(h)) << small;
    EXPECT_EQ(g.order() % h.order(), 0u) << small;
  }
}

TEST(PermGroup, RandomElementsAreMembersAndCoverSmallGroups) {
  const PermGroup s4 = oracle::symmetric(4);
  tfact::SplitMix64 rng(5);
  std::set<Permutation> seen;
  for (int t = 0; t < 2000; ++t) {
    const Permutation p = s4.random_element(rng);
    EXPECT_TRUE(s4.contains(p));
    seen.insert(p);
  }
  EXPECT_EQ(seen.size(), 24u);
}

TEST(PermIo, RoundTrip) {
  const PermGroup g = oracle::load("psl27").group;
  const auto text = tfact::format_group_text(g, g.order());
  const auto again = tfact::parse_group_text(text, "roundtrip");
  EXPECT_EQ(again.group.generators(), g.generators());
  EXPECT_EQ(again.declared_order, std::optional<std::uint64_t>(168));
}

TEST(PermIo, ErrorsCarryLineNumbers) {
  auto message = [](const std::string& text) -> std::string {
    try {
      tfact::parse_group_text(text, "bad.perm");
    } catch (const tfact::DataError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message("degree 3\ngen (1,2\n").find("bad.perm:2"), std::string::npos);
  EXPECT_NE(message("gen (1,2)\n").find("bad.perm:1"), std::string::npos);
  EXPECT_NE(message("degree 3\ngen (1,2)\norder 5\n").find("declared order 5"), std::string::npos);
  EXPECT_NE(message("degree 3\nfoo 1\n").find("bad.perm:2"), std::string::npos);
  EXPECT_NE(message("degree 3\ngen (1,4)\n").find("bad.perm:2"), std::string::npos);
  EXPECT_NE(message("").find("bad.perm"), std::string::npos);
  EXPECT_THROW(tfact::load_group_file("/nonexistent/x.perm"), tfact::DataError);
}

TEST(Random, SplitMixIsReproducible) {
  tfact::SplitMix64 a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next(), b.next());
  tfact::SplitMix64 c(0);
  // Reference value of the first SplitMix64 output for seed 0.
  EXPECT_EQ(c.next(), 0xe220a8397b1dcdafULL);
  tfact::SplitMix64 d(9);
  for (int k = 0; k < 1000; ++k) EXPECT_LT(d.below(7), 7u);
}
