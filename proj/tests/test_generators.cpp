#include <gtest/gtest.h>

#include "hublink/generators.hpp"

using namespace hublink;

TEST(Generators, ExactEdgeCounts) {
  for (std::uint64_t seed : {1, 2, 3}) {
    EXPECT_EQ(generate_erdos_renyi(100, 400, seed).edge_count(), 400u);
    EXPECT_EQ(generate_preferential_attachment(100, 400, seed).edge_count(), 400u);
    EXPECT_EQ(generate_small_world(100, 400, 0.05, seed).edge_count(), 400u);
    EXPECT_EQ(generate_small_world(100, 437, 0.3, seed).edge_count(), 437u);
  }
  EXPECT_EQ(generate_erdos_renyi(10, 45, 1).edge_count(), 45u);
  EXPECT_EQ(generate_preferential_attachment(10, 44, 1).edge_count(), 44u);
  EXPECT_EQ(generate_erdos_renyi(7, 0, 1).vertex_count(), 7u);
}

TEST(Generators, SeedReproducible) {
  EXPECT_EQ(generate_erdos_renyi(300, 1000, 9), generate_erdos_renyi(300, 1000, 9));
  EXPECT_EQ(generate_preferential_attachment(300, 1000, 9), generate_preferential_attachment(300, 1000, 9));
  EXPECT_EQ(generate_small_world(300, 1000, 0.1, 9), generate_small_world(300, 1000, 0.1, 9));
  EXPECT_NE(generate_erdos_renyi(300, 1000, 9), generate_erdos_renyi(300, 1000, 10));
}

TEST(Generators, InfeasibleInputs) {
  EXPECT_THROW(generate_erdos_renyi(5, 11, 1), std::invalid_argument);
  EXPECT_THROW(generate_preferential_attachment(5, 11, 1), std::invalid_argument);
  EXPECT_THROW(generate_small_world(5, 11, 0.1, 1), std::invalid_argument);
  EXPECT_THROW(generate_small_world(10, 41, 0.1, 1), std::invalid_argument);
  EXPECT_THROW(generate_small_world(100, 200, 1.5, 1), std::invalid_argument);
}

TEST(Generators, SmallWorldWithoutRewiringIsALattice) {
  auto g = generate_small_world(50, 100, 0, 1);
  for (vertex_t v = 0; v < 50; ++v) {
    EXPECT_EQ(g.degree(v), 4u);
    EXPECT_TRUE(g.has_edge(v, (v + 1) % 50));
    EXPECT_TRUE(g.has_edge(v, (v + 2) % 50));
  }
}

TEST(Generators, PreferentialAttachmentIsSkewed) {
  auto g = generate_preferential_attachment(20000, 100000, 5);
  EXPECT_GT(g.max_degree(), 20 * 10u);
  auto er = generate_erdos_renyi(20000, 100000, 5);
  EXPECT_LT(er.max_degree(), 40u);
}
