#include <gtest/gtest.h>

#include <random>

#include "hublink/metrics.hpp"

using namespace hublink;

TEST(Contribution, PerMetricWeights) {
  EXPECT_DOUBLE_EQ(contribution(Metric::RA, 2), 0.5);
  EXPECT_NEAR(contribution(Metric::AA, 2), 1.442695040888963, 1e-15);
  EXPECT_EQ(contribution(Metric::CN, 1000), 1.0);
  for (Metric m : all_metrics)
    if (m != Metric::AA && m != Metric::RA) {
      EXPECT_EQ(contribution(m, 7), 1.0) << metric_name(m);
    }
}

TEST(Contribution, DomainErrors) {
  EXPECT_THROW(contribution(Metric::AA, 1), std::domain_error);
  EXPECT_THROW(contribution(Metric::CN, 0), std::domain_error);
  EXPECT_DOUBLE_EQ(contribution(Metric::RA, 1), 1.0);
}

// Expected values come from pair (0, 3) of the fixture graph: two common
// neighbors, degrees 2 and 3.
TEST(Finalize, FixturePair) {
  EXPECT_NEAR(finalize(Metric::JC, 2, 2, 3), 2.0 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(finalize(Metric::HP, 2, 2, 3), 1.0);
  EXPECT_NEAR(finalize(Metric::LHN, 2, 2, 3), 1.0 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(finalize(Metric::SI, 2, 2, 3), 0.4);
  EXPECT_DOUBLE_EQ(finalize(Metric::HD, 2, 2, 3), 2.0 / 3);
  EXPECT_DOUBLE_EQ(finalize(Metric::CN, 2, 2, 3), 2.0);
  EXPECT_DOUBLE_EQ(finalize(Metric::RA, 0.75, 2, 3), 0.75);
}

TEST(Finalize, IdenticalNeighborhoodsGiveCosineOne) {
  for (std::size_t k = 1; k <= 64; ++k) EXPECT_DOUBLE_EQ(finalize(Metric::SC, double(k), k, k), 1.0);
}

TEST(Finalize, RejectsBadPreconditions) {
  EXPECT_THROW(finalize(Metric::JC, 1, 0, 3), std::domain_error);
  EXPECT_THROW(finalize(Metric::JC, 0, 2, 3), std::domain_error);
}

TEST(Finalize, Properties) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    std::size_t da = 1 + rng() % 500, dc = 1 + rng() % 500;
    double acc = double(1 + rng() % std::min(da, dc));
    for (Metric m : {Metric::JC, Metric::SI, Metric::SC, Metric::HP, Metric::HD}) {
      double s = finalize(m, acc, da, dc);
      ASSERT_GT(s, 0) << metric_name(m);
      ASSERT_LE(s, 1.0) << metric_name(m);
    }
    ASSERT_GE(finalize(Metric::HP, acc, da, dc), finalize(Metric::HD, acc, da, dc));
    for (Metric m : all_metrics) ASSERT_EQ(finalize(m, acc, da, dc), finalize(m, acc, dc, da)) << metric_name(m);

    // SI(acc, d, d) = JC(acc, d, d) * (2d - acc) / (2d)
    std::size_t d = da;
    double a = double(1 + rng() % d);
    double lhs = finalize(Metric::SI, a, d, d);
    double rhs = finalize(Metric::JC, a, d, d) * (2.0 * double(d) - a) / (2.0 * double(d));
    ASSERT_NEAR(lhs, rhs, 1e-12 * lhs);
  }
}

TEST(MetricNames, RoundTripAndUnknown) {
  for (Metric m : all_metrics) EXPECT_EQ(parse_metric(metric_name(m)), m);
  EXPECT_EQ(parse_metric("LHN"), Metric::LHN);
  EXPECT_FALSE(parse_metric("xx").has_value());
}

TEST(DefaultHubLimits, PerMetricTable) {
  EXPECT_EQ(default_hub_limit(Metric::HP), 4u);
  EXPECT_EQ(default_hub_limit(Metric::LHN), 4u);
  EXPECT_EQ(default_hub_limit(Metric::CN), 32u);
  EXPECT_EQ(default_hub_limit(Metric::AA), 32u);
  for (Metric m : {Metric::JC, Metric::SI, Metric::SC, Metric::HD, Metric::RA}) EXPECT_EQ(default_hub_limit(m), 256u);
}
