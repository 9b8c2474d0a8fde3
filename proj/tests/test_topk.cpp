#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hublink/topk.hpp"

using namespace hublink;

namespace {

std::vector<score_t> scores_of(std::span<const Prediction> ps) {
  std::vector<score_t> s;
  for (auto& p : ps) s.push_back(p.score);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

PredictionList list_of(std::size_t cap, std::initializer_list<Prediction> ps, TieBreak tb = TieBreak::Fast) {
  PredictionList l(cap, tb);
  for (auto& p : ps) l.offer(p);
  return l;
}

}  // namespace

TEST(PredictionList, EvictsMinimum) {
  auto l = list_of(2, {{0, 1, 1}, {0, 2, 3}, {0, 3, 2}});
  EXPECT_EQ(scores_of(l.items()), (std::vector<score_t>{3, 2}));
}

TEST(PredictionList, TiesKeepMultiset) {
  auto l = list_of(2, {{0, 1, 5}, {0, 2, 5}, {0, 3, 5}});
  EXPECT_EQ(scores_of(l.items()), (std::vector<score_t>{5, 5}));
}

TEST(PredictionList, LazyHeapify) {
  auto l = list_of(3, {{0, 1, 7}});
  EXPECT_EQ(scores_of(l.items()), std::vector<score_t>{7});
  EXPECT_FALSE(l.heapified());
  l.offer({0, 2, 1});
  EXPECT_FALSE(l.heapified());
  l.offer({0, 3, 4});
  EXPECT_TRUE(l.heapified());
  EXPECT_EQ(l.root().score, 1);
  auto items = l.items();
  std::vector<Prediction> v(items.begin(), items.end());
  EXPECT_TRUE(std::is_heap(v.begin(), v.end(), [](auto& x, auto& y) { return x.score > y.score; }));
}

TEST(PredictionList, DeterministicEvictionUsesEdgeOrder) {
  auto l = list_of(2, {{3, 4, 1}, {0, 9, 1}, {1, 2, 1}, {0, 5, 1}}, TieBreak::Deterministic);
  auto s = l.sorted();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (Prediction{0, 5, 1}));
  EXPECT_EQ(s[1], (Prediction{0, 9, 1}));
}

TEST(Merge, CrossListTopK) {
  std::vector<PredictionList> lists;
  lists.push_back(list_of(2, {{0, 1, 3}, {0, 2, 1}}));
  lists.push_back(list_of(2, {{1, 2, 2}}));
  auto out = merge(lists, 2, TieBreak::Fast);
  EXPECT_EQ(scores_of(out), (std::vector<score_t>{3, 2}));
}

TEST(Merge, EmptyLists) {
  std::vector<PredictionList> lists(2, PredictionList(5));
  EXPECT_TRUE(merge(lists, 5, TieBreak::Fast).empty());
  EXPECT_TRUE(merge(std::span<PredictionList>{}, 5, TieBreak::Fast).empty());
}

// Three tied candidates across two lists: enumerate them all, sort by
// (u, v), and expect the first two.
TEST(Merge, DeterministicTies) {
  const std::vector<Prediction> tied{{4, 6, 2}, {1, 8, 2}, {2, 3, 2}};
  std::vector<PredictionList> lists;
  lists.push_back(list_of(2, {tied[0], tied[1]}, TieBreak::Deterministic));
  lists.push_back(list_of(2, {tied[2]}, TieBreak::Deterministic));
  auto expected = tied;
  std::sort(expected.begin(), expected.end(), [](auto& a, auto& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  expected.resize(2);
  EXPECT_EQ(merge(lists, 2, TieBreak::Deterministic), expected);
}

// Offer retention and merge against a full-sort oracle.
TEST(TopKProperties, RandomOfferAndMerge) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t cap = 1 + rng() % 12;
    std::size_t workers = 1 + rng() % 6;
    auto tb = trial % 2 ? TieBreak::Deterministic : TieBreak::Fast;
    std::vector<PredictionList> lists;
    std::vector<Prediction> all;
    vertex_t next = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      PredictionList l(cap, tb);
      std::vector<score_t> offered;
      std::size_t count = rng() % 30;
      for (std::size_t i = 0; i < count; ++i) {
        Prediction p{next, next + 1 + vertex_t(rng() % 5), score_t(rng() % 8)};
        ++next;
        l.offer(p);
        offered.push_back(p.score);
      }
      std::sort(offered.begin(), offered.end(), std::greater<>());
      offered.resize(std::min(offered.size(), cap));
      ASSERT_EQ(scores_of(l.items()), offered);
      all.insert(all.end(), l.items().begin(), l.items().end());
      lists.push_back(std::move(l));
    }
    std::size_t n_p = 1 + rng() % 20;
    auto out = merge(lists, n_p, tb);
    auto ref = scores_of(all);
    ref.resize(std::min(ref.size(), n_p));
    ASSERT_EQ(out.size(), ref.size());
    for (std::size_t i = 1; i < out.size(); ++i) ASSERT_GE(out[i - 1].score, out[i].score);
    ASSERT_EQ(scores_of(out), ref);
  }
}
