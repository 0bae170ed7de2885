#include <gtest/gtest.h>

#include <map>

#include "flatgraph/coset_model.hpp"
#include "flatgraph/errors.hpp"
#include "support.hpp"

using namespace flatgraph;
using flatgraph::testing::example_5_2;
using flatgraph::testing::example_5_3;

namespace {

ConeSemigroup cone(const CosetModel& m, const std::string& pattern) {
  const auto spec = derive_flat_spec(m);
  return ConeSemigroup(spec, SignPattern::parse(pattern, spec.components()));
}

}  // namespace

TEST(PadicModel, RejectsNonPrimeModulus) {
  EXPECT_THROW(PadicModel({{4, {1, 0}}}), NonPrimeModulus);
  try {
    PadicModel({{2, {1}}, {9, {1}}});
  } catch (const NonPrimeModulus& e) {
    EXPECT_EQ(e.value(), 9);
  }
  EXPECT_THROW(PadicModel({{2, {1, 0}}, {3, {1}}}), InvalidSpec);
  EXPECT_THROW(PadicModel({}), InvalidSpec);
}

TEST(TreeModel, DerivedSpecIsDiagonal) {
  const auto spec = derive_flat_spec(TreeModel({2, 3}));
  EXPECT_EQ(spec.rank(), 2u);
  EXPECT_EQ(spec.weights(), (std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}}));
  EXPECT_EQ(spec.relative_scales(), (std::vector<std::int64_t>{2, 3}));
  EXPECT_THROW(derive_flat_spec(TreeModel({1})), InvalidSpec);
  EXPECT_THROW(TreeModel({}), InvalidSpec);
}

TEST(Fiber, Example52Level11) {
  const CosetModel m = example_5_2(2);
  const auto f = fiber(m, cone(m, "+1+2+3"), {1, 1});
  ASSERT_EQ(f.size(), 16u);
  EXPECT_EQ(fiber_caps(derive_flat_spec(m), {1, 1}), (std::vector<std::uint64_t>{2, 4, 2}));
  EXPECT_EQ(f.front().residues, (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_EQ(f[1].residues, (std::vector<std::uint64_t>{0, 0, 1}));
  EXPECT_EQ(f.back().residues, (std::vector<std::uint64_t>{1, 3, 1}));
  EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
}

TEST(Fiber, Example53Level20) {
  const CosetModel m = example_5_3(2);
  EXPECT_EQ(fiber(m, cone(m, "+1+2"), {2, 0}).size(), 16u);
  EXPECT_EQ(fiber(m, cone(m, "+1+2"), {1, 1}).size(), 4u);
}

TEST(Fiber, TreeLevels) {
  const CosetModel m = TreeModel({3});
  const auto P = cone(m, "+1");
  EXPECT_EQ(fiber(m, P, {2}).size(), 9u);
  EXPECT_EQ(fiber(m, P, {4}).size(), 81u);
  EXPECT_EQ(fiber(m, P, {0}).size(), 1u);
}

TEST(Fiber, Errors) {
  const CosetModel m = example_5_2(2);
  EXPECT_THROW(fiber(m, cone(m, "+1+2+3"), {-1, 0}), NotInSemigroup);
  EXPECT_THROW(fiber(m, cone(m, "+1+2+3"), {40, 0}), FiberTooLarge);
}

TEST(FiberIndex, IsPositionInFiber) {
  const CosetModel m = example_5_2(3);
  const auto spec = derive_flat_spec(m);
  const auto f = fiber(m, cone(m, "+1+2+3"), {1, 1});
  const auto caps = fiber_caps(spec, {1, 1});
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(fiber_index(caps, f[i].residues), i);
}

TEST(Truncate, Example52Formula) {
  const CosetModel m = example_5_2(2);
  const Vertex v{{1, 1}, {1, 3, 1}};
  EXPECT_EQ(truncate(m, {1, 0}, {1, 1}, v), (Vertex{{1, 0}, {1, 1, 0}}));
  EXPECT_EQ(truncate(m, {0, 1}, {1, 1}, v), (Vertex{{0, 1}, {0, 1, 1}}));
  EXPECT_EQ(truncate(m, {0, 0}, {1, 1}, v), (Vertex{{0, 0}, {0, 0, 0}}));
  EXPECT_EQ(truncate(m, {1, 1}, {1, 1}, v), v);
}

TEST(Truncate, TreePrefix) {
  const CosetModel m = TreeModel({2});
  EXPECT_EQ(truncate(m, {1}, {3}, Vertex{{3}, {5}}).residues, std::vector<std::uint64_t>{1});
  EXPECT_EQ(truncate(m, {2}, {3}, Vertex{{3}, {5}}).residues, std::vector<std::uint64_t>{2});
}

TEST(Truncate, Errors) {
  const CosetModel m = example_5_2(2);
  EXPECT_THROW(truncate(m, {1, 1}, {1, 0}, Vertex{{1, 0}, {0, 0, 0}}), LevelNotComparable);
  EXPECT_THROW(truncate(m, {0, 0}, {1, 0}, Vertex{{0, 1}, {0, 0, 0}}), std::invalid_argument);
  EXPECT_THROW(truncate(m, {0, 0}, {1, 0}, Vertex{{1, 0}, {0, 0}}), DimensionMismatch);
}

TEST(Truncate, PreimagesAreEvenlySpread) {
  // Each vertex at x has exactly s(y)/s(x) vertices at y above it.
  for (const CosetModel& m : {CosetModel(example_5_2(2)), CosetModel(example_5_3(3)), CosetModel(TreeModel({2, 3}))}) {
    const auto spec = derive_flat_spec(m);
    std::vector<std::size_t> plus(spec.components());
    for (std::size_t j = 0; j < plus.size(); ++j) plus[j] = j;
    const ConeSemigroup P(spec, SignPattern::full(plus, spec.components()));
    for (const auto& [x, y] : std::vector<std::pair<GroupElement, GroupElement>>{{{1, 0}, {2, 1}}, {{0, 1}, {1, 2}}, {{0, 0}, {1, 1}}}) {
      if (!P.contains(x) || !P.contains(y) || !P.precedes(x, y)) continue;
      std::map<Vertex, std::size_t> count;
      for (const auto& w : fiber(m, P, y)) ++count[truncate(m, x, y, w)];
      const auto lower = fiber(m, P, x);
      ASSERT_EQ(count.size(), lower.size());
      const auto ratio = static_cast<std::size_t>(scale(spec, y) / scale(spec, x));
      for (const auto& [v, c] : count) EXPECT_EQ(c, ratio);
    }
  }
}
