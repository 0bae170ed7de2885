#include <gtest/gtest.h>

#include "flatgraph/errors.hpp"
#include "flatgraph/flat_core.hpp"
#include "support.hpp"

using namespace flatgraph;
using flatgraph::testing::example_5_1;
using flatgraph::testing::example_5_2;
using flatgraph::testing::example_5_3;

namespace {

FlatGroupSpec spec_5_2(std::int64_t p = 2) { return derive_flat_spec(example_5_2(p)); }

}  // namespace

TEST(FlatGroupSpec, RejectsBadShapes) {
  EXPECT_THROW(FlatGroupSpec(0, {{1}}, {2}), InvalidSpec);
  EXPECT_THROW(FlatGroupSpec(17, {std::vector<std::int64_t>(17, 1)}, {2}), InvalidSpec);
  EXPECT_THROW(FlatGroupSpec(2, {{1, 0}, {0}}, {2, 2}), InvalidSpec);
  EXPECT_THROW(FlatGroupSpec(2, {{0, 0}}, {2}), InvalidSpec);
  EXPECT_THROW(FlatGroupSpec(2, {{1, 0}}, {1}), InvalidSpec);
  EXPECT_THROW(FlatGroupSpec(2, {{1, 0}}, {2, 3}), InvalidSpec);
  EXPECT_NO_THROW(FlatGroupSpec(1, {{1}}, {2}));
}

TEST(Rho, IsTheWeightTimesCoordinates) {
  const auto spec = spec_5_2();
  EXPECT_EQ(rho(spec, {1, 0}), (std::vector<std::int64_t>{1, 1, 0}));
  EXPECT_EQ(rho(spec, {1, -1}), (std::vector<std::int64_t>{1, 0, -1}));
  EXPECT_EQ(rho(spec, {-3, 5}), (std::vector<std::int64_t>{-3, 2, 5}));
  EXPECT_THROW(rho(spec, {1, 2, 3}), DimensionMismatch);
}

TEST(Scale, Example52Values) {
  const auto spec = spec_5_2();
  EXPECT_EQ(scale(spec, {0, 0}), 1);
  EXPECT_EQ(scale(spec, {1, 0}), 4);   // p^2
  EXPECT_EQ(scale(spec, {-1, 0}), 1);
  EXPECT_EQ(scale(spec, {1, -1}), 2);  // only the first coordinate expands
  EXPECT_EQ(scale(spec, {1, 1}), 16);
  EXPECT_EQ(scale(derive_flat_spec(example_5_2(3)), {1, 1}), 81);
}

TEST(Scale, LargeExponentsAreExact) {
  const auto spec = derive_flat_spec(example_5_1(3));
  BigInt expected = 1;
  for (int i = 0; i < 200; ++i) expected *= 3;
  EXPECT_EQ(scale(spec, {120, 80}), expected);
}

TEST(ModuleDelta, Example51IsPToTheSum) {
  const auto spec = derive_flat_spec(example_5_1(2));
  EXPECT_EQ(module_delta(spec, {2, -3}), Rational(1, 2));
  EXPECT_EQ(module_delta(spec, {2, 3}), Rational(32));
  EXPECT_EQ(module_delta(spec, {0, 0}), Rational(1));
}

TEST(ModuleDelta, Example53IsTwoN1) {
  const auto spec = derive_flat_spec(example_5_3(2));
  // rho = (n1+n2, n1-n2), so Delta = 2^{2 n1}.
  EXPECT_EQ(module_delta(spec, {1, 7}), Rational(4));
  EXPECT_EQ(module_delta(spec, {-2, 1}), Rational(1, 16));
}

TEST(Submultiplicativity, StrictExactlyOnOppositeSigns) {
  const auto spec = spec_5_2();
  EXPECT_EQ(submultiplicativity_class(spec, {1, 0}, {0, 1}), Submultiplicativity::Equal);
  EXPECT_EQ(scale(spec, {1, 1}), scale(spec, {1, 0}) * scale(spec, {0, 1}));
  EXPECT_EQ(submultiplicativity_class(spec, {1, 0}, {-1, 1}), Submultiplicativity::Strict);
  EXPECT_LT(scale(spec, {0, 1}), scale(spec, {1, 0}) * scale(spec, {-1, 1}));
  // A zero coordinate on one side never makes it strict.
  EXPECT_EQ(submultiplicativity_class(spec, {0, 0}, {-1, 1}), Submultiplicativity::Equal);
}

TEST(UniscalarKernel, TrivialForFullRankWeights) {
  EXPECT_TRUE(uniscalar_kernel(spec_5_2()).empty());
  EXPECT_TRUE(uniscalar_kernel(derive_flat_spec(example_5_3(2))).empty());
}

TEST(UniscalarKernel, SingleRowInRankThree) {
  const FlatGroupSpec spec(3, {{1, 2, 0}}, {5});
  const auto kernel = uniscalar_kernel(spec);
  ASSERT_EQ(kernel.size(), 2u);
  for (const auto& v : kernel) {
    EXPECT_EQ(rho(spec, v), std::vector<std::int64_t>{0});
    EXPECT_EQ(scale(spec, v), 1);
    EXPECT_EQ(scale(spec, -v), 1);
  }
}

TEST(ScaleForms, Example52Table) {
  const auto spec = spec_5_2();
  auto form = [&](std::vector<std::size_t> plus) {
    const auto f = scale_exponent_forms(spec, plus);
    return f.empty() ? std::string("0") : format_linear_form(f.front().exponent);
  };
  EXPECT_EQ(form({0, 1, 2}), "2n1+2n2");
  EXPECT_EQ(form({0, 1}), "2n1+n2");
  EXPECT_EQ(form({1, 2}), "n1+2n2");
  EXPECT_EQ(form({0}), "n1");
  EXPECT_EQ(form({2}), "n2");
  EXPECT_EQ(form({}), "0");
}

TEST(ScaleForms, DistinctBasesStaySeparate) {
  const auto spec = derive_flat_spec(flatgraph::testing::coprime_2_3());
  const auto f = scale_exponent_forms(spec, {0, 1});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].base, 2);
  EXPECT_EQ(format_linear_form(f[0].exponent), "n1");
  EXPECT_EQ(f[1].base, 3);
  EXPECT_EQ(format_linear_form(f[1].exponent), "n2");
}

TEST(FormatLinearForm, Signs) {
  EXPECT_EQ(format_linear_form({1, -1}), "n1-n2");
  EXPECT_EQ(format_linear_form({-2, 0, 3}), "-2n1+3n3");
  EXPECT_EQ(format_linear_form({0, 0}), "0");
}

TEST(GroupElement, ArithmeticAndOrder) {
  const GroupElement a{1, -2}, b{0, 3};
  EXPECT_EQ(a + b, (GroupElement{1, 1}));
  EXPECT_EQ(a - b, (GroupElement{1, -5}));
  EXPECT_EQ(-a, (GroupElement{-1, 2}));
  EXPECT_EQ(3 * a, (GroupElement{3, -6}));
  EXPECT_LT(b, a);
  EXPECT_EQ(a.inf_norm(), 2);
  EXPECT_EQ(a.l1_norm(), 3);
  EXPECT_EQ(to_string(a), "(1,-2)");
}

TEST(GroupElement, OverflowThrows) {
  const GroupElement big{INT64_MAX};
  EXPECT_THROW(big + GroupElement{1}, std::overflow_error);
}

TEST(ForEachInBox, VisitsEveryPointInOrder) {
  std::vector<GroupElement> seen;
  for_each_in_box(2, 1, [&](const GroupElement& x) { seen.push_back(x); });
  ASSERT_EQ(seen.size(), 9u);
  EXPECT_EQ(seen.front(), (GroupElement{-1, -1}));
  EXPECT_EQ(seen.back(), (GroupElement{1, 1}));
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}
