#include "stabset/constructions.hpp"
#include "support/gen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace stabset;

namespace {

// Independent reading of the construction: membership of s_i + t_j decided
// from the block structure alone, without building A.
bool predicted_member(const DyadicPlan& plan, std::size_t i, std::size_t j)
{
    const std::size_t B = plan.block();
    const std::size_t b = i / B, a = i % B, b2 = j / B, a2 = j % B;
    if (b != b2)
        return b < b2;
    return a <= a2;
}

} // namespace

TEST(Ap, Examples)
{
    const auto inst = ap_witness(0, 1, 3);
    EXPECT_EQ(inst.A.elements(), (std::vector<std::int64_t>{0, 1, 2}));
    EXPECT_EQ(inst.witness.s(), (std::vector<std::int64_t>{-1, -2, -3}));
    EXPECT_EQ(inst.witness.t(), (std::vector<std::int64_t>{1, 2, 3}));
    EXPECT_TRUE(verify_witness(inst.A, inst.witness).valid);

    const auto even = ap_witness(0, 2, 4);
    EXPECT_EQ(even.A.elements(), (std::vector<std::int64_t>{0, 2, 4, 6}));
    EXPECT_EQ(even.witness.s(), (std::vector<std::int64_t>{-2, -4, -6, -8}));
    EXPECT_TRUE(verify_witness(even.A, even.witness).valid);

    EXPECT_THROW(ap_witness(5, 0, 3), std::invalid_argument);
    EXPECT_THROW(ap_witness(0, 1, 0), std::invalid_argument);
    EXPECT_THROW(ap_witness(std::numeric_limits<std::int64_t>::max() - 2, 1, 5), std::overflow_error);
}

TEST(Ap, OrderEqualsLengthForManyProgressions)
{
    auto g = testgen::rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t x = static_cast<std::int64_t>(g() % 2001) - 1000;
        std::int64_t d = static_cast<std::int64_t>(g() % 41) - 20;
        if (d == 0)
            d = 7;
        const std::int64_t N = 1 + static_cast<std::int64_t>(g() % 30);
        const auto inst = ap_witness(x, d, N);
        EXPECT_EQ(inst.A.size(), static_cast<std::size_t>(N));
        EXPECT_EQ(inst.witness.k(), inst.A.size());
        EXPECT_TRUE(verify_witness(inst.A, inst.witness).valid);
    }
}

TEST(DyadicPlan, SmallPlans)
{
    const auto p1 = dyadic_plan(1);
    EXPECT_EQ(p1.R(), 2u);
    EXPECT_EQ(p1.subset_elements(1), (std::vector<std::size_t>{1}));
    EXPECT_EQ(p1.subset_elements(2), (std::vector<std::size_t>{2}));
    EXPECT_EQ(p1.dim(), 4u);

    const auto p2 = dyadic_plan(2);
    EXPECT_EQ(p2.R(), 6u);
    EXPECT_EQ(p2.subset_elements(1), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(p2.subset_elements(6), (std::vector<std::size_t>{3, 4}));
    EXPECT_EQ(p2.subset_elements(2), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(p2.subset_elements(5), (std::vector<std::size_t>{2, 4}));

    EXPECT_THROW(dyadic_plan(0), std::invalid_argument);
    EXPECT_THROW(dyadic_plan(5), std::invalid_argument);
}

TEST(DyadicPlan, PairingInvariants)
{
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto plan = dyadic_plan(l);
        const std::uint32_t full = (1u << (2 * l)) - 1;
        EXPECT_EQ(plan.R() % 2, 0u);
        std::set<std::uint32_t> seen;
        for (std::size_t r = 1; r <= plan.R(); ++r) {
            const auto S = plan.subset(r);
            EXPECT_EQ(static_cast<std::size_t>(std::popcount(S)), l);
            EXPECT_EQ(S | plan.subset(plan.R() + 1 - r), full);
            EXPECT_NE(S, full ^ S);
            seen.insert(S);
        }
        EXPECT_EQ(seen.size(), plan.R());
        EXPECT_EQ(plan.dim(), 2 * l + 2 * static_cast<std::size_t>(std::ceil(std::log2(double(plan.R())))));
    }
}

TEST(DyadicPlan, EnumerationIsLexicographic)
{
    const auto plan = dyadic_plan(3);
    for (std::size_t r = 1; r <= plan.R(); ++r)
        for (std::size_t m = 1; m < plan.block(); ++m)
            EXPECT_LT(plan.v(r, m), plan.v(r, m + 1));
}

TEST(Dyadic, SizesKnownValues)
{
    // exact sizes from an independent enumeration of the union of blocks
    const std::size_t expected_k[] = {4, 24, 160, 1120};
    const std::uint64_t expected_size[] = {8, 168, 5120, 180320};
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto plan = dyadic_plan(l);
        EXPECT_EQ(plan.k(), expected_k[l - 1]);
        EXPECT_EQ(plan.exact_size(), expected_size[l - 1]);
    }
}

TEST(Dyadic, LevelOneDetails)
{
    const auto inst = dyadic_construction(1);
    EXPECT_EQ(inst.A.size(), 8u);
    EXPECT_EQ(inst.witness.k(), 4u);
    EXPECT_TRUE(verify_witness(inst.A, inst.witness).valid);
    EXPECT_LE(double(inst.A.size()), size_bound(1).closed_form);
    EXPECT_EQ(inst.meta.at("k"), 4.0);
}

TEST(Dyadic, WitnessMatchesBlockStructureCellByCell)
{
    for (std::size_t l = 1; l <= 3; ++l) {
        const auto inst = dyadic_construction(l);
        const auto plan = dyadic_plan(l);
        ASSERT_EQ(inst.A.size(), plan.exact_size());
        const auto k = inst.witness.k();
        ASSERT_EQ(k, plan.k());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const bool in = inst.A.contains(inst.witness.cell(i, j));
                ASSERT_EQ(in, predicted_member(plan, i, j)) << "l=" << l << " cell " << i << "," << j;
                ASSERT_EQ(in, i <= j);
            }
        EXPECT_TRUE(verify_witness(inst.A, inst.witness).valid);
    }
}

TEST(Dyadic, LevelTwoSizeBound)
{
    const auto inst = dyadic_construction(2);
    EXPECT_EQ(inst.witness.k(), 24u);
    EXPECT_EQ(inst.A.size(), 168u);
    EXPECT_LE(inst.A.size(), 2172u);
}

TEST(SizeBound, Values)
{
    EXPECT_NEAR(size_bound(1).closed_form, 46.627417, 1e-5);
    EXPECT_NEAR(size_bound(2).closed_form, 2174.116016, 1e-5);
    EXPECT_THROW(size_bound(0), std::invalid_argument);
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto b = size_bound(l);
        const double exact = double(dyadic_plan(l).exact_size());
        EXPECT_LE(exact, b.chain);
        EXPECT_LE(b.chain, b.closed_form * (1 + 1e-12));
    }
}

TEST(ExponentConstant, ClosedFormAndGrowthAgree)
{
    EXPECT_NEAR(dyadic_exponent_constant(), 0.152298, 1e-6);
    EXPECT_NEAR(dyadic_exponent_constant(), dyadic_exponent_from_growth(), 1e-12);
}

TEST(ExponentConstant, TrendTowardLimit)
{
    const double target = 1.0 / (2.0 - dyadic_exponent_constant());
    double prev_gap = 1.0;
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto plan = dyadic_plan(l);
        const double ratio = std::log(double(plan.k())) / std::log(double(plan.exact_size()));
        const double gap = std::abs(ratio - target);
        EXPECT_LT(gap, prev_gap);
        prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 0.06);
}

TEST(Padding, Examples)
{
    const auto inst = dyadic_construction(1);
    const auto padded = pad_to_size(inst, 10);
    EXPECT_EQ(padded.A.size(), 10u);
    EXPECT_EQ(padded.witness.k(), 4u);
    EXPECT_TRUE(verify_witness(padded.A, padded.witness).valid);
    EXPECT_EQ(padded.meta.at("padded_from"), 8.0);

    const auto same = pad_to_size(inst, 8);
    EXPECT_EQ(same.A, inst.A);
    EXPECT_EQ(same.witness, inst.witness);
    EXPECT_THROW(pad_to_size(inst, 7), std::invalid_argument);
}

TEST(Padding, NeverBreaksWitnessOrRaisesOrder)
{
    const auto inst = dyadic_construction(1);
    for (std::size_t N = 8; N <= 40; ++N) {
        const auto padded = pad_to_size(inst, N);
        EXPECT_EQ(padded.A.size(), N);
        EXPECT_TRUE(verify_witness(padded.A, padded.witness).valid);
    }
    // padding keeps the witness but may raise the order: at N = 10 the two fresh points allow k = 5
    const auto kmax = max_order_exact(pad_to_size(inst, 10).A).kmax;
    EXPECT_GE(kmax, 4u);
    EXPECT_LE(kmax, 10u);
}

TEST(Padding, OfSize)
{
    EXPECT_THROW(dyadic_of_size(7), std::invalid_argument);
    const auto a = dyadic_of_size(8);
    EXPECT_EQ(a.witness.k(), 4u);
    const auto b = dyadic_of_size(200);
    EXPECT_EQ(b.A.size(), 200u);
    EXPECT_EQ(b.witness.k(), 24u);
    EXPECT_TRUE(verify_witness(b.A, b.witness).valid);
}
