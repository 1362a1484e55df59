#include "stabset/constructions.hpp"
#include "stabset/orderprop.hpp"
#include "support/gen.hpp"

#include <gtest/gtest.h>

using namespace stabset;

namespace {

BitVector bv(const char* s) { return BitVector::from_string(s); }

F2Witness f2w(std::size_t n, std::initializer_list<const char*> s, std::initializer_list<const char*> t)
{
    std::vector<BitVector> sv, tv;
    for (auto x : s)
        sv.push_back(bv(x));
    for (auto x : t)
        tv.push_back(bv(x));
    return F2Witness(Ambient::f2(n), sv, tv);
}

// Definition applied literally, without the early exits of verify_witness.
bool satisfies_definition(const F2Set& A, const F2Witness& w)
{
    const auto& s = w.s();
    const auto& t = w.t();
    for (std::size_t i = 0; i < w.k(); ++i)
        for (std::size_t j = 0; j < w.k(); ++j) {
            if ((i != j) && (s[i] == s[j] || t[i] == t[j]))
                return false;
            if (A.contains(s[i] + t[j]) != (i <= j))
                return false;
        }
    return true;
}

} // namespace

TEST(FiniteSet, RejectsDuplicatesAndForeignElements)
{
    EXPECT_THROW(f2_set_from_strings(2, {"01", "01"}), std::invalid_argument);
    EXPECT_THROW(f2_set_from_strings(2, {"010"}), std::invalid_argument);
    EXPECT_THROW(make_z_set({3, 3}), std::invalid_argument);
    const auto A = f2_set_from_strings(2, {"11", "00"});
    EXPECT_EQ(A.size(), 2u);
    EXPECT_EQ(A.elements().front(), bv("00"));
    EXPECT_TRUE(A.contains(bv("11")));
    EXPECT_FALSE(A.contains(bv("10")));
}

TEST(Witness, LengthMismatchThrows)
{
    EXPECT_THROW(ZWitness(Ambient::z(), {1, 2}, {1}), std::invalid_argument);
    EXPECT_THROW(f2w(2, {"00"}, {"000"}), std::invalid_argument);
}

TEST(VerifyWitness, ArithmeticProgressionInZ)
{
    const auto A = make_z_set({0, 1, 2});
    const ZWitness w(Ambient::z(), {-1, -2, -3}, {1, 2, 3});
    EXPECT_TRUE(verify_witness(A, w).valid);
}

TEST(VerifyWitness, ReportsFirstViolation)
{
    const auto A = f2_set_from_strings(2, {"00"});
    const auto v = verify_witness(A, f2w(2, {"00", "01"}, {"00", "01"}));
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.violation->kind, ViolationKind::ExpectedInA);
    EXPECT_EQ(v.violation->i, 1u);
    EXPECT_EQ(v.violation->j, 2u);
    EXPECT_EQ(v.describe(), "(1,2) expected-in-A");
}

TEST(VerifyWitness, ExpectedNotInA)
{
    const auto A = f2_set_from_strings(2, {"00", "01", "10", "11"});
    const auto v = verify_witness(A, f2w(2, {"00", "01"}, {"00", "10"}));
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.violation->kind, ViolationKind::ExpectedNotInA);
    EXPECT_EQ(v.describe(), "(2,1) expected-not-in-A");
}

TEST(VerifyWitness, SingleCellAndEmpty)
{
    const auto A = f2_set_from_strings(3, {"101"});
    EXPECT_TRUE(verify_witness(A, f2w(3, {"000"}, {"101"})).valid);
    EXPECT_TRUE(verify_witness(A, F2Witness(Ambient::f2(3), {}, {})).valid);
}

TEST(VerifyWitness, DuplicatesAndAmbientMismatch)
{
    const auto A = f2_set_from_strings(2, {"00", "01", "11"});
    const auto v = verify_witness(A, f2w(2, {"00", "00"}, {"00", "11"}));
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.violation->kind, ViolationKind::DuplicateS);
    EXPECT_EQ(verify_witness(A, f2w(2, {"00", "10"}, {"11", "11"})).violation->kind, ViolationKind::DuplicateT);
    EXPECT_THROW(verify_witness(A, f2w(3, {"000"}, {"000"})), std::invalid_argument);
}

TEST(VerifyWitness, IntegerOverflowRejected)
{
    const auto A = make_z_set({0});
    const ZWitness w(Ambient::z(), {std::numeric_limits<std::int64_t>::max()}, {1});
    EXPECT_THROW(verify_witness(A, w), std::overflow_error);
}

TEST(CanonicalEnumeration, RecoversApOrder)
{
    const auto A = make_z_set({0, 1, 2});
    const auto w = canonical_enumeration(A, std::vector<std::int64_t>{-3, -1, -2}, std::vector<std::int64_t>{2, 3, 1});
    ASSERT_TRUE(w);
    EXPECT_EQ(w->s(), (std::vector<std::int64_t>{-1, -2, -3}));
    EXPECT_EQ(w->t(), (std::vector<std::int64_t>{1, 2, 3}));
}

TEST(CanonicalEnumeration, FailsWithoutOrderAndOnSizeMismatch)
{
    const auto A = f2_set_from_strings(2, {"00"});
    const std::vector<BitVector> S{bv("00"), bv("01")};
    EXPECT_FALSE(canonical_enumeration(A, S, S));
    // all four orderings fail as well
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            F2Witness w(Ambient::f2(2), {S[a], S[1 - a]}, {S[b], S[1 - b]});
            EXPECT_FALSE(verify_witness(A, w).valid);
        }
    EXPECT_THROW(canonical_enumeration(A, S, {bv("00")}), std::invalid_argument);
}

TEST(CanonicalEnumeration, RecoversShuffledWitnesses)
{
    const auto inst = dyadic_construction(1);
    auto g = testgen::rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto S = inst.witness.s(), T = inst.witness.t();
        std::shuffle(S.begin(), S.end(), g);
        std::shuffle(T.begin(), T.end(), g);
        const auto w = canonical_enumeration(inst.A, S, T);
        ASSERT_TRUE(w);
        EXPECT_EQ(*w, inst.witness);
    }
}

TEST(Staircase, ValidWitnessPasses)
{
    const auto inst = dyadic_construction(2);
    EXPECT_TRUE(staircase_check(inst.witness).valid);
    EXPECT_TRUE(diagonal_distinct(inst.witness));
}

TEST(Staircase, EqualDiagonalRejected)
{
    // M_11 = M_22 = 00 with rows and columns otherwise distinct
    const auto w = f2w(2, {"00", "01"}, {"00", "01"});
    const auto v = staircase_check(w);
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.violation->kind, ViolationKind::StaircaseCollision);
    EXPECT_EQ(v.describe(), "(1,1) staircase-collision with (2,2)");
    EXPECT_FALSE(diagonal_distinct(w));
}

TEST(Staircase, DiagonalCanRepeatOverIntegers)
{
    // the distinct-diagonal argument needs characteristic 2; in Z every s_i + t_i is 0
    const auto inst = ap_witness(0, 1, 4);
    ASSERT_TRUE(verify_witness(inst.A, inst.witness).valid);
    EXPECT_FALSE(diagonal_distinct(inst.witness));
}

TEST(Staircase, RepeatedRowRejected)
{
    const auto w = f2w(2, {"00", "01"}, {"10", "10"});
    EXPECT_EQ(staircase_check(w).violation->kind, ViolationKind::RepeatedInRow);
}

TEST(Staircase, ZAmbientUnsupported)
{
    EXPECT_THROW(staircase_check(ZWitness(Ambient::z(), {0}, {0})), std::invalid_argument);
}

TEST(Staircase, MatchesQuadraticDefinition)
{
    // random witness-shaped matrices against the literal four-index condition
    auto g = testgen::rng(12);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + g() % 3, k = 1 + g() % 5;
        std::vector<BitVector> s, t;
        for (std::size_t i = 0; i < k; ++i) {
            s.push_back(testgen::random_vector(n, g));
            t.push_back(testgen::random_vector(n, g));
        }
        const F2Witness w(Ambient::f2(n), s, t);
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t j2 = j + 1; j2 < k; ++j2)
                    if (w.cell(i, j) == w.cell(i, j2) || w.cell(j, i) == w.cell(j2, i))
                        ok = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j)
                for (std::size_t i2 = j + 1; i2 < k; ++i2)
                    for (std::size_t j2 = i2; j2 < k; ++j2)
                        if (w.cell(i, j) == w.cell(i2, j2))
                            ok = false;
        EXPECT_EQ(staircase_check(w).valid, ok);
    }
}

TEST(MaxOrder, Examples)
{
    EXPECT_EQ(max_order_exact(make_f2_set(2, {})).kmax, 0u);
    EXPECT_EQ(max_order_exact(f2_set_from_strings(2, {"00", "01", "10", "11"})).kmax, 1u);
    const auto A = f2_set_from_strings(2, {"00", "01", "11"});
    const auto rep = max_order_exact(A);
    EXPECT_EQ(rep.kmax, 2u);
    EXPECT_EQ(rep.status, SolveStatus::Exact);
    EXPECT_TRUE(verify_witness(A, rep.witness).valid);
    EXPECT_TRUE(verify_witness(A, f2w(2, {"00", "10"}, {"00", "11"})).valid);
}

TEST(MaxOrder, BruteforceExamplesAndGuard)
{
    EXPECT_EQ(max_order_bruteforce(f2_set_from_strings(2, {"00"})), 1u);
    EXPECT_EQ(max_order_bruteforce(f2_set_from_strings(2, {"00", "01"})), 1u);
    EXPECT_EQ(max_order_bruteforce(f2_set_from_strings(2, {"00", "01", "11"})), 2u);
    EXPECT_THROW(max_order_bruteforce(make_f2_set(6, {})), std::invalid_argument);
    auto g = testgen::rng(13);
    EXPECT_THROW(max_order_bruteforce(testgen::random_set(4, 9, g)), std::invalid_argument);
}

TEST(MaxOrder, AgreesWithBruteforce)
{
    auto g = testgen::rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + g() % 3;
        const std::size_t N = testgen::random_size(n, 0, 5, g);
        const auto A = testgen::random_set(n, N, g);
        const auto rep = max_order_exact(A);
        EXPECT_EQ(rep.kmax, max_order_bruteforce(A)) << "trial " << trial;
        EXPECT_TRUE(verify_witness(A, rep.witness).valid);
        EXPECT_EQ(rep.witness.k(), rep.kmax);
        EXPECT_LE(rep.kmax, A.size());
    }
}

TEST(MaxOrder, IndependentOfEmbedding)
{
    // widening the ambient space cannot change kmax
    auto g = testgen::rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const auto A = testgen::random_set(3, 1 + g() % 6, g);
        std::vector<BitVector> wide;
        for (const auto& x : A.elements())
            wide.push_back(x.widened(7));
        EXPECT_EQ(max_order_exact(A).kmax, max_order_exact(make_f2_set(7, wide)).kmax);
    }
}

TEST(MaxOrder, Deterministic)
{
    auto g = testgen::rng(16);
    const auto A = testgen::random_set(4, 7, g);
    const auto a = max_order_exact(A), b = max_order_exact(A);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.nodes_explored, b.nodes_explored);
}

TEST(MaxOrder, TimeLimitGivesLowerBound)
{
    auto g = testgen::rng(17);
    const auto A = testgen::density_set(7, 0.5, g);
    SolveOptions opts;
    opts.time_limit = std::chrono::duration<double>(0.0);
    const auto rep = max_order_exact(A, opts);
    EXPECT_EQ(rep.status, SolveStatus::LowerBoundOnly);
    EXPECT_TRUE(verify_witness(A, rep.witness).valid);
}

TEST(MaxOrder, WarmStart)
{
    const auto inst = dyadic_construction(1);
    SolveOptions opts;
    opts.warm_start = inst.witness;
    const auto rep = max_order_exact(inst.A, opts);
    EXPECT_EQ(rep.kmax, 4u);
    // a single cell landing outside A
    BitVector outside(4);
    while (inst.A.contains(outside))
        outside = BitVector::from_index(4, outside.index() + 1);
    opts.warm_start = F2Witness(Ambient::f2(4), {BitVector(4)}, {outside});
    EXPECT_THROW(max_order_exact(inst.A, opts), std::invalid_argument);
}

TEST(Properties, OrderAtMostSizeStaircaseAndTranslation)
{
    auto g = testgen::rng(18);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 3 + g() % 3;
        const auto A = testgen::random_set(n, testgen::random_size(n, 1, 10, g), g);
        const auto w = max_order_exact(A).witness;
        ASSERT_TRUE(satisfies_definition(A, w));
        EXPECT_LE(w.k(), A.size());
        EXPECT_TRUE(staircase_check(w).valid);
        EXPECT_TRUE(diagonal_distinct(w));
        const auto shift = testgen::random_vector(n, g);
        auto s = w.s(), t = w.t();
        for (auto& x : s)
            x += shift;
        for (auto& x : t)
            x += shift;
        EXPECT_TRUE(verify_witness(A, F2Witness(A.ambient(), s, t)).valid);
    }
}

TEST(Properties, VerifyMatchesDefinitionOnRandomPairs)
{
    auto g = testgen::rng(19);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + g() % 2, k = 1 + g() % 3;
        const auto A = testgen::random_set(n, g() % ((std::size_t{1} << n) + 1), g);
        std::vector<BitVector> s, t;
        for (std::size_t i = 0; i < k; ++i) {
            s.push_back(testgen::random_vector(n, g));
            t.push_back(testgen::random_vector(n, g));
        }
        const F2Witness w(A.ambient(), s, t);
        EXPECT_EQ(verify_witness(A, w).valid, satisfies_definition(A, w));
    }
}

TEST(Properties, PermutationsBreakWitnesses)
{
    const auto inst = dyadic_construction(1);
    auto s = inst.witness.s();
    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<BitVector> ps, pt;
        for (auto p : perm) {
            ps.push_back(inst.witness.s()[p]);
            pt.push_back(inst.witness.t()[p]);
        }
        EXPECT_FALSE(verify_witness(inst.A, F2Witness(inst.A.ambient(), ps, inst.witness.t())).valid);
        EXPECT_FALSE(verify_witness(inst.A, F2Witness(inst.A.ambient(), inst.witness.s(), pt)).valid);
    }
}
