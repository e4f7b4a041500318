#include <gtest/gtest.h>

#include "jetscheme/ffenum.hpp"
#include "jetscheme/parse.hpp"
#include "jetscheme/strata.hpp"
#include "support/brute.hpp"

namespace jetscheme {
namespace {

using testing::eval_mod;
using testing::variety_points;

VarietySpec spec(const std::vector<std::string>& vars, const std::string& eqs) {
    Ring r(vars);
    return VarietySpec::make(r, parse_polynomial_list(eqs, r));
}

EnumerationBudget budget(std::uint64_t q, unsigned shards = 1) {
    EnumerationBudget b = EnumerationBudget::for_prime(q);
    b.shards = shards;
    return b;
}

TEST(CountFiber, LinearSpace) {
    EXPECT_EQ(count_fiber_points(spec({"x", "y"}, "x"), 3, budget(3)).total, 27);
}

TEST(CountFiber, QuadricConeOrderTwo) {
    // oracle: solutions of x1*y1 = z1^2 over F_3 by a direct loop
    std::uint64_t base = 0;
    for (std::uint64_t x = 0; x < 3; ++x)
        for (std::uint64_t y = 0; y < 3; ++y)
            for (std::uint64_t z = 0; z < 3; ++z)
                if ((x * y + 3 * 3 - z * z) % 3 == 0) ++base;
    EXPECT_EQ(base, 9U);
    // level-2 coordinates are unconstrained
    EXPECT_EQ(count_fiber_points(spec({"x", "y", "z"}, "x*y - z^2"), 2, budget(3)).total,
              Integer(static_cast<unsigned long>(base * 27)));
}

TEST(CountFiber, UnitIdealHasNoPoints) {
    Ring r({"a", "b"});
    EXPECT_EQ(count_points(r, parse_polynomial_list("a*b - 1, a", r), budget(5)), 0);
    EXPECT_EQ(count_points(r, {Polynomial::constant(r, Rational(1))}, budget(5)), 0);
}

TEST(CountFiber, ZeroOrderFiberIsThePoint) {
    EXPECT_EQ(count_fiber_points(node_variety(), 0, budget(5)).total, 1);
}

TEST(Budget, RefusesInsteadOfSampling) {
    EnumerationBudget b = budget(5);
    b.max_points = 1000;
    EXPECT_THROW(count_fiber_points(cA_variety(1), 3, b), ResourceError);
    EXPECT_THROW(count_fiber_points(cA_variety(1), 1, budget(6)), InputError);
    b.max_points = 100'000'000;
    b.max_vars = 2;
    EXPECT_THROW(count_fiber_points(cA_variety(1), 2, b), ResourceError);
}

TEST(CountFiber, MatchesBruteForceWithProfiles) {
    VarietySpec v = cA_variety(2);
    const Ring& a = v.ambient;
    std::vector<Polynomial> targets{Polynomial::variable(a, 0), Polynomial::variable(a, 1), Polynomial::variable(a, 2)};
    auto sc = count_fiber_points(v, 2, budget(5), targets);
    Ideal fiber = fiber_ideal(v, 2);
    auto pts = variety_points(fiber.generators(), 6, 5);
    EXPECT_EQ(sc.total, Integer(static_cast<unsigned long>(pts.size())));
    std::map<std::vector<int>, Integer> expect;
    for (const auto& pt : pts) {
        std::vector<int> key;
        for (std::size_t i = 0; i < 3; ++i) key.push_back(pt[i] ? 1 : pt[3 + i] ? 2 : kInfiniteOrder);
        expect[key] += 1;
    }
    EXPECT_EQ(sc.buckets, expect);
    Integer sum;
    for (const auto& [k, c] : sc.buckets) sum += c;
    EXPECT_EQ(sum, sc.total);
}

TEST(DimEstimate, Examples) {
    EXPECT_EQ(dim_estimate({{3, Integer(27)}, {5, Integer(125)}}).estimate, 3);
    EXPECT_EQ(dim_estimate({{5, Integer(1)}, {7, Integer(1)}}).estimate, 0);
    EXPECT_THROW(dim_estimate({{5, Integer(1)}}), InputError);
    EXPECT_THROW(dim_estimate({{5, Integer(0)}, {7, Integer(3)}}), InputError);
    std::map<std::uint64_t, Integer> node;
    for (std::uint64_t q : {5, 7}) node[q] = count_fiber_points(node_variety(), 3, budget(q)).total;
    EXPECT_EQ(dim_estimate(node).estimate, 4);
}

TEST(Cone, ProductFormula) {
    VarietySpec cone = cone_variety(4, 2);
    // X_0 is the cone itself: brute-force count of sum v_i^2 = 0 over F_3
    Ring r = cone.ambient;
    const auto x0 = variety_points(cone.equations, 4, 3).size();
    for (int m : {2, 3}) {
        auto c = cone_product_check(cone, 2, m, budget(3));
        EXPECT_TRUE(c.equal) << "m=" << m;
        EXPECT_EQ(c.factor, 81);
        if (m == 2) EXPECT_EQ(c.base_count, Integer(static_cast<unsigned long>(x0)));
    }
    EXPECT_THROW(cone_product_check(cone, 2, 1, budget(3)), InputError);
}

TEST(Properties, DeterministicAndShardInvariant) {
    VarietySpec v = node_variety();
    auto a = count_fiber_points(v, 3, budget(7));
    auto b = count_fiber_points(v, 3, budget(7));
    auto c = count_fiber_points(v, 3, budget(7, 3));
    EXPECT_EQ(a.total, b.total);
    EXPECT_EQ(a.total, c.total);
    Ring r({"a", "b", "c"});
    auto gens = parse_polynomial_list("a*b - c^2, a + b + c", r);
    EXPECT_EQ(count_points(r, gens, budget(11)), count_points(r, gens, budget(11, 4)));
    EXPECT_EQ(count_points(r, gens, budget(11)), Integer(static_cast<unsigned long>(variety_points(gens, 3, 11).size())));
}

TEST(Properties, CertifiedClosuresCoverTheFiber) {
    for (const auto& fam : {candidates_cA(2, 2, 3), candidates_node(3), candidates_cA(1, 2, 2)}) {
        std::vector<Ideal> cl;
        for (const auto& s : fam.strata) cl.push_back(closure(s));
        for (std::uint64_t q : {5, 7}) {
            if (fam.fiber.ring().nvars() > 6 && q == 7) continue;
            auto o = cover_oracle(fam.fiber, cl, budget(q));
            EXPECT_TRUE(o.union_equals_fiber) << fam.scenario << " q=" << q;
            EXPECT_TRUE(o.each_owns_a_point) << fam.scenario << " q=" << q;
        }
    }
}

TEST(Properties, MissingCandidateIsDetected) {
    auto fam = candidates_node(3);
    std::vector<Ideal> cl{closure(fam.strata.front()), closure(fam.strata.back())};
    auto o = cover_oracle(fam.fiber, cl, budget(5));
    EXPECT_FALSE(o.union_equals_fiber);
}

TEST(FindPoint, RespectsInequations) {
    Ring r({"a", "b"});
    PointSystem s{parse_polynomial_list("a*b - 1", r), parse_polynomial_list("a - 1", r)};
    auto pt = find_point(r, s, budget(5));
    ASSERT_TRUE(pt);
    EXPECT_EQ((*pt)[0] * (*pt)[1] % 5, 1U);
    EXPECT_NE((*pt)[0], 1U);
    PointSystem none{parse_polynomial_list("a", r), parse_polynomial_list("a", r)};
    EXPECT_FALSE(find_point(r, none, budget(5)));
}

}  // namespace
}  // namespace jetscheme
