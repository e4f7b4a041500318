#include <gtest/gtest.h>

#include <random>

#include "jetscheme/parse.hpp"
#include "jetscheme/series.hpp"
#include "support/brute.hpp"

namespace jetscheme {
namespace {

Ring xyz() { return Ring({"x", "y", "z"}); }

Polynomial P(const std::string& s, const Ring& r) { return parse_polynomial(s, r); }

TEST(Parse, ReadsTermsIntoCanonicalForm) {
    Ring r = xyz();
    Polynomial f = P("x*y - z^2", r);
    ASSERT_EQ(f.size(), 2U);
    const int xy[] = {1, 1, 0};
    const int z2[] = {0, 0, 2};
    EXPECT_EQ(f.coefficient(Monomial(3, xy)), Rational(1));
    EXPECT_EQ(f.coefficient(Monomial(3, z2)), Rational(-1));
}

TEST(Parse, ZeroIsEmpty) { EXPECT_TRUE(P("0", xyz()).is_zero()); }

TEST(Parse, NodeHasThreeTerms) { EXPECT_EQ(P("y^2 - x^2 - x^3", Ring({"x", "y"})).size(), 3U); }

TEST(Parse, RationalCoefficientsAndRepeatedFactors) {
    Ring r = xyz();
    EXPECT_EQ(P("1/2*x*x + 3/6 * x^2", r), P("x^2", r));
    EXPECT_EQ(P("-2*x*3", r), P("-6*x", r));
    EXPECT_EQ(P("x#1", Ring({"x#1"})).str(), "x#1");
}

TEST(Parse, Parentheses) {
    Ring r = xyz();
    EXPECT_EQ(P("(x + y)^2", r), P("x^2 + 2*x*y + y^2", r));
    EXPECT_EQ(P("2*(x - 1)*(x + 1) - z", r), P("2*x^2 - 2 - z", r));
    EXPECT_EQ(P("-(x - (y - z))", r), P("-x + y - z", r));
    EXPECT_THROW(P("(x + y", r), InputError);
    EXPECT_THROW(P("x + y)", r), InputError);
    EXPECT_THROW(P("()", r), InputError);
}

TEST(Parse, Errors) {
    Ring r = xyz();
    EXPECT_THROW(P("x*w", r), InputError);
    EXPECT_THROW(P("x +", r), InputError);
    EXPECT_THROW(P("x ^ ", r), InputError);
    EXPECT_THROW(P("x^-2", r), InputError);
    EXPECT_THROW(P("", r), InputError);
    EXPECT_THROW(P("x $ y", r), InputError);
}

TEST(Parse, PrinterRoundTrips) {
    Ring r = xyz();
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        Polynomial f = testing::random_poly(r, rng) * Rational(Integer(3), Integer(7));
        EXPECT_EQ(P(f.str(), r), f) << f.str();
    }
}

TEST(Arith, Examples) {
    Ring r = Ring({"x", "y"});
    EXPECT_EQ(P("x+y", r) + P("x-y", r), P("2*x", r));
    EXPECT_EQ(P("x+y", r) * P("x-y", r), P("x^2-y^2", r));
    EXPECT_TRUE((P("x^3+y", r) * Polynomial(r)).is_zero());
}

TEST(Arith, RingMismatch) {
    EXPECT_THROW(P("x", Ring({"x", "y"})) + P("x", Ring({"x"})), RingMismatch);
}

TEST(Arith, PrimeFieldReducesCoefficients) {
    Ring r({"x"}, MonomialOrder::grevlex(), PrimeField(5));
    EXPECT_EQ(P("3*x", r) + P("2*x", r), Polynomial(r));
    EXPECT_EQ(P("1/2*x", r), P("3*x", r));
    EXPECT_THROW(PrimeField(6), InputError);
}

TEST(Arith, RingAxiomsOnRandomTriples) {
    Ring r = xyz();
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 60; ++k) {
        Polynomial a = testing::random_poly(r, rng), b = testing::random_poly(r, rng), c = testing::random_poly(r, rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(Arith, ExponentOverflowIsAnError) {
    Ring r({"x"});
    Polynomial f = P("x^60000", r);
    EXPECT_THROW(f * f, ResourceError);
}

TEST(HasseSchmidt, ProductRuleExpansion) {
    Ring r = xyz();
    auto d = hasse_schmidt(P("x*y - z^2", r), 2);
    ASSERT_EQ(d.size(), 3U);
    const Ring& jr = d[1].ring();
    EXPECT_EQ(d[1], P("x#0*y#1 + x#1*y#0 - 2*z#0*z#1", jr));
    EXPECT_EQ(d[2], P("x#0*y#2 + x#1*y#1 + x#2*y#0 - 2*z#0*z#2 - z#1^2", jr));
    EXPECT_EQ(d[0], P("x#0*y#0 - z#0^2", jr));
}

TEST(HasseSchmidt, SingleVariableIsLinear) {
    Ring r({"x"});
    auto d = hasse_schmidt(P("x", r), 4);
    for (int j = 0; j <= 4; ++j) EXPECT_EQ(d[j], Polynomial::variable(d[j].ring(), jet_name("x", j)));
    EXPECT_THROW(hasse_schmidt(P("x", r), -1), InputError);
}

TEST(HasseSchmidt, LeibnizAndLinearity) {
    Ring r = xyz();
    std::mt19937_64 rng(11);
    const int m = 3;
    for (int k = 0; k < 15; ++k) {
        Polynomial f = testing::random_poly(r, rng), g = testing::random_poly(r, rng);
        auto df = hasse_schmidt(f, m), dg = hasse_schmidt(g, m), dfg = hasse_schmidt(f * g, m);
        for (int j = 0; j <= m; ++j) {
            Polynomial sum(df[0].ring());
            for (int i = 0; i <= j; ++i) sum += df[i] * dg[j - i];
            EXPECT_EQ(dfg[j], sum);
        }
        Rational a(Integer(2), Integer(3)), b(-5);
        auto dl = hasse_schmidt(a * f + b * g, m);
        for (int j = 0; j <= m; ++j) EXPECT_EQ(dl[j], a * df[j] + b * dg[j]);
    }
}

JetPoint series_jet(std::initializer_list<NumSeries> s) { return JetPoint(s); }

TEST(OrderAlongJet, Examples) {
    Ring rx({"x"});
    EXPECT_EQ(order_along_jet(P("x", rx), series_jet({{0, 0, 1, 0}}), 3), 2);
    Ring r = xyz();
    // x = t, y = t, z = t lies on xy = z^2
    EXPECT_EQ(order_along_jet(P("x*y - z^2", r), series_jet({{0, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}}), 3),
              kInfiniteOrder);
    // x = t, y = t^2, z = t: t^3 - t^2
    EXPECT_EQ(order_along_jet(P("x*y - z^2", r), series_jet({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}}), 3), 2);
}

TEST(OrderAlongJet, MissingCoordinate) {
    Ring r({"x", "y"});
    EXPECT_THROW(order_along_jet(P("x*y", r), series_jet({{0, 1, 0, 0}, {0, 1}}), 3), InputError);
    std::map<std::string, Rational> coords{{"x#0", 0}, {"x#1", 1}, {"y#0", 0}};
    EXPECT_THROW(order_along_jet(P("x*y", r), coords, 1), InputError);
    coords["y#1"] = 1;
    EXPECT_EQ(order_along_jet(P("x*y", r), coords, 1), kInfiniteOrder);
}

TEST(OrderAlongJet, AgreesWithHasseSchmidtEvaluation) {
    Ring r = xyz();
    std::mt19937_64 rng(99);
    const int m = 4;
    for (int k = 0; k < 25; ++k) {
        Polynomial f = testing::random_poly(r, rng);
        JetPoint jet(3, NumSeries(m + 1));
        std::vector<Rational> flat;
        for (int lvl = 0; lvl <= m; ++lvl)
            for (int i = 0; i < 3; ++i) {
                // sparse jets so that low orders are exercised
                long v = (rng() % 3 == 0) ? static_cast<long>(rng() % 7) - 3 : 0;
                jet[i][lvl] = Rational(v);
            }
        for (int lvl = 0; lvl <= m; ++lvl)
            for (int i = 0; i < 3; ++i) flat.push_back(jet[i][lvl]);
        auto d = hasse_schmidt(f, m);
        int expected = kInfiniteOrder;
        for (int j = 0; j <= m; ++j)
            if (!d[j].evaluate(flat).is_zero()) {
                expected = j;
                break;
            }
        EXPECT_EQ(order_along_jet(f, jet, m), expected);
    }
}

}  // namespace
}  // namespace jetscheme
