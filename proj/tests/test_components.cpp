#include <gtest/gtest.h>

#include "jetscheme/components.hpp"
#include "jetscheme/parse.hpp"

namespace jetscheme {
namespace {

std::vector<std::pair<std::string, Ideal>> closures_of(const CandidateFamily& fam) {
    std::vector<std::pair<std::string, Ideal>> out;
    for (const auto& s : fam.strata) out.emplace_back(s.label, closure(s));
    return out;
}

std::size_t vertex(const JetGraph& g, int order, const std::string& label) {
    for (std::size_t v : g.at_order(order))
        if (g.vertices[v].label == label) return v;
    throw std::out_of_range(label);
}

TEST(Certify, NodeOrderThree) {
    auto rep = certify_family(make_scenario(ScenarioTag::parse("node")), 3, 5);
    EXPECT_TRUE(rep.certified());
    EXPECT_EQ(rep.count(), 3);
    ASSERT_TRUE(rep.oracle);
    EXPECT_TRUE(rep.oracle->union_equals_fiber);
    EXPECT_TRUE(rep.oracle->each_owns_a_point);
    ASSERT_EQ(rep.notes.size(), 1U);
    EXPECT_NE(rep.notes[0].find("erratum candidate"), std::string::npos);
    // every component of a curve fiber at order m has dimension m + 1 here
    for (const auto& c : rep.components) {
        EXPECT_EQ(c.dim, 4) << c.label;
        EXPECT_EQ(c.jet_codim, 0) << c.label;
    }
}

TEST(Certify, DuValTwoOrderFour) {
    auto rep = certify_family(make_scenario(ScenarioTag::parse("cA:2")), 4);
    EXPECT_TRUE(rep.certified());
    EXPECT_EQ(rep.count(), 2);
    EXPECT_TRUE(rep.notes.empty());
}

TEST(Certify, DimensionsAgreeWithPointCounts) {
    auto rep = certify_family(make_scenario(ScenarioTag::parse("cA:1")), 2);
    ASSERT_TRUE(rep.certified());
    std::map<std::uint64_t, Integer> counts;
    for (std::uint64_t q : {5, 7}) counts[q] = count_points(rep.components[0].closure.ring(),
                                                          fiber_ideal(cA_variety(1), 2).generators(),
                                                          EnumerationBudget::for_prime(q));
    EXPECT_EQ(dim_estimate(counts).estimate, rep.components[0].dim);
}

TEST(Certify, DetectsMissingCandidate) {
    auto fam = candidates_node(4);
    auto c = closures_of(fam);
    c.erase(c.begin() + 1);
    auto rep = certify_components(fam.fiber, c, 4);
    EXPECT_TRUE(rep.containment);
    EXPECT_FALSE(rep.cover);
    EXPECT_FALSE(rep.certified());
}

TEST(Certify, DetectsRedundantCandidate) {
    auto fam = candidates_node(3);
    auto c = closures_of(fam);
    c.emplace_back("whole", fam.fiber);
    auto rep = certify_components(fam.fiber, c, 3);
    EXPECT_TRUE(rep.cover);
    EXPECT_FALSE(rep.irredundancy);
}

TEST(Certify, DetectsCandidateOutsideTheFiber) {
    auto fam = candidates_node(3);
    auto c = closures_of(fam);
    const Ring& r = fam.fiber.ring();
    c[0].second = Ideal(r, {Polynomial::variable(r, 0)});
    auto rep = certify_components(fam.fiber, c, 3);
    EXPECT_FALSE(rep.containment);
    EXPECT_THROW(certify_components(fam.fiber, {}, 3), InputError);
}

TEST(Certify, SplittingAgreesWithRadicalMembership) {
    for (const auto& fam : {candidates_node(3), candidates_cA(2, 2, 3), candidates_cA(1, 2, 2)}) {
        auto c = closures_of(fam);
        CertifyOptions split;
        for (const auto& st : fam.strata)
            split.splitters.insert(split.splitters.end(), st.inequations.begin(), st.inequations.end());
        EXPECT_TRUE(certify_components(fam.fiber, c, fam.m, split).cover) << fam.scenario;
        EXPECT_TRUE(certify_components(fam.fiber, c, fam.m).cover) << fam.scenario;
        if (c.size() < 2) continue;
        c.pop_back();
        EXPECT_FALSE(certify_components(fam.fiber, c, fam.m, split).cover) << fam.scenario;
    }
}

TEST(Truncation, MembershipTestMatchesElimination) {
    for (const auto& tag : {"node", "cA:1", "cA:2"}) {
        Scenario s = make_scenario(ScenarioTag::parse(tag));
        for (int m = 1; m <= 3; ++m) {
            auto lo = closures_of(s.candidates(m));
            auto hi = closures_of(s.candidates(m + 1));
            for (const auto& [hl, h] : hi) {
                Ideal image = truncation_image(h);
                for (const auto& [ll, l] : lo) {
                    bool by_elim = contains(image, Ideal(image.ring(), [&] {
                        std::vector<Polynomial> g;
                        for (const auto& p : l.generators()) g.push_back(p.in_ring(image.ring()));
                        return g;
                    }()));
                    EXPECT_EQ(truncates_into(h, l), by_elim) << tag << " m=" << m << " " << hl << "->" << ll;
                }
            }
        }
    }
}

TEST(Graph, DuValOneIsASingleChain) {
    JetGraph g = build_graph(make_scenario(ScenarioTag::parse("cA:1")), 4);
    auto c = chain_analysis(g);
    ASSERT_TRUE(c.m0);
    EXPECT_EQ(*c.m0, 0);
    EXPECT_EQ(c.chains, 1);
    EXPECT_EQ(g.vertices.size(), 5U);
    EXPECT_EQ(g.edges.size(), 4U);
}

TEST(Graph, DuValTwoSplitsIntoTwoChains) {
    JetGraph g = build_graph(make_scenario(ScenarioTag::parse("cA:2")), 5);
    auto c = chain_analysis(g);
    ASSERT_TRUE(c.m0);
    EXPECT_EQ(*c.m0, 2);
    EXPECT_EQ(c.chains, 2);
    EXPECT_TRUE(c.all_reach_max);
    EXPECT_TRUE(g.has_edge(vertex(g, 3, "V1"), vertex(g, 2, "L1")));
    EXPECT_FALSE(g.has_edge(vertex(g, 3, "V1"), vertex(g, 2, "L2")));
    // below the chain region the order-1 component receives both order-2 components
    EXPECT_EQ(g.sources(vertex(g, 1, "L1")).size(), 2U);
}

TEST(Graph, NodeHasNoChainStructure) {
    JetGraph g = build_graph(make_scenario(ScenarioTag::parse("node")), 5);
    auto c = chain_analysis(g);
    EXPECT_FALSE(c.m0);
    EXPECT_EQ(c.persistent, 2);
    EXPECT_NE(c.report.find("order 5:"), std::string::npos);
    // a middle stratum truncates into both neighbours
    EXPECT_TRUE(g.has_edge(vertex(g, 4, "B2"), vertex(g, 3, "B1")));
    EXPECT_TRUE(g.has_edge(vertex(g, 4, "B2"), vertex(g, 3, "B2")));
    EXPECT_FALSE(g.has_edge(vertex(g, 4, "B1"), vertex(g, 3, "B2")));
    for (const auto& rep : g.reports)
        if (rep.m >= 3) EXPECT_EQ(rep.notes.size(), 1U);
}

TEST(Graph, Validation) {
    EXPECT_THROW(build_graph(make_scenario(ScenarioTag::parse("node")), 0), InputError);
    EXPECT_THROW(build_graph(make_scenario(ScenarioTag::parse("cone:3:2")), 2), InputError);
}

TEST(Graph, ParallelMatchesSerial) {
    Scenario s = make_scenario(ScenarioTag::parse("node"));
    JetGraph a = build_graph(s, 4);
    JetGraph b = build_graph(s, 4, {3, 0, 0});
    EXPECT_EQ(a.edges, b.edges);
    EXPECT_EQ(graph_to_dot(a), graph_to_dot(b));
}

TEST(ArcType, NodeFlagsTwoPerOrder) {
    Scenario s = make_scenario(ScenarioTag::parse("node"));
    JetGraph g = build_graph(s, 5);
    auto res = arc_type_flags(g, s.witnesses(5), 2);
    EXPECT_TRUE(res.consistent);
    for (int m = 2; m <= 5; ++m) {
        int flagged = 0;
        for (std::size_t v : g.at_order(m)) flagged += res.flags[v];
        EXPECT_EQ(flagged, 2) << "m=" << m;
        EXPECT_TRUE(res.flags[vertex(g, m, "B1")]);
        EXPECT_TRUE(res.flags[vertex(g, m, "B" + std::to_string(m))]);
    }
    apply_arc_type_flags(g, res);
    EXPECT_NE(graph_to_dot(g).find("\"4/B4/5\" [style=bold]"), std::string::npos);
}

TEST(ArcType, DuValTwoFlagsEveryComponent) {
    Scenario s = make_scenario(ScenarioTag::parse("cA:2"));
    JetGraph g = build_graph(s, 5);
    auto res = arc_type_flags(g, s.witnesses(5), 2);
    EXPECT_TRUE(res.consistent);
    for (int m = 3; m <= 5; ++m)
        for (std::size_t v : g.at_order(m)) EXPECT_TRUE(res.flags[v]);
}

TEST(ArcType, CollidingWitnessesAreReported) {
    Scenario s = make_scenario(ScenarioTag::parse("cA:2"));
    JetGraph g = build_graph(s, 4);
    auto w = s.witnesses(4);
    w.push_back(w[0]);
    w.back().label = "copy";
    auto res = arc_type_flags(g, w, 3);
    EXPECT_FALSE(res.consistent);
    EXPECT_THROW(arc_type_flags(g, s.witnesses(3), 3), InputError);
}

}  // namespace
}  // namespace jetscheme
