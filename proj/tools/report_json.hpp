#pragma once

#include <json.hpp>

#include "jetscheme/components.hpp"
#include "jetscheme/invariants.hpp"

namespace jetscheme::report {

using nlohmann::json;

inline json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

inline json strings(const std::vector<Polynomial>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(p.str());
    return a;
}

inline json order_value(int ord) { return ord == kInfiniteOrder ? json("inf") : json(ord); }

inline json to_json(const CoverOracle& o) {
    json own = json::array();
    for (const auto& c : o.own_points) own.push_back(c.get_str());
    return {{"q", o.q},
            {"fiber_points", o.fiber_points.get_str()},
            {"union_points", o.union_points.get_str()},
            {"own_points", own},
            {"union_equals_fiber", o.union_equals_fiber},
            {"each_owns_a_point", o.each_owns_a_point}};
}

inline json to_json(const ComponentReport& r) {
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back({{"label", c.label},
                         {"closure", strings(c.closure.generators())},
                         {"dim", c.dim},
                         {"jet_codim", c.jet_codim},
                         {"arc_type", c.arc_type}});
    json j = {{"scenario", r.scenario},
              {"m", r.m},
              {"count", r.count()},
              {"certified", r.certified()},
              {"containment", r.containment},
              {"cover", r.cover},
              {"irredundancy", r.irredundancy},
              {"components", comps},
              {"diagnostics", r.diagnostics},
              {"assumptions", r.assumptions},
              {"notes", r.notes},
              {"oracle", nullptr}};
    if (r.oracle) j["oracle"] = to_json(*r.oracle);
    return j;
}

inline json to_json(const JetGraph& g, const ChainReport& chains) {
    json vertices = json::array();
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const auto& x = g.vertices[v];
        vertices.push_back({{"id", v}, {"order", x.order}, {"label", x.label}, {"dim", x.dim}, {"arc_type", x.arc_type}});
    }
    json edges = json::array();
    for (const auto& [a, b] : g.edges) edges.push_back({{"from", a}, {"to", b}});
    json reports = json::array();
    for (const auto& r : g.reports) reports.push_back(to_json(r));
    return {{"scenario", g.scenario},
            {"max_order", g.max_order},
            {"vertices", vertices},
            {"edges", edges},
            {"chains",
             {{"m0", chains.m0 ? json(*chains.m0) : json(nullptr)},
              {"count", chains.chains},
              {"all_reach_max", chains.all_reach_max},
              {"persistent", chains.persistent},
              {"report", chains.report}}},
            {"reports", reports}};
}

inline json to_json(const MonomialIdeal& a, const NewtonLpResult& r) {
    return {{"ideal", a.str()},
            {"vars", a.vars()},
            {"lct", r.lct().str()},
            {"newton_optimum", r.s.str()},
            {"lambda", rationals(r.lambda)},
            {"weights", rationals(r.weights)},
            {"pivots", r.pivots},
            {"witness_verified", verify_newton_witness(a, r)}};
}

inline json to_json(const EmbeddingData& e) {
    return {{"edim", e.edim}, {"dim", e.dim}, {"ecodim", e.ecodim}, {"jacobian_rank", e.jacobian_rank}};
}

inline json to_json(const HdvCertificate& c) {
    json coeffs = json::array();
    for (const auto& row : c.family.coefficients) coeffs.push_back(rationals(row));
    const auto mec = c.mld ? std::optional<MecCheck>(check_mec_bound(c.family.variety, *c.mld)) : std::nullopt;
    return {{"e", c.family.e},
            {"type", c.family.type.str()},
            {"draw_seed", c.family.seed},
            {"redraws", c.family.redraws},
            {"ideal", c.family.a.str()},
            {"equations", strings(c.family.variety.equations)},
            {"coefficients", coeffs},
            {"complete_intersection", c.complete_intersection},
            {"isolated_singularity", c.isolated_singularity},
            {"singular_locus_dim", c.singular_locus_dim},
            {"embedding", to_json(c.embedding)},
            {"dim_minus_ecodim", c.dim_minus_ecodim()},
            {"multiplicity", c.multiplicity},
            {"lct", to_json(c.family.a, c.lp)},
            {"lct_exceeds_e", c.lct_exceeds_e},
            {"blowup_bound", c.blowup_bound.str()},
            {"mld", c.mld ? json(c.mld->str()) : json("not certified")},
            {"mec_equality", mec ? json(mec->equality) : json(nullptr)},
            {"certified", c.certified()},
            {"failures", c.failures},
            {"assumptions", c.assumptions}};
}

inline json to_json(const StratifiedCount& s, const std::vector<std::string>& targets) {
    json buckets = json::array();
    for (const auto& [key, count] : s.buckets) {
        json k = json::array();
        for (int o : key) k.push_back(order_value(o));
        buckets.push_back({{"orders", k}, {"count", count.get_str()}});
    }
    return {{"total", s.total.get_str()}, {"targets", targets}, {"buckets", buckets}};
}

}  // namespace jetscheme::report
