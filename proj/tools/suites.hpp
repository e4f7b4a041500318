#pragma once

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "jetscheme/components.hpp"
#include "jetscheme/invariants.hpp"
#include "jetscheme/parse.hpp"

namespace jetscheme::suites {

struct SuiteResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double limit_seconds = 0;
    std::vector<std::string> lines;  // one per checked case
};

struct Suite {
    int criterion;
    std::string name;
    std::string title;
    double limit_seconds;
    std::function<bool(std::uint64_t seed, std::vector<std::string>& lines)> run;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::string verdict(bool ok) { return ok ? "ok  " : "FAIL"; }

inline std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << "s";
    return o.str();
}

inline std::vector<Ideal> closures_at(const Scenario& s, int m) {
    std::vector<Ideal> out;
    for (const auto& st : s.candidates(m).strata) out.push_back(closure(st));
    return out;
}

struct ArcCheck {
    int mu = 0;
    int nu = 0;
    JetGraph graph;
    ArcTypeResult flags;
};

inline ArcCheck arc_check(const Scenario& s, int M) {
    ArcCheck a;
    const auto witnesses = s.witnesses(std::max(M, 8));
    a.mu = mu_invariant(s.variety, witnesses);
    a.nu = nu_invariant(s.variety, witnesses, [&](int m) { return closures_at(s, m); });
    a.graph = build_graph(s, M);
    a.flags = arc_type_flags(a.graph, witnesses, a.mu + a.nu);
    return a;
}

inline std::vector<HdvType> hdv_types() {
    return {HdvType::parse("A", 1), HdvType::parse("A", 2), HdvType::parse("A", 3), HdvType::parse("D", 4),
            HdvType::parse("E6"),   HdvType::parse("E7"),   HdvType::parse("E8")};
}

// 5^12 points: the largest cA fiber checked by the oracle (n = 3, m = 4)
inline constexpr std::uint64_t kDuValOracleCap = 244'140'625;

}  // namespace detail

inline bool duval_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {3, 6}}) {
        auto t0 = Clock::now();
        Scenario s = make_scenario(ScenarioTag::parse("cA:" + std::to_string(n)), seed);
        const std::uint64_t q = m <= 4 ? 5 : 0;
        auto rep = certify_family(s, m, q, q ? kDuValOracleCap : 0);
        bool ok = rep.certified() && rep.count() == n;
        std::string oracle = "no oracle";
        if (q) {
            ok = ok && rep.oracle && rep.oracle->union_equals_fiber && rep.oracle->each_owns_a_point;
            oracle = rep.oracle ? "F_5 oracle " + std::string(rep.oracle->union_equals_fiber &&
                                                                     rep.oracle->each_owns_a_point
                                                                 ? "agrees"
                                                                 : "disagrees")
                                : "F_5 oracle missing";
        }
        const double dt = since(t0);
        ok = ok && dt <= 60;
        all = all && ok;
        lines.push_back(verdict(ok) + " cA:" + std::to_string(n) + " m=" + std::to_string(m) +
                        ": certified count " + std::to_string(rep.count()) + " (expected " + std::to_string(n) + "), " +
                        oracle + ", " + fmt_seconds(dt));
    }
    return all;
}

inline bool node_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    Scenario s = make_scenario(ScenarioTag::parse("node"), seed);
    bool all = true;
    std::optional<int> offset;
    for (int m = 3; m <= 5; ++m) {
        auto t0 = Clock::now();
        auto rep = certify_family(s, m, 5);
        const double dt = since(t0);
        const int off = rep.count() - m;
        const bool note = !rep.notes.empty() && rep.notes[0].find("erratum candidate") != std::string::npos;
        bool ok = rep.certified() && (off == 0 || off == -1) && (!offset || *offset == off) && (off != 0 || note) &&
                  rep.oracle && rep.oracle->union_equals_fiber && dt <= 30;
        offset = off;
        all = all && ok;
        lines.push_back(verdict(ok) + " node m=" + std::to_string(m) + ": certified count " + std::to_string(rep.count()) +
                        " = m" + (off == 0 ? "" : std::to_string(off)) + (note ? ", erratum note emitted" : "") + ", " +
                        fmt_seconds(dt));
    }
    auto a = arc_check(s, 5);
    const int threshold = a.mu + a.nu;
    for (int m = 3; m <= 5; ++m) {
        int flagged = 0;
        for (std::size_t v : a.graph.at_order(m)) flagged += a.flags.flags[v];
        const bool ok = flagged == 2 && m >= threshold;
        all = all && ok;
        lines.push_back(verdict(ok) + " node m=" + std::to_string(m) + ": " + std::to_string(flagged) +
                        " arc-type components (threshold mu+nu = " + std::to_string(threshold) + ")");
    }
    all = all && a.flags.consistent;
    return all;
}

inline bool graph_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    for (int n = 1; n <= 3; ++n) {
        auto t0 = Clock::now();
        JetGraph g = build_graph(make_scenario(ScenarioTag::parse("cA:" + std::to_string(n)), seed), n + 3);
        auto c = chain_analysis(g);
        const bool ok = c.m0 && *c.m0 <= n + 1 && c.chains == n && c.all_reach_max;
        all = all && ok;
        lines.push_back(verdict(ok) + " cA:" + std::to_string(n) + " M=" + std::to_string(n + 3) + ": m0 = " +
                        (c.m0 ? std::to_string(*c.m0) : "none") + " (bound " + std::to_string(n + 1) + "), " +
                        std::to_string(c.chains) + " chains" + (c.all_reach_max ? " reaching M" : "") + ", " +
                        fmt_seconds(since(t0)));
    }
    return all;
}

inline bool injectivity_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    for (const char* tag : {"node", "cA:2"}) {
        Scenario s = make_scenario(ScenarioTag::parse(tag), seed);
        auto a = arc_check(s, 5);
        const int threshold = a.mu + a.nu;
        bool ok = a.flags.consistent && threshold <= 5;
        for (int m = threshold; m <= 5; ++m) {
            std::set<std::size_t> seen;
            for (const auto& [w, per_order] : a.flags.matches) {
                const auto& hit = per_order.at(m);
                if (hit.size() != 1 || !seen.insert(hit[0]).second) ok = false;
            }
        }
        all = all && ok;
        lines.push_back(verdict(ok) + " " + std::string(tag) + ": mu = " + std::to_string(a.mu) + ", nu = " +
                        std::to_string(a.nu) + ", " + std::to_string(a.flags.matches.size()) +
                        " witnesses each flag one distinct component for m = " + std::to_string(threshold) + "..5");
        for (const auto& d : a.flags.diagnostics) lines.push_back("     " + d);
    }
    return all;
}

inline bool lct_suite(std::uint64_t, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    for (int n = 1; n <= 5; ++n) {
        MonomialIdeal a({"x", "y", "z"}, {{2, 0, 0}, {0, 2, 0}, {0, 0, n + 1}});
        const Rational lp = lct_monomial(a), vx = lct_monomial_by_vertices(a), want(n + 2, n + 1);
        const bool ok = lp == want && vx == want;
        all = all && ok;
        lines.push_back(verdict(ok) + " lct" + a.str() + " = " + lp.str() + " (vertex oracle " + vx.str() + ")");
    }
    for (int k : {2, 4, 6}) {
        std::vector<std::string> v;
        for (int i = 1; i <= k; ++i) v.push_back("v" + std::to_string(i));
        const Rational got = lct_monomial(MonomialIdeal::maximal_power(v, 2));
        const bool ok = got == Rational(k, 2);
        all = all && ok;
        lines.push_back(verdict(ok) + " lct of the square of the maximal ideal in " + std::to_string(k) +
                        " variables = " + got.str());
    }
    for (const auto& t : {HdvType::parse("A", 2), HdvType::parse("D", 4), HdvType::parse("E6"), HdvType::parse("E7"),
                          HdvType::parse("E8")}) {
        const Rational base = lct_monomial(duval_monomial_ideal(t));
        std::string got;
        bool ok = true;
        for (int e = 1; e <= 3; ++e) {
            const Rational l = lct_monomial(hdv_monomial_ideal(e, t));
            ok = ok && l == Rational(e - 1) + base;
            got += (e > 1 ? ", " : "") + l.str();
        }
        all = all && ok;
        lines.push_back(verdict(ok) + " " + t.str() + ": lct(b) = " + base.str() + ", e = 1..3 gives " + got);
    }
    return all;
}

inline bool hdv_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    for (int e = 1; e <= 2; ++e)
        for (const auto& t : hdv_types()) {
            auto c = hdv_certificate(e, t, seed);
            const bool ok = c.certified() && c.complete_intersection && c.isolated_singularity &&
                            c.embedding.ecodim == e && c.embedding.dim == e + 1 && c.lct_exceeds_e &&
                            c.blowup_bound == Rational(1) && *c.mld == Rational(1) && c.dim_minus_ecodim() == 1;
            all = all && ok;
            std::string line = verdict(ok) + " e=" + std::to_string(e) + " " + t.str() + ": ";
            if (ok)
                line += "ecodim " + std::to_string(c.embedding.ecodim) + ", dim " + std::to_string(c.embedding.dim) +
                        ", lct " + c.lct.str() + ", blow-up bound " + c.blowup_bound.str() + ", mld 1";
            else
                for (std::size_t i = 0; i < c.failures.size(); ++i) line += (i ? "; " : "") + c.failures[i];
            lines.push_back(line);
        }
    return all;
}

inline bool mec_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    int checked = 0;
    for (int e = 1; e <= 2; ++e)
        for (const auto& t : hdv_types()) {
            auto c = hdv_certificate(e, t, seed);
            if (!c.certified()) {
                lines.push_back("skip e=" + std::to_string(e) + " " + t.str() + ": not certified");
                continue;
            }
            auto m = check_mec_bound(c.family.variety, *c.mld);
            all = all && m.equality;
            ++checked;
            lines.push_back(verdict(m.equality) + " e=" + std::to_string(e) + " " + t.str() + ": ecodim " +
                            std::to_string(m.ecodim) + " = dim " + std::to_string(m.dim) + " - mld " + m.mld.str());
        }
    auto a1 = hdv_certificate(1, HdvType::parse("A", 1), seed);
    const bool a1_ok = a1.certified() && *a1.mld == Rational(1);
    auto m = check_mec_bound(cA_variety(1), Rational(1));
    const bool ok = a1_ok && m.equality && m.dim == 2 && m.ecodim == 1;
    all = all && ok && checked > 0;
    lines.push_back(verdict(ok) + " A1 surface xy = z^2: dim " + std::to_string(m.dim) + ", ecodim " +
                    std::to_string(m.ecodim) + ", mld 1");
    return all;
}

inline bool cone_suite(std::uint64_t, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    const VarietySpec cone = cone_variety(4, 2);
    for (int m : {2, 3}) {
        auto c = cone_product_check(cone, 2, m, EnumerationBudget::for_prime(3));
        all = all && c.equal;
        lines.push_back(verdict(c.equal) + " m=" + std::to_string(m) + ": fiber " + c.fiber_count.get_str() +
                        ", base " + c.base_count.get_str() + " x " + c.factor.get_str() + " = " +
                        Integer(c.base_count * c.factor).get_str());
    }
    return all;
}

inline bool irreducible_suite(std::uint64_t seed, std::vector<std::string>& lines) {
    using namespace detail;
    bool all = true;
    Scenario s = make_scenario(ScenarioTag::parse("cA:1"), seed);
    for (int m : {2, 3}) {
        auto fam = s.candidates(m);
        auto rep = certify_family(s, m);
        bool ok = rep.certified() && rep.count() == 1;
        if (ok) {
            ok = false;
            for (const auto& st : fam.strata)
                if (st.label == rep.components[0].label) ok = same_ideal(rep.components[0].closure, closure(st));
        }
        all = all && ok;
        lines.push_back(verdict(ok) + " A1 m=" + std::to_string(m) + ": " + std::to_string(rep.count()) +
                        " component, closure of the dense stratum, dim " +
                        (rep.components.empty() ? "?" : std::to_string(rep.components[0].dim)));
    }
    return all;
}

inline bool oracle_suite(std::uint64_t, std::vector<std::string>& lines) {
    using namespace detail;
    struct Case {
        std::string name;
        Ideal ideal;
    };
    std::vector<Case> cases;
    auto add = [&](const std::string& vars, const std::string& gens) {
        std::vector<std::string> v;
        std::stringstream in(vars);
        for (std::string x; std::getline(in, x, ',');) v.push_back(x);
        Ring r(v);
        cases.push_back({"(" + gens + ") in " + vars, Ideal(r, parse_polynomial_list(gens, r))});
    };
    add("x,y", "x*y");
    add("x,y", "y^2 - x^3");
    add("x,y,z", "x*y, x*z");
    add("x,y,z", "y - x^2, z - x^3");
    add("x,y,z", "x^2 + y^2 + z^2");
    add("x,y,z,w", "x*y - z*w");
    add("x,y", "x, y");
    for (const char* tag : {"node", "cA:1"}) {
        Ideal f = fiber_ideal(make_scenario(ScenarioTag::parse(tag)).variety, 2);
        cases.push_back({std::string(tag) + " fiber at order 2", f});
    }
    bool all = true;
    for (const auto& c : cases) {
        std::map<std::uint64_t, Integer> counts;
        for (std::uint64_t q : {5, 7})
            counts[q] = count_points(c.ideal.ring(), c.ideal.generators(), EnumerationBudget::for_prime(q));
        const auto est = dim_estimate(counts);
        const int d = dimension(c.ideal);
        const bool ok = est.estimate == d;
        all = all && ok;
        std::ostringstream ex;
        ex.precision(3);
        ex << std::fixed << est.exponent;
        lines.push_back(verdict(ok) + " " + c.name + ": estimate " + std::to_string(est.estimate) + " (" + ex.str() +
                        "), Groebner dimension " + std::to_string(d));
    }
    return all && cases.size() >= 5;
}

inline const std::vector<Suite>& registry() {
    static const std::vector<Suite> all{
        {1, "duval", "cA component counts", 360, duval_suite},
        {2, "node", "nodal curve count and arc types", 90, node_suite},
        {3, "graph", "cA graphs are chains", 120, graph_suite},
        {4, "injectivity", "witness arcs flag distinct components", 30, injectivity_suite},
        {5, "lct", "monomial log canonical thresholds", 5, lct_suite},
        {6, "hdv", "higher Du Val certificates", 120, hdv_suite},
        {7, "mec", "embedding codimension bound", 120, mec_suite},
        {8, "cone", "affine cone product formula", 60, cone_suite},
        {9, "irreducible", "A1 jet fibers are irreducible", 60, irreducible_suite},
        {10, "oracle", "point-count dimension estimates", 120, oracle_suite},
    };
    return all;
}

inline std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    out.emplace_back("all");
    return out;
}

inline SuiteResult run(const Suite& s, std::uint64_t seed) {
    SuiteResult r;
    r.criterion = s.criterion;
    r.name = s.name;
    r.limit_seconds = s.limit_seconds;
    auto t0 = detail::Clock::now();
    try {
        r.pass = s.run(seed, r.lines);
    } catch (const Error& e) {
        r.pass = false;
        r.lines.push_back(std::string("FAIL error: ") + e.what());
    }
    r.seconds = detail::since(t0);
    if (r.seconds > r.limit_seconds) {
        r.pass = false;
        r.lines.push_back("FAIL time limit " + detail::fmt_seconds(r.limit_seconds) + " exceeded");
    }
    return r;
}

/// Runs one suite by name, or every suite for "all".
inline std::vector<SuiteResult> run(const std::string& name, std::uint64_t seed) {
    std::vector<SuiteResult> out;
    for (const auto& s : registry())
        if (name == "all" || name == s.name) out.push_back(run(s, seed));
    if (out.empty()) throw InputError("unknown suite '" + name + "'");
    return out;
}

inline std::string summary_line(const SuiteResult& r) {
    const Suite* s = nullptr;
    for (const auto& x : registry())
        if (x.name == r.name) s = &x;
    std::ostringstream o;
    o << (r.pass ? "PASS" : "FAIL") << " criterion " << r.criterion << " [" << r.name << "] "
      << (s ? s->title : std::string()) << " (" << detail::fmt_seconds(r.seconds) << ")";
    return o.str();
}

}  // namespace jetscheme::suites
