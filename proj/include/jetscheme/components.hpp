#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jetscheme/ffenum.hpp"
#include "jetscheme/parallel.hpp"
#include "jetscheme/strata.hpp"

namespace jetscheme {

struct CertifiedComponent {
    std::string label;
    Ideal closure;
    int dim = 0;
    int jet_codim = 0;
    bool arc_type = false;
};

struct ComponentReport {
    std::string scenario;
    int m = 0;
    std::vector<CertifiedComponent> components;
    bool containment = false;
    bool cover = false;
    bool irredundancy = false;
    std::vector<std::string> diagnostics;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
    std::optional<CoverOracle> oracle;

    [[nodiscard]] bool certified() const { return containment && cover && irredundancy; }
    [[nodiscard]] int count() const { return static_cast<int>(components.size()); }
};

/// Thrown by graph construction when some order cannot be certified.
class CertificationFailure : public VerificationError {
public:
    explicit CertificationFailure(ComponentReport report)
        : VerificationError(describe(report)), report_(std::move(report)) {}
    [[nodiscard]] const ComponentReport& report() const { return report_; }

private:
    static std::string describe(const ComponentReport& r) {
        std::string s = "certification failed for " + r.scenario + " at m=" + std::to_string(r.m);
        for (const auto& d : r.diagnostics) s += "; " + d;
        return s;
    }
    ComponentReport report_;
};

struct CertifyOptions {
    int dim_x = 0;                      // dimension of the variety, for jet codimensions
    std::vector<Polynomial> splitters;  // case-split polynomials for the cover certificate
    std::uint64_t oracle_q = 0;         // 0 disables the finite-field cross-check
    std::uint64_t oracle_max_points = 0;  // 0 keeps the default budget
};

namespace detail {

/// V(I) lies in the union of the V(C): split V(I) = V(I + (h)) ∪ closure(V(I) minus V(h)) along the
/// splitters until a branch is inside one candidate; leaves fall back to radical membership.
/// The root is split before any containment test, which would need a basis of the whole fiber.
template <class Meet>
bool split_cover(const Ideal& I, const std::vector<Ideal>& closures, Meet&& meet,
                 const std::vector<Polynomial>& splitters, std::vector<bool> used, bool root, std::string& failure) {
    const bool can_split = std::find(used.begin(), used.end(), false) != used.end();
    if (!root || !can_split) {
        if (I.is_unit()) return true;
        for (const auto& c : closures)
            if (contains(I, c)) return true;
    }
    for (std::size_t k = 0; k < splitters.size(); ++k) {
        if (used[k] || (!root && I.contains(splitters[k]))) continue;
        used[k] = true;
        return split_cover(I.plus({splitters[k]}), closures, meet, splitters, used, false, failure) &&
               split_cover(saturate(I, splitters[k]), closures, meet, splitters, used, false, failure);
    }
    for (const auto& g : meet().generators())
        if (!radical_member(g, I)) {
            failure = g.str();
            return false;
        }
    return true;
}

/// Same zero set as h for monomials (the product of their variables); cheapest splits first.
inline std::vector<Polynomial> prepare_splitters(const std::vector<Polynomial>& hs) {
    std::vector<Polynomial> out;
    for (const auto& h : hs) {
        if (h.is_zero() || h.is_nonzero_constant()) continue;
        Polynomial g = h;
        if (h.size() == 1) {
            g = Polynomial::constant(h.ring(), Rational(1));
            for (std::size_t i = 0; i < h.ring().nvars(); ++i)
                if (h.involves(i)) g = g * Polynomial::variable(h.ring(), i);
        }
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
    std::stable_sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.total_degree() < b.total_degree();
    });
    return out;
}

}  // namespace detail

/// Certifies that the candidate closures are exactly the irreducible components of V(fiber):
/// each contains the fiber ideal, their union covers V(fiber), and none contains another.
inline ComponentReport certify_components(const Ideal& fiber, const std::vector<std::pair<std::string, Ideal>>& candidates,
                                          int m, const CertifyOptions& opts = {}, std::string scenario = "") {
    if (candidates.empty()) throw InputError("no candidates to certify");
    ComponentReport rep;
    rep.scenario = std::move(scenario);
    rep.m = m;
    for (const auto& [label, ideal] : candidates) {
        if (ideal.ring() != fiber.ring()) throw RingMismatch();
        CertifiedComponent c{label, ideal, dimension(ideal), 0, false};
        const int top = (m + 1) * opts.dim_x;
        c.jet_codim = (c.dim >= 0 && c.dim <= top) ? top - c.dim : -1;
        rep.components.push_back(std::move(c));
    }

    rep.containment = true;
    for (const auto& c : rep.components) {
        if (c.dim < 0) {
            rep.containment = false;
            rep.diagnostics.push_back("candidate " + c.label + " is empty");
        } else if (!contains(c.closure, fiber)) {
            rep.containment = false;
            rep.diagnostics.push_back("candidate " + c.label + " does not lie in the fiber");
        }
    }

    std::vector<Ideal> cl;
    for (const auto& c : rep.components) cl.push_back(c.closure);
    std::optional<Ideal> meet;
    auto lazy_meet = [&]() -> const Ideal& {
        if (!meet) {
            meet = cl[0];
            for (std::size_t i = 1; i < cl.size(); ++i) meet = intersect(*meet, cl[i]);
        }
        return *meet;
    };
    const auto splitters = detail::prepare_splitters(opts.splitters);
    std::string failure;
    rep.cover = detail::split_cover(fiber, cl, lazy_meet, splitters, std::vector<bool>(splitters.size(), false),
                                    true, failure);
    if (!rep.cover) rep.diagnostics.push_back("fiber not covered: " + failure + " does not vanish on part of the fiber");

    rep.irredundancy = true;
    for (std::size_t i = 0; i < rep.components.size(); ++i)
        for (std::size_t j = 0; j < rep.components.size(); ++j)
            if (i != j && contains(rep.components[i].closure, rep.components[j].closure)) {
                rep.irredundancy = false;
                rep.diagnostics.push_back("candidate " + rep.components[i].label + " lies inside " +
                                          rep.components[j].label);
            }

    rep.assumptions.push_back(
        "irreducibility of each candidate is not tested symbolically; it follows from the stratum construction");

    if (opts.oracle_q) {
        EnumerationBudget b = EnumerationBudget::for_prime(opts.oracle_q);
        if (opts.oracle_max_points) b.max_points = opts.oracle_max_points;
        std::vector<Ideal> cl;
        for (const auto& c : rep.components) cl.push_back(c.closure);
        try {
            rep.oracle = cover_oracle(fiber, cl, b);
        } catch (const ResourceError& e) {
            rep.notes.push_back(std::string("oracle skipped: ") + e.what());
        }
    }
    return rep;
}

/// Erratum note for the nodal cubic when the certified count is m.
inline std::optional<std::string> node_count_note(const ComponentReport& rep) {
    if (rep.scenario != "node" || !rep.certified() || rep.m < 3 || rep.count() != rep.m) return std::nullopt;
    return "erratum candidate: the node fiber at order " + std::to_string(rep.m) + " has " +
           std::to_string(rep.count()) + " certified components (count m, not m-1)";
}

/// Certify the candidate family of a scenario at order m.
inline ComponentReport certify_family(const Scenario& s, int m, std::uint64_t oracle_q = 0,
                                      std::uint64_t oracle_max_points = 0) {
    if (!s.certifiable()) throw InputError("scenario " + s.name() + " has no candidate components");
    CandidateFamily fam = s.candidates(m);
    std::vector<std::pair<std::string, Ideal>> cands;
    CertifyOptions opts;
    for (const auto& st : fam.strata) {
        cands.emplace_back(st.label, closure(st));
        opts.splitters.insert(opts.splitters.end(), st.inequations.begin(), st.inequations.end());
    }
    opts.dim_x = s.variety.dim;
    opts.oracle_q = oracle_q;
    opts.oracle_max_points = oracle_max_points;
    ComponentReport rep = certify_components(fam.fiber, cands, m, opts, s.name());
    if (!s.assumption.empty()) rep.assumptions.push_back(s.assumption);
    if (auto note = node_count_note(rep)) rep.notes.push_back(*note);
    return rep;
}

// ---------------------------------------------------------------------------------------------
// Component graph

struct GraphVertex {
    int order = 0;
    std::string label;
    int dim = 0;
    Ideal closure;
    bool arc_type = false;
};

struct JetGraph {
    std::string scenario;
    int max_order = 0;
    std::vector<GraphVertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (order m+1, order m)
    std::vector<ComponentReport> reports;

    [[nodiscard]] std::vector<std::size_t> at_order(int m) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].order == m) out.push_back(i);
        return out;
    }
    [[nodiscard]] std::vector<std::size_t> targets(std::size_t v) const {
        std::vector<std::size_t> out;
        for (const auto& [a, b] : edges)
            if (a == v) out.push_back(b);
        return out;
    }
    [[nodiscard]] std::vector<std::size_t> sources(std::size_t u) const {
        std::vector<std::size_t> out;
        for (const auto& [a, b] : edges)
            if (b == u) out.push_back(a);
        return out;
    }
    [[nodiscard]] bool has_edge(std::size_t a, std::size_t b) const {
        return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
    }
};

/// Truncation edge test: the image of V(high) lies in V(low). Since the level-(m+1) variables are
/// eliminated, this is the same as every generator of `low` lying in `high`.
inline bool truncates_into(const Ideal& high, const Ideal& low) {
    for (const auto& g : low.generators())
        if (!high.contains(g.in_ring(high.ring()))) return false;
    return true;
}

struct GraphOptions {
    unsigned workers = 1;
    std::uint64_t oracle_q = 0;
    int oracle_max_order = 4;
};

/// Certify every order 0..M and join adjacent orders by truncation edges.
inline JetGraph build_graph(const Scenario& s, int M, const GraphOptions& opts = {}) {
    if (M < 1) throw InputError("graph needs M >= 1");
    if (!s.certifiable()) throw InputError("scenario " + s.name() + " is not supported for certification");
    JetGraph g;
    g.scenario = s.name();
    g.max_order = M;
    g.reports = parallel_map(static_cast<std::size_t>(M + 1), opts.workers, [&](std::size_t m) {
        const int order = static_cast<int>(m);
        return certify_family(s, order, order <= opts.oracle_max_order ? opts.oracle_q : 0);
    });
    for (const auto& rep : g.reports) {
        if (!rep.certified()) throw CertificationFailure(rep);
        for (const auto& c : rep.components) g.vertices.push_back({rep.m, c.label, c.dim, c.closure, false});
    }
    for (int m = 0; m < M; ++m)
        for (std::size_t v : g.at_order(m + 1))
            for (std::size_t u : g.at_order(m))
                if (truncates_into(g.vertices[v].closure, g.vertices[u].closure)) g.edges.emplace_back(v, u);
    return g;
}

// ---------------------------------------------------------------------------------------------
// Arc-type components

struct ArcTypeResult {
    std::vector<bool> flags;                                  // per vertex
    std::map<std::string, std::map<int, std::vector<std::size_t>>> matches;  // witness -> order -> vertices
    int threshold = 0;                                        // orders >= threshold must match uniquely
    bool consistent = true;
    std::vector<std::string> diagnostics;
};

/// Flag vertices whose closure contains the truncation of some witness arc.
inline ArcTypeResult arc_type_flags(const JetGraph& g, const std::vector<WitnessArc>& witnesses, int threshold) {
    ArcTypeResult res;
    res.flags.assign(g.vertices.size(), false);
    res.threshold = threshold;
    for (const auto& w : witnesses) {
        if (w.level() < g.max_order) throw InputError("witness " + w.label + " is shorter than the graph");
        for (int m = 0; m <= g.max_order; ++m) {
            auto pt = w.fiber_coordinates(m);
            auto& hit = res.matches[w.label][m];
            for (std::size_t v : g.at_order(m)) {
                bool on = true;
                for (const auto& gen : g.vertices[v].closure.generators())
                    if (!gen.evaluate(pt).is_zero()) {
                        on = false;
                        break;
                    }
                if (on) {
                    hit.push_back(v);
                    res.flags[v] = true;
                }
            }
            if (m >= threshold && hit.size() != 1) {
                res.consistent = false;
                res.diagnostics.push_back("witness " + w.label + " matches " + std::to_string(hit.size()) +
                                          " components at order " + std::to_string(m));
            }
        }
        for (int m = threshold; m < g.max_order; ++m) {
            const auto& lo = res.matches[w.label][m];
            const auto& hi = res.matches[w.label][m + 1];
            if (lo.size() == 1 && hi.size() == 1 && !g.has_edge(hi[0], lo[0])) {
                res.consistent = false;
                res.diagnostics.push_back("flagged vertices of " + w.label + " are not joined between orders " +
                                          std::to_string(m) + " and " + std::to_string(m + 1));
            }
        }
    }
    for (int m = threshold; m <= g.max_order; ++m)
        for (std::size_t a = 0; a < witnesses.size(); ++a)
            for (std::size_t b = a + 1; b < witnesses.size(); ++b) {
                const auto& x = res.matches[witnesses[a].label][m];
                const auto& y = res.matches[witnesses[b].label][m];
                if (x.size() == 1 && y.size() == 1 && x[0] == y[0]) {
                    res.consistent = false;
                    res.diagnostics.push_back("witnesses " + witnesses[a].label + " and " + witnesses[b].label +
                                              " flag the same component at order " + std::to_string(m));
                }
            }
    return res;
}

/// Copy arc-type flags into the graph vertices and the per-order reports.
inline void apply_arc_type_flags(JetGraph& g, const ArcTypeResult& res) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v) g.vertices[v].arc_type = res.flags[v];
    for (auto& rep : g.reports)
        for (auto& c : rep.components)
            for (const auto& v : g.vertices)
                if (v.order == rep.m && v.label == c.label) c.arc_type = v.arc_type;
}

// ---------------------------------------------------------------------------------------------
// Chain structure

struct ChainReport {
    std::optional<int> m0;
    int chains = 0;
    bool all_reach_max = false;
    int persistent = 0;  // vertices at order M with a unique backward path to order 0
    std::string report;
};

/// Smallest m0 < M such that orders m0..M form disjoint simple chains, one vertex per order each.
inline ChainReport chain_analysis(const JetGraph& g) {
    ChainReport out;
    const int M = g.max_order;
    std::ostringstream log;
    auto chain_like = [&](int m0) {
        for (int m = m0; m <= M; ++m)
            for (std::size_t v : g.at_order(m)) {
                if (m > m0 && g.targets(v).size() != 1) return false;
                if (m < M && g.sources(v).size() != 1) return false;
            }
        return true;
    };
    for (int m = 0; m <= M; ++m) {
        log << "order " << m << ":";
        for (std::size_t v : g.at_order(m))
            log << " " << g.vertices[v].label << "(in " << g.sources(v).size() << ", out " << g.targets(v).size() << ")";
        log << "\n";
    }
    for (int m0 = 0; m0 < M; ++m0)
        if (chain_like(m0)) {
            out.m0 = m0;
            out.chains = static_cast<int>(g.at_order(M).size());
            out.all_reach_max = true;
            log << "chains from order " << m0 << ": " << out.chains << ", all reaching order " << M << "\n";
            break;
        }
    if (!out.m0) log << "no order m0 < " << M << " above which the graph is a union of chains\n";
    for (std::size_t v : g.at_order(M)) {
        std::size_t cur = v;
        bool unique = true;
        while (unique && g.vertices[cur].order > 0) {
            auto t = g.targets(cur);
            if (t.size() != 1) unique = false;
            else cur = t[0];
        }
        if (unique) ++out.persistent;
    }
    log << "vertices at order " << M << " with a single path to the root: " << out.persistent << "\n";
    out.report = log.str();
    return out;
}

/// Graphviz rendering; vertices are named order/label/dim.
inline std::string graph_to_dot(const JetGraph& g) {
    std::ostringstream out;
    out << "digraph jets {\n  rankdir=RL;\n";
    auto name = [&](std::size_t v) {
        const auto& x = g.vertices[v];
        return "\"" + std::to_string(x.order) + "/" + x.label + "/" + std::to_string(x.dim) + "\"";
    };
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        out << "  " << name(v) << (g.vertices[v].arc_type ? " [style=bold]" : "") << ";\n";
    for (const auto& [a, b] : g.edges) out << "  " << name(a) << " -> " << name(b) << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace jetscheme
