#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "report_json.hpp"
#include "suites.hpp"
#include "variety_file.hpp"

using namespace jetscheme;
using report::json;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    bool json = false;
};

/// `--json [PATH]`: bare flag prints to stdout, a path writes the file.
struct Output {
    CLI::Option* opt = nullptr;
    std::string path;

    void attach(CLI::App* sub, const std::string& name, const std::string& help) {
        opt = sub->add_option(name, path, help)->expected(0, 1);
    }
    [[nodiscard]] bool requested() const { return opt && opt->count() > 0; }
    [[nodiscard]] bool to_stdout() const { return requested() && path.empty(); }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw InputError("cannot write '" + path + "'");
        f << text;
    }
};

int code_of(const std::exception& e, std::string& kind) {
    if (dynamic_cast<const InputError*>(&e)) return kind = "input", 2;
    if (dynamic_cast<const ResourceError*>(&e)) return kind = "resource", 3;
    if (dynamic_cast<const VerificationError*>(&e)) return kind = "verification", 1;
    kind = "internal";
    return 1;
}

void diagnose(const std::string& kind, const std::string& message, int code, std::uint64_t seed) {
    std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}, {"seed", seed}}.dump() << "\n";
}

std::string join(const std::vector<Polynomial>& ps, const std::string& indent) {
    std::string out;
    for (const auto& p : ps) out += indent + p.str() + "\n";
    return out;
}

std::vector<Polynomial> nonzero(const std::vector<Polynomial>& ps) {
    std::vector<Polynomial> out;
    for (const auto& p : ps)
        if (!p.is_zero()) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------------------------

int cmd_jet(const Globals& g, const std::string& file, int m, bool fiber, const Output& out) {
    const VarietySpec v = read_variety_file(file);
    const Ideal I = fiber ? fiber_ideal(v, m) : jet_ideal(v, m);
    const auto gens = nonzero(I.generators());
    const int d = gens.empty() ? static_cast<int>(I.ring().nvars()) : dimension(Ideal(I.ring(), gens));
    const int expected = fiber ? m * v.dim : (m + 1) * v.dim;
    json j{{"seed", g.seed},
           {"file", file},
           {"m", m},
           {"kind", fiber ? "fiber" : "jet"},
           {"variables", I.ring().names()},
           {"generators", report::strings(gens)},
           {"dim", d},
           {"variety_dim", v.dim},
           {"expected_dim", expected}};
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << g.seed << "\n"
                  << (fiber ? "fiber over the point" : "jet scheme") << " at order " << m << " in "
                  << I.ring().nvars() << " variables\n"
                  << gens.size() << (gens.size() == 1 ? " generator:\n" : " generators:\n")
                  << join(gens, "  ") << "dim " << d << " (dim X = " << v.dim << ", " << (fiber ? "m" : "(m+1)")
                  << " dim X = " << expected << ")\n";
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    return 0;
}

int cmd_components(const Globals& g, const std::string& tag, int m, std::uint64_t oracle_q, const Output& out) {
    const Scenario s = make_scenario(ScenarioTag::parse(tag), g.seed);
    const ComponentReport rep = certify_family(s, m, oracle_q);
    json j = report::to_json(rep);
    j["seed"] = g.seed;
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << g.seed << "\n"
                  << rep.scenario << " at m=" << m << ": " << (rep.certified() ? "certified" : "NOT certified") << ", "
                  << rep.count() << " components\n";
        for (const auto& c : rep.components)
            std::cout << "  " << c.label << "  dim " << c.dim << "  jet codim " << c.jet_codim << "\n";
        std::cout << "checks: containment " << rep.containment << ", cover " << rep.cover << ", irredundancy "
                  << rep.irredundancy << "\n";
        if (rep.oracle)
            std::cout << "F_" << rep.oracle->q << " oracle: fiber " << rep.oracle->fiber_points << " points, union "
                      << rep.oracle->union_points << ", " << (rep.oracle->union_equals_fiber ? "equal" : "DIFFERENT")
                      << (rep.oracle->each_owns_a_point ? ", every component owns a point" : "") << "\n";
        for (const auto& d : rep.diagnostics) std::cout << "diagnostic: " << d << "\n";
        for (const auto& a : rep.assumptions) std::cout << "assumption: " << a << "\n";
        for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    if (!rep.certified()) {
        diagnose("verification", "component list for " + rep.scenario + " at m=" + std::to_string(m) + " not certified",
                 1, g.seed);
        return 1;
    }
    return 0;
}

int cmd_graph(const Globals& g, const std::string& tag, int M, unsigned threads, std::uint64_t oracle_q,
              const Output& dot, const Output& out) {
    const Scenario s = make_scenario(ScenarioTag::parse(tag), g.seed);
    JetGraph graph = build_graph(s, M, {std::max(1U, threads), oracle_q, 4});
    std::vector<std::string> arc_notes;
    try {
        const auto w = s.witnesses(std::max(M, 8));
        const int mu = mu_invariant(s.variety, w);
        const int nu = nu_invariant(s.variety, w, [&](int m) { return suites::detail::closures_at(s, m); });
        auto flags = arc_type_flags(graph, w, mu + nu);
        apply_arc_type_flags(graph, flags);
        arc_notes.push_back("arc types from " + std::to_string(w.size()) + " witnesses, mu = " + std::to_string(mu) +
                            ", nu = " + std::to_string(nu));
        for (const auto& d : flags.diagnostics) arc_notes.push_back(d);
    } catch (const ResourceError& e) {
        arc_notes.push_back(std::string("arc types skipped: ") + e.what());
    }
    const ChainReport chains = chain_analysis(graph);
    json j = report::to_json(graph, chains);
    j["seed"] = g.seed;
    j["arc_type_notes"] = arc_notes;
    if (dot.requested()) dot.write(graph_to_dot(graph));
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else if (!dot.to_stdout()) {
        std::cout << "seed: " << g.seed << "\n"
                  << graph.scenario << " up to order " << M << ": " << graph.vertices.size() << " vertices, "
                  << graph.edges.size() << " edges\n"
                  << chains.report << "\n";
        for (const auto& n : arc_notes) std::cout << n << "\n";
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    return 0;
}

int cmd_lct(const Globals& g, const std::string& text, bool check, const Output& out) {
    const auto names = scan_identifiers(text);
    if (names.empty()) throw InputError("no variables in '" + text + "'");
    const Ring ring(names);
    const MonomialIdeal a = MonomialIdeal::from_polynomials(parse_polynomial_list(text, ring));
    const NewtonLpResult r = newton_lp(a);
    json j = report::to_json(a, r);
    j["seed"] = g.seed;
    std::optional<Rational> oracle;
    if (check) {
        oracle = lct_monomial_by_vertices(a);
        j["vertex_oracle"] = oracle->str();
    }
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << g.seed << "\n"
                  << "lct " << a.str() << " = " << r.lct() << "\n"
                  << "Newton polyhedron meets the diagonal at t = " << r.s << " (" << r.pivots << " pivots)\n"
                  << "primal witness lambda:";
        for (const auto& x : r.lambda) std::cout << " " << x;
        std::cout << "\ndual witness w:";
        for (const auto& x : r.weights) std::cout << " " << x;
        std::cout << "\n";
        if (oracle) std::cout << "vertex oracle: " << *oracle << "\n";
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    if (oracle && *oracle != r.lct()) {
        diagnose("verification", "simplex and vertex enumeration disagree", 1, g.seed);
        return 1;
    }
    return 0;
}

int cmd_hdv(const Globals& g, int e, const std::string& type, std::optional<int> n, const Output& out) {
    const HdvCertificate c = hdv_certificate(e, HdvType::parse(type, n), g.seed);
    json j = report::to_json(c);
    j["seed"] = g.seed;
    if (g.json || out.to_stdout() || !out.requested()) std::cout << j.dump(2) << "\n";
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    if (!c.certified()) {
        std::string msg = "hdv certificate failed:";
        for (const auto& f : c.failures) msg += " " + f + ";";
        diagnose("verification", msg, 1, g.seed);
        return 1;
    }
    return 0;
}

int cmd_invariants(const Globals& g, const std::string& file, std::optional<int> section, const Output& out) {
    VarietySpec v = read_variety_file(file);
    json j{{"seed", g.seed}, {"file", file}};
    if (section) {
        auto sec = hyperplane_section(v, *section, g.seed);
        j["section"] = {{"r", *section}, {"forms", report::strings(sec.forms)}, {"seed", sec.seed}, {"redraws", sec.redraws}};
        v = sec.variety;
    }
    const auto emb = edim_ecodim(v);
    const int order = multiplicity_at(v.equations, v.point);
    j["point"] = report::rationals(v.point);
    j["embedding"] = report::to_json(emb);
    j["ideal_order"] = order;
    if (v.equations.size() == 1) j["multiplicity"] = order;
    j["codim"] = v.codim();
    j["hypersurface_like"] = emb.ecodim <= 1;
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << g.seed << "\n";
        if (section) std::cout << "cut by " << *section << " general hyperplanes through the point\n";
        std::cout << "dim " << emb.dim << ", embedding dim " << emb.edim << ", embedding codim " << emb.ecodim
                  << ", Jacobian rank " << emb.jacobian_rank << ", order of the ideal " << order << "\n";
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    return 0;
}

int cmd_enum(const Globals& g, const std::string& file, int m, std::uint64_t q, unsigned shards,
             const std::string& profile, const Output& out) {
    const VarietySpec v = read_variety_file(file);
    EnumerationBudget b = EnumerationBudget::for_prime(q);
    b.shards = std::max(1U, shards);
    std::vector<Polynomial> targets;
    std::vector<std::string> target_text;
    if (!profile.empty()) {
        targets = parse_polynomial_list(profile, v.ambient);
        for (const auto& t : targets) target_text.push_back(t.str());
    }
    const StratifiedCount c = count_fiber_points(v, m, b, targets);
    json j = report::to_json(c, target_text);
    j["seed"] = g.seed;
    j["q"] = q;
    j["m"] = m;
    j["file"] = file;
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << g.seed << "\n"
                  << "fiber over the point at order " << m << " has " << c.total << " points over F_" << q << "\n";
        if (!targets.empty())
            for (const auto& [key, n] : c.buckets) {
                std::cout << "  orders";
                for (int o : key) std::cout << " " << (o == kInfiniteOrder ? std::string(">m") : std::to_string(o));
                std::cout << ": " << n << "\n";
            }
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    return 0;
}

int cmd_verify(const Globals& g, const std::string& suite, const Output& out) {
    const auto results = suites::run(suite, g.seed);
    bool all = true;
    json j{{"seed", g.seed}, {"suite", suite}, {"results", json::array()}};
    for (const auto& r : results) {
        all = all && r.pass;
        j["results"].push_back({{"criterion", r.criterion},
                                {"name", r.name},
                                {"pass", r.pass},
                                {"seconds", r.seconds},
                                {"limit_seconds", r.limit_seconds},
                                {"lines", r.lines}});
    }
    j["pass"] = all;
    if (g.json || out.to_stdout()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "seed: " << g.seed << "\n";
        for (const auto& r : results) {
            for (const auto& l : r.lines) std::cout << "  " << l << "\n";
            std::cout << suites::summary_line(r) << "\n";
        }
    }
    if (out.requested() && !out.path.empty()) out.write(j.dump(2) + "\n");
    if (!all) {
        diagnose("verification", "suite '" + suite + "' has failing checks", 1, g.seed);
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jet schemes, jet-fiber components and singularity invariants in exact arithmetic"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "seed for witness arcs and general members")->capture_default_str();
    app.add_flag("--json", g.json, "print JSON on stdout");

    std::string file, tag, text, type, profile, suite;
    int m = 0, M = 0, e = 1;
    std::optional<int> n, section;
    bool fiber = false, check = false;
    std::uint64_t oracle_q = 0, q = 5;
    unsigned threads = 1, shards = 1;

    auto* jet = app.add_subcommand("jet", "print the jet ideal or the fiber over the point");
    jet->add_option("file", file, "variety file")->required();
    jet->add_option("--m", m, "jet order")->required()->check(CLI::Range(0, 12));
    jet->add_flag("--fiber", fiber, "restrict to jets based at the point");
    Output jet_out;
    jet_out.attach(jet, "--json", "JSON output, to stdout or a file");

    auto* comps = app.add_subcommand("components", "certify the components of a jet fiber");
    comps->add_option("scenario", tag, "node, smooth, cA:n")->required();
    comps->add_option("--m", m, "jet order")->required()->check(CLI::Range(0, 12));
    comps->add_option("--oracle", oracle_q, "prime for the point-count cross-check (0 = off)");
    Output comps_out;
    comps_out.attach(comps, "--json", "JSON output, to stdout or a file");

    auto* graph = app.add_subcommand("graph", "component graph across orders");
    graph->add_option("scenario", tag, "node, smooth, cA:n")->required();
    graph->add_option("--max", M, "highest order")->required()->check(CLI::Range(1, 12));
    graph->add_option("--threads", threads, "worker threads")->check(CLI::Range(1U, 64U));
    graph->add_option("--oracle", oracle_q, "prime for point-count cross-checks up to order 4 (0 = off)");
    Output graph_dot, graph_out;
    graph_dot.attach(graph, "--dot", "DOT output, to stdout or a file");
    graph_out.attach(graph, "--json", "JSON output, to stdout or a file");

    auto* lct = app.add_subcommand("lct", "log canonical threshold of a monomial ideal");
    lct->add_option("ideal", text, "comma-separated monomials, e.g. \"x^2,y^2,z^3\"")->required();
    lct->add_flag("--check", check, "cross-check by vertex enumeration");
    Output lct_out;
    lct_out.attach(lct, "--json", "JSON output, to stdout or a file");

    auto* hdv = app.add_subcommand("hdv-cert", "certificate for a general complete intersection of a monomial family");
    hdv->add_option("--e", e, "number of equations")->required()->check(CLI::Range(1, 4));
    hdv->add_option("--type", type, "A, D, E6, E7 or E8")->required();
    hdv->add_option("--n", n, "index for types A and D");
    Output hdv_out;
    hdv_out.attach(hdv, "--json", "JSON output file (the certificate is always printed)");

    auto* inv = app.add_subcommand("invariants", "embedding data and multiplicity at the point");
    inv->add_option("file", file, "variety file")->required();
    inv->add_option("--section", section, "cut by this many general hyperplanes first");
    Output inv_out;
    inv_out.attach(inv, "--json", "JSON output, to stdout or a file");

    auto* en = app.add_subcommand("enum", "count F_q points of the fiber over the point");
    en->add_option("file", file, "variety file")->required();
    en->add_option("--m", m, "jet order")->required()->check(CLI::Range(0, 12));
    en->add_option("--q", q, "prime")->required();
    en->add_option("--shards", shards, "enumeration shards")->check(CLI::Range(1U, 64U));
    en->add_option("--profile", profile, "comma-separated polynomials whose orders are tracked");
    Output en_out;
    en_out.attach(en, "--json", "JSON output, to stdout or a file");

    auto* ver = app.add_subcommand("verify", "run an acceptance suite");
    ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suites::names()));
    Output ver_out;
    ver_out.attach(ver, "--json", "JSON output, to stdout or a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        diagnose("usage", ex.what(), 2, g.seed);
        return 2;
    }

    try {
        if (*jet) return cmd_jet(g, file, m, fiber, jet_out);
        if (*comps) return cmd_components(g, tag, m, oracle_q, comps_out);
        if (*graph) return cmd_graph(g, tag, M, threads, oracle_q, graph_dot, graph_out);
        if (*lct) return cmd_lct(g, text, check, lct_out);
        if (*hdv) return cmd_hdv(g, e, type, n, hdv_out);
        if (*inv) return cmd_invariants(g, file, section, inv_out);
        if (*en) return cmd_enum(g, file, m, q, shards, profile, en_out);
        if (*ver) return cmd_verify(g, suite, ver_out);
    } catch (const CertificationFailure& ex) {
        json j = report::to_json(ex.report());
        j["seed"] = g.seed;
        std::cout << j.dump(2) << "\n";
        diagnose("verification", ex.what(), 1, g.seed);
        return 1;
    } catch (const std::exception& ex) {
        std::string kind;
        const int code = code_of(ex, kind);
        diagnose(kind, ex.what(), code, g.seed);
        return code;
    }
    return 2;
}
