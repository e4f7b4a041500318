#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jetscheme/jets.hpp"
#include "jetscheme/monomial_ideal.hpp"
#include "jetscheme/random.hpp"

namespace jetscheme {

/// ord(target) = value, or ord(target) >= value, along a jet.
struct OrderConstraint {
    enum class Relation { exactly, at_least };

    Polynomial target;
    Relation relation = Relation::at_least;
    int value = 0;

    static OrderConstraint exactly(Polynomial target, int value) { return {std::move(target), Relation::exactly, value}; }
    static OrderConstraint at_least(Polynomial target, int value) {
        return {std::move(target), Relation::at_least, value};
    }
};

/// Locally closed set of jets: V(equations) minus the union of V(g) over the inequations.
struct Stratum {
    std::string label;
    Ideal equations;
    std::vector<Polynomial> inequations;
    bool empty = false;
};

/// Translate order constraints into coefficient equations and inequations over the fiber.
inline Stratum stratum_from_constraints(const JetContext& ctx, const Ideal& fiber,
                                        const std::vector<OrderConstraint>& constraints, std::string label = "") {
    const int m = ctx.order();
    const Ring& r = ctx.working_ring();
    if (fiber.ring() != r) throw RingMismatch();
    std::vector<Polynomial> eqs = fiber.generators();
    std::vector<Polynomial> ineqs;
    for (const auto& c : constraints) {
        if (c.value < 0) throw InputError("negative order constraint");
        if (c.relation == OrderConstraint::Relation::exactly && c.value > m)
            throw InputError("ord = " + std::to_string(c.value) + " exceeds the jet order " + std::to_string(m) +
                             "; use an at-least constraint");
        auto s = ctx.series(c.target);
        for (int j = 0; j < std::min(c.value, m + 1); ++j) eqs.push_back(s[j]);
        if (c.relation == OrderConstraint::Relation::exactly) {
            if (s[c.value].is_zero()) ineqs.push_back(Polynomial(r));
            else if (!s[c.value].is_nonzero_constant()) ineqs.push_back(s[c.value]);
        }
    }
    Stratum st{std::move(label), Ideal(r, std::move(eqs)), {}, false};
    if (st.equations.is_unit()) st.empty = true;
    for (auto& g : ineqs) {
        if (g.is_zero() || st.equations.contains(g)) st.empty = true;
        st.inequations.push_back(std::move(g));
    }
    return st;
}

/// Ideal of the Zariski closure of a stratum.
inline Ideal closure(const Stratum& s) {
    if (s.empty) return Ideal::unit(s.equations.ring());
    Ideal cur = s.equations;
    for (const auto& g : s.inequations) cur = saturate(cur, g);
    return cur;
}

/// Candidate strata for one scenario at one jet order.
struct CandidateFamily {
    std::string scenario;
    int m = 0;
    Ideal fiber;
    std::vector<Stratum> strata;
    int expected_count = 0;
    std::string formula;
};

// ---------------------------------------------------------------------------------------------
// Scenario varieties and witness arcs

/// xy = z_1^{n+1} + ... + z_{d-1}^{n+1} at the origin.
inline VarietySpec cA_variety(int n, int d = 2) {
    if (n < 1) throw InputError("cA scenario needs n >= 1");
    if (d < 2) throw InputError("cA scenario needs dimension >= 2");
    std::vector<std::string> names{"x", "y"};
    if (d == 2)
        names.push_back("z");
    else
        for (int k = 1; k < d; ++k) names.push_back("z" + std::to_string(k));
    Ring r(names);
    Polynomial f = Polynomial::variable(r, 0) * Polynomial::variable(r, 1);
    for (std::size_t k = 2; k < names.size(); ++k) f -= Polynomial::variable(r, k).pow(n + 1);
    return VarietySpec::make(r, {f}, std::nullopt, d);
}

/// y^2 = x^2 + x^3 at the origin.
inline VarietySpec node_variety() {
    Ring r({"x", "y"});
    Polynomial x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    return VarietySpec::make(r, {y * y - x * x - x.pow(3)}, std::nullopt, 1);
}

/// y = x^2 at the origin.
inline VarietySpec smooth_variety() {
    Ring r({"x", "y"});
    Polynomial x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    return VarietySpec::make(r, {y - x * x}, std::nullopt, 1);
}

/// v_1^r + ... + v_N^r at the origin.
inline VarietySpec cone_variety(int N, int r) {
    if (N < 2 || r < 2) throw InputError("cone scenario needs N >= 2 and r >= 2");
    std::vector<std::string> names;
    for (int i = 1; i <= N; ++i) names.push_back("v" + std::to_string(i));
    Ring ring(names);
    Polynomial f(ring);
    for (int i = 0; i < N; ++i) f += Polynomial::variable(ring, i).pow(r);
    return VarietySpec::make(ring, {f}, std::nullopt, N - 1);
}

/// Coefficients of the Taylor expansion of sqrt(1 + x) up to x^m.
inline std::vector<Rational> sqrt_one_plus_coefficients(int m) {
    std::vector<Rational> c{Rational(1)};
    const Rational half(Integer(1), Integer(2));
    for (int k = 1; k <= m; ++k) c.push_back(c.back() * (half - Rational(k - 1)) / Rational(k));
    return c;
}

/// Local branches of the node: y -/+ x * sqrt(1 + x) truncated at x^{m+1}. The product
/// agrees with y^2 - x^2 - x^3 up to terms of degree >= m + 3.
inline std::pair<Polynomial, Polynomial> node_branches(const Ring& r, int m) {
    Polynomial x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
    Polynomial s(r);
    auto c = sqrt_one_plus_coefficients(m);
    for (int k = 0; k <= m; ++k) s += Polynomial::constant(r, c[k]) * x.pow(k + 1);
    return {y - s, y + s};
}

inline std::vector<WitnessArc> cA_witnesses(int n, int d, int level, std::uint64_t seed) {
    SeededRandom rng(seed);
    const std::size_t nv = (d == 2) ? 3 : static_cast<std::size_t>(d + 1);
    std::vector<WitnessArc> out;
    for (int i = 1; i <= n; ++i) {
        Rational a = rng.nonzero_rational(5, 3), c = rng.nonzero_rational(5, 3);
        JetPoint s(nv, NumSeries(level + 1, Rational(0)));
        if (i <= level) s[0][i] = a;
        if (n + 1 - i <= level) s[1][n + 1 - i] = pow(c, n + 1) / a;
        if (level >= 1) s[2][1] = c;
        out.push_back({"arc" + std::to_string(i), std::move(s)});
    }
    return out;
}

inline std::vector<WitnessArc> node_witnesses(int level, std::uint64_t seed) {
    SeededRandom rng(seed);
    auto root = sqrt_one_plus_coefficients(level);
    std::vector<WitnessArc> out;
    for (int sign : {1, -1}) {
        Rational c = rng.nonzero_rational(5, 3);
        JetPoint s(2, NumSeries(level + 1, Rational(0)));
        if (level >= 1) s[0][1] = c;
        // y = sign * c t * sqrt(1 + c t)
        for (int k = 0; k + 1 <= level; ++k) s[1][k + 1] = Rational(sign) * root[k] * pow(c, k + 1);
        out.push_back({sign > 0 ? "branch+" : "branch-", std::move(s)});
    }
    return out;
}

inline std::vector<WitnessArc> smooth_witnesses(int level, std::uint64_t seed) {
    SeededRandom rng(seed);
    Rational c = rng.nonzero_rational(5, 3);
    JetPoint s(2, NumSeries(level + 1, Rational(0)));
    if (level >= 1) s[0][1] = c;
    if (level >= 2) s[1][2] = c * c;
    return {{"arc", std::move(s)}};
}

// ---------------------------------------------------------------------------------------------
// Candidate families

inline CandidateFamily root_family(const VarietySpec& v, const std::string& scenario) {
    JetContext ctx(v, 0);
    Ideal fiber = fiber_ideal(v, 0);
    CandidateFamily fam{scenario, 0, fiber, {}, 1, "1"};
    fam.strata.push_back(stratum_from_constraints(ctx, fiber, {}, "root"));
    return fam;
}

/// Strata V_i: ord x = i, ord y = (n+1) - i, ord(z-part) = n+1, for i = 1..n. Needs m >= n+1.
inline CandidateFamily candidates_cA(int n, int d, int m) {
    const int mu = n + 1;
    if (m < mu) throw InputError("cA candidates need m >= " + std::to_string(mu));
    VarietySpec v = cA_variety(n, d);
    JetContext ctx(v, m);
    Ideal fiber = fiber_ideal(v, m);
    const Ring& a = v.ambient;
    Polynomial x = Polynomial::variable(a, 0), y = Polynomial::variable(a, 1);
    Polynomial zpart = x * y - v.equations[0];
    CandidateFamily fam{"cA:" + std::to_string(n), m, fiber, {}, n, "n"};
    for (int i = 1; i <= n; ++i)
        fam.strata.push_back(stratum_from_constraints(
            ctx, fiber,
            {OrderConstraint::exactly(x, i), OrderConstraint::exactly(y, mu - i), OrderConstraint::exactly(zpart, mu)},
            "V" + std::to_string(i)));
    return fam;
}

/// Below order n+1 the z-part is invisible: strata ord x = a, ord y >= m+1-a, for a = 1..m.
inline CandidateFamily candidates_cA_low(int n, int d, int m) {
    if (m < 1 || m > n) throw InputError("low-order cA candidates need 1 <= m <= n");
    VarietySpec v = cA_variety(n, d);
    JetContext ctx(v, m);
    Ideal fiber = fiber_ideal(v, m);
    Polynomial x = Polynomial::variable(v.ambient, 0), y = Polynomial::variable(v.ambient, 1);
    CandidateFamily fam{"cA:" + std::to_string(n), m, fiber, {}, m, "m"};
    for (int a = 1; a <= m; ++a)
        fam.strata.push_back(stratum_from_constraints(
            ctx, fiber, {OrderConstraint::exactly(x, a), OrderConstraint::at_least(y, m + 1 - a)},
            "L" + std::to_string(a)));
    return fam;
}

/// Node strata: ord(branch+) = a, ord(branch-) >= m+1-a, for a = 1..m.
inline CandidateFamily candidates_node(int m) {
    if (m < 1) throw InputError("node candidates need m >= 1");
    VarietySpec v = node_variety();
    JetContext ctx(v, m);
    Ideal fiber = fiber_ideal(v, m);
    auto [plus, minus] = node_branches(v.ambient, m);
    CandidateFamily fam{"node", m, fiber, {}, m, "m"};
    for (int a = 1; a <= m; ++a)
        fam.strata.push_back(stratum_from_constraints(
            ctx, fiber, {OrderConstraint::exactly(plus, a), OrderConstraint::at_least(minus, m + 1 - a)},
            "B" + std::to_string(a)));
    return fam;
}

inline CandidateFamily candidates_smooth(int m) {
    VarietySpec v = smooth_variety();
    JetContext ctx(v, m);
    Ideal fiber = fiber_ideal(v, m);
    CandidateFamily fam{"smooth", m, fiber, {}, 1, "1"};
    fam.strata.push_back(stratum_from_constraints(ctx, fiber, {}, "F"));
    return fam;
}

// ---------------------------------------------------------------------------------------------
// Higher Du Val families

struct HdvType {
    enum class Kind { A, D, E6, E7, E8 };
    Kind kind = Kind::A;
    int n = 1;

    static HdvType parse(const std::string& name, std::optional<int> n = std::nullopt) {
        HdvType t;
        if (name == "A") {
            t.kind = Kind::A;
            if (!n || *n < 1) throw InputError("type A needs n >= 1");
            t.n = *n;
        } else if (name == "D") {
            t.kind = Kind::D;
            if (!n || *n < 4) throw InputError("type D needs n >= 4");
            t.n = *n;
        } else if (name == "E6" || name == "E7" || name == "E8") {
            t.kind = name == "E6" ? Kind::E6 : name == "E7" ? Kind::E7 : Kind::E8;
            t.n = name[1] - '0';
            if (n && *n != t.n) throw InputError("type " + name + " takes no index");
        } else {
            throw InputError("unknown singularity type '" + name + "'");
        }
        return t;
    }

    [[nodiscard]] std::string str() const {
        switch (kind) {
            case Kind::A: return "A" + std::to_string(n);
            case Kind::D: return "D" + std::to_string(n);
            case Kind::E6: return "E6";
            case Kind::E7: return "E7";
            case Kind::E8: return "E8";
        }
        return "?";
    }
};

/// The three-variable monomial ideal attached to a Du Val type, in variables x, y, z.
inline MonomialIdeal duval_monomial_ideal(const HdvType& t) {
    using G = std::vector<std::vector<int>>;
    std::vector<std::string> xyz{"x", "y", "z"};
    switch (t.kind) {
        case HdvType::Kind::A: return MonomialIdeal(xyz, G{{2, 0, 0}, {0, 2, 0}, {0, 0, t.n + 1}});
        case HdvType::Kind::D: return MonomialIdeal(xyz, G{{0, 0, 2}, {2, 1, 0}, {0, t.n - 2, 0}});
        case HdvType::Kind::E6: return MonomialIdeal(xyz, G{{0, 0, 2}, {3, 0, 0}, {0, 4, 0}});
        case HdvType::Kind::E7: return MonomialIdeal(xyz, G{{0, 0, 2}, {3, 0, 0}, {1, 3, 0}});
        case HdvType::Kind::E8: return MonomialIdeal(xyz, G{{0, 0, 2}, {3, 0, 0}, {0, 5, 0}});
    }
    throw InputError("unknown singularity type");
}

inline std::vector<std::string> hdv_u_names(int e) {
    std::vector<std::string> u;
    for (int i = 1; i <= 2 * e - 2; ++i) u.push_back("u" + std::to_string(i));
    return u;
}

/// (u_1..u_{2e-2})^2 + b over u_1..u_{2e-2}, x, y, z.
inline MonomialIdeal hdv_monomial_ideal(int e, const HdvType& t) {
    if (e < 1) throw InputError("hdv family needs e >= 1");
    MonomialIdeal b = duval_monomial_ideal(t);
    if (e == 1) return b;
    return MonomialIdeal::maximal_power(hdv_u_names(e), 2).joined(b);
}

struct HdvFamily {
    int e = 1;
    HdvType type;
    VarietySpec variety;
    MonomialIdeal a{{"x"}, {{1}}};
    std::vector<std::vector<Rational>> coefficients;
    std::uint64_t seed = 0;
    int redraws = 0;
    bool complete_intersection = false;
    bool isolated_singularity = false;
};

/// Dimension of the singular locus of a complete intersection of codimension c.
inline int singular_locus_dimension(const VarietySpec& v, std::size_t c) {
    auto gens = v.equations;
    for (auto& g : jacobian_minors(v.equations, c)) gens.push_back(std::move(g));
    return dimension(Ideal(v.ambient, gens));
}

/// e seeded combinations of the generators of the monomial ideal, re-drawn with the next seed
/// until the complete-intersection and isolated-singularity checks pass. Returns the last draw,
/// flags included, when every attempt fails.
inline HdvFamily draw_hdv(int e, const HdvType& t, std::uint64_t seed, int max_redraws = 8) {
    MonomialIdeal a = hdv_monomial_ideal(e, t);
    Ring ring(a.vars());
    auto gens = a.polynomials(ring);
    HdvFamily fam;
    for (int attempt = 0; attempt <= max_redraws; ++attempt) {
        fam = HdvFamily{};
        fam.e = e;
        fam.type = t;
        fam.a = a;
        fam.seed = seed + static_cast<std::uint64_t>(attempt);
        fam.redraws = attempt;
        SeededRandom rng(fam.seed);
        std::vector<Polynomial> eqs;
        for (int k = 0; k < e; ++k) {
            std::vector<Rational> coeffs;
            Polynomial f(ring);
            for (const auto& g : gens) {
                coeffs.push_back(rng.nonzero_rational(7, 2));
                f += coeffs.back() * g;
            }
            fam.coefficients.push_back(std::move(coeffs));
            eqs.push_back(std::move(f));
        }
        fam.variety = VarietySpec::make(ring, eqs);
        fam.complete_intersection = fam.variety.dim == e + 1;
        if (fam.complete_intersection)
            fam.isolated_singularity = singular_locus_dimension(fam.variety, static_cast<std::size_t>(e)) == 0;
        if (fam.complete_intersection && fam.isolated_singularity) return fam;
    }
    return fam;
}

/// As draw_hdv, but a family failing the checks after every re-draw is an error.
inline HdvFamily candidates_hdv(int e, const HdvType& t, std::uint64_t seed, int max_redraws = 8) {
    HdvFamily fam = draw_hdv(e, t, seed, max_redraws);
    if (!fam.complete_intersection || !fam.isolated_singularity)
        throw VerificationError("no valid general member of hdv:" + std::to_string(e) + ":" + t.str() + " found after " +
                                std::to_string(max_redraws) + " re-draws (" +
                                (fam.complete_intersection ? "singular locus has positive dimension"
                                                           : "not a complete intersection") +
                                ")");
    return fam;
}

// ---------------------------------------------------------------------------------------------
// Scenario tags

struct ScenarioTag {
    enum class Kind { smooth, node, cA, hdv, cone };
    Kind kind = Kind::smooth;
    int n = 0;
    int e = 0;
    HdvType type;
    int N = 0;
    int r = 0;

    static ScenarioTag parse(const std::string& text) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (;;) {
            auto pos = text.find(':', start);
            parts.push_back(text.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        auto integer = [&](const std::string& s) {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw InputError("bad number '" + s + "' in scenario '" + text + "'");
            }
        };
        ScenarioTag t;
        const std::string& head = parts[0];
        if (head == "smooth" && parts.size() == 1) {
            t.kind = Kind::smooth;
        } else if (head == "node" && parts.size() == 1) {
            t.kind = Kind::node;
        } else if (head == "cA" && parts.size() == 2) {
            t.kind = Kind::cA;
            t.n = integer(parts[1]);
            if (t.n < 1) throw InputError("cA scenario needs n >= 1");
        } else if (head == "hdv" && (parts.size() == 3 || parts.size() == 4)) {
            t.kind = Kind::hdv;
            t.e = integer(parts[1]);
            if (t.e < 1) throw InputError("hdv scenario needs e >= 1");
            std::optional<int> n;
            if (parts.size() == 4) n = integer(parts[3]);
            t.type = HdvType::parse(parts[2], n);
        } else if (head == "cone" && parts.size() == 3) {
            t.kind = Kind::cone;
            t.N = integer(parts[1]);
            t.r = integer(parts[2]);
            if (t.N < 2 || t.r < 2) throw InputError("cone scenario needs N >= 2 and r >= 2");
        } else {
            throw InputError("unknown scenario '" + text + "' (expected node, smooth, cA:n, hdv:e:type[:n], cone:N:r)");
        }
        return t;
    }

    [[nodiscard]] std::string str() const {
        switch (kind) {
            case Kind::smooth: return "smooth";
            case Kind::node: return "node";
            case Kind::cA: return "cA:" + std::to_string(n);
            case Kind::hdv: {
                std::string s = "hdv:" + std::to_string(e) + ":";
                if (type.kind == HdvType::Kind::A) return s + "A:" + std::to_string(type.n);
                if (type.kind == HdvType::Kind::D) return s + "D:" + std::to_string(type.n);
                return s + type.str();
            }
            case Kind::cone: return "cone:" + std::to_string(N) + ":" + std::to_string(r);
        }
        return "?";
    }
};

/// A supported scenario: variety, candidate components per order (if certifiable), witness arcs.
struct Scenario {
    ScenarioTag tag;
    VarietySpec variety;
    std::uint64_t seed = 0;
    std::function<CandidateFamily(int)> candidates;
    std::function<std::vector<WitnessArc>(int)> witnesses;
    std::string assumption;

    [[nodiscard]] bool certifiable() const { return static_cast<bool>(candidates); }
    [[nodiscard]] std::string name() const { return tag.str(); }
};

inline Scenario make_scenario(const ScenarioTag& tag, std::uint64_t seed = 1) {
    Scenario s;
    s.tag = tag;
    s.seed = seed;
    const std::string name = tag.str();
    switch (tag.kind) {
        case ScenarioTag::Kind::smooth:
            s.variety = smooth_variety();
            s.candidates = [name](int m) {
                return m == 0 ? root_family(smooth_variety(), name) : candidates_smooth(m);
            };
            s.witnesses = [seed](int level) { return smooth_witnesses(level, seed); };
            break;
        case ScenarioTag::Kind::node:
            s.variety = node_variety();
            s.candidates = [name](int m) { return m == 0 ? root_family(node_variety(), name) : candidates_node(m); };
            s.witnesses = [seed](int level) { return node_witnesses(level, seed); };
            s.assumption = "branch strata are irreducible: each is an open subset of an affine space in branch coordinates";
            break;
        case ScenarioTag::Kind::cA: {
            const int n = tag.n;
            s.variety = cA_variety(n);
            s.candidates = [n, name](int m) {
                if (m == 0) return root_family(cA_variety(n), name);
                return m <= n ? candidates_cA_low(n, 2, m) : candidates_cA(n, 2, m);
            };
            s.witnesses = [n, seed](int level) { return cA_witnesses(n, 2, level, seed); };
            s.assumption = "order strata are irreducible: each is parametrized by an open subset of an affine space";
            break;
        }
        case ScenarioTag::Kind::hdv:
            s.variety = draw_hdv(tag.e, tag.type, seed).variety;
            break;
        case ScenarioTag::Kind::cone:
            s.variety = cone_variety(tag.N, tag.r);
            break;
    }
    return s;
}

}  // namespace jetscheme
