#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetscheme/lp.hpp"
#include "jetscheme/monomial_ideal.hpp"
#include "jetscheme/random.hpp"
#include "jetscheme/strata.hpp"

namespace jetscheme {

// ---------------------------------------------------------------------------------------------
// Log canonical thresholds of monomial ideals

/// Optimum of: minimize s with s·(1..1) >= sum_j lambda_j a_j, lambda in the standard simplex.
/// `lambda` attains s; `weights` is a dual point w >= 0, sum w = 1, with <a_j, w> >= s for all j,
/// which proves no lambda does better.
struct NewtonLpResult {
    Rational s;
    std::vector<Rational> lambda;
    std::vector<Rational> weights;
    int pivots = 0;

    [[nodiscard]] Rational lct() const { return s.inverse(); }
};

namespace detail {

// columns: lambda_1..k, s, slack_1..N; rows: sum_j a_ji lambda_j - s + slack_i = 0, sum lambda = 1
inline LinearProgram newton_primal(const MonomialIdeal& a) {
    const auto& g = a.generators();
    const std::size_t k = g.size(), n = a.nvars();
    LinearProgram lp;
    lp.c.assign(k + 1 + n, Rational());
    lp.c[k] = Rational(1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row(k + 1 + n);
        for (std::size_t j = 0; j < k; ++j) row[j] = Rational(g[j][i]);
        row[k] = Rational(-1);
        row[k + 1 + i] = Rational(1);
        lp.A.push_back(std::move(row));
        lp.b.emplace_back(0);
    }
    std::vector<Rational> row(k + 1 + n);
    for (std::size_t j = 0; j < k; ++j) row[j] = Rational(1);
    lp.A.push_back(std::move(row));
    lp.b.emplace_back(1);
    return lp;
}

// columns: w_1..N, t, surplus_1..k; rows: sum_i a_ji w_i - t - surplus_j = 0, sum w = 1; minimize -t
inline LinearProgram newton_dual(const MonomialIdeal& a) {
    const auto& g = a.generators();
    const std::size_t k = g.size(), n = a.nvars();
    LinearProgram lp;
    lp.c.assign(n + 1 + k, Rational());
    lp.c[n] = Rational(-1);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Rational> row(n + 1 + k);
        for (std::size_t i = 0; i < n; ++i) row[i] = Rational(g[j][i]);
        row[n] = Rational(-1);
        row[n + 1 + j] = Rational(-1);
        lp.A.push_back(std::move(row));
        lp.b.emplace_back(0);
    }
    std::vector<Rational> row(n + 1 + k);
    for (std::size_t i = 0; i < n; ++i) row[i] = Rational(1);
    lp.A.push_back(std::move(row));
    lp.b.emplace_back(1);
    return lp;
}

inline void require_proper(const MonomialIdeal& a) {
    if (a.is_unit()) throw InputError("log canonical threshold of the unit ideal");
}

}  // namespace detail

/// Checks a claimed optimum by direct arithmetic on both witnesses.
inline bool verify_newton_witness(const MonomialIdeal& a, const NewtonLpResult& r) {
    const auto& g = a.generators();
    if (r.lambda.size() != g.size() || r.weights.size() != a.nvars()) return false;
    Rational sum_l, sum_w;
    for (const auto& l : r.lambda) {
        if (l.sign() < 0) return false;
        sum_l += l;
    }
    for (const auto& w : r.weights) {
        if (w.sign() < 0) return false;
        sum_w += w;
    }
    if (!sum_l.is_one() || !sum_w.is_one()) return false;
    Rational top;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
        Rational c;
        for (std::size_t j = 0; j < g.size(); ++j) c += r.lambda[j] * Rational(g[j][i]);
        if (i == 0 || c > top) top = c;
    }
    Rational low;
    for (std::size_t j = 0; j < g.size(); ++j) {
        Rational d;
        for (std::size_t i = 0; i < a.nvars(); ++i) d += r.weights[i] * Rational(g[j][i]);
        if (j == 0 || d < low) low = d;
    }
    return top == r.s && low == r.s;
}

/// Exact simplex on the primal and dual problems; throws if the two optima disagree.
inline NewtonLpResult newton_lp(const MonomialIdeal& a) {
    detail::require_proper(a);
    const std::size_t k = a.generators().size(), n = a.nvars();
    LpSolution p = solve_lp(detail::newton_primal(a));
    LpSolution d = solve_lp(detail::newton_dual(a));
    if (p.status != LpSolution::Status::optimal || d.status != LpSolution::Status::optimal)
        throw VerificationError("Newton polyhedron LP did not reach an optimum");
    NewtonLpResult r;
    r.s = p.value;
    r.lambda.assign(p.x.begin(), p.x.begin() + static_cast<std::ptrdiff_t>(k));
    r.weights.assign(d.x.begin(), d.x.begin() + static_cast<std::ptrdiff_t>(n));
    r.pivots = p.pivots + d.pivots;
    if (-d.value != p.value || !verify_newton_witness(a, r))
        throw VerificationError("LP witnesses do not certify the optimum of " + a.str());
    return r;
}

inline Rational lct_monomial(const MonomialIdeal& a) { return newton_lp(a).lct(); }

/// Reference value by enumerating every basic solution of the primal problem.
inline Rational lct_monomial_by_vertices(const MonomialIdeal& a, std::size_t max_generators = 12) {
    detail::require_proper(a);
    if (a.generators().size() > max_generators)
        throw ResourceError("vertex enumeration is limited to " + std::to_string(max_generators) + " generators");
    LpSolution p = solve_lp_by_vertices(detail::newton_primal(a));
    if (p.status != LpSolution::Status::optimal) throw VerificationError("no basic feasible solution");
    return p.value.inverse();
}

/// lct(a + b) for ideals in disjoint variables: the sum of the two thresholds.
inline Rational lct_sum_disjoint(const MonomialIdeal& a, const MonomialIdeal& b) {
    for (const auto& v : b.vars())
        if (std::find(a.vars().begin(), a.vars().end(), v) != a.vars().end())
            throw InputError("variable blocks overlap at '" + v + "'");
    return lct_monomial(a) + lct_monomial(b);
}

// ---------------------------------------------------------------------------------------------
// Local invariants at a point

namespace detail {

inline std::vector<Polynomial> translated(const std::vector<Polynomial>& gens, const std::vector<Rational>& x) {
    if (gens.empty()) return {};
    const Ring& r = gens[0].ring();
    if (x.size() != r.nvars()) throw InputError("point has wrong number of coordinates");
    std::vector<Polynomial> shift;
    for (std::size_t i = 0; i < r.nvars(); ++i)
        shift.push_back(Polynomial::variable(r, i) + Polynomial::constant(r, x[i]));
    std::vector<Polynomial> out;
    for (const auto& g : gens) {
        if (g.ring() != r) throw RingMismatch();
        if (!g.evaluate(x).is_zero()) throw InputError("point does not lie on " + g.str());
        out.push_back(g.substitute(r, shift));
    }
    return out;
}

/// Rank by fraction-free elimination after clearing denominators row by row.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
    std::vector<std::vector<Integer>> a;
    for (const auto& r : rows) {
        Integer l = 1;
        for (const auto& v : r) l = lcm(l, v.den());
        std::vector<Integer> ir;
        for (const auto& v : r) ir.push_back((v * Rational(l)).num());
        a.push_back(std::move(ir));
    }
    if (a.empty()) return 0;
    const std::size_t m = a.size(), n = a[0].size();
    std::size_t rk = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < n && rk < m; ++col) {
        std::size_t p = rk;
        while (p < m && a[p][col] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[rk]);
        for (std::size_t i = rk + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                a[i][j] = (a[rk][col] * a[i][j] - a[i][col] * a[rk][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rk][col];
        ++rk;
    }
    return rk;
}

}  // namespace detail

/// Order of vanishing at x of the generator set; the multiplicity of the point for a hypersurface.
inline int multiplicity_at(const std::vector<Polynomial>& gens, const std::vector<Rational>& x) {
    int best = -1;
    for (const auto& g : detail::translated(gens, x)) {
        if (g.is_zero()) continue;
        const int d = static_cast<int>(g.low_degree());
        if (best < 0 || d < best) best = d;
    }
    if (best < 0) throw InputError("multiplicity of the zero ideal");
    return best;
}

/// Log discrepancy of the exceptional divisor of the point blow-up of A^N for the pair (A^N, c·X).
inline Rational blowup_log_discrepancy(int ambient_dim, const Rational& c, int mult) {
    if (ambient_dim < 1) throw InputError("ambient dimension must be positive");
    if (c.sign() < 0) throw InputError("pair coefficient must be nonnegative");
    return Rational(ambient_dim) - c * Rational(mult);
}

struct EmbeddingData {
    int edim = 0;
    int dim = 0;
    int ecodim = 0;
    std::size_t jacobian_rank = 0;
};

inline std::size_t jacobian_rank_at(const std::vector<Polynomial>& gens, const std::vector<Rational>& x) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens) {
        std::vector<Rational> row;
        for (std::size_t i = 0; i < g.ring().nvars(); ++i) row.push_back(g.derivative(i).evaluate(x));
        rows.push_back(std::move(row));
    }
    return detail::rank(std::move(rows));
}

inline EmbeddingData edim_ecodim(const VarietySpec& v, const std::optional<std::vector<Rational>>& at = std::nullopt) {
    const auto& x = at.value_or(v.point);
    if (x.size() != v.nvars()) throw InputError("point has wrong number of coordinates");
    for (const auto& f : v.equations)
        if (!f.evaluate(x).is_zero()) throw InputError("point does not lie on " + f.str());
    EmbeddingData e;
    e.jacobian_rank = jacobian_rank_at(v.equations, x);
    e.edim = static_cast<int>(v.nvars() - e.jacobian_rank);
    e.dim = v.dim;
    e.ecodim = e.edim - e.dim;
    return e;
}

struct MecCheck {
    int ecodim = 0;
    int dim = 0;
    Rational mld;
    bool holds = false;
    bool equality = false;
};

/// ecodim <= dim - mld, with the mld supplied by a certificate.
inline MecCheck check_mec_bound(const VarietySpec& v, const Rational& mld,
                                const std::optional<std::vector<Rational>>& at = std::nullopt) {
    auto e = edim_ecodim(v, at);
    MecCheck c{e.ecodim, e.dim, mld, false, false};
    const Rational rhs = Rational(e.dim) - mld;
    c.holds = Rational(e.ecodim) <= rhs;
    c.equality = Rational(e.ecodim) == rhs;
    return c;
}

// ---------------------------------------------------------------------------------------------
// Certificates for the general complete intersections of the monomial-ideal families

struct HdvCertificate {
    HdvFamily family;
    bool complete_intersection = false;
    bool isolated_singularity = false;
    int singular_locus_dim = -1;
    EmbeddingData embedding;
    int multiplicity = 0;
    NewtonLpResult lp;
    Rational lct;
    bool lct_exceeds_e = false;
    Rational blowup_bound;
    std::optional<Rational> mld;  // set only when every check passes
    std::vector<std::string> failures;
    std::vector<std::string> assumptions;

    [[nodiscard]] bool certified() const { return mld.has_value(); }
    [[nodiscard]] int dim_minus_ecodim() const { return embedding.dim - embedding.ecodim; }
};

/// Runs every check on a (possibly modified) family; the verdict mld = 1 needs all of them.
inline HdvCertificate hdv_certificate_for(const HdvFamily& fam) {
    HdvCertificate c;
    c.family = fam;
    const int e = fam.e;
    const int N = static_cast<int>(fam.variety.nvars());
    c.complete_intersection = fam.variety.dim == N - e && static_cast<int>(fam.variety.equations.size()) == e;
    if (c.complete_intersection) {
        c.singular_locus_dim = singular_locus_dimension(fam.variety, static_cast<std::size_t>(e));
        c.isolated_singularity = c.singular_locus_dim == 0;
    }
    c.embedding = edim_ecodim(fam.variety);
    c.multiplicity = multiplicity_at(fam.variety.equations, fam.variety.point);
    c.lp = newton_lp(fam.a);
    c.lct = c.lp.lct();
    c.lct_exceeds_e = c.lct > Rational(e);
    c.blowup_bound = blowup_log_discrepancy(N, Rational(e), c.multiplicity);

    if (!c.complete_intersection) c.failures.push_back("not a complete intersection of dimension e+1");
    if (!c.isolated_singularity)
        c.failures.push_back("singular locus is not the point (dimension " + std::to_string(c.singular_locus_dim) + ")");
    if (c.embedding.ecodim != e)
        c.failures.push_back("embedding codimension " + std::to_string(c.embedding.ecodim) + " differs from e");
    if (!c.lct_exceeds_e) c.failures.push_back("lct " + c.lct.str() + " does not exceed e");
    if (!c.blowup_bound.is_one()) c.failures.push_back("blow-up bound " + c.blowup_bound.str() + " differs from 1");
    if (c.failures.empty()) c.mld = Rational(1);
    c.assumptions.push_back("the lower bound mld >= 1 uses inversion of adjunction for a general member; "
                            "generality is checked through the complete-intersection and isolated-singularity tests");
    return c;
}

inline HdvCertificate hdv_certificate(int e, const HdvType& t, std::uint64_t seed = 1, int max_redraws = 8) {
    return hdv_certificate_for(draw_hdv(e, t, seed, max_redraws));
}

// ---------------------------------------------------------------------------------------------
// Hyperplane sections through the distinguished point

struct SectionResult {
    VarietySpec variety;
    std::vector<Polynomial> forms;
    std::uint64_t seed = 0;
    int redraws = 0;
};

/// Cut by r seeded random linear forms through the point; re-drawn until the dimension drops by r.
inline SectionResult hyperplane_section(const VarietySpec& v, int r, std::uint64_t seed, int max_redraws = 8) {
    if (r < 0 || r >= v.dim) throw InputError("section count must satisfy 0 <= r < dim");
    const Ring& ring = v.ambient;
    for (int attempt = 0; attempt <= max_redraws; ++attempt) {
        SectionResult out;
        out.seed = seed + static_cast<std::uint64_t>(attempt);
        out.redraws = attempt;
        SeededRandom rng(out.seed);
        auto eqs = v.equations;
        for (int k = 0; k < r; ++k) {
            Polynomial h(ring);
            for (std::size_t i = 0; i < ring.nvars(); ++i) {
                const Rational c(rng.integer(-5, 5));
                h += c * (Polynomial::variable(ring, i) - Polynomial::constant(ring, v.point[i]));
            }
            if (h.is_zero()) h = Polynomial::variable(ring, 0) - Polynomial::constant(ring, v.point[0]);
            out.forms.push_back(h);
            eqs.push_back(h);
        }
        out.variety = VarietySpec::make(ring, eqs, v.point);
        if (out.variety.dim == v.dim - r) return out;
    }
    throw VerificationError("no section of the expected dimension after " + std::to_string(max_redraws) + " re-draws");
}

}  // namespace jetscheme
