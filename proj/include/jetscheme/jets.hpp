#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jetscheme/groebner.hpp"
#include "jetscheme/series.hpp"

namespace jetscheme {

/// Affine variety with a distinguished point, checked on construction.
struct VarietySpec {
    Ring ambient;
    std::vector<Polynomial> equations;
    std::vector<Rational> point;
    int dim = 0;

    /// Validates that the point lies on every equation and that the declared dimension (if any)
    /// matches the Groebner dimension. The point defaults to the origin.
    static VarietySpec make(const Ring& ambient, std::vector<Polynomial> equations,
                            std::optional<std::vector<Rational>> point = std::nullopt,
                            std::optional<int> declared_dim = std::nullopt) {
        VarietySpec v;
        v.ambient = ambient;
        for (auto& f : equations) {
            if (f.ring() != ambient) throw RingMismatch();
            if (f.is_zero()) throw InputError("zero defining polynomial");
            v.equations.push_back(std::move(f));
        }
        v.point = point.value_or(std::vector<Rational>(ambient.nvars(), Rational(0)));
        if (v.point.size() != ambient.nvars()) throw InputError("point has wrong number of coordinates");
        for (auto& c : v.point) c = ambient.reduce(c);
        for (const auto& f : v.equations)
            if (!f.evaluate(v.point).is_zero()) throw InputError("point does not lie on " + f.str());
        v.dim = dimension(v.ideal());
        if (declared_dim && *declared_dim != v.dim)
            throw InputError("declared dimension " + std::to_string(*declared_dim) + " but the ideal has dimension " +
                             std::to_string(v.dim));
        return v;
    }

    [[nodiscard]] Ideal ideal() const { return Ideal(ambient, equations); }
    [[nodiscard]] std::size_t nvars() const { return ambient.nvars(); }
    [[nodiscard]] int codim() const { return static_cast<int>(ambient.nvars()) - dim; }
    [[nodiscard]] bool point_is_origin() const {
        return std::all_of(point.begin(), point.end(), [](const Rational& c) { return c.is_zero(); });
    }
};

/// Jet coordinates of order m over an ambient ring, optionally based at a point.
/// With a point, level 0 is substituted away and the working ring holds levels 1..m.
class JetContext {
public:
    JetContext(Ring ambient, int m, std::optional<std::vector<Rational>> point = std::nullopt)
        : ambient_(std::move(ambient)), m_(m), point_(std::move(point)) {
        if (m < 0) throw InputError("jet order must be nonnegative");
        if (point_ && point_->size() != ambient_.nvars()) throw InputError("point has wrong number of coordinates");
        jets_ = jetscheme::jet_ring(ambient_, 0, m);
        fiber_ = jetscheme::jet_ring(ambient_, 1, m);
    }
    JetContext(const VarietySpec& v, int m) : JetContext(v.ambient, m, v.point) {}

    [[nodiscard]] const Ring& ambient() const { return ambient_; }
    [[nodiscard]] int order() const { return m_; }
    [[nodiscard]] const Ring& jet_ring() const { return jets_; }
    [[nodiscard]] const Ring& fiber_ring() const { return fiber_; }
    [[nodiscard]] const std::optional<std::vector<Rational>>& point() const { return point_; }

    /// Ring in which produced ideals live: the fiber ring when based, else the full jet ring.
    [[nodiscard]] const Ring& working_ring() const { return point_ ? fiber_ : jets_; }

    /// Series g(v + sum_k v#k t^k) mod t^{m+1} with coefficients in the working ring.
    [[nodiscard]] PolySeries series(const Polynomial& g) const {
        if (g.ring() != ambient_) throw RingMismatch();
        const std::size_t n = ambient_.nvars();
        const Ring& r = working_ring();
        std::vector<PolySeries> images(n, PolySeries(m_ + 1, Polynomial(r)));
        for (std::size_t i = 0; i < n; ++i) {
            if (point_)
                images[i][0] = Polynomial::constant(r, (*point_)[i]);
            else
                images[i][0] = Polynomial::variable(r, i);
            for (int k = 1; k <= m_; ++k) images[i][k] = Polynomial::variable(r, (point_ ? k - 1 : k) * n + i);
        }
        return substitute_series(g, images, r, m_);
    }

private:
    Ring ambient_;
    int m_;
    std::optional<std::vector<Rational>> point_;
    Ring jets_;
    Ring fiber_;
};

/// Ideal of the m-th jet scheme: all f^(j), 0 <= j <= m.
inline Ideal jet_ideal(const VarietySpec& v, int m) {
    JetContext ctx(v.ambient, m);
    std::vector<Polynomial> gens;
    for (const auto& f : v.equations)
        for (auto& c : ctx.series(f)) gens.push_back(std::move(c));
    return Ideal(ctx.jet_ring(), std::move(gens));
}

/// Jets based at x: f^(j) with level 0 replaced by x, 1 <= j <= m, in the level 1..m ring.
inline Ideal fiber_ideal(const VarietySpec& v, int m, const std::vector<Rational>& x) {
    if (x.size() != v.nvars()) throw InputError("point has wrong number of coordinates");
    for (const auto& f : v.equations)
        if (!f.evaluate(x).is_zero()) throw InputError("point does not lie on the variety");
    JetContext ctx(v.ambient, m, x);
    std::vector<Polynomial> gens;
    for (const auto& f : v.equations) {
        auto s = ctx.series(f);
        for (int j = 1; j <= m; ++j) gens.push_back(std::move(s[j]));
    }
    return Ideal(ctx.fiber_ring(), std::move(gens));
}

inline Ideal fiber_ideal(const VarietySpec& v, int m) { return fiber_ideal(v, m, v.point); }

/// (m+1) dim X - dim S
inline int jet_codim(int dim_s, int m, int dim_x) {
    if (m < 0 || dim_x < 0 || dim_s < 0 || dim_s > (m + 1) * dim_x)
        throw InputError("jet codimension arguments out of range");
    return (m + 1) * dim_x - dim_s;
}

/// Highest jet level present in a ring of `name#level` variables.
inline int top_jet_level(const Ring& r) {
    int top = -1;
    for (const auto& n : r.names()) {
        auto pos = n.rfind('#');
        if (pos == std::string::npos) throw InputError("'" + n + "' is not a jet variable");
        top = std::max(top, std::stoi(n.substr(pos + 1)));
    }
    return top;
}

/// Closure of the image under truncation by one level: eliminate the top-level variables.
inline Ideal truncation_image(const Ideal& high) {
    const Ring& r = high.ring();
    const int top = top_jet_level(r);
    if (top < 1) throw InputError("nothing to truncate");
    std::vector<std::string> drop;
    const std::string suffix = "#" + std::to_string(top);
    for (const auto& n : r.names())
        if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0)
            drop.push_back(n);
    return eliminate(high, drop);
}

/// Truncated parametrization of an arc through the distinguished point.
struct WitnessArc {
    std::string label;
    JetPoint series;

    [[nodiscard]] int level() const {
        int l = std::numeric_limits<int>::max();
        for (const auto& s : series) l = std::min(l, static_cast<int>(s.size()) - 1);
        return series.empty() ? 0 : l;
    }
    /// Level 1..m coefficients in the fiber-ring variable order.
    [[nodiscard]] std::vector<Rational> fiber_coordinates(int m) const {
        if (m > level()) throw InputError("witness truncated below the requested level");
        std::vector<Rational> out;
        for (int k = 1; k <= m; ++k)
            for (const auto& s : series) out.push_back(s[k]);
        return out;
    }
};

namespace detail {

inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Polynomial det(a[0][0].ring());
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            sub.push_back(std::move(row));
        }
        Polynomial term = a[0][c] * determinant(sub);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    if (k <= n) detail::subsets(n, k, 0, cur, out);
    return out;
}

/// Nonzero k×k minors of the Jacobian matrix of `gens`.
inline std::vector<Polynomial> jacobian_minors(const std::vector<Polynomial>& gens, std::size_t k) {
    if (gens.empty()) throw InputError("no generators");
    const Ring& r = gens[0].ring();
    std::vector<std::vector<Polynomial>> jac;
    for (const auto& f : gens) {
        std::vector<Polynomial> row;
        for (std::size_t i = 0; i < r.nvars(); ++i) row.push_back(f.derivative(i));
        jac.push_back(std::move(row));
    }
    std::vector<Polynomial> out;
    if (k == 0) return {Polynomial::constant(r, Rational(1))};
    for (const auto& rows : index_subsets(gens.size(), k))
        for (const auto& cols : index_subsets(r.nvars(), k)) {
            std::vector<std::vector<Polynomial>> m;
            for (auto i : rows) {
                std::vector<Polynomial> row;
                for (auto j : cols) row.push_back(jac[i][j]);
                m.push_back(std::move(row));
            }
            Polynomial d = detail::determinant(m);
            if (!d.is_zero()) out.push_back(std::move(d));
        }
    return out;
}

/// Order of the Jacobian ideal along a witness arc.
inline int jacobian_order(const VarietySpec& v, const WitnessArc& arc) {
    const int L = arc.level();
    if (arc.series.size() != v.nvars()) throw InputError("witness has wrong number of coordinates");
    for (std::size_t i = 0; i < v.nvars(); ++i)
        if (arc.series[i][0] != v.point[i]) throw InputError("witness " + arc.label + " does not pass through the point");
    for (const auto& f : v.equations)
        if (order_along_jet(f, arc.series, L) != kInfiniteOrder)
            throw InputError("witness " + arc.label + " does not lie on the variety up to its truncation level");
    int best = kInfiniteOrder;
    for (const auto& minor : jacobian_minors(v.equations, static_cast<std::size_t>(v.codim())))
        best = std::min(best, order_along_jet(minor, arc.series, L));
    if (best >= L) throw InputError("witness " + arc.label + " truncation too short for its Jacobian order");
    return best;
}

/// Maximum Jacobian order over the witnesses.
inline int mu_invariant(const VarietySpec& v, const std::vector<WitnessArc>& witnesses) {
    if (witnesses.empty()) throw InputError("no witness arcs");
    int mu = 0;
    for (const auto& w : witnesses) mu = std::max(mu, jacobian_order(v, w));
    return mu;
}

/// Component closures at a given fiber level.
using ComponentsAtLevel = std::function<std::vector<Ideal>(int)>;

/// Smallest level >= mu at which the witness truncations are pairwise distinct and the
/// component closures are pairwise incomparable.
inline int nu_invariant(const VarietySpec& v, const std::vector<WitnessArc>& witnesses,
                        const ComponentsAtLevel& components_at_level, int cap = 12) {
    const int mu = mu_invariant(v, witnesses);
    for (int nu = mu; nu <= cap; ++nu) {
        bool distinct = true;
        for (std::size_t a = 0; a < witnesses.size() && distinct; ++a)
            for (std::size_t b = a + 1; b < witnesses.size() && distinct; ++b)
                if (truncate(witnesses[a].series, nu) == truncate(witnesses[b].series, nu)) distinct = false;
        if (!distinct) continue;
        auto comps = components_at_level(nu);
        bool incomparable = true;
        for (std::size_t a = 0; a < comps.size() && incomparable; ++a)
            for (std::size_t b = 0; b < comps.size() && incomparable; ++b)
                if (a != b && contains(comps[b], comps[a])) incomparable = false;
        if (incomparable) return nu;
    }
    throw ResourceError("no separating level found up to " + std::to_string(cap));
}

}  // namespace jetscheme
