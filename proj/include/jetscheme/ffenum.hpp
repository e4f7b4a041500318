#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetscheme/jets.hpp"
#include "jetscheme/parallel.hpp"

namespace jetscheme {

/// Limits for exhaustive enumeration over F_q. Over-budget requests are refused.
struct EnumerationBudget {
    std::uint64_t q = 5;
    std::size_t max_vars = 32;
    std::uint64_t max_points = 100'000'000;
    unsigned shards = 1;

    static EnumerationBudget for_prime(std::uint64_t q) {
        EnumerationBudget b;
        b.q = q;
        if (const char* v = std::getenv("JETSCHEME_MAX_POINTS")) b.max_points = std::stoull(v);
        return b;
    }

    /// Throws unless q^nvars <= max_points and nvars <= max_vars.
    void check(std::size_t nvars) const {
        if (!PrimeField::is_prime(q)) throw InputError("q = " + std::to_string(q) + " is not prime");
        if (q >= (1ULL << 32)) throw InputError("q beyond word size");
        if (nvars > max_vars)
            throw ResourceError("enumeration over " + std::to_string(nvars) + " variables exceeds the cap of " +
                                std::to_string(max_vars));
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < nvars; ++i) {
            if (total > max_points / q)
                throw ResourceError("enumeration budget exceeded: " + std::to_string(q) + "^" + std::to_string(nvars) +
                                    " > " + std::to_string(max_points));
            total *= q;
        }
    }
};

/// Equations that must vanish and inequations that must not.
struct PointSystem {
    std::vector<Polynomial> equations;
    std::vector<Polynomial> inequations;
};

namespace detail {

struct ModTerm {
    std::uint64_t coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (enumeration slot, exponent)
};

struct ModPoly {
    std::vector<ModTerm> terms;
    std::size_t depth = 0;  // number of leading slots that must be assigned before it can be evaluated
    std::size_t system = 0;
    bool inequation = false;
};

}  // namespace detail

/// Lexicographic enumeration of F_q assignments with early rejection. Variables occurring in no
/// system and no tracked polynomial are left out and contribute a factor q^free.
class PointEnumerator {
public:
    PointEnumerator(const Ring& ring, const std::vector<PointSystem>& systems, const std::vector<Polynomial>& tracked,
                    const EnumerationBudget& budget)
        : q_(budget.q), nsystems_(systems.size()) {
        if (systems.size() > 63) throw InputError("too many systems for one enumeration");
        std::vector<bool> used(ring.nvars(), false);
        auto mark = [&](const Polynomial& p) {
            if (p.ring() != ring) throw RingMismatch();
            for (const auto& t : p.terms())
                for (std::size_t i = 0; i < ring.nvars(); ++i)
                    if (t.mono[i]) used[i] = true;
        };
        for (const auto& s : systems) {
            for (const auto& p : s.equations) mark(p);
            for (const auto& p : s.inequations) mark(p);
        }
        for (const auto& p : tracked) mark(p);
        slot_of_.assign(ring.nvars(), -1);
        for (std::size_t i = 0; i < ring.nvars(); ++i)
            if (used[i]) {
                slot_of_[i] = static_cast<int>(slots_.size());
                slots_.push_back(i);
            } else {
                ++free_;
            }
        budget.check(slots_.size());
        max_exp_.assign(slots_.size(), 1);
        for (std::size_t s = 0; s < systems.size(); ++s) {
            for (const auto& p : systems[s].equations) add(p, s, false);
            for (const auto& p : systems[s].inequations) add(p, s, true);
        }
        for (const auto& p : tracked) tracked_.push_back(compile(p, 0, false));
        by_depth_.assign(slots_.size() + 1, {});
        for (std::size_t k = 0; k < polys_.size(); ++k) by_depth_[polys_[k].depth].push_back(k);
    }

    [[nodiscard]] std::size_t enumerated_vars() const { return slots_.size(); }
    [[nodiscard]] std::size_t free_vars() const { return free_; }
    [[nodiscard]] std::uint64_t q() const { return q_; }
    /// Ring variable index of each enumeration slot.
    [[nodiscard]] const std::vector<std::size_t>& slots() const { return slots_; }

    /// Calls visit(mask, tracked values, slot values) for every assignment on which at least one
    /// system holds (or every assignment when there are no systems). The visitor returns false to stop.
    /// Only assignments whose first slot value is congruent to `shard` mod `shards` are visited.
    template <class Visit>
    bool run(Visit&& visit, unsigned shard = 0, unsigned shards = 1) const {
        State st;
        st.values.assign(slots_.size(), 0);
        st.powers.assign(slots_.size(), {});
        st.tracked.assign(tracked_.size(), 0);
        const std::uint64_t all = nsystems_ == 0 ? 0 : ((std::uint64_t{1} << nsystems_) - 1);
        if (!prune(st, 0, all, st.alive)) return true;
        return descend(st, 0, visit, shard, shards);
    }

private:
    struct State {
        std::vector<std::uint64_t> values;
        std::vector<std::vector<std::uint64_t>> powers;
        std::vector<std::uint64_t> tracked;
        std::uint64_t alive = 0;
    };

    void add(const Polynomial& p, std::size_t system, bool inequation) { polys_.push_back(compile(p, system, inequation)); }

    detail::ModPoly compile(const Polynomial& p, std::size_t system, bool inequation) {
        detail::ModPoly mp;
        mp.system = system;
        mp.inequation = inequation;
        for (const auto& t : p.terms()) {
            detail::ModTerm mt{t.coeff.mod(q_), {}};
            if (mt.coeff == 0) continue;
            for (std::size_t i = 0; i < slot_of_.size(); ++i)
                if (t.mono[i]) {
                    auto s = static_cast<std::uint32_t>(slot_of_[i]);
                    mt.factors.emplace_back(s, t.mono[i]);
                    max_exp_[s] = std::max<std::uint32_t>(max_exp_[s], t.mono[i]);
                    mp.depth = std::max<std::size_t>(mp.depth, s + 1);
                }
            mp.terms.push_back(std::move(mt));
        }
        return mp;
    }

    std::uint64_t eval(const detail::ModPoly& p, const State& st) const {
        std::uint64_t sum = 0;
        for (const auto& t : p.terms) {
            std::uint64_t v = t.coeff;
            for (const auto& [s, e] : t.factors) {
                v = v * st.powers[s][e] % q_;
                if (v == 0) break;
            }
            sum += v;
            if (sum >= q_) sum -= q_;
        }
        return sum;
    }

    /// Kill systems whose polynomials of this depth fail; report whether anything survives.
    bool prune(const State& st, std::size_t depth, std::uint64_t alive_in, std::uint64_t& alive_out) const {
        alive_out = alive_in;
        for (std::size_t k : by_depth_[depth]) {
            const auto& p = polys_[k];
            const std::uint64_t bit = std::uint64_t{1} << p.system;
            if (!(alive_out & bit)) continue;
            std::uint64_t v = eval(p, st);
            if (p.inequation ? v == 0 : v != 0) alive_out &= ~bit;
        }
        return nsystems_ == 0 || alive_out != 0;
    }

    template <class Visit>
    bool descend(State& st, std::size_t depth, Visit& visit, unsigned shard, unsigned shards) const {
        if (depth == slots_.size()) {
            for (std::size_t k = 0; k < tracked_.size(); ++k) st.tracked[k] = eval(tracked_[k], st);
            return visit(st.alive, st.tracked, st.values);
        }
        const std::uint64_t saved = st.alive;
        auto& pw = st.powers[depth];
        pw.assign(max_exp_[depth] + 1, 1);
        for (std::uint64_t v = 0; v < q_; ++v) {
            if (depth == 0 && shards > 1 && v % shards != shard) continue;
            st.values[depth] = v;
            for (std::uint32_t e = 1; e <= max_exp_[depth]; ++e) pw[e] = pw[e - 1] * v % q_;
            std::uint64_t next = 0;
            if (prune(st, depth + 1, saved, next)) {
                st.alive = next;
                if (!descend(st, depth + 1, visit, shard, shards)) return false;
            }
        }
        st.alive = saved;
        return true;
    }

    std::uint64_t q_;
    std::size_t nsystems_;
    std::size_t free_ = 0;
    std::vector<int> slot_of_;
    std::vector<std::size_t> slots_;
    std::vector<std::uint32_t> max_exp_;
    std::vector<detail::ModPoly> polys_;
    std::vector<detail::ModPoly> tracked_;
    std::vector<std::vector<std::size_t>> by_depth_;
};

/// Number of assignments per alive-system mask, summed over shards. Free variables not included.
inline std::map<std::uint64_t, std::uint64_t> mask_histogram(const PointEnumerator& e, unsigned shards = 1) {
    const unsigned n = std::max(1U, shards);
    auto parts = parallel_map(n, n, [&](std::size_t s) {
        std::map<std::uint64_t, std::uint64_t> h;
        e.run(
            [&](std::uint64_t mask, const auto&, const auto&) {
                ++h[mask];
                return true;
            },
            static_cast<unsigned>(s), n);
        return h;
    });
    std::map<std::uint64_t, std::uint64_t> out;
    for (const auto& h : parts)
        for (const auto& [k, v] : h) out[k] += v;
    return out;
}

inline Integer power_of(std::uint64_t q, std::size_t e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

/// |V(gens)(F_q)| in the ring of the generators.
inline Integer count_points(const Ring& ring, const std::vector<Polynomial>& gens, const EnumerationBudget& budget) {
    PointEnumerator e(ring, {PointSystem{gens, {}}}, {}, budget);
    std::uint64_t n = 0;
    for (const auto& [mask, c] : mask_histogram(e, budget.shards)) n += c;
    return Integer(static_cast<unsigned long>(n)) * power_of(budget.q, e.free_vars());
}

/// Point count with order-profile buckets; the bucket key holds ord of each target (kInfiniteOrder for > m).
struct StratifiedCount {
    Integer total;
    std::map<std::vector<int>, Integer> buckets;
};

/// F_q points of the fiber over x at order m, bucketed by the orders of `targets` along each jet.
inline StratifiedCount count_fiber_points(const VarietySpec& v, int m, const std::vector<Rational>& x,
                                          const EnumerationBudget& budget,
                                          const std::vector<Polynomial>& targets = {}) {
    Ideal fiber = fiber_ideal(v, m, x);
    JetContext ctx(v.ambient, m, x);
    std::vector<Polynomial> tracked;
    for (const auto& t : targets)
        for (auto& c : ctx.series(t)) tracked.push_back(std::move(c));
    PointEnumerator e(fiber.ring(), {PointSystem{fiber.generators(), {}}}, tracked, budget);
    const unsigned n = std::max(1U, budget.shards);
    auto parts = parallel_map(n, n, [&](std::size_t s) {
        std::map<std::vector<int>, std::uint64_t> h;
        e.run(
            [&](std::uint64_t, const std::vector<std::uint64_t>& vals, const auto&) {
                std::vector<int> key;
                for (std::size_t t = 0; t < targets.size(); ++t) {
                    int ord = kInfiniteOrder;
                    for (int j = 0; j <= m; ++j)
                        if (vals[t * (m + 1) + j] != 0) {
                            ord = j;
                            break;
                        }
                    key.push_back(ord);
                }
                ++h[key];
                return true;
            },
            static_cast<unsigned>(s), n);
        return h;
    });
    StratifiedCount out;
    const Integer scale = power_of(budget.q, e.free_vars());
    for (const auto& h : parts)
        for (const auto& [k, c] : h) {
            Integer add = Integer(static_cast<unsigned long>(c)) * scale;
            out.buckets[k] += add;
            out.total += add;
        }
    return out;
}

inline StratifiedCount count_fiber_points(const VarietySpec& v, int m, const EnumerationBudget& budget,
                                          const std::vector<Polynomial>& targets = {}) {
    return count_fiber_points(v, m, v.point, budget, targets);
}

struct DimEstimate {
    int estimate = 0;
    double exponent = 0;  // log(N2/N1) / log(q2/q1) before rounding
    double ratio = 0;     // N2/N1
    std::uint64_t q1 = 0, q2 = 0;
};

/// Dimension read off from point counts at the smallest and largest prime.
inline DimEstimate dim_estimate(const std::map<std::uint64_t, Integer>& counts) {
    if (counts.size() < 2) throw InputError("dimension estimate needs counts at two primes");
    auto lo = counts.begin();
    auto hi = std::prev(counts.end());
    if (lo->second == 0 || hi->second == 0) throw InputError("dimension estimate needs nonzero counts");
    DimEstimate d;
    d.q1 = lo->first;
    d.q2 = hi->first;
    d.ratio = hi->second.get_d() / lo->second.get_d();
    d.exponent = std::log(d.ratio) / std::log(static_cast<double>(d.q2) / static_cast<double>(d.q1));
    d.estimate = static_cast<int>(std::lround(d.exponent));
    return d;
}

struct ConeCheck {
    Integer fiber_count;  // |fiber over the vertex at order m|
    Integer base_count;   // |X_{m-r}|
    Integer factor;       // q^{N(r-1)}
    bool equal = false;
};

/// Compare the vertex fiber at order m with X_{m-r} times an affine space of dimension N(r-1).
inline ConeCheck cone_product_check(const VarietySpec& cone, int r, int m, const EnumerationBudget& budget) {
    if (m < r) throw InputError("cone check needs m >= r");
    const auto N = cone.nvars();
    ConeCheck c;
    c.fiber_count = count_fiber_points(cone, m, budget).total;
    Ideal base = jet_ideal(cone, m - r);
    c.base_count = count_points(base.ring(), base.generators(), budget);
    c.factor = power_of(budget.q, N * static_cast<std::size_t>(r - 1));
    c.equal = c.fiber_count == c.base_count * c.factor;
    return c;
}

/// Exhaustive comparison of a fiber with the union of candidate closures over F_q.
struct CoverOracle {
    std::uint64_t q = 0;
    Integer fiber_points;
    Integer union_points;
    std::vector<Integer> own_points;  // points lying on exactly this candidate
    bool union_equals_fiber = false;
    bool each_owns_a_point = false;
};

/// Integer-coefficient model of a generator list, used for reduction mod q.
inline std::vector<Polynomial> integral_model(const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> out;
    for (const auto& g : gens) out.push_back(g.primitive());
    return out;
}

inline CoverOracle cover_oracle(const Ideal& fiber, const std::vector<Ideal>& closures, const EnumerationBudget& budget) {
    std::vector<PointSystem> systems{{integral_model(fiber.generators()), {}}};
    for (const auto& c : closures) {
        if (c.ring() != fiber.ring()) throw RingMismatch();
        systems.push_back({integral_model(c.generators()), {}});
    }
    PointEnumerator e(fiber.ring(), systems, {}, budget);
    const Integer scale = power_of(budget.q, e.free_vars());
    CoverOracle out;
    out.q = budget.q;
    out.own_points.assign(closures.size(), Integer(0));
    bool equal = true;
    for (const auto& [mask, c] : mask_histogram(e, budget.shards)) {
        Integer n = Integer(static_cast<unsigned long>(c)) * scale;
        const bool in_fiber = mask & 1U;
        const std::uint64_t cands = mask >> 1U;
        if (in_fiber) out.fiber_points += n;
        if (cands) out.union_points += n;
        if (in_fiber != (cands != 0)) equal = false;
        if (cands && (cands & (cands - 1)) == 0) {
            std::size_t i = 0;
            while (!((cands >> i) & 1U)) ++i;
            out.own_points[i] += n;
        }
    }
    out.union_equals_fiber = equal;
    out.each_owns_a_point =
        std::all_of(out.own_points.begin(), out.own_points.end(), [](const Integer& n) { return n > 0; });
    return out;
}

/// Some F_q point where every equation vanishes and no inequation does, as values per ring variable
/// (free variables set to 0).
inline std::optional<std::vector<std::uint64_t>> find_point(const Ring& ring, const PointSystem& system,
                                                            const EnumerationBudget& budget) {
    PointSystem s{integral_model(system.equations), integral_model(system.inequations)};
    PointEnumerator e(ring, {s}, {}, budget);
    std::optional<std::vector<std::uint64_t>> found;
    e.run([&](std::uint64_t, const auto&, const std::vector<std::uint64_t>& vals) {
        std::vector<std::uint64_t> pt(ring.nvars(), 0);
        for (std::size_t k = 0; k < vals.size(); ++k) pt[e.slots()[k]] = vals[k];
        found = std::move(pt);
        return false;
    });
    return found;
}

}  // namespace jetscheme
