#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "jetscheme/error.hpp"
#include "jetscheme/polynomial.hpp"

namespace jetscheme {

/// Hard caps for one Groebner computation. Exceeding any of them raises ResourceError.
struct GroebnerLimits {
    std::size_t max_pairs = 500000;
    std::uint32_t max_degree = 200;
    double max_seconds = 1800.0;

    /// Defaults, overridable through JETSCHEME_MAX_PAIRS / _MAX_DEGREE / _MAX_SECONDS.
    static GroebnerLimits from_env() {
        GroebnerLimits l;
        if (const char* v = std::getenv("JETSCHEME_MAX_PAIRS")) l.max_pairs = std::stoull(v);
        if (const char* v = std::getenv("JETSCHEME_MAX_DEGREE")) l.max_degree = static_cast<std::uint32_t>(std::stoul(v));
        if (const char* v = std::getenv("JETSCHEME_MAX_SECONDS")) l.max_seconds = std::stod(v);
        return l;
    }
};

inline GroebnerLimits& default_limits() {
    static GroebnerLimits limits = GroebnerLimits::from_env();
    return limits;
}

namespace detail {

/// One reduction step target: index into the basis whose leading monomial divides m.
inline const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& reducers) {
    for (const Polynomial* g : reducers)
        if (g->lm().divides(m)) return g;
    return nullptr;
}

/// Full reduction of f by `reducers`. Over Q the result is only defined up to a nonzero
/// scalar (fraction-free steps), and is returned primitive; over F_p it is monic.
inline Polynomial reduce_scaled(Polynomial h, const std::vector<const Polynomial*>& reducers) {
    const Ring& ring = h.ring();
    const bool rational = ring.is_rational();
    Polynomial rem(ring);
    int steps = 0;
    while (!h.is_zero()) {
        const Polynomial* g = find_reducer(h.lm(), reducers);
        if (!g) {
            rem.append_lower_term(h.terms().front());
            h.drop_lead();
            continue;
        }
        Monomial t = h.lm() / g->lm();
        if (rational) {
            Integer a = h.lc().num();
            Integer b = g->lc().num();
            Integer d;
            mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Rational sh(Integer(b / d));
            Rational sg(Integer(-(a / d)));
            if (sh.sign() < 0) {
                sh = -sh;
                sg = -sg;
            }
            h = h.combine(sh, sg, t, *g);
            if (!sh.is_one()) rem = rem.scaled(sh);
            if (++steps % 16 == 0 && !h.is_zero()) {
                // keep the working polynomial primitive together with the remainder
                Integer c = 0;
                for (const auto& term : h.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), term.coeff.raw().get_num_mpz_t());
                for (const auto& term : rem.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), term.coeff.raw().get_num_mpz_t());
                if (c > 1) {
                    Rational inv(Integer(1), c);
                    h = h.scaled(inv);
                    rem = rem.scaled(inv);
                }
            }
        } else {
            h = h.combine(Rational(1), -(h.lc() / g->lc()), t, *g);
        }
    }
    return rem.primitive();
}

/// Exact remainder of f modulo a monic Groebner basis.
inline Polynomial reduce_exact(Polynomial h, const std::vector<Polynomial>& basis) {
    const Ring& ring = h.ring();
    Polynomial rem(ring);
    while (!h.is_zero()) {
        const Polynomial* g = nullptr;
        for (const auto& b : basis)
            if (b.lm().divides(h.lm())) {
                g = &b;
                break;
            }
        if (!g) {
            rem.append_lower_term(h.terms().front());
            h.drop_lead();
            continue;
        }
        h = h.combine(Rational(1), -(h.lc() / g->lc()), h.lm() / g->lm(), *g);
    }
    return rem;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    Monomial l = Monomial::lcm(f.lm(), g.lm());
    Polynomial a = f.mul_term(l / f.lm(), g.lc());
    return a.combine(Rational(1), -f.lc(), l / g.lm(), g);
}

struct CriticalPair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
};

class Buchberger {
public:
    Buchberger(const Ring& ring, const GroebnerLimits& limits)
        : ring_(ring), limits_(limits), start_(std::chrono::steady_clock::now()) {}

    std::vector<Polynomial> run(const std::vector<Polynomial>& gens) {
        std::vector<Polynomial> input;
        for (const auto& g : gens) {
            if (g.ring() != ring_) throw RingMismatch();
            if (g.is_zero()) continue;
            if (g.total_degree() > limits_.max_degree) throw ResourceError("computation too large: degree cap exceeded");
            input.push_back(g.primitive());
        }
        std::sort(input.begin(), input.end(),
                  [this](const Polynomial& a, const Polynomial& b) { return ring_.compare(a.lm(), b.lm()) < 0; });
        for (auto& f : input) {
            Polynomial h = reduce_scaled(f, active_polys());
            if (h.is_zero()) continue;
            if (h.is_nonzero_constant()) return {Polynomial::constant(ring_, Rational(1))};
            insert(std::move(h), sugar_of(f));
        }
        while (!pairs_.empty()) {
            check_limits();
            CriticalPair p = pop_pair();
            ++processed_;
            if (p.lcm.degree() > limits_.max_degree) throw ResourceError("computation too large: degree cap exceeded");
            Polynomial s = s_polynomial(polys_[p.i], polys_[p.j]);
            Polynomial h = reduce_scaled(std::move(s), active_polys());
            if (h.is_zero()) continue;
            if (h.is_nonzero_constant()) return {Polynomial::constant(ring_, Rational(1))};
            if (h.total_degree() > limits_.max_degree) throw ResourceError("computation too large: degree cap exceeded");
            insert(std::move(h), p.sugar);
        }
        return interreduce();
    }

private:
    static std::uint32_t sugar_of(const Polynomial& f) { return f.total_degree(); }

    std::vector<const Polynomial*> active_polys() const {
        std::vector<const Polynomial*> out;
        for (std::size_t k = 0; k < polys_.size(); ++k)
            if (active_[k]) out.push_back(&polys_[k]);
        return out;
    }

    void check_limits() const {
        if (processed_ >= limits_.max_pairs) throw ResourceError("computation too large: pair cap exceeded");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (secs > limits_.max_seconds) throw ResourceError("computation too large: time cap exceeded");
    }

    CriticalPair pop_pair() {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k) {
            const auto& a = pairs_[k];
            const auto& b = pairs_[best];
            if (a.sugar < b.sugar || (a.sugar == b.sugar && ring_.compare(a.lcm, b.lcm) < 0)) best = k;
        }
        CriticalPair p = pairs_[best];
        pairs_[best] = pairs_.back();
        pairs_.pop_back();
        return p;
    }

    /// Gebauer-Moeller update: product and chain criteria.
    void insert(Polynomial h, std::uint32_t sugar) {
        const std::size_t hi = polys_.size();
        sugar = std::max(sugar, h.total_degree());
        polys_.push_back(std::move(h));
        sugars_.push_back(sugar);
        active_.push_back(true);
        const Polynomial& hp = polys_[hi];
        const Monomial& hm = hp.lm();

        struct Cand {
            std::size_t g;
            Monomial lcm;
            bool coprime;
            bool keep = true;
        };
        std::vector<Cand> cands;
        for (std::size_t g = 0; g < hi; ++g) {
            if (!active_[g]) continue;
            cands.push_back({g, Monomial::lcm(hm, polys_[g].lm()), hm.coprime(polys_[g].lm())});
        }
        // chain criterion among the new pairs: drop (h,g1) if some other (h,g2) has lcm dividing it
        for (std::size_t a = 0; a < cands.size(); ++a) {
            if (cands[a].coprime) continue;
            for (std::size_t b = 0; b < cands.size(); ++b) {
                if (a == b || !cands[b].keep) continue;
                if (cands[b].lcm.divides(cands[a].lcm)) {
                    cands[a].keep = false;
                    break;
                }
            }
        }
        // drop old pairs (g1,g2) whose lcm is a proper multiple in both directions
        std::vector<CriticalPair> kept;
        kept.reserve(pairs_.size());
        for (auto& p : pairs_) {
            if (hm.divides(p.lcm)) {
                Monomial l1 = Monomial::lcm(polys_[p.i].lm(), hm);
                Monomial l2 = Monomial::lcm(polys_[p.j].lm(), hm);
                if (!(l1 == p.lcm) && !(l2 == p.lcm)) continue;
            }
            kept.push_back(std::move(p));
        }
        pairs_ = std::move(kept);
        for (const auto& c : cands) {
            if (!c.keep || c.coprime) continue;
            const Polynomial& g = polys_[c.g];
            std::uint32_t s = std::max(sugar - hm.degree(), sugars_[c.g] - g.lm().degree()) + c.lcm.degree();
            pairs_.push_back({c.g, hi, c.lcm, s});
        }
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g] && hm.divides(polys_[g].lm())) active_[g] = false;
    }

    std::vector<Polynomial> interreduce() const {
        std::vector<Polynomial> basis;
        for (std::size_t k = 0; k < polys_.size(); ++k)
            if (active_[k]) basis.push_back(polys_[k].monic());
        std::sort(basis.begin(), basis.end(),
                  [this](const Polynomial& a, const Polynomial& b) { return ring_.compare(a.lm(), b.lm()) < 0; });
        // leading terms of a minimal basis are irreducible by the others; only tails change
        std::vector<Polynomial> out;
        out.reserve(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            std::vector<Polynomial> others;
            for (std::size_t l = 0; l < basis.size(); ++l)
                if (l != k) others.push_back(basis[l]);
            Polynomial tail = basis[k];
            Term lead = tail.terms().front();
            tail.drop_lead();
            out.push_back(Polynomial::monomial(ring_, lead.mono, lead.coeff) + reduce_exact(tail, others));
        }
        return out;
    }

    Ring ring_;
    GroebnerLimits limits_;
    std::chrono::steady_clock::time_point start_;
    std::vector<Polynomial> polys_;
    std::vector<std::uint32_t> sugars_;
    std::vector<bool> active_;
    std::vector<CriticalPair> pairs_;
    std::size_t processed_ = 0;
};

}  // namespace detail

/// Reduced Groebner basis (monic, sorted by increasing leading monomial) in the generators' ring order.
inline std::vector<Polynomial> groebner_basis(const Ring& ring, const std::vector<Polynomial>& gens,
                                              const GroebnerLimits& limits = default_limits()) {
    for (const auto& g : gens)
        if (g.ring() != ring) throw RingMismatch();
    return detail::Buchberger(ring, limits).run(gens);
}

/// True when every S-polynomial of `basis` reduces to zero.
inline bool satisfies_buchberger_criterion(const std::vector<Polynomial>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Polynomial s = detail::s_polynomial(basis[i], basis[j]);
            if (!detail::reduce_exact(s, basis).is_zero()) return false;
        }
    return true;
}

/// Ideal with a lazily computed, write-once reduced Groebner basis for the ring's order.
class Ideal {
public:
    Ideal() = default;
    Ideal(Ring ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens) {
            if (g.ring() != ring_) throw RingMismatch();
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }

    static Ideal unit(const Ring& ring) { return Ideal(ring, {Polynomial::constant(ring, Rational(1))}); }
    static Ideal zero(const Ring& ring) { return Ideal(ring, {}); }

    [[nodiscard]] const Ring& ring() const { return ring_; }
    [[nodiscard]] const std::vector<Polynomial>& generators() const { return gens_; }

    /// Cached reduced Groebner basis; generators are re-checked against it once at cache time.
    [[nodiscard]] const std::vector<Polynomial>& basis(const GroebnerLimits& limits = default_limits()) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (!cache_->basis) {
            auto b = groebner_basis(ring_, gens_, limits);
            for (const auto& g : gens_)
                if (!detail::reduce_exact(g, b).is_zero()) throw Error("internal error: basis does not contain a generator");
            cache_->basis = std::move(b);
        }
        return *cache_->basis;
    }

    [[nodiscard]] bool is_unit() const {
        const auto& b = basis();
        return b.size() == 1 && b[0].is_nonzero_constant();
    }
    [[nodiscard]] bool is_zero_ideal() const { return gens_.empty(); }

    [[nodiscard]] Polynomial normal_form(const Polynomial& f) const {
        if (f.ring() != ring_) throw RingMismatch();
        return detail::reduce_exact(f, basis());
    }
    [[nodiscard]] bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

    /// Same ideal with an extra generator list appended.
    [[nodiscard]] Ideal plus(const std::vector<Polynomial>& more) const {
        std::vector<Polynomial> g = gens_;
        g.insert(g.end(), more.begin(), more.end());
        return Ideal(ring_, std::move(g));
    }

    /// Generators as text, comma separated.
    [[nodiscard]] std::string str() const {
        if (gens_.empty()) return "(0)";
        std::string out = "(";
        for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + gens_[i].str();
        return out + ")";
    }

private:
    struct Cache {
        std::mutex mutex;
        std::optional<std::vector<Polynomial>> basis;
    };

    Ring ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reduced Groebner basis of I with respect to `order` (returned in the re-ordered ring).
inline std::vector<Polynomial> groebner_basis(const Ideal& I, const MonomialOrder& order) {
    if (order == I.ring().order()) return I.basis();
    Ring r = I.ring().with_order(order);
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(g.in_ring(r));
    return groebner_basis(r, gens);
}

inline Polynomial normal_form(const Polynomial& f, const Ideal& I) { return I.normal_form(f); }

/// J ⊆ I
inline bool contains(const Ideal& I, const Ideal& J) {
    if (I.ring() != J.ring()) throw RingMismatch();
    return std::all_of(J.generators().begin(), J.generators().end(), [&](const Polynomial& g) { return I.contains(g); });
}

/// Equality of ideals by mutual containment.
inline bool same_ideal(const Ideal& I, const Ideal& J) { return contains(I, J) && contains(J, I); }

/// I ∩ k[remaining variables], via a block order with the dropped variables first.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop) {
    const Ring& r = I.ring();
    std::vector<std::string> first, rest;
    for (const auto& d : drop) {
        if (!r.index_of(d)) throw InputError("cannot eliminate unknown variable '" + d + "'");
        if (std::find(first.begin(), first.end(), d) == first.end()) first.push_back(d);
    }
    for (const auto& n : r.names())
        if (std::find(first.begin(), first.end(), n) == first.end()) rest.push_back(n);
    Ring sub(rest, MonomialOrder::grevlex(), r.field());
    if (first.empty()) {
        std::vector<Polynomial> g;
        for (const auto& p : I.generators()) g.push_back(p.in_ring(sub));
        return Ideal(sub, std::move(g));
    }
    std::vector<std::string> names = first;
    names.insert(names.end(), rest.begin(), rest.end());
    std::vector<std::size_t> blocks{first.size()};
    if (!rest.empty()) blocks.push_back(rest.size());
    Ring big(names, MonomialOrder::block(blocks), r.field());
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(g.in_ring(big));
    auto basis = groebner_basis(big, gens);
    std::vector<Polynomial> kept;
    for (const auto& b : basis) {
        bool free = true;
        for (std::size_t i = 0; i < first.size() && free; ++i)
            if (b.involves(i)) free = false;
        if (free) kept.push_back(b.in_ring(sub));
    }
    return Ideal(sub, std::move(kept));
}

/// (I : g^∞) as the elimination of w from I + (w g - 1).
inline Ideal saturate(const Ideal& I, const Polynomial& g) {
    if (g.is_zero()) throw InputError("saturation by the zero polynomial");
    if (g.ring() != I.ring()) throw RingMismatch();
    const Ring& r = I.ring();
    if (g.is_nonzero_constant()) return I;
    std::string w = r.fresh_name("_w");
    std::vector<std::string> names{w};
    names.insert(names.end(), r.names().begin(), r.names().end());
    std::vector<std::size_t> blocks{1};
    if (r.nvars()) blocks.push_back(r.nvars());
    Ring big(names, MonomialOrder::block(blocks), r.field());
    std::vector<Polynomial> gens;
    for (const auto& f : I.generators()) gens.push_back(f.in_ring(big));
    Polynomial wv = Polynomial::variable(big, 0);
    gens.push_back(wv * g.in_ring(big) - Polynomial::constant(big, Rational(1)));
    auto basis = groebner_basis(big, gens);
    std::vector<Polynomial> kept;
    for (const auto& b : basis)
        if (!b.involves(0)) kept.push_back(b.in_ring(r));
    return Ideal(r, std::move(kept));
}

/// f vanishes on V(I): 1 ∈ I + (w f - 1).
inline bool radical_member(const Polynomial& f, const Ideal& I) {
    if (f.ring() != I.ring()) throw RingMismatch();
    if (f.is_zero()) return true;
    if (I.contains(f)) return true;
    const Ring& r = I.ring();
    std::vector<std::string> names = r.names();
    names.push_back(r.fresh_name("_w"));
    Ring big(names, MonomialOrder::grevlex(), r.field());
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(g.in_ring(big));
    Polynomial wv = Polynomial::variable(big, names.size() - 1);
    gens.push_back(wv * f.in_ring(big) - Polynomial::constant(big, Rational(1)));
    auto basis = groebner_basis(big, gens);
    return basis.size() == 1 && basis[0].is_nonzero_constant();
}

/// Krull dimension of V(I): largest set of variables containing the support of no leading monomial.
inline int dimension(const Ideal& I) {
    const auto& basis = I.basis();
    const std::size_t n = I.ring().nvars();
    if (basis.size() == 1 && basis[0].is_nonzero_constant()) return -1;
    std::vector<std::uint64_t> lms;
    for (const auto& b : basis) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (b.lm()[i]) mask |= (std::uint64_t{1} << i);
        lms.push_back(mask);
    }
    auto independent = [&](std::uint64_t set) {
        return std::none_of(lms.begin(), lms.end(), [set](std::uint64_t m) { return (m & ~set) == 0; });
    };
    int best = 0;
    std::function<void(std::size_t, std::uint64_t, int)> dfs = [&](std::size_t i, std::uint64_t set, int size) {
        if (size + static_cast<int>(n - i) <= best) return;
        if (i == n) {
            best = std::max(best, size);
            return;
        }
        std::uint64_t with = set | (std::uint64_t{1} << i);
        if (independent(with)) dfs(i + 1, with, size + 1);
        dfs(i + 1, set, size);
    };
    dfs(0, 0, 0);
    return best;
}

/// I ∩ J: eliminate w from w·I + (1 - w)·J.
inline Ideal intersect(const Ideal& I, const Ideal& J) {
    if (I.ring() != J.ring()) throw RingMismatch();
    const Ring& r = I.ring();
    std::string w = r.fresh_name("_w");
    std::vector<std::string> names{w};
    names.insert(names.end(), r.names().begin(), r.names().end());
    std::vector<std::size_t> blocks{1};
    if (r.nvars()) blocks.push_back(r.nvars());
    Ring big(names, MonomialOrder::block(blocks), r.field());
    Polynomial wv = Polynomial::variable(big, 0);
    Polynomial one_minus_w = Polynomial::constant(big, Rational(1)) - wv;
    std::vector<Polynomial> gens;
    for (const auto& f : I.generators()) gens.push_back(wv * f.in_ring(big));
    for (const auto& g : J.generators()) gens.push_back(one_minus_w * g.in_ring(big));
    auto basis = groebner_basis(big, gens);
    std::vector<Polynomial> kept;
    for (const auto& b : basis)
        if (!b.involves(0)) kept.push_back(b.in_ring(r));
    return Ideal(r, std::move(kept));
}

}  // namespace jetscheme
