#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetscheme/error.hpp"
#include "jetscheme/rational.hpp"
#include "jetscheme/ring.hpp"

namespace jetscheme {

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Sparse polynomial; terms are kept sorted by decreasing monomial in the ring order,
/// with no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
    Polynomial(Ring ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { canonicalize(); }

    static Polynomial constant(const Ring& ring, const Rational& c) {
        Polynomial p(ring);
        Rational r = ring.reduce(c);
        if (!r.is_zero()) p.terms_.push_back({Monomial(ring.nvars()), r});
        return p;
    }
    static Polynomial variable(const Ring& ring, std::size_t i) {
        if (i >= ring.nvars()) throw InputError("variable index out of range");
        Polynomial p(ring);
        p.terms_.push_back({Monomial::variable(ring.nvars(), i), Rational(1)});
        return p;
    }
    static Polynomial variable(const Ring& ring, std::string_view name) {
        auto i = ring.index_of(name);
        if (!i) throw InputError("unknown variable '" + std::string(name) + "'");
        return variable(ring, *i);
    }
    static Polynomial monomial(const Ring& ring, const Monomial& m, const Rational& c = Rational(1)) {
        Polynomial p(ring);
        Rational r = ring.reduce(c);
        if (!r.is_zero()) p.terms_.push_back({m, r});
        return p;
    }

    [[nodiscard]] const Ring& ring() const { return ring_; }
    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    [[nodiscard]] bool is_nonzero_constant() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }

    [[nodiscard]] const Monomial& lm() const { return lead().mono; }
    [[nodiscard]] const Rational& lc() const { return lead().coeff; }

    /// Coefficient of the constant term.
    [[nodiscard]] Rational constant_term() const {
        if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
        return Rational(0);
    }

    [[nodiscard]] Rational coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return Rational(0);
    }

    [[nodiscard]] std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    /// Smallest total degree of a term; the order of vanishing at the origin.
    [[nodiscard]] std::uint32_t low_degree() const {
        if (terms_.empty()) throw InputError("low degree of the zero polynomial");
        std::uint32_t d = terms_.front().mono.degree();
        for (const auto& t : terms_) d = std::min(d, t.mono.degree());
        return d;
    }

    /// True when variable i occurs in some term.
    [[nodiscard]] bool involves(std::size_t i) const {
        return std::any_of(terms_.begin(), terms_.end(), [i](const Term& t) { return t.mono[i] != 0; });
    }

    [[nodiscard]] std::vector<bool> support() const {
        std::vector<bool> s(ring_.nvars(), false);
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < s.size(); ++i)
                if (t.mono[i] != 0) s[i] = true;
        return s;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = add_scaled(o, Rational(1)); }
    Polynomial& operator-=(const Polynomial& o) { return *this = add_scaled(o, Rational(-1)); }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.add_scaled(b, Rational(1)); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.add_scaled(b, Rational(-1)); }
    friend Polynomial operator-(const Polynomial& a) { return a.scaled(Rational(-1)); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
        std::vector<Term> out;
        out.reserve(a.size() * b.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
        return Polynomial(a.ring_, std::move(out));
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }
    friend Polynomial operator*(const Polynomial& p, const Rational& c) { return p.scaled(c); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.ring_ != b.ring_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    [[nodiscard]] Polynomial scaled(const Rational& c) const {
        Rational r = ring_.reduce(c);
        if (r.is_zero()) return Polynomial(ring_);
        Polynomial p(ring_);
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({t.mono, ring_.reduce(t.coeff * r)});
        return p;
    }

    /// c * m * this
    [[nodiscard]] Polynomial mul_term(const Monomial& m, const Rational& c) const {
        Rational r = ring_.reduce(c);
        if (r.is_zero()) return Polynomial(ring_);
        Polynomial p(ring_);
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({t.mono * m, ring_.reduce(t.coeff * r)});
        return p;
    }

    /// this + c * o, by merging sorted term lists.
    [[nodiscard]] Polynomial add_scaled(const Polynomial& o, const Rational& c) const {
        check_ring(o);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin();
        auto j = o.terms_.begin();
        while (i != terms_.end() || j != o.terms_.end()) {
            int cmp;
            if (i == terms_.end()) cmp = -1;
            else if (j == o.terms_.end()) cmp = 1;
            else cmp = ring_.compare(i->mono, j->mono);
            if (cmp > 0) {
                r.terms_.push_back(*i++);
            } else if (cmp < 0) {
                Rational v = ring_.reduce(j->coeff * c);
                if (!v.is_zero()) r.terms_.push_back({j->mono, v});
                ++j;
            } else {
                Rational v = ring_.reduce(i->coeff + j->coeff * c);
                if (!v.is_zero()) r.terms_.push_back({i->mono, v});
                ++i;
                ++j;
            }
        }
        return r;
    }

    /// a * this + b * m * g in a single merge; the reduction workhorse.
    [[nodiscard]] Polynomial combine(const Rational& a, const Rational& b, const Monomial& m, const Polynomial& g) const {
        check_ring(g);
        const bool a_one = a.is_one();
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + g.terms_.size());
        auto i = terms_.begin();
        auto j = g.terms_.begin();
        Monomial gm;
        bool gm_valid = false;
        while (i != terms_.end() || j != g.terms_.end()) {
            if (j != g.terms_.end() && !gm_valid) {
                gm = j->mono * m;
                gm_valid = true;
            }
            int cmp;
            if (i == terms_.end()) cmp = -1;
            else if (j == g.terms_.end()) cmp = 1;
            else cmp = ring_.compare(i->mono, gm);
            if (cmp > 0) {
                if (a_one) r.terms_.push_back(*i);
                else r.terms_.push_back({i->mono, ring_.reduce(i->coeff * a)});
                ++i;
            } else if (cmp < 0) {
                Rational v = ring_.reduce(j->coeff * b);
                if (!v.is_zero()) r.terms_.push_back({gm, std::move(v)});
                ++j;
                gm_valid = false;
            } else {
                Rational v = a_one ? i->coeff + j->coeff * b : i->coeff * a + j->coeff * b;
                v = ring_.reduce(v);
                if (!v.is_zero()) r.terms_.push_back({gm, std::move(v)});
                ++i;
                ++j;
                gm_valid = false;
            }
        }
        return r;
    }

    [[nodiscard]] Polynomial pow(unsigned e) const {
        Polynomial result = constant(ring_, Rational(1));
        Polynomial base = *this;
        while (e) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e) base = base * base;
        }
        return result;
    }

    [[nodiscard]] Polynomial derivative(std::size_t var) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (t.mono[var] == 0) continue;
            Monomial m = t.mono;
            m.set(var, t.mono[var] - 1);
            out.push_back({m, t.coeff * Rational(static_cast<long>(t.mono[var]))});
        }
        return Polynomial(ring_, std::move(out));
    }

    /// Evaluate at a point with rational coordinates.
    [[nodiscard]] Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != ring_.nvars()) throw InputError("point dimension mismatch");
        Rational sum(0);
        for (const auto& t : terms_) {
            Rational v = t.coeff;
            for (std::size_t i = 0; i < point.size(); ++i)
                if (t.mono[i]) v *= jetscheme::pow(point[i], t.mono[i]);
            sum += v;
        }
        return ring_.reduce(sum);
    }

    /// Ring homomorphism sending variable i to images[i] (all images in one target ring).
    [[nodiscard]] Polynomial substitute(const Ring& target, std::span<const Polynomial> images) const {
        if (images.size() != ring_.nvars()) throw InputError("substitution arity mismatch");
        std::vector<std::vector<Polynomial>> powers(images.size());
        auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
            auto& cache = powers[i];
            if (cache.empty()) cache.push_back(constant(target, Rational(1)));
            while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
            return cache[e];
        };
        Polynomial sum(target);
        for (const auto& t : terms_) {
            Polynomial v = constant(target, t.coeff);
            for (std::size_t i = 0; i < images.size() && !v.is_zero(); ++i)
                if (t.mono[i]) v = v * power(i, t.mono[i]);
            sum += v;
        }
        return sum;
    }

    /// Same polynomial viewed in `target`, matching variables by name.
    [[nodiscard]] Polynomial in_ring(const Ring& target) const {
        if (target == ring_) return *this;
        std::vector<std::size_t> map(ring_.nvars());
        for (std::size_t i = 0; i < ring_.nvars(); ++i) {
            auto j = target.index_of(ring_.name(i));
            if (!j) {
                if (involves(i)) throw InputError("variable '" + ring_.name(i) + "' missing from target ring");
                map[i] = kMaxVars;
                continue;
            }
            map[i] = *j;
        }
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m(target.nvars());
            for (std::size_t i = 0; i < ring_.nvars(); ++i)
                if (t.mono[i]) m.set(map[i], t.mono[i]);
            out.push_back({m, t.coeff});
        }
        return Polynomial(target, std::move(out));
    }

    /// Scale to leading coefficient 1 (the zero polynomial is returned unchanged).
    [[nodiscard]] Polynomial monic() const {
        if (is_zero() || lc().is_one()) return *this;
        return scaled(lc().inverse());
    }

    /// Over Q: scale to coprime integer coefficients with positive leading coefficient.
    /// Over F_p: same as monic().
    [[nodiscard]] Polynomial primitive() const {
        if (is_zero()) return *this;
        if (!ring_.is_rational()) return monic();
        Integer l = 1, g = 0;
        for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.raw().get_den_mpz_t());
        for (const auto& t : terms_) {
            Integer v = t.coeff.num() * (l / t.coeff.den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        Rational s(l, g);
        if (lc().sign() < 0) s = -s;
        if (s.is_one()) return *this;
        return scaled(s);
    }

    [[nodiscard]] std::string str() const;

    // Raw term access for the reduction engine. Callers keep the term list sorted.
    void drop_lead() { terms_.erase(terms_.begin()); }
    void append_lower_term(Term t) { terms_.push_back(std::move(t)); }

private:
    [[nodiscard]] const Term& lead() const {
        if (terms_.empty()) throw Error("leading term of the zero polynomial");
        return terms_.front();
    }

    void check_ring(const Polynomial& o) const {
        if (ring_ != o.ring_) throw RingMismatch();
    }

    void canonicalize() {
        for (auto& t : terms_) {
            if (t.mono.size() != ring_.nvars()) throw InputError("exponent vector length does not match ring");
            t.coeff = ring_.reduce(t.coeff);
        }
        std::sort(terms_.begin(), terms_.end(),
                  [this](const Term& a, const Term& b) { return ring_.compare(a.mono, b.mono) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coeff = ring_.reduce(out.back().coeff + t.coeff);
            } else {
                if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        terms_ = std::move(out);
    }

    Ring ring_;
    std::vector<Term> terms_;
};

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < ring_.nvars(); ++i) {
            if (t.mono[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_.name(i);
            if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
        }
        if (mono.empty()) {
            out += c.str();
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += c.str() + "*" + mono;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace jetscheme
