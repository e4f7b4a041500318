#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "jetscheme/polynomial.hpp"

namespace jetscheme {

/// Monomial ideal given by the exponent vectors of its minimal generators over named variables.
class MonomialIdeal {
public:
    MonomialIdeal(std::vector<std::string> vars, std::vector<std::vector<int>> gens) : vars_(std::move(vars)) {
        if (gens.empty()) throw InputError("monomial ideal needs at least one generator");
        std::set<std::string> seen(vars_.begin(), vars_.end());
        if (seen.size() != vars_.size()) throw InputError("duplicate variable in monomial ideal");
        for (const auto& g : gens) {
            if (g.size() != vars_.size()) throw InputError("exponent vector has wrong length");
            if (std::any_of(g.begin(), g.end(), [](int e) { return e < 0; })) throw InputError("negative exponent");
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < gens.size() && !redundant; ++j)
                if (i != j && divides(gens[j], gens[i])) redundant = true;
            if (!redundant) gens_.push_back(gens[i]);
        }
    }

    /// Reads monomial generators (coefficients are ignored, must be nonzero).
    static MonomialIdeal from_polynomials(const std::vector<Polynomial>& polys) {
        if (polys.empty()) throw InputError("monomial ideal needs at least one generator");
        const Ring& r = polys[0].ring();
        std::vector<std::vector<int>> gens;
        for (const auto& p : polys) {
            if (p.ring() != r) throw RingMismatch();
            if (p.size() != 1) throw InputError("'" + p.str() + "' is not a monomial");
            std::vector<int> e(r.nvars());
            for (std::size_t i = 0; i < r.nvars(); ++i) e[i] = static_cast<int>(p.lm()[i]);
            gens.push_back(std::move(e));
        }
        return MonomialIdeal(r.names(), std::move(gens));
    }

    /// (v_1, ..., v_k)^d
    static MonomialIdeal maximal_power(std::vector<std::string> vars, int d) {
        std::vector<std::vector<int>> gens;
        std::vector<int> cur(vars.size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i + 1 == vars.size()) {
                cur[i] = left;
                gens.push_back(cur);
                return;
            }
            for (int e = left; e >= 0; --e) {
                cur[i] = e;
                rec(i + 1, left - e);
            }
        };
        if (vars.empty()) throw InputError("maximal ideal of an empty variable block");
        rec(0, d);
        return MonomialIdeal(std::move(vars), std::move(gens));
    }

    [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
    [[nodiscard]] const std::vector<std::vector<int>>& generators() const { return gens_; }
    [[nodiscard]] std::size_t nvars() const { return vars_.size(); }

    /// True if some generator is the constant monomial.
    [[nodiscard]] bool is_unit() const {
        return std::any_of(gens_.begin(), gens_.end(),
                           [](const auto& g) { return std::all_of(g.begin(), g.end(), [](int e) { return e == 0; }); });
    }

    /// All exponent vectors multiplied by c.
    [[nodiscard]] MonomialIdeal scaled(int c) const {
        auto g = gens_;
        for (auto& v : g)
            for (auto& e : v) e *= c;
        return MonomialIdeal(vars_, std::move(g));
    }

    /// a + b over the union of two disjoint variable blocks.
    [[nodiscard]] MonomialIdeal joined(const MonomialIdeal& other) const {
        for (const auto& v : other.vars_)
            if (std::find(vars_.begin(), vars_.end(), v) != vars_.end())
                throw InputError("variable blocks overlap at '" + v + "'");
        std::vector<std::string> vars = vars_;
        vars.insert(vars.end(), other.vars_.begin(), other.vars_.end());
        std::vector<std::vector<int>> gens;
        for (auto g : gens_) {
            g.resize(vars.size(), 0);
            gens.push_back(std::move(g));
        }
        for (const auto& h : other.gens_) {
            std::vector<int> g(vars_.size(), 0);
            g.insert(g.end(), h.begin(), h.end());
            gens.push_back(std::move(g));
        }
        return MonomialIdeal(std::move(vars), std::move(gens));
    }

    /// Generators as monomials in `ring`, matched by variable name.
    [[nodiscard]] std::vector<Polynomial> polynomials(const Ring& ring) const {
        std::vector<Polynomial> out;
        for (const auto& g : gens_) {
            Monomial m(ring.nvars());
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                auto idx = ring.index_of(vars_[i]);
                if (!idx) throw InputError("unknown variable '" + vars_[i] + "'");
                m.set(*idx, g[i]);
            }
            out.push_back(Polynomial::monomial(ring, m));
        }
        return out;
    }

    [[nodiscard]] std::string str() const {
        std::string out = "(";
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            if (k) out += ", ";
            std::string mono;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (!gens_[k][i]) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (gens_[k][i] > 1) mono += "^" + std::to_string(gens_[k][i]);
            }
            out += mono.empty() ? "1" : mono;
        }
        return out + ")";
    }

private:
    static bool divides(const std::vector<int>& a, const std::vector<int>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }

    std::vector<std::string> vars_;
    std::vector<std::vector<int>> gens_;
};

}  // namespace jetscheme
