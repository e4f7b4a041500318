#pragma once

// Brute-force finite-field helpers for test oracles. Deliberately independent of the
// Groebner engine and of the ffenum module.

#include <cstdint>
#include <random>
#include <vector>

#include "jetscheme/polynomial.hpp"

namespace jetscheme::testing {

inline std::uint64_t eval_mod(const Polynomial& f, const std::vector<std::uint64_t>& pt, std::uint64_t p) {
    std::uint64_t sum = 0;
    for (const auto& t : f.terms()) {
        std::uint64_t v = t.coeff.mod(p);
        for (std::size_t i = 0; i < pt.size(); ++i)
            for (unsigned e = 0; e < t.mono[i]; ++e) v = v * pt[i] % p;
        sum = (sum + v) % p;
    }
    return sum;
}

/// All F_p points of V(gens) in nvars variables.
inline std::vector<std::vector<std::uint64_t>> variety_points(const std::vector<Polynomial>& gens, std::size_t nvars,
                                                              std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> pt(nvars, 0);
    for (;;) {
        bool ok = true;
        for (const auto& g : gens)
            if (eval_mod(g, pt, p) != 0) {
                ok = false;
                break;
            }
        if (ok) out.push_back(pt);
        std::size_t i = 0;
        while (i < nvars && ++pt[i] == p) pt[i++] = 0;
        if (i == nvars) break;
    }
    return out;
}

/// Random polynomial with small integer coefficients.
inline Polynomial random_poly(const Ring& r, std::mt19937_64& rng, int max_terms = 4, int max_deg = 3,
                              int coeff_range = 5) {
    std::vector<Term> terms;
    int nt = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_terms));
    for (int k = 0; k < nt; ++k) {
        Monomial m(r.nvars());
        int budget = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
        for (int d = 0; d < budget && r.nvars() > 0; ++d) {
            std::size_t v = rng() % r.nvars();
            m.set(v, m[v] + 1);
        }
        long c = static_cast<long>(rng() % static_cast<unsigned>(2 * coeff_range + 1)) - coeff_range;
        if (c == 0) c = 1;
        terms.push_back({m, Rational(c)});
    }
    return Polynomial(r, std::move(terms));
}

}  // namespace jetscheme::testing
