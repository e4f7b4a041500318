#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "jetscheme/error.hpp"
#include "jetscheme/rational.hpp"

namespace jetscheme {

/// minimize c·x subject to A x = b, x >= 0.
struct LinearProgram {
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<Rational> c;

    [[nodiscard]] std::size_t rows() const { return A.size(); }
    [[nodiscard]] std::size_t cols() const { return c.size(); }

    void validate() const {
        if (b.size() != A.size()) throw InputError("linear program: right-hand side has wrong length");
        for (const auto& r : A)
            if (r.size() != c.size()) throw InputError("linear program: constraint row has wrong length");
    }

    [[nodiscard]] bool feasible(const std::vector<Rational>& x) const {
        if (x.size() != cols()) return false;
        for (const auto& v : x)
            if (v.sign() < 0) return false;
        for (std::size_t i = 0; i < rows(); ++i) {
            Rational s;
            for (std::size_t j = 0; j < cols(); ++j) s += A[i][j] * x[j];
            if (s != b[i]) return false;
        }
        return true;
    }

    [[nodiscard]] Rational objective(const std::vector<Rational>& x) const {
        Rational s;
        for (std::size_t j = 0; j < cols(); ++j) s += c[j] * x[j];
        return s;
    }
};

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
    std::vector<Rational> x;
    Rational value;
    int pivots = 0;
};

namespace detail {

/// Dense tableau simplex with Bland's rule. Column `cols` of each row is the right-hand side.
class Tableau {
public:
    Tableau(std::vector<std::vector<Rational>> t, std::vector<std::size_t> basis)
        : t_(std::move(t)), basis_(std::move(basis)) {}

    /// Minimize the cost vector over the current basis, restricted to columns below `allowed`.
    /// Returns false when unbounded.
    bool minimize(const std::vector<Rational>& cost, std::size_t allowed, int& pivots) {
        const std::size_t m = t_.size();
        for (;;) {
            // reduced costs: cost_j - c_B · column_j
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < allowed && !enter; ++j) {
                if (is_basic(j)) continue;
                Rational rc = cost[j];
                for (std::size_t i = 0; i < m; ++i) rc -= cost[basis_[i]] * t_[i][j];
                if (rc.sign() < 0) enter = j;
            }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t_[i][*enter].sign() <= 0) continue;
                Rational ratio = rhs(i) / t_[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
            ++pivots;
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        const Rational p = t_[r][col];
        for (auto& v : t_[r]) v /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || t_[i][col].is_zero()) continue;
            const Rational f = t_[i][col];
            for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[r][j];
        }
        basis_[r] = col;
    }

    [[nodiscard]] bool is_basic(std::size_t j) const {
        return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
    }
    [[nodiscard]] const Rational& rhs(std::size_t i) const { return t_[i].back(); }
    [[nodiscard]] std::vector<std::size_t>& basis() { return basis_; }
    [[nodiscard]] std::vector<std::vector<Rational>>& rows() { return t_; }

private:
    std::vector<std::vector<Rational>> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact two-phase simplex. Bland's rule guarantees termination.
inline LpSolution solve_lp(const LinearProgram& lp) {
    lp.validate();
    const std::size_t m = lp.rows(), n = lp.cols();
    // phase one: one artificial column per row, rows negated so that b >= 0
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + m + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.b[i].sign() < 0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -lp.A[i][j] : lp.A[i][j];
        t[i][n + i] = Rational(1);
        t[i][n + m] = flip ? -lp.b[i] : lp.b[i];
        basis[i] = n + i;
    }
    detail::Tableau tab(std::move(t), std::move(basis));
    LpSolution sol;
    std::vector<Rational> phase1(n + m);
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = Rational(1);
    tab.minimize(phase1, n + m, sol.pivots);
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis()[i] >= n && !tab.rhs(i).is_zero()) return sol;
    // drive artificial columns out of the basis; rows that cannot be pivoted are redundant
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis()[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!tab.rows()[i][j].is_zero() && !tab.is_basic(j)) {
                tab.pivot(i, j);
                ++sol.pivots;
                break;
            }
    }
    std::vector<Rational> cost(n + m);
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
    if (!tab.minimize(cost, n, sol.pivots)) {
        sol.status = LpSolution::Status::unbounded;
        return sol;
    }
    sol.status = LpSolution::Status::optimal;
    sol.x.assign(n, Rational());
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = tab.rhs(i);
    sol.value = lp.objective(sol.x);
    return sol;
}

/// Solve A x = b for a square system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[col]);
        std::swap(b[p], b[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Rational f = a[i][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

/// Reference solver: best basic feasible solution over all column subsets of size rows().
/// Assumes A has full row rank and the optimum is finite.
inline LpSolution solve_lp_by_vertices(const LinearProgram& lp, std::size_t max_subsets = 5'000'000) {
    lp.validate();
    const std::size_t m = lp.rows(), n = lp.cols();
    if (m > n) throw InputError("vertex enumeration needs at least as many columns as rows");
    LpSolution best;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    std::size_t visited = 0;
    for (;;) {
        if (++visited > max_subsets) throw ResourceError("vertex enumeration exceeds its subset cap");
        std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) a[i][k] = lp.A[i][pick[k]];
        if (auto xb = solve_square(a, lp.b)) {
            std::vector<Rational> x(n);
            bool ok = true;
            for (std::size_t k = 0; k < m; ++k) {
                if ((*xb)[k].sign() < 0) ok = false;
                x[pick[k]] = (*xb)[k];
            }
            if (ok) {
                Rational v = lp.objective(x);
                if (best.status != LpSolution::Status::optimal || v < best.value) {
                    best.status = LpSolution::Status::optimal;
                    best.value = v;
                    best.x = std::move(x);
                }
            }
        }
        // next combination in lexicographic order
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t k = i; k < m; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

}  // namespace jetscheme
