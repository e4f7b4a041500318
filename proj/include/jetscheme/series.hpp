#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetscheme/polynomial.hpp"

namespace jetscheme {

/// Name of the level-k jet coordinate of `name` in serialized form.
inline std::string jet_name(const std::string& name, int level) { return name + "#" + std::to_string(level); }

/// Ring with coordinates v#k for every ambient variable v and lo <= k <= hi, level-major.
inline Ring jet_ring(const Ring& ambient, int lo, int hi) {
    std::vector<std::string> names;
    for (int k = lo; k <= hi; ++k)
        for (const auto& n : ambient.names()) names.push_back(jet_name(n, k));
    return Ring(std::move(names), MonomialOrder::grevlex(), ambient.field());
}

/// Truncated power series in t with polynomial coefficients: entry j is the coefficient of t^j.
using PolySeries = std::vector<Polynomial>;
/// Truncated power series with numeric coefficients.
using NumSeries = std::vector<Rational>;

namespace detail {

inline PolySeries series_mul(const PolySeries& a, const PolySeries& b, const Ring& r, int m) {
    PolySeries out(m + 1, Polynomial(r));
    for (int i = 0; i <= m; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline NumSeries series_mul(const NumSeries& a, const NumSeries& b, int m) {
    NumSeries out(m + 1, Rational(0));
    for (int i = 0; i <= m; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace detail

/// Substitute v_i -> images[i] (series in t over `target`) into f and truncate mod t^{m+1}.
inline PolySeries substitute_series(const Polynomial& f, const std::vector<PolySeries>& images, const Ring& target, int m) {
    if (images.size() != f.ring().nvars()) throw InputError("series substitution arity mismatch");
    std::vector<std::vector<PolySeries>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const PolySeries& {
        auto& cache = powers[i];
        if (cache.empty()) {
            PolySeries one(m + 1, Polynomial(target));
            one[0] = Polynomial::constant(target, Rational(1));
            cache.push_back(std::move(one));
        }
        while (cache.size() <= e) cache.push_back(detail::series_mul(cache.back(), images[i], target, m));
        return cache[e];
    };
    PolySeries sum(m + 1, Polynomial(target));
    for (const auto& t : f.terms()) {
        PolySeries v(m + 1, Polynomial(target));
        v[0] = Polynomial::constant(target, t.coeff);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.mono[i]) v = detail::series_mul(v, power(i, t.mono[i]), target, m);
        for (int j = 0; j <= m; ++j) sum[j] += v[j];
    }
    return sum;
}

inline NumSeries substitute_series(const Polynomial& f, const std::vector<NumSeries>& images, int m) {
    if (images.size() != f.ring().nvars()) throw InputError("series substitution arity mismatch");
    for (const auto& s : images)
        if (static_cast<int>(s.size()) < m + 1) throw InputError("missing jet coordinate");
    std::vector<std::vector<NumSeries>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const NumSeries& {
        auto& cache = powers[i];
        if (cache.empty()) {
            NumSeries one(m + 1, Rational(0));
            one[0] = Rational(1);
            cache.push_back(std::move(one));
        }
        while (cache.size() <= e) cache.push_back(detail::series_mul(cache.back(), images[i], m));
        return cache[e];
    };
    NumSeries sum(m + 1, Rational(0));
    for (const auto& t : f.terms()) {
        NumSeries v(m + 1, Rational(0));
        v[0] = t.coeff;
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.mono[i]) v = detail::series_mul(v, power(i, t.mono[i]), m);
        for (int j = 0; j <= m; ++j) sum[j] += v[j];
    }
    for (auto& c : sum) c = f.ring().reduce(c);
    return sum;
}

/// Hasse-Schmidt derivatives f^(0..m): coefficients of t^j after v_i -> sum_k v_i#k t^k.
/// Results live in jet_ring(f.ring(), 0, m).
inline std::vector<Polynomial> hasse_schmidt(const Polynomial& f, int m) {
    if (m < 0) throw InputError("jet order must be nonnegative");
    const Ring& amb = f.ring();
    Ring jr = jet_ring(amb, 0, m);
    const std::size_t n = amb.nvars();
    std::vector<PolySeries> images(n, PolySeries(m + 1, Polynomial(jr)));
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) images[i][k] = Polynomial::variable(jr, k * n + i);
    return substitute_series(f, images, jr, m);
}

/// Order marker meaning "order > m".
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

inline int series_order(const NumSeries& s) {
    for (std::size_t j = 0; j < s.size(); ++j)
        if (!s[j].is_zero()) return static_cast<int>(j);
    return kInfiniteOrder;
}

/// A jet (or truncated arc): coefficient list per ambient variable, entry k = level-k coordinate.
using JetPoint = std::vector<NumSeries>;

/// min{j <= m : f^(j)(jet) != 0}, or kInfiniteOrder.
inline int order_along_jet(const Polynomial& f, const JetPoint& jet, int m) {
    if (m < 0) throw InputError("jet order must be nonnegative");
    if (jet.size() != f.ring().nvars()) throw InputError("jet dimension mismatch");
    return series_order(substitute_series(f, jet, m));
}

/// Same, with the jet given by named coordinates `v#k`.
inline int order_along_jet(const Polynomial& f, const std::map<std::string, Rational>& coords, int m) {
    JetPoint jet(f.ring().nvars(), NumSeries(m + 1, Rational(0)));
    for (std::size_t i = 0; i < f.ring().nvars(); ++i)
        for (int k = 0; k <= m; ++k) {
            auto it = coords.find(jet_name(f.ring().name(i), k));
            if (it == coords.end()) throw InputError("missing coordinate " + jet_name(f.ring().name(i), k));
            jet[i][k] = it->second;
        }
    return order_along_jet(f, jet, m);
}

/// Truncate each coordinate series of an arc to levels 0..m.
inline JetPoint truncate(const JetPoint& arc, int m) {
    JetPoint out;
    for (const auto& s : arc) {
        if (static_cast<int>(s.size()) < m + 1) throw InputError("arc truncation level too short");
        out.emplace_back(s.begin(), s.begin() + m + 1);
    }
    return out;
}

}  // namespace jetscheme
