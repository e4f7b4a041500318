#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jetscheme/error.hpp"
#include "jetscheme/rational.hpp"

namespace jetscheme {

inline constexpr std::size_t kMaxVars = 40;

/// Dense exponent vector. Exponents are 16-bit; overflow raises instead of wrapping.
class Monomial {
public:
    using Exponent = std::uint16_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : n_(check_size(nvars)) {}
    Monomial(std::size_t nvars, std::span<const int> exps) : n_(check_size(nvars)) {
        if (exps.size() != nvars) throw InputError("exponent vector length mismatch");
        for (std::size_t i = 0; i < nvars; ++i) set(i, exps[i]);
    }

    static Monomial variable(std::size_t nvars, std::size_t i, int e = 1) {
        Monomial m(nvars);
        m.set(i, e);
        return m;
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] std::uint32_t degree() const { return deg_; }
    [[nodiscard]] Exponent operator[](std::size_t i) const { return e_[i]; }
    [[nodiscard]] bool is_one() const { return deg_ == 0; }

    void set(std::size_t i, long e) {
        if (e < 0) throw InputError("negative exponent");
        if (e > 0xFFFF) throw ResourceError("exponent overflow");
        deg_ = deg_ - e_[i] + static_cast<std::uint32_t>(e);
        e_[i] = static_cast<Exponent>(e);
    }

    [[nodiscard]] std::span<const Exponent> exponents() const { return {e_.data(), n_}; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            std::uint32_t s = std::uint32_t{a.e_[i]} + b.e_[i];
            if (s > 0xFFFF) throw ResourceError("exponent overflow");
            r.e_[i] = static_cast<Exponent>(s);
        }
        r.deg_ = a.deg_ + b.deg_;
        return r;
    }

    /// a / b, assuming b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = static_cast<Exponent>(a.e_[i] - b.e_[i]);
        r.deg_ = a.deg_ - b.deg_;
        return r;
    }

    [[nodiscard]] bool divides(const Monomial& o) const {
        if (deg_ > o.deg_) return false;
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    [[nodiscard]] bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] != 0 && o.e_[i] != 0) return false;
        return true;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            r.e_[i] = std::max(a.e_[i], b.e_[i]);
            r.deg_ += r.e_[i];
        }
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        if (a.n_ != b.n_ || a.deg_ != b.deg_) return false;
        return std::equal(a.e_.begin(), a.e_.begin() + a.n_, b.e_.begin());
    }

private:
    static std::uint8_t check_size(std::size_t n) {
        if (n > kMaxVars) throw ResourceError("too many variables (limit " + std::to_string(kMaxVars) + ")");
        return static_cast<std::uint8_t>(n);
    }

    std::array<Exponent, kMaxVars> e_{};
    std::uint8_t n_ = 0;
    std::uint32_t deg_ = 0;
};

/// Monomial order. Block orders compare blocks left to right, grevlex inside each block.
struct MonomialOrder {
    enum class Kind { grevlex, lex, block };
    Kind kind = Kind::grevlex;
    std::vector<std::size_t> blocks;  // block sizes, consecutive variables

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::lex, {}}; }
    static MonomialOrder block(std::vector<std::size_t> sizes) { return {Kind::block, std::move(sizes)}; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

namespace detail {

inline int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint32_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

struct RingData {
    std::vector<std::string> names;
    MonomialOrder order;
    std::optional<PrimeField> field;  // nullopt means the rationals
};

}  // namespace detail

/// Polynomial ring k[v_1..v_N] with a fixed monomial order. Cheap to copy; immutable.
class Ring {
public:
    Ring() : Ring(std::vector<std::string>{}) {}
    explicit Ring(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex(),
                  std::optional<PrimeField> field = std::nullopt) {
        if (names.size() > kMaxVars) throw ResourceError("too many variables (limit " + std::to_string(kMaxVars) + ")");
        std::unordered_set<std::string> seen;
        for (const auto& n : names) {
            if (n.empty()) throw InputError("empty variable name");
            if (!seen.insert(n).second) throw InputError("duplicate variable name '" + n + "'");
        }
        if (order.kind == MonomialOrder::Kind::block) {
            std::size_t total = std::accumulate(order.blocks.begin(), order.blocks.end(), std::size_t{0});
            if (total != names.size()) throw InputError("block order does not partition the variables");
            if (std::any_of(order.blocks.begin(), order.blocks.end(), [](std::size_t s) { return s == 0; }))
                throw InputError("empty block in block order");
        }
        data_ = std::make_shared<const detail::RingData>(detail::RingData{std::move(names), std::move(order), field});
    }

    [[nodiscard]] std::size_t nvars() const { return data_->names.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return data_->names; }
    [[nodiscard]] const std::string& name(std::size_t i) const { return data_->names.at(i); }
    [[nodiscard]] const MonomialOrder& order() const { return data_->order; }
    [[nodiscard]] const std::optional<PrimeField>& field() const { return data_->field; }
    [[nodiscard]] bool is_rational() const { return !data_->field.has_value(); }

    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const {
        const auto& n = data_->names;
        auto it = std::find(n.begin(), n.end(), name);
        if (it == n.end()) return std::nullopt;
        return static_cast<std::size_t>(it - n.begin());
    }

    [[nodiscard]] Ring with_order(MonomialOrder order) const { return Ring(names(), std::move(order), field()); }
    [[nodiscard]] Ring with_field(std::optional<PrimeField> f) const { return Ring(names(), order(), f); }

    /// Canonical coefficient representative: identity over Q, residue in [0, p) over F_p.
    [[nodiscard]] Rational reduce(const Rational& c) const {
        if (!data_->field) return c;
        return Rational(static_cast<long>(data_->field->from(c)));
    }

    /// -1, 0, 1 as a <, =, > b in the ring order.
    [[nodiscard]] int compare(const Monomial& a, const Monomial& b) const {
        const auto& ord = data_->order;
        switch (ord.kind) {
        case MonomialOrder::Kind::grevlex:
            return detail::grevlex_range(a, b, 0, a.size());
        case MonomialOrder::Kind::lex:
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        case MonomialOrder::Kind::block: {
            std::size_t lo = 0;
            for (std::size_t s : ord.blocks) {
                if (int c = detail::grevlex_range(a, b, lo, lo + s); c != 0) return c;
                lo += s;
            }
            return 0;
        }
        }
        return 0;
    }

    /// Name not already used by the ring, derived from `stem`.
    [[nodiscard]] std::string fresh_name(const std::string& stem) const {
        if (!index_of(stem)) return stem;
        for (int i = 1;; ++i) {
            std::string c = stem + std::to_string(i);
            if (!index_of(c)) return c;
        }
    }

    friend bool operator==(const Ring& a, const Ring& b) {
        if (a.data_ == b.data_) return true;
        return a.data_->names == b.data_->names && a.data_->order == b.data_->order &&
               a.data_->field == b.data_->field;
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

private:
    std::shared_ptr<const detail::RingData> data_;
};

}  // namespace jetscheme
