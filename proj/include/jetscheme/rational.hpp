#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "jetscheme/error.hpp"

namespace jetscheme {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(v) {}                        // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : q_(v) {}             // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw InputError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rational parse(std::string_view text) {
        mpq_class q;
        if (q.set_str(std::string(text), 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
        if (q.get_den() == 0) throw InputError("rational with zero denominator");
        q.canonicalize();
        return Rational(q);
    }

    [[nodiscard]] Integer num() const { return q_.get_num(); }
    [[nodiscard]] Integer den() const { return q_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return q_; }
    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] bool is_one() const { return q_ == 1; }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] double to_double() const { return q_.get_d(); }
    [[nodiscard]] std::string str() const { return q_.get_str(); }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw Error("division by zero");
        return Rational(mpq_class(1) / q_);
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    /// Residue modulo a prime; throws when the denominator is divisible by p.
    [[nodiscard]] std::uint64_t mod(std::uint64_t p) const {
        Integer pp(static_cast<unsigned long>(p));
        Integer n = q_.get_num() % pp;
        if (n < 0) n += pp;
        Integer d = q_.get_den() % pp;
        if (d == 0) throw InputError("denominator divisible by the characteristic");
        Integer dinv;
        mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
        Integer r = (n * dinv) % pp;
        return r.get_ui();
    }

private:
    mpq_class q_;
};

inline Rational pow(const Rational& base, unsigned e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), e);
    return Rational(n, d);
}

/// Arithmetic in Z/pZ for a word-size prime p.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
        if (p >= (1ULL << 32)) throw InputError("characteristic beyond word-size arithmetic");
    }

    [[nodiscard]] std::uint64_t characteristic() const { return p_; }
    [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
    [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
    [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
    [[nodiscard]] std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p_;
        a %= p_;
        while (e) {
            if (e & 1U) r = mul(r, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }
    [[nodiscard]] std::uint64_t inv(std::uint64_t a) const {
        if (a % p_ == 0) throw Error("division by zero in prime field");
        return pow(a, p_ - 2);
    }
    [[nodiscard]] std::uint64_t from(const Rational& r) const { return r.mod(p_); }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

}  // namespace jetscheme

template <>
struct std::hash<jetscheme::Rational> {
    std::size_t operator()(const jetscheme::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
