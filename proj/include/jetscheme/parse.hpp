#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "jetscheme/error.hpp"
#include "jetscheme/polynomial.hpp"

namespace jetscheme {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const Ring& ring) : s_(text), ring_(ring) {}

    Polynomial parse() {
        skip();
        if (at_end()) fail("empty polynomial");
        Polynomial p = expr();
        skip();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return p;
    }

private:
    // sum of terms, stopping at end of input or a closing parenthesis
    Polynomial expr() {
        skip();
        Polynomial sum(ring_);
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = peek() == '-';
            ++pos_;
        }
        for (;;) {
            Polynomial t = term();
            sum = negate ? sum - t : sum + t;
            skip();
            if (at_end() || peek() == ')') break;
            char c = peek();
            if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
            negate = c == '-';
            ++pos_;
        }
        return sum;
    }

    Polynomial term() {
        Rational coeff(1);
        Monomial mono(ring_.nvars());
        Polynomial groups = Polynomial::constant(ring_, Rational(1));
        bool any = false;
        for (;;) {
            skip();
            if (at_end()) fail("expected a factor");
            char c = peek();
            if (c == '(') {
                ++pos_;
                Polynomial g = expr();
                skip();
                if (at_end() || peek() != ')') fail("expected ')'");
                ++pos_;
                skip();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip();
                    g = g.pow(static_cast<unsigned>(integer()));
                }
                groups = groups * g;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= number();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = ident();
                auto idx = ring_.index_of(name);
                if (!idx) throw InputError("unknown variable '" + name + "'");
                long e = 1;
                skip();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip();
                    if (!at_end() && peek() == '-') throw InputError("negative exponent on '" + name + "'");
                    e = integer();
                }
                mono.set(*idx, static_cast<long>(mono[*idx]) + e);
            } else {
                fail(std::string("unexpected '") + c + "'");
            }
            any = true;
            skip();
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        return Polynomial::monomial(ring_, mono, coeff) * groups;
    }

    Rational number() {
        std::string digits = digit_run();
        skip();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip();
            std::string den = digit_run();
            if (den.empty()) fail("expected denominator");
            return Rational::parse(digits + "/" + den);
        }
        return Rational::parse(digits);
    }

    long integer() {
        std::string d = digit_run();
        if (d.empty()) fail("expected integer exponent");
        if (d.size() > 6) throw ResourceError("exponent overflow");
        return std::stol(d);
    }

    std::string digit_run() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string ident() {
        std::size_t start = pos_;
        while (!at_end()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#') ++pos_;
            else break;
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[nodiscard]] bool at_end() const { return pos_ >= s_.size(); }
    [[nodiscard]] char peek() const { return s_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("malformed polynomial at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    const Ring& ring_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse `c * v1^e1 * (...)^k * ... + ...` into a polynomial of `ring`. See docs/grammar.md.
inline Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
    return detail::PolyParser(text, ring).parse();
}

/// Comma-separated polynomial list.
inline std::vector<Polynomial> parse_polynomial_list(std::string_view text, const Ring& ring) {
    std::vector<Polynomial> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        out.push_back(parse_polynomial(piece, ring));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Variable names appearing in a polynomial text, in order of first appearance.
inline std::vector<std::string> scan_identifiers(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '#')) ++i;
            std::string name(text.substr(start, i - start));
            if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace jetscheme
