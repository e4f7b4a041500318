#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "jetscheme/jets.hpp"
#include "jetscheme/parse.hpp"

namespace jetscheme {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string piece; std::getline(in, piece, ',');) out.push_back(trim(piece));
    return out;
}

}  // namespace detail

/// Line-oriented variety description: `vars:`, `poly:` (repeatable), `point:`, `dim:`; `#` starts a comment.
inline VarietySpec parse_variety_text(std::string_view text, const std::string& origin = "<input>") {
    std::optional<Ring> ring;
    std::vector<std::string> polys;
    std::optional<std::vector<Rational>> point;
    std::optional<int> dim;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw InputError(where + "expected 'key: value'");
        const std::string key = detail::trim(line.substr(0, colon));
        const std::string value = detail::trim(line.substr(colon + 1));
        try {
            if (key == "vars") {
                if (ring) throw InputError("duplicate vars stanza");
                auto names = detail::split_commas(value);
                for (const auto& n : names)
                    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])) ||
                        !std::all_of(n.begin(), n.end(),
                                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
                        throw InputError("bad variable name '" + n + "'");
                ring = Ring(names);
            } else if (key == "poly") {
                polys.push_back(value);
            } else if (key == "point") {
                if (point) throw InputError("duplicate point stanza");
                point.emplace();
                for (const auto& c : detail::split_commas(value)) point->push_back(Rational::parse(c));
            } else if (key == "dim") {
                if (dim) throw InputError("duplicate dim stanza");
                std::size_t used = 0;
                dim = std::stoi(value, &used);
                if (used != value.size() || *dim < 0) throw InputError("bad dimension '" + value + "'");
            } else {
                throw InputError("unknown stanza '" + key + "'");
            }
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        } catch (const std::invalid_argument&) {
            throw InputError(where + "bad number in '" + value + "'");
        } catch (const std::out_of_range&) {
            throw InputError(where + "number out of range in '" + value + "'");
        }
    }
    if (!ring) throw InputError(origin + ": missing vars stanza");
    if (polys.empty()) throw InputError(origin + ": missing poly stanza");
    std::vector<Polynomial> eqs;
    for (const auto& p : polys) {
        try {
            eqs.push_back(parse_polynomial(p, *ring));
        } catch (const InputError& e) {
            throw InputError(origin + ": " + e.what());
        }
    }
    return VarietySpec::make(*ring, std::move(eqs), point, dim);
}

inline VarietySpec read_variety_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_variety_text(buf.str(), path);
}

}  // namespace jetscheme
