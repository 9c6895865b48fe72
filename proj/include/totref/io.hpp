#pragma once

// Ring descriptors from JSON files or inline strings, and small CLI parsers.
//
//   {"kind": "graded", "p": 5, "vars": ["x","y","z"], "relations": ["x*y"]}
//   {"kind": "finite", "p": 3, "k": 2}
//   F5[x,y,z]/(x*y)      Z/9      Z/8[t]/(t^3)

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "totref/family.hpp"
#include "totref/parse.hpp"
#include "totref/report.hpp"

namespace totref {

namespace detail {

inline bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& t : out) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? "" : t.substr(b, e - b + 1);
    }
    return out;
}

inline RingPtr make_ring(const std::string& kind, Int p, int k, const std::vector<std::string>& vars,
                         const std::vector<std::string>& rels) {
    if (!is_prime(p)) throw InvalidRing(std::to_string(p) + " is not prime");
    std::vector<Exponents> relations;
    for (const auto& r : rels) relations.push_back(parse_monomial(vars, r));
    if (kind == "finite") return Ring::finite(p, k, vars, relations);
    if (kind == "graded") {
        if (k != 1) throw InvalidRing("the graded backend works over a prime field");
        return Ring::graded(p, vars, relations);
    }
    throw InvalidRing("unknown ring kind '" + kind + "'");
}

}  // namespace detail

inline RingPtr ring_from_json(const Json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        Int p = j.at("p").get<Int>();
        int k = j.value("k", 1);
        auto vars = j.value("vars", std::vector<std::string>{});
        auto rels = j.value("relations", std::vector<std::string>{});
        return detail::make_ring(kind, p, k, vars, rels);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad ring descriptor: ") + e.what());
    }
}

/// "Z/9", "Z/8[t]/(t^3)", "F5[x,y,z]/(x*y)".
inline RingPtr ring_from_string(const std::string& text) {
    static const std::regex re(R"(^\s*(Z/|F)(\d+)\s*(\[([^\]]*)\])?\s*(/\s*\((.*)\))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ParseError("cannot read ring '" + text + "'");
    Int n = std::stoll(m[2].str());
    std::vector<std::string> vars, rels;
    if (m[4].matched && !m[4].str().empty()) vars = detail::split(m[4].str(), ',');
    if (m[6].matched && !m[6].str().empty()) rels = detail::split(m[6].str(), ',');
    if (m[1].str() == "F") return detail::make_ring("graded", n, 1, vars, rels);
    Int p = 0;
    for (Int d = 2; d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (p == 0) throw InvalidRing("modulus must be at least 2");
    int k = 0;
    Int q = n;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1) throw InvalidRing(std::to_string(n) + " is not a prime power");
    return detail::make_ring("finite", p, k, vars, rels);
}

/// A path to a JSON descriptor, or an inline descriptor.
inline RingPtr load_ring(const std::string& spec) {
    std::ifstream in(spec);
    if (in) {
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw ParseError("cannot read " + spec + ": " + e.what());
        }
        return ring_from_json(j);
    }
    return ring_from_string(spec);
}

inline Json ring_to_json(const RingPtr& r) {
    Json j{{"kind", r->is_finite() ? "finite" : "graded"}, {"p", r->p()}};
    if (r->is_finite()) j["k"] = r->k();
    j["vars"] = r->vars();
    Json rels = Json::array();
    for (const auto& m : r->relations()) rels.push_back(r->monomial_string(m));
    j["relations"] = rels;
    return j;
}

/// Comma separated elements: "z,z^2,z".
inline std::vector<Element> parse_element_list(const RingPtr& ring, const std::string& text) {
    std::vector<Element> out;
    for (const auto& t : detail::split(text, ',')) out.push_back(parse_element(ring, t));
    return out;
}

/// "G:z" or "H:z^2".
inline PresentedModule parse_module_spec(const ExactZeroDivisorPair& pair, const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("module spec '" + text + "' must look like G:a or H:a");
    std::string kind = text.substr(0, colon);
    Element a = parse_element(pair.ring(), text.substr(colon + 1));
    if (kind == "G") return module_G(pair, a);
    if (kind == "H") return module_H(pair, a);
    throw ParseError("module kind must be G or H, got '" + kind + "'");
}

}  // namespace totref
