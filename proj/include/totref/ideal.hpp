#pragma once

#include <optional>
#include <vector>

#include "totref/linalg.hpp"

namespace totref {

using IdealGenerators = std::vector<Element>;

inline Matrix row_matrix(const RingPtr& ring, const IdealGenerators& gens) {
    Matrix m(ring, 1, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) m(0, j) = gens[j];
    return m;
}

inline IdealGenerators drop_zeros(const IdealGenerators& gens) {
    IdealGenerators out;
    for (const auto& g : gens)
        if (!g.is_zero()) out.push_back(g);
    return out;
}

/// Generators of Ann(e) = {r : r e = 0}.
inline IdealGenerators annihilator(const Element& e, Scope scope = {}) {
    Matrix k = kernel_gens(row_matrix(e.ring(), {e}), scope);
    IdealGenerators out;
    for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k(0, j));
    return out;
}

struct Membership {
    bool member = false;
    std::vector<Element> witness;  // e = sum witness[i] * gens[i]
};

inline Membership ideal_membership(const Element& e, const IdealGenerators& gens, Scope scope = {}) {
    const auto& ring = e.ring();
    if (gens.empty()) return {e.is_zero(), {}};
    LinearMap map(row_matrix(ring, gens), scope);
    auto x = map.solve({e});
    if (!x) return {false, {}};
    return {true, *x};
}

/// Every generator of `a` lies in the ideal generated by `b`.
inline bool ideal_contained(const IdealGenerators& a, const IdealGenerators& b, Scope scope = {}) {
    for (const auto& g : a)
        if (!ideal_membership(g, b, scope).member) return false;
    return true;
}

inline bool ideals_equal(const IdealGenerators& a, const IdealGenerators& b, Scope scope = {}) {
    return ideal_contained(a, b, scope) && ideal_contained(b, a, scope);
}

inline std::string ideal_string(const IdealGenerators& gens) {
    if (gens.empty()) return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
    return s + ")";
}

}  // namespace totref
