#pragma once

// Random instances for property tests. Seeds are fixed so failures replay.

#include <random>

#include "totref/ring.hpp"

namespace testgen {

using totref::Element;
using totref::RingPtr;

inline Element random_element(std::mt19937& rng, const RingPtr& ring, int max_degree, int max_terms = 4) {
    Element e(ring);
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<totref::Int> coeff(0, ring->modulus() - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        const auto& basis = ring->is_finite() ? ring->carrier_basis() : ring->graded_basis(deg(rng));
        if (basis.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        e.add_term(basis[pick(rng)], coeff(rng));
    }
    return e;
}

inline Element random_homogeneous(std::mt19937& rng, const RingPtr& ring, int degree, int max_terms = 3) {
    Element e(ring);
    const auto& basis = ring->graded_basis(degree);
    if (basis.empty()) return e;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<totref::Int> coeff(1, ring->modulus() - 1);
    std::uniform_int_distribution<int> terms(1, max_terms);
    int t = terms(rng);
    for (int i = 0; i < t; ++i) e.add_term(basis[pick(rng)], coeff(rng));
    return e;
}

}  // namespace testgen
