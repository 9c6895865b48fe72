#pragma once

#include <string>

#include "totref/ideal.hpp"
#include "totref/report.hpp"

namespace totref {

enum class Tri { Yes, No, Unverified };

inline std::string tri_name(Tri t) { return t == Tri::Yes ? "yes" : t == Tri::No ? "no" : "unverified"; }

struct ExactZeroDivisorPair {
    Element x, y;
    bool verified = false;
    Tri regular = Tri::Unverified;
    Scope scope;
    SliceMode mode = SliceMode::Whole;
    VerificationReport report;

    const RingPtr& ring() const { return x.ring(); }
};

/// Multiplication by a is injective on A/(gens): (gens : a) is contained in (gens).
inline bool weakly_regular_on_quotient(const Element& a, const IdealGenerators& gens, Scope scope = {}) {
    const auto& ring = a.ring();
    IdealGenerators g = drop_zeros(gens);
    IdealGenerators row{a};
    row.insert(row.end(), g.begin(), g.end());
    Matrix k = kernel_gens(row_matrix(ring, row), scope);
    for (std::size_t j = 0; j < k.cols(); ++j)
        if (!ideal_membership(k(0, j), g, scope).member) return false;
    return true;
}

/// Ann(x) = (y) and Ann(y) = (x), for non-units x and y.
inline ExactZeroDivisorPair verify_exact_pair(const Element& x, const Element& y, Scope scope = {}) {
    if (is_unit(x) || is_unit(y)) throw UnitInput("an exact pair consists of two non-units");
    if (!x.ring()->same_as(*y.ring())) throw RingMismatch("x and y live in different rings");
    ExactZeroDivisorPair pair;
    pair.x = x;
    pair.y = y;
    pair.scope = scope;
    pair.mode = x.ring()->is_finite() ? SliceMode::Whole
                : (x.is_homogeneous() && y.is_homogeneous()) ? SliceMode::Degree
                                                             : SliceMode::Filtration;
    auto& rep = pair.report;
    rep = VerificationReport("Def:exact-pair", scope_string(pair.mode, scope.degree_bound));
    auto ann_x = annihilator(x, scope);
    auto ann_y = annihilator(y, scope);
    rep.data["ann_x"] = ideal_string(ann_x);
    rep.data["ann_y"] = ideal_string(ann_y);
    bool ok = rep.add("xy = 0", (x * y).is_zero());
    ok = rep.add("Ann(x) in (y)", ideal_contained(ann_x, {y}, scope)) && ok;
    ok = rep.add("Ann(y) in (x)", ideal_contained(ann_y, {x}, scope)) && ok;
    pair.verified = ok;
    return pair;
}

struct RegularityReport {
    Tri verdict = Tri::Unverified;
    bool x_regular_mod_y = false;
    bool y_regular_mod_x = false;
    bool intersection_zero = false;
    VerificationReport report;
};

/// (x) and (y) meet in 0: every x*c with x*c = y*d vanishes.
inline bool intersection_is_zero(const Element& x, const Element& y, Scope scope = {}) {
    Matrix k = kernel_gens(row_matrix(x.ring(), {x, -y}), scope);
    for (std::size_t j = 0; j < k.cols(); ++j)
        if (!(x * k(0, j)).is_zero()) return false;
    return true;
}

/// Evaluates the three equivalent regularity conditions separately.
inline RegularityReport verify_regular_pair(ExactZeroDivisorPair& pair, Scope scope = {}) {
    if (!pair.verified) throw PreconditionFailed("pair is not a verified exact pair");
    RegularityReport r;
    // x, y are non-units, so regular = weakly regular here
    r.x_regular_mod_y = weakly_regular_on_quotient(pair.x, {pair.y}, scope);
    r.y_regular_mod_x = weakly_regular_on_quotient(pair.y, {pair.x}, scope);
    r.intersection_zero = intersection_is_zero(pair.x, pair.y, scope);
    r.report = VerificationReport("Lemma:regular", scope_string(pair.mode, scope.degree_bound));
    r.report.data["x_regular_on_A/(y)"] = r.x_regular_mod_y;
    r.report.data["y_regular_on_A/(x)"] = r.y_regular_mod_x;
    r.report.data["(x)_meet_(y)_zero"] = r.intersection_zero;
    bool agree = r.x_regular_mod_y == r.y_regular_mod_x && r.y_regular_mod_x == r.intersection_zero;
    r.report.add("conditions agree", agree);
    if (!agree) throw EquivalenceViolation("regularity conditions disagree for (" + pair.x.to_string() + ", " + pair.y.to_string() + ")");
    r.verdict = r.intersection_zero ? Tri::Yes : Tri::No;
    r.report.data["regular"] = tri_name(r.verdict);
    pair.regular = r.verdict;
    return r;
}

inline ExactZeroDivisorPair swap_pair(const ExactZeroDivisorPair& pair) {
    if (!pair.verified) throw PreconditionFailed("pair is not a verified exact pair");
    ExactZeroDivisorPair s = verify_exact_pair(pair.y, pair.x, pair.scope);
    s.regular = pair.regular;
    return s;
}

struct FactorizationResult {
    RingPtr ring;
    ExactZeroDivisorPair pair;
};

/// A = Q/(fg) with x, y the classes of f, g. The product must be a monomial.
inline FactorizationResult pair_from_factorization(const RingPtr& q, const Element& f, const Element& g, Scope scope = {}) {
    Element fg = f * g;
    if (q->num_vars() == 0 || fg.terms().size() != 1 || zn::gcd(fg.terms().begin()->second, q->modulus()) != 1)
        throw UnsupportedQuotient("f*g = " + fg.to_string() + " is not a monomial times a unit");
    const auto& mono = fg.terms().begin()->first;
    if (total_degree(mono) == 0) throw UnsupportedQuotient("f*g is a unit");
    RingPtr a = q->with_relation(mono);
    auto lift = [&](const Element& e) {
        Element out(a);
        for (const auto& [m, c] : e.terms()) out.add_term(m, c);
        return out;
    };
    auto pair = verify_exact_pair(lift(f), lift(g), scope);
    verify_regular_pair(pair, scope);
    return {a, pair};
}

inline Json to_json(const ExactZeroDivisorPair& p) {
    return Json{{"ring", p.ring()->describe()},
                {"x", p.x.to_string()},
                {"y", p.y.to_string()},
                {"verified", p.verified},
                {"regular", tri_name(p.regular)},
                {"scope", scope_string(p.mode, p.scope.degree_bound)}};
}

}  // namespace totref
