#pragma once

#include <string>
#include <vector>

#include "totref/homcalc.hpp"

namespace totref {

namespace detail {

inline Matrix mat2(const RingPtr& r, Element a, Element b, Element c, Element d) {
    return Matrix::from_elements(r, {{std::move(a), std::move(b)}, {std::move(c), std::move(d)}});
}

inline void require_regular(const ExactZeroDivisorPair& pair, Scope scope);

/// Names of unmet hypotheses; throws PreconditionFailed on the first one when `gate` is set.
struct Hypotheses {
    bool gate = true;
    std::vector<std::string> violated;
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (gate) throw PreconditionFailed(what);
        violated.push_back(what);
    }
    void record(VerificationReport& rep) const {
        if (violated.empty()) return;
        rep.data["hypotheses_violated"] = violated;
        rep.notes.push_back("run with unmet hypotheses");
    }
};

inline bool pair_is_regular(const ExactZeroDivisorPair& pair, Scope scope) {
    if (pair.regular != Tri::Unverified) return pair.regular == Tri::Yes;
    auto copy = pair;
    verify_regular_pair(copy, scope);
    return copy.regular == Tri::Yes;
}

inline void require_regular(const ExactZeroDivisorPair& pair, Scope scope) {
    if (!pair_is_regular(pair, scope)) throw PreconditionFailed("the exact pair is not regular");
}

inline bool weakly_regular_mod_pair(const ExactZeroDivisorPair& pair, const Element& a, Scope scope) {
    return weakly_regular_on_quotient(a, {pair.x, pair.y}, scope);
}

inline std::string hom_label(const std::string& m, const std::string& n) { return "Hom(" + m + "," + n + ")"; }

}  // namespace detail

/// Five maps psi_i with lifts xi_i, psi_i source = target xi_i, spanning Q.
struct FiveGenerators {
    Matrix source, target;
    std::vector<Matrix> psi, xi;
};

/// Q for (eta_b, gamma_a): psi eta_b = gamma_a xi.
inline FiveGenerators hg_generators(const ExactZeroDivisorPair& pair, const Element& a, const Element& b) {
    const auto& r = pair.ring();
    Element o(r), one = Element::constant(r, 1);
    const Element &x = pair.x, &y = pair.y;
    FiveGenerators f{eta(pair, b), gamma(pair, a), {}, {}};
    f.psi = {detail::mat2(r, o, one, o, o), detail::mat2(r, o, o, x, b), detail::mat2(r, o, o, o, y),
             detail::mat2(r, x, o, o, o), detail::mat2(r, a, o, y, o)};
    f.xi = {detail::mat2(r, o, one, o, o), detail::mat2(r, o, o, o, o), detail::mat2(r, o, o, o, o),
            detail::mat2(r, o, -b, o, o), detail::mat2(r, o, o, y, -b)};
    return f;
}

/// Q for (gamma_ab, gamma_a): psi gamma_ab = gamma_a xi.
inline FiveGenerators gg_generators(const ExactZeroDivisorPair& pair, const Element& a, const Element& b) {
    const auto& r = pair.ring();
    Element o(r), one = Element::constant(r, 1);
    const Element &x = pair.x, &y = pair.y;
    FiveGenerators f{gamma(pair, a * b), gamma(pair, a), {}, {}};
    f.psi = {detail::mat2(r, o, o, o, x), detail::mat2(r, one, o, o, b), detail::mat2(r, o, x, o, o),
             detail::mat2(r, a, o, y, o), detail::mat2(r, o, a, o, y)};
    f.xi = {detail::mat2(r, o, o, o, o), detail::mat2(r, one, o, o, b), detail::mat2(r, o, o, o, o),
            detail::mat2(r, a, o, o, a * b), detail::mat2(r, o, o, o, y)};
    return f;
}

enum class FiveKind { HG, GG };

/// Both inclusions between Q and the span of the five maps.
inline VerificationReport verify_five_generators(const ExactZeroDivisorPair& pair, const Element& a, const Element& b,
                                                 FiveKind kind, Scope scope = {}, bool gate = true) {
    detail::require_pair(pair, a);
    detail::require_pair(pair, b);
    bool hg = kind == FiveKind::HG;
    detail::Hypotheses hyp{gate, {}};
    hyp.require(detail::pair_is_regular(pair, scope), "the exact pair is not regular");
    bool wa = detail::weakly_regular_mod_pair(pair, a, scope);
    if (hg) hyp.require(wa || detail::weakly_regular_mod_pair(pair, b, scope), "neither a nor b is weakly regular on A/(x,y)");
    else hyp.require(wa, a.to_string() + " is not weakly regular on A/(x,y)");
    FiveGenerators f = hg ? hg_generators(pair, a, b) : gg_generators(pair, a, b);
    HomPresentation hp = hom_presentation(PresentedModule(f.source), PresentedModule(f.target), scope);
    VerificationReport rep(hg ? "Lemma:generators-of-Q-2" : "Lemma:generators-of-Q",
                           scope_string(hp.mode, scope.degree_bound));
    rep.data["a"] = a.to_string();
    rep.data["b"] = b.to_string();
    hyp.record(rep);
    bool lifts = true;
    Json eqs = Json::array();
    for (std::size_t i = 0; i < 5; ++i) {
        bool ok = f.psi[i] * f.source == f.target * f.xi[i];
        eqs.push_back(ok);
        lifts = lifts && ok;
    }
    rep.add("psi_i source = target xi_i", lifts, eqs);

    std::vector<int> degs;
    Matrix span(pair.ring(), 4, 5);
    for (std::size_t c = 0; c < 5; ++c) {
        Vec v = vectorize(f.psi[c]);
        for (std::size_t r = 0; r < 4; ++r) span(r, c) = v[r];
        auto d = hp.degree_of(f.psi[c]);
        if (!d) throw NonHomogeneous("psi_" + std::to_string(c + 1) + " is not homogeneous");
        degs.push_back(*d);
    }
    if (hp.mode == SliceMode::Degree) span.set_grading(Grading{hp.psi_shifts, degs});
    LinearMap smap(span, scope, hp.filtration());
    bool contained = true;
    for (const auto& g : hp.generators) contained = smap.contains(vectorize(g)) && contained;
    for (std::size_t c = 0; c < hp.zero_maps.cols(); ++c) contained = smap.contains(hp.zero_maps.col_entries(c)) && contained;
    Json cd{{"computed_generators", hp.generators.size()}, {"zero_map_generators", hp.zero_maps.cols()}};
    if (hp.filtration() && !contained) rep.add_inconclusive("Q in span(psi_1..psi_5)", false, cd);
    else rep.add("Q in span(psi_1..psi_5)", contained, cd);
    return rep;
}

/// Which Hom identity a sequence check certifies.
struct HomIdentity {
    std::string hom;     // e.g. Hom(H_z,G_z)
    std::string result;  // e.g. G_z^2
    VerificationReport report;
    int mu = 0;
};

namespace detail {

inline std::string G(const Element& a) { return "G_" + element_label(a); }
inline std::string H(const Element& a) { return "H_" + element_label(a); }
/// H_1 is free of rank one.
inline std::string H_or_A(const Element& b) { return b == Element::constant(b.ring(), 1) ? "A" : H(b); }

/// Hom(H_b, G_a) = G_ab with pi = (psi_1, psi_2).
inline HomIdentity hg_core(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope) {
    auto src = module_H(pair, b), tgt = module_G(pair, a);
    auto hp = hom_presentation(src, tgt, scope);
    auto f = hg_generators(pair, a, b);
    auto rep = verify_hom_sequence(hp, {f.psi[0], f.psi[1]}, gamma(pair, a * b), "Thm:Hom-H-G");
    rep.add("[psi_3] = -a [psi_1]", hp.is_zero_class(f.psi[2] + f.psi[0].scaled(a)));
    rep.add("[psi_4] = 0", hp.is_zero_class(f.psi[3]));
    rep.add("[psi_5] = 0", hp.is_zero_class(f.psi[4]));
    const auto& r = pair.ring();
    Element o(r), one = Element::constant(r, 1);
    Matrix ga = gamma(pair, a), gab = gamma(pair, a * b);
    // s psi_1 + t psi_2 = gamma_a [[0, u], [0, v b]] for (s, t) = gamma_ab (u, v)
    bool wit = true;
    for (int k = 0; k < 2; ++k) {
        Element u = k == 0 ? one : o, v = k == 0 ? o : one;
        Element s = gab(0, 0) * u + gab(0, 1) * v, t = gab(1, 1) * v;
        wit = wit && (f.psi[0].scaled(s) + f.psi[1].scaled(t) == ga * mat2(r, o, u, o, v * b));
    }
    rep.add("displayed witnesses", wit);
    HomIdentity id{hom_label(src.label(), tgt.label()), "G_" + element_label(a * b), rep, minimal_generators(hp.module())};
    id.report.data["hom"] = id.hom;
    id.report.data["isomorphic_to"] = id.result;
    id.report.data["mu"] = id.mu;
    return id;
}

/// Hom(G_ab, G_a) = H_b with pi = (psi_1, psi_2).
inline HomIdentity gg_down_core(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope) {
    auto src = module_G(pair, a * b), tgt = module_G(pair, a);
    auto hp = hom_presentation(src, tgt, scope);
    auto f = gg_generators(pair, a, b);
    auto rep = verify_hom_sequence(hp, {f.psi[0], f.psi[1]}, eta(pair, b), "Thm:Hom-G-ab-a");
    rep.add("[psi_3] = 0", hp.is_zero_class(f.psi[2]));
    rep.add("[psi_4] = 0", hp.is_zero_class(f.psi[3]));
    rep.add("[psi_5] = 0", hp.is_zero_class(f.psi[4]));
    const auto& r = pair.ring();
    Element o(r), one = Element::constant(r, 1);
    Matrix ga = gamma(pair, a), eb = eta(pair, b);
    // s psi_1 + t psi_2 = gamma_a [[v, 0], [0, 0]] for (s, t) = eta_b (u, v)
    bool wit = true;
    for (int k = 0; k < 2; ++k) {
        Element u = k == 0 ? one : o, v = k == 0 ? o : one;
        Element s = eb(0, 0) * u + eb(0, 1) * v, t = eb(1, 1) * v;
        wit = wit && (f.psi[0].scaled(s) + f.psi[1].scaled(t) == ga * mat2(r, v, o, o, o));
    }
    rep.add("displayed witnesses", wit);
    if (b == one) {
        auto h1 = module_H(pair, one);
        rep.add("H_1 = A", minimal_generators(h1) == 1 && fitting_ideal(h1, 0).empty());
    }
    HomIdentity id{hom_label(src.label(), tgt.label()), H_or_A(b), rep, minimal_generators(hp.module())};
    id.report.data["hom"] = id.hom;
    id.report.data["isomorphic_to"] = id.result;
    id.report.data["mu"] = id.mu;
    return id;
}

/// Hom(G_a, G_ab) = G_b with pi = ([[-y, a], [0, 0]], [[b, 0], [0, 1]]).
inline HomIdentity gg_up_core(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope) {
    auto src = module_G(pair, a), tgt = module_G(pair, a * b);
    auto hp = hom_presentation(src, tgt, scope);
    const auto& r = pair.ring();
    Element o(r), one = Element::constant(r, 1);
    Matrix pa = mat2(r, -pair.y, a, o, o), pb = mat2(r, b, o, o, one);
    auto rep = verify_hom_sequence(hp, {pa, pb}, gamma(pair, b), "Thm:Hom-G-ab-a");
    Matrix gab = gamma(pair, a * b);
    bool wit = pa.scaled(pair.x) == gab * mat2(r, o, a, o, o) && pa.scaled(b) + pb.scaled(pair.y) == gab * mat2(r, o, o, o, one);
    rep.add("witnesses", wit);
    rep.notes.push_back("generators found by computation");
    HomIdentity id{hom_label(src.label(), tgt.label()), "G_" + element_label(b), rep, minimal_generators(hp.module())};
    id.report.data["hom"] = id.hom;
    id.report.data["isomorphic_to"] = id.result;
    id.report.data["mu"] = id.mu;
    return id;
}

/// Re-labels an identity computed over the swapped pair and records the unit twist by -1.
inline HomIdentity via_swap(HomIdentity id, const ExactZeroDivisorPair& pair, std::string hom, std::string result,
                            const Element& twisted, bool result_is_G) {
    id.hom = std::move(hom);
    id.result = std::move(result);
    auto tw = unit_twist_witness(pair, twisted, Element::constant(pair.ring(), -1));
    id.report.add(result_is_G ? "G_{-c} = G_c" : "H_{-c} = H_c", tw.report);
    id.report.notes.push_back("computed over the swapped pair (y,x)");
    id.report.data["hom"] = id.hom;
    id.report.data["isomorphic_to"] = id.result;
    return id;
}


}  // namespace detail

/// Hom(H_b, G_a) = G_ab.
inline HomIdentity hom_HG(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {}) {
    return detail::hg_core(pair, a, b, scope);
}

/// Hom(G_a, H_b) = H_ab, computed as Hom(H'_{-a}, G'_{-b}) over the swapped pair.
inline HomIdentity hom_GH(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {}) {
    auto sw = swap_pair(pair);
    auto id = detail::hg_core(sw, -b, -a, scope);
    return detail::via_swap(std::move(id), pair, detail::hom_label(detail::G(a), detail::H(b)), detail::H(a * b), a * b, false);
}

/// Hom(G_ab, G_a) = H_b.
inline HomIdentity hom_GG_down(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {}) {
    return detail::gg_down_core(pair, a, b, scope);
}

/// Hom(G_a, G_ab) = G_b.
inline HomIdentity hom_GG_up(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {}) {
    return detail::gg_up_core(pair, a, b, scope);
}

/// Hom(H_ab, H_a) = G_b, computed as Hom(G'_{-ab}, G'_{-a}) over the swapped pair.
inline HomIdentity hom_HH_down(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {}) {
    auto sw = swap_pair(pair);
    auto id = detail::gg_down_core(sw, -a, b, scope);
    return detail::via_swap(std::move(id), pair, detail::hom_label(detail::H(a * b), detail::H(a)), detail::G(b), b, true);
}

/// Hom(H_a, H_ab) = H_b, computed as Hom(G'_{-a}, G'_{-ab}) over the swapped pair.
inline HomIdentity hom_HH_up(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {}) {
    auto sw = swap_pair(pair);
    auto id = detail::gg_up_core(sw, -a, b, scope);
    return detail::via_swap(std::move(id), pair, detail::hom_label(detail::H(a), detail::H(a * b)), detail::H_or_A(b), b, false);
}

/// Hom(H_a, G_b) = Hom(H_b, G_a) = G_ab and Hom(G_a, H_b) = Hom(G_b, H_a) = H_ab.
inline VerificationReport verify_hom_HG(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, Scope scope = {},
                                        bool gate = true) {
    detail::require_pair(pair, a);
    detail::require_pair(pair, b);
    detail::Hypotheses hyp{gate, {}};
    hyp.require(detail::pair_is_regular(pair, scope), "the exact pair is not regular");
    hyp.require(detail::weakly_regular_mod_pair(pair, a, scope) || detail::weakly_regular_mod_pair(pair, b, scope),
                "neither a nor b is weakly regular on A/(x,y)");
    VerificationReport rep("Thm:Hom-H-G");
    rep.data["a"] = a.to_string();
    rep.data["b"] = b.to_string();
    hyp.record(rep);
    rep.add("Q generators", verify_five_generators(pair, a, b, FiveKind::HG, scope, gate));
    for (const auto& id : {hom_HG(pair, a, b, scope), hom_HG(pair, b, a, scope), hom_GH(pair, a, b, scope), hom_GH(pair, b, a, scope)}) {
        rep.scope = id.report.scope;
        rep.add(id.hom + " = " + id.result, id.report);
    }
    return rep;
}

/// Hom(H_a, H_ab) = Hom(G_ab, G_a) = H_b and Hom(G_a, G_ab) = Hom(H_ab, H_a) = G_b.
inline VerificationReport verify_hom_G_ab_a(const ExactZeroDivisorPair& pair, const Element& a, const Element& b,
                                            Scope scope = {}, bool gate = true) {
    detail::require_pair(pair, a);
    detail::require_pair(pair, b);
    detail::Hypotheses hyp{gate, {}};
    hyp.require(detail::pair_is_regular(pair, scope), "the exact pair is not regular");
    hyp.require(detail::weakly_regular_mod_pair(pair, a, scope), a.to_string() + " is not weakly regular on A/(x,y)");
    VerificationReport rep("Thm:Hom-G-ab-a");
    rep.data["a"] = a.to_string();
    rep.data["b"] = b.to_string();
    hyp.record(rep);
    rep.add("Q generators", verify_five_generators(pair, a, b, FiveKind::GG, scope, gate));
    for (const auto& id : {hom_GG_down(pair, a, b, scope), hom_HH_up(pair, a, b, scope), hom_GG_up(pair, a, b, scope),
                           hom_HH_down(pair, a, b, scope)}) {
        rep.scope = id.report.scope;
        rep.add(id.hom + " = " + id.result, id.report);
    }
    return rep;
}

struct IdempotentScan {
    std::size_t examined = 0;
    bool complete = true;
    std::string slice;
    std::optional<Matrix> idempotent;
};

/// Searches End(M) for e with e^2 = e, e != 0, 1. Finite rings: all
/// A-combinations of the generators. Graded rings: the degree-0 part.
inline IdempotentScan scan_idempotents(const HomPresentation& end, std::size_t budget = 1u << 16) {
    if (!(end.source.presentation() == end.target.presentation()))
        throw DimensionMismatch("idempotent scan needs an endomorphism module");
    const auto& ring = end.ring();
    IdempotentScan scan;
    std::vector<Matrix> basis;
    Int n = ring->modulus();
    if (end.mode == SliceMode::Whole) {
        scan.slice = "exhaustive";
        for (const auto& g : end.generators)
            for (const auto& m : ring->carrier_basis()) basis.push_back(g.scaled(Element::monomial(ring, m)));
    } else if (end.mode == SliceMode::Degree) {
        scan.slice = "degree 0";
        const auto& rows = end.relations.grading()->rows;
        for (std::size_t c = 0; c < end.generators.size(); ++c)
            for (const auto& m : ring->graded_basis(-rows[c])) basis.push_back(end.generators[c].scaled(Element::monomial(ring, m)));
    } else {
        scan.slice = "none";
        scan.complete = false;
        return scan;
    }
    Matrix id = Matrix::identity(ring, end.rows());
    std::vector<Int> coeff(basis.size(), 0);
    while (true) {
        if (scan.examined >= budget) {
            scan.complete = false;
            break;
        }
        ++scan.examined;
        Matrix e(ring, end.rows(), end.cols());
        for (std::size_t c = 0; c < basis.size(); ++c)
            if (coeff[c]) e = e + basis[c].scaled(Element::constant(ring, coeff[c]));
        if (end.is_zero_class(e * e - e) && !end.is_zero_class(e) && !end.is_zero_class(id - e)) {
            scan.idempotent = e;
            break;
        }
        std::size_t c = 0;
        for (; c < basis.size(); ++c) {
            if (++coeff[c] < n) break;
            coeff[c] = 0;
        }
        if (c == basis.size()) break;
    }
    return scan;
}

inline Json to_json(const IdempotentScan& s) {
    Json j{{"slice", s.slice}, {"examined", s.examined}, {"complete", s.complete}};
    if (s.idempotent) j["idempotent"] = to_json(*s.idempotent);
    return j;
}

/// End(G_a) = A without nontrivial idempotents; with `of_H` the same for H_a,
/// computed as G_{-a} over the swapped pair.
inline VerificationReport verify_end_ring(const ExactZeroDivisorPair& pair, const Element& a, Scope scope = {},
                                          std::size_t budget = 1u << 16, bool of_H = false) {
    detail::require_pair(pair, a);
    detail::require_regular(pair, scope);
    if (!detail::weakly_regular_mod_pair(pair, a, scope))
        throw PreconditionFailed(a.to_string() + " is not weakly regular on A/(x,y)");
    const ExactZeroDivisorPair p = of_H ? swap_pair(pair) : pair;
    const Element c = of_H ? -a : a;
    const auto& ring = pair.ring();
    auto mod = module_G(p, c);
    std::string label = of_H ? detail::H(a) : detail::G(a);
    auto end = hom_presentation(mod, mod, scope);
    VerificationReport rep("Thm:End-A", scope_string(end.mode, scope.degree_bound));
    rep.data["module"] = label;
    if (of_H) rep.notes.push_back("computed as G over the swapped pair (y,x)");
    auto one = Element::constant(ring, 1);
    auto id = detail::gg_down_core(p, c, one, scope);
    rep.add("End(" + label + ") = H_1", id.report);
    auto h1 = module_H(p, one);
    rep.add("H_1 = A", minimal_generators(h1) == 1 && fitting_ideal(h1, 0).empty(),
            Json{{"mu", minimal_generators(h1)}, {"fitting_0", ideal_string(fitting_ideal(h1, 0))}});
    Matrix idm = Matrix::identity(ring, mod.num_generators());
    std::vector<int> deg0{0};
    rep.add("identity generates End", end.spans_hom({idm}, deg0));
    // chi is injective: r * id = 0 in End forces r = 0
    LinearMap chi(end.span_matrix({idm}, deg0), scope, end.filtration());
    bool injective = true;
    for (int d : chi.source_degrees())
        for (const auto& v : chi.kernel_slice(d)) injective = injective && v[0].is_zero();
    rep.add("chi injective", injective);
    auto scan = scan_idempotents(end, budget);
    if (scan.complete || scan.idempotent) rep.add("no nontrivial idempotent", !scan.idempotent, to_json(scan));
    else rep.add_inconclusive("no nontrivial idempotent", false, to_json(scan));
    if (end.mode == SliceMode::Degree) rep.notes.push_back("idempotents outside degree 0 not scanned");
    rep.data["mu_end"] = minimal_generators(end.module());
    return rep;
}

/// End(M)^op = End(M^*) via f -> f o alpha, for M = G_a.
inline VerificationReport verify_end_op_iso(const ExactZeroDivisorPair& pair, const Element& a, Scope scope = {}) {
    detail::require_pair(pair, a);
    auto m = module_G(pair, a);
    const Matrix& rho = m.presentation();
    Matrix rt = rho.transpose();
    LinearMap rt_map(rt, scope);
    Matrix k = kernel_gens(rt_map);
    VerificationReport rep("Prop:End-iso");
    rep.data["module"] = m.label();
    if (k.cols() == 0) {
        rep.add("M^* = 0 only for M = 0", minimal_generators(m) == 0);
        return rep;
    }
    LinearMap kmap(k, scope, rt_map.truncated());
    Matrix r = kernel_gens(kmap);
    if (r.cols() == 0) {
        r = Matrix(pair.ring(), k.cols(), 1);
        if (k.grading()) r.set_grading(Grading{k.grading()->cols, {k.grading()->cols[0]}});
    }
    PresentedModule dual(r, m.label() + "^*");
    auto end1 = hom_presentation(m, m, scope);
    auto end2 = hom_presentation(dual, dual, scope);
    rep.scope = scope_string(end2.mode, scope.degree_bound);
    auto eps = [&](const Matrix& psi) -> std::optional<Matrix> {
        Matrix w(pair.ring(), k.cols(), k.cols());
        Matrix img = psi.transpose() * k;
        for (std::size_t l = 0; l < k.cols(); ++l) {
            auto sol = kmap.solve(img.col_entries(l));
            if (!sol) return std::nullopt;
            for (std::size_t i = 0; i < k.cols(); ++i) w(i, l) = (*sol)[i];
        }
        return w;
    };
    std::vector<Matrix> ws;
    bool defined = true;
    for (const auto& g : end1.generators) {
        auto w = eps(g);
        defined = defined && w.has_value();
        ws.push_back(w ? *w : Matrix(pair.ring(), k.cols(), k.cols()));
    }
    rep.add("epsilon defined on generators", defined);
    if (!defined) return rep;
    bool zero_ok = true;
    for (std::size_t c = 0; c < end1.zero_maps.cols(); ++c) {
        auto w = eps(unvectorize(pair.ring(), end1.zero_maps.col_entries(c), end1.rows(), end1.cols()));
        zero_ok = zero_ok && w && end2.is_zero_class(*w);
    }
    rep.add("epsilon kills rho M(A)", zero_ok);
    rep.add("epsilon bijective", verify_hom_sequence(end2, ws, end1.relations, "Prop:End-iso"));
    bool anti = true;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = 0; j < ws.size(); ++j) {
            auto w = eps(end1.generators[i] * end1.generators[j]);
            anti = anti && w && end2.is_zero_class(*w - ws[j] * ws[i]);
            ++pairs;
        }
    rep.add("epsilon(alpha beta) = epsilon(beta) epsilon(alpha)", anti, Json{{"pairs", pairs}});
    return rep;
}

namespace detail {

/// Matrix of Y -> rho Y on n x r matrices Y, vectorized row-major.
inline Matrix left_action(const Matrix& rho, std::size_t r, const std::optional<Grading>& g, const std::vector<int>& f) {
    std::size_t m = rho.rows(), n = rho.cols();
    Matrix out(rho.ring(), m * r, n * r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < r; ++l) out(i * r + l, j * r + l) = rho(i, j);
    if (g) {
        Grading og;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < r; ++l) og.rows.push_back(g->rows[i] - f[l]);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < r; ++l) og.cols.push_back(g->cols[j] - f[l]);
        out.set_grading(std::move(og));
    }
    return out;
}

/// Matrix of Phi -> Phi d on m x r matrices Phi, vectorized row-major.
inline Matrix right_action(const Matrix& d, std::size_t m, const std::vector<int>& s, const std::optional<Grading>& g) {
    std::size_t r = d.rows(), r2 = d.cols();
    Matrix out(d.ring(), m * r2, m * r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t l = 0; l < r2; ++l) out(i * r2 + l, i * r + k) = d(k, l);
    if (g) {
        Grading og;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < r2; ++l) og.rows.push_back(s[i] - g->cols[l]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < r; ++k) og.cols.push_back(s[i] - g->rows[k]);
        out.set_grading(std::move(og));
    }
    return out;
}

}  // namespace detail

/// Lengths of Ext^i(M, N) computed from a free resolution of M:
/// one entry per degree on the graded backend, a single entry otherwise.
struct ExtLengths {
    SliceMode mode = SliceMode::Whole;
    std::map<int, int> lengths;
    int total() const {
        int t = 0;
        for (const auto& [d, l] : lengths) t += l;
        return t;
    }
};

/// resolution[0] presents M; resolution[k] : F(k+1) -> F(k). Needs i + 1 maps.
/// `degrees` lists the degrees to evaluate on the graded backend.
inline ExtLengths ext_lengths(const std::vector<Matrix>& resolution, const PresentedModule& n, int i,
                              const std::vector<int>& degrees, Scope scope = {}) {
    if (i < 0 || static_cast<int>(resolution.size()) < i + 1) throw InvalidResolution("resolution too short for Ext^" + std::to_string(i));
    const auto& ring = n.ring();
    const Matrix& rho = n.presentation();
    std::optional<Grading> gn;
    bool graded = false;
    if (ring->is_graded()) {
        gn = detail::grading_of(rho);
        graded = gn.has_value();
        for (int k = 0; k <= i && graded; ++k) graded = resolution[k].grading() && resolution[k].is_homogeneous();
        if (!graded) throw NonHomogeneous("Ext lengths need homogeneous data on the graded backend");
    }
    std::size_t m = rho.rows();
    std::vector<int> s = graded ? gn->rows : std::vector<int>(m, 0);
    const Matrix& dout = resolution[i];
    std::size_t r = dout.rows();
    std::vector<int> f = graded ? dout.grading()->rows : std::vector<int>(r, 0);
    std::optional<Grading> gout = graded ? dout.grading() : std::nullopt;
    Matrix t_out = detail::right_action(dout, m, s, gout);
    Matrix r_out = detail::left_action(rho, dout.cols(), gn, graded ? gout->cols : std::vector<int>(dout.cols(), 0));
    Matrix z = hstack(t_out, -r_out);
    Matrix r_mid = detail::left_action(rho, r, gn, f);
    Matrix b = r_mid;
    if (i > 0) {
        const Matrix& din = resolution[i - 1];
        b = hstack(detail::right_action(din, m, s, graded ? din.grading() : std::nullopt), r_mid);
    }
    LinearMap zmap(z, scope), bmap(b, scope);
    ExtLengths out;
    out.mode = zmap.mode();
    std::vector<int> shifts = graded ? t_out.grading()->cols : std::vector<int>(m * r, 0);
    auto at = [&](int d) {
        Layout lay(ring, m * r, shifts, out.mode, out.mode == SliceMode::Degree ? d : scope.degree_bound);
        auto [layout, rows] = zmap.kernel_rows(d);
        (void)layout;
        std::vector<zn::Row> proj;
        for (const auto& row : *rows) proj.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(lay.size()));
        auto h = zn::howell_form(std::move(proj), lay.size(), ring->modulus());
        return zn::span_length(h, ring->modulus(), ring->p()) - bmap.image_length(d);
    };
    if (out.mode == SliceMode::Degree) {
        for (int d : degrees) out.lengths[d] = at(d);
    } else {
        out.lengths[0] = at(0);
    }
    return out;
}

namespace detail {

/// t with left[d] = right[d + t] for all d, both supports strictly inside the
/// evaluated window (so nothing is cut off); smallest |t| wins.
inline std::optional<int> matching_shift(const std::map<int, int>& left, const std::map<int, int>& right) {
    if (left.empty() || right.empty()) return left == right ? std::optional<int>(0) : std::nullopt;
    int lo = left.begin()->first, hi = left.rbegin()->first;
    auto support = [&](const std::map<int, int>& m) {
        std::vector<int> s;
        for (const auto& [d, v] : m)
            if (v) s.push_back(d);
        return s;
    };
    auto ls = support(left), rs = support(right);
    if (ls.size() != rs.size()) return std::nullopt;
    if (ls.empty()) return 0;
    if (ls.front() == lo || ls.back() == hi || rs.front() == lo || rs.back() == hi) return std::nullopt;
    int t = rs.front() - ls.front();
    for (std::size_t k = 0; k < ls.size(); ++k)
        if (rs[k] - ls[k] != t || left.at(ls[k]) != right.at(rs[k])) return std::nullopt;
    return t;
}

}  // namespace detail

/// Ext^i swaps: (a) Ext(H_b,G_a) = Ext(H_a,G_b), (b) Ext(G_a,H_b) = Ext(G_b,H_a),
/// (c) Ext(G_a,G_b) = Ext(H_b,H_a), compared by length per degree for 1 <= i <= i_max.
inline VerificationReport verify_ext_swap(const ExactZeroDivisorPair& pair, const Element& a, const Element& b, int i_max,
                                          Scope scope = {}) {
    detail::require_pair(pair, a);
    detail::require_pair(pair, b);
    VerificationReport rep("Cor:Ext");
    auto res = [&](const Element& c, bool g) { return periodic_complex(pair, c, i_max + 1, g).differentials; };
    struct Side {
        std::string label;
        std::vector<Matrix> resolution;
        PresentedModule target;
    };
    struct Part {
        std::string name;
        Side left, right;
    };
    std::vector<Part> parts{
        {"a", {"Ext(" + detail::H(b) + "," + detail::G(a) + ")", res(b, false), module_G(pair, a)},
         {"Ext(" + detail::H(a) + "," + detail::G(b) + ")", res(a, false), module_G(pair, b)}},
        {"b", {"Ext(" + detail::G(a) + "," + detail::H(b) + ")", res(a, true), module_H(pair, b)},
         {"Ext(" + detail::G(b) + "," + detail::H(a) + ")", res(b, true), module_H(pair, a)}},
        {"c", {"Ext(" + detail::G(a) + "," + detail::G(b) + ")", res(a, true), module_G(pair, b)},
         {"Ext(" + detail::H(b) + "," + detail::H(a) + ")", res(b, false), module_H(pair, a)}},
    };
    std::vector<int> degrees;
    if (pair.ring()->is_graded())
        for (int d = -scope.degree_bound; d <= scope.degree_bound; ++d) degrees.push_back(d);
    for (const auto& part : parts) {
        for (int i = 1; i <= i_max; ++i) {
            auto l = ext_lengths(part.left.resolution, part.left.target, i, degrees, scope);
            auto r = ext_lengths(part.right.resolution, part.right.target, i, degrees, scope);
            rep.scope = l.mode == SliceMode::Whole ? "exhaustive" : "per-degree |d| <= " + std::to_string(scope.degree_bound);
            Json detail{{"left", part.left.label}, {"right", part.right.label}};
            if (l.mode == SliceMode::Whole) {
                detail["left_length"] = l.total();
                detail["right_length"] = r.total();
            } else {
                Json ld = Json::array(), rd = Json::array();
                for (int d : degrees) {
                    ld.push_back(l.lengths[d]);
                    rd.push_back(r.lengths[d]);
                }
                detail["degrees"] = Json::array({degrees.front(), degrees.back()});
                detail["left_dims"] = ld;
                detail["right_dims"] = rd;
            }
            bool ok = l.lengths == r.lengths;
            if (l.mode == SliceMode::Degree) {
                auto shift = detail::matching_shift(l.lengths, r.lengths);
                ok = shift.has_value();
                if (shift) detail["degree_shift"] = *shift;
            }
            rep.add("(" + part.name + ") i=" + std::to_string(i), ok, detail);
        }
    }
    return rep;
}

}  // namespace totref
