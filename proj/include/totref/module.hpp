#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "totref/ideal.hpp"
#include "totref/linalg.hpp"
#include "totref/report.hpp"

namespace totref {

/// The module Coker(rho : A^n -> A^m). On the graded backend the row degrees
/// of rho's grading are the degrees of the m generators.
class PresentedModule {
public:
    PresentedModule() = default;
    explicit PresentedModule(Matrix rho, std::string label = "") : rho_(std::move(rho)), label_(std::move(label)) {
        if (rho_.rows() == 0) throw DimensionMismatch("a presentation needs at least one generator");
        if (rho_.cols() == 0) {
            // free module: present it by a zero column
            Matrix z(rho_.ring(), rho_.rows(), 1);
            if (rho_.grading()) z.set_grading(Grading{rho_.grading()->rows, {rho_.grading()->rows[0]}});
            rho_ = std::move(z);
        }
    }

    static PresentedModule free(const RingPtr& ring, std::size_t m, std::optional<std::vector<int>> shifts = std::nullopt,
                                std::string label = "") {
        Matrix z(ring, m, 0);
        if (shifts) z.set_grading(Grading{*shifts, {}});
        return PresentedModule(std::move(z), std::move(label));
    }

    const RingPtr& ring() const { return rho_.ring(); }
    const Matrix& presentation() const { return rho_; }
    std::size_t num_generators() const { return rho_.rows(); }
    std::size_t num_relations() const { return rho_.cols(); }
    const std::string& label() const { return label_; }
    std::optional<std::vector<int>> shifts() const {
        if (rho_.grading()) return rho_.grading()->rows;
        return std::nullopt;
    }

private:
    Matrix rho_;
    std::string label_;
};

/// F_p-rank of a matrix of residues.
inline int residue_rank(const Matrix& m) {
    Int p = m.ring()->p();
    std::vector<zn::Row> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        zn::Row r;
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(zn::reduce(m(i, j).constant_term(), p));
        rows.push_back(std::move(r));
    }
    return static_cast<int>(zn::howell_form(std::move(rows), m.cols(), p).size());
}

/// mu(M): the minimal number of generators.
inline int minimal_generators(const PresentedModule& m) {
    return static_cast<int>(m.num_generators()) - residue_rank(m.presentation());
}

namespace detail {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        f(static_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Fitt_j(M): the ideal of (m-j)-minors of the presentation.
inline IdealGenerators fitting_ideal(const PresentedModule& mod, std::size_t j) {
    const auto& rho = mod.presentation();
    const auto& ring = mod.ring();
    std::size_t m = rho.rows(), n = rho.cols();
    if (j >= m) return {Element::constant(ring, 1)};
    std::size_t t = m - j;
    IdealGenerators out;
    detail::for_each_subset(m, t, [&](const std::vector<std::size_t>& rs) {
        detail::for_each_subset(n, t, [&](const std::vector<std::size_t>& cs) {
            Matrix minor(ring, t, t);
            for (std::size_t a = 0; a < t; ++a)
                for (std::size_t b = 0; b < t; ++b) minor(a, b) = rho(rs[a], cs[b]);
            Element d = determinant(minor);
            if (!d.is_zero() && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        });
    });
    return out;
}

/// M^* = Hom(M, A) presented as Coker(rho^t). `next` is the differential
/// A^q -> A^n following rho in an exact complex of frees; the dual complex
/// is checked exact at both ends of rho^t, which makes ker(rho^t) = im(next^t)
/// isomorphic to Coker(rho^t).
inline PresentedModule dual_presentation(const PresentedModule& mod, const Matrix& next, Scope scope = {}) {
    const auto& rho = mod.presentation();
    if (!(rho * next).is_zero()) throw NotAComplex("supplied differential does not compose to zero with the presentation");
    auto at_source = check_exact_at(next.transpose(), rho.transpose(), scope);
    auto at_target = check_exact_at(rho.transpose(), next.transpose(), scope);
    if (!at_source.pass || !at_target.pass)
        throw PreconditionFailed("dual complex is not exact around " + (mod.label().empty() ? std::string("M") : mod.label()));
    return PresentedModule(rho.transpose(), mod.label().empty() ? "" : mod.label() + "^*");
}

/// Ext^i(M, A) for 1 <= i <= i_max from a free resolution
/// resolution[0] = rho : F1 -> F0, resolution[k] : F(k+1) -> F(k).
inline VerificationReport ext_vanishing(const PresentedModule& mod, const std::vector<Matrix>& resolution, int i_max,
                                        Scope scope = {}) {
    bool free_start = !resolution.empty() && resolution[0].cols() == 0 && resolution[0].rows() == mod.num_generators() &&
                      mod.presentation().is_zero();
    if (resolution.empty() || (!(resolution[0] == mod.presentation()) && !free_start))
        throw InvalidResolution("resolution must start with the presentation matrix");
    if (static_cast<int>(resolution.size()) < i_max + 1)
        throw InvalidResolution("need " + std::to_string(i_max + 1) + " differentials for Ext up to " + std::to_string(i_max));
    VerificationReport rep("Def:totally-reflexive-1");
    for (std::size_t k = 1; k < resolution.size(); ++k) {
        const auto& d_in = resolution[k];
        const auto& d_out = resolution[k - 1];
        if (d_out.cols() != d_in.rows() || !(d_out * d_in).is_zero())
            throw InvalidResolution("differentials " + std::to_string(k) + " and " + std::to_string(k + 1) + " do not compose to zero");
        auto cert = check_exact_at(d_in, d_out, scope);
        if (!cert.pass && cert.mode != SliceMode::Filtration)
            throw InvalidResolution("resolution not exact at F" + std::to_string(k));
        rep.add("resolution exact at F" + std::to_string(k), cert);
    }
    for (int i = 1; i <= i_max; ++i) {
        auto cert = check_exact_at(resolution[i - 1].transpose(), resolution[i].transpose(), scope);
        rep.scope = scope_string(cert.mode, scope.degree_bound);
        rep.add("Ext^" + std::to_string(i) + "(M,A) = 0", cert);
    }
    return rep;
}

/// Checks that the natural map M -> M^** is an isomorphism. With K the
/// generators of M^* = ker(rho^t) and R the relations among them, the
/// biduality map is K^t, and it is bijective exactly when
/// A^n -rho-> A^m -K^t-> A^s -R^t-> A^t is exact at A^m and A^s.
inline VerificationReport biduality_check(const PresentedModule& mod, Scope scope = {}) {
    const auto& rho = mod.presentation();
    Matrix rt = rho.transpose();
    if (!rt.grading() && mod.ring()->is_graded()) {
        if (auto g = infer_grading(rho)) rt = rho.with_grading(g).transpose();
    }
    LinearMap rt_map(rt, scope);
    Matrix k = kernel_gens(rt_map);
    VerificationReport rep("Def:totally-reflexive-3", scope_string(rt_map.mode(), scope.degree_bound));
    rep.data["dual_generators"] = static_cast<int>(k.cols());
    if (k.cols() == 0) {
        // M^* = 0, so M^** = 0 and the map is bijective iff M = 0
        bool zero = minimal_generators(mod) == 0;
        rep.add("M = 0 when M^* = 0", zero);
        return rep;
    }
    Matrix r = kernel_gens(LinearMap(k, scope, rt_map.truncated()));
    rep.data["dual_relations"] = static_cast<int>(r.cols());
    Matrix kt = k.transpose();
    if (rho.grading() && kt.grading() && kt.grading()->cols != rho.grading()->rows) kt.set_grading(std::nullopt);
    Matrix rtr = r.cols() ? r.transpose() : Matrix(mod.ring(), 1, k.cols());
    if (!r.cols() && kt.grading()) rtr.set_grading(Grading{{kt.grading()->rows[0]}, kt.grading()->rows});
    rep.add("injective: ker K^t = im rho", check_exact_at(rho, kt, scope));
    rep.add("surjective: ker R^t = im K^t", check_exact_at(kt, rtr, scope));
    return rep;
}

/// dim_k of the degree-d part of M.
inline int hilbert_function(const PresentedModule& mod, int d, Scope scope = {}) {
    if (!mod.ring()->is_graded()) throw WrongBackend("Hilbert function needs the graded backend");
    auto shifts = mod.shifts();
    if (!shifts) throw NonHomogeneous("module " + mod.label() + " carries no generator degrees");
    const auto& rho = mod.presentation();
    Matrix graded = rho;
    if (!rho.is_homogeneous()) {
        auto g = infer_grading(rho, *shifts);
        if (!g) throw NonHomogeneous("presentation of " + mod.label() + " is not homogeneous");
        graded.set_grading(g);
    }
    LinearMap map(graded, scope);
    return static_cast<int>(map.target_layout(d).size()) - map.image_length(d);
}

/// Commuting square P * rho_M = rho_N * S with P, S invertible.
struct IsoWitness {
    Matrix target_change;  // P
    Matrix source_change;  // S
};

struct Invertibility {
    bool invertible = false;
    bool exact_inverse = false;
    std::optional<Matrix> inverse;
};

inline Invertibility check_invertible(const Matrix& p) {
    if (p.rows() != p.cols()) return {};
    Element det = determinant(p);
    if (!is_unit(det)) return {};
    auto inv = try_inverse(det);
    if (!inv) return {true, false, std::nullopt};
    Matrix q = adjugate(p).scaled(*inv);
    Matrix id = Matrix::identity(p.ring(), p.rows());
    if (!(p * q == id) || !(q * p == id)) return {};
    return {true, true, q};
}

inline VerificationReport verify_iso_by_witness(const PresentedModule& m, const PresentedModule& n, const IsoWitness& w) {
    VerificationReport rep("Obs:unit");
    const auto& p = w.target_change;
    const auto& s = w.source_change;
    if (p.rows() != n.num_generators() || p.cols() != m.num_generators() || s.rows() != n.num_relations() ||
        s.cols() != m.num_relations()) {
        rep.add("dimensions compatible", false);
        return rep;
    }
    rep.add("square commutes", p * m.presentation() == n.presentation() * s);
    for (const auto& [name, mat] : {std::pair<std::string, const Matrix*>{"P", &p}, {"S", &s}}) {
        auto inv = check_invertible(*mat);
        Json d{{"determinant", determinant(*mat).to_string()}};
        if (inv.inverse) d["inverse"] = to_json(*inv.inverse);
        if (inv.invertible && !inv.exact_inverse) {
            d["note"] = "determinant is a unit of the local ring; inverse exists in the localization";
            rep.notes.push_back(name + " inverted only after localization");
        }
        rep.add(name + " invertible", inv.invertible, d);
    }
    return rep;
}

}  // namespace totref
