#pragma once

// Hom(Coker rho1, Coker rho2) = Q / rho2 M(A) where
// Q = { psi : psi rho1 = rho2 xi for some xi }.
// Matrices psi (m2 x m1) are handled as vectors of length m2*m1, entry (i, j)
// at position i*m1 + j.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "totref/family.hpp"
#include "totref/module.hpp"

namespace totref {

inline Vec vectorize(const Matrix& m) {
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

inline Matrix unvectorize(const RingPtr& ring, const Vec& v, std::size_t rows, std::size_t cols) {
    if (v.size() < rows * cols) throw DimensionMismatch("vector too short to reshape");
    Matrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

namespace detail {

/// Grading of a presentation when it has one (given or inferred).
inline std::optional<Grading> grading_of(const Matrix& rho) {
    if (rho.grading() && rho.is_homogeneous()) return rho.grading();
    return infer_grading(rho);
}

}  // namespace detail

struct HomPresentation {
    PresentedModule source, target;
    SliceMode mode = SliceMode::Whole;
    Scope scope;
    std::vector<Matrix> generators;  // psi, target gens x source gens
    std::vector<Matrix> lifts;       // xi with psi rho1 = rho2 xi
    Matrix relations;                // Hom = Coker(relations), generator degrees in the rows
    std::vector<int> psi_shifts;     // shifts of the vectorized psi space
    Matrix zero_maps;                // columns span rho2 M(A), vectorized

    const RingPtr& ring() const { return source.ring(); }
    std::size_t rows() const { return target.num_generators(); }
    std::size_t cols() const { return source.num_generators(); }
    bool filtration() const { return mode == SliceMode::Filtration; }

    PresentedModule module(std::string label = "") const { return PresentedModule(relations, std::move(label)); }

    /// psi factors through rho2: the class of psi is zero.
    bool is_zero_class(const Matrix& psi) const {
        return LinearMap(zero_maps, scope, filtration()).contains(vectorize(psi));
    }

    /// psi rho1 lands in the image of rho2.
    std::optional<Matrix> lift(const Matrix& psi) const {
        return solve_right(with_mode(target.presentation()), psi * source.presentation(), scope);
    }

    /// Generator matrix [psi_1 ... psi_g | J] over the vectorized space.
    Matrix span_matrix(const std::vector<Matrix>& psis, const std::vector<int>& degrees) const {
        Matrix m(ring(), rows() * cols(), psis.size());
        for (std::size_t c = 0; c < psis.size(); ++c) {
            Vec v = vectorize(psis[c]);
            for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
        }
        if (mode == SliceMode::Degree) m.set_grading(Grading{psi_shifts, degrees});
        return hstack(m, zero_maps);
    }

    /// Degree of a homogeneous psi in the Hom module; nullopt when psi is zero or mixed.
    std::optional<int> degree_of(const Matrix& psi) const {
        if (mode != SliceMode::Degree) return 0;
        auto ds = vector_degrees(vectorize(psi), psi_shifts);
        if (ds.size() != 1) return std::nullopt;
        return ds[0];
    }

    /// Every element of Q is, modulo rho2 M(A), an A-combination of the given maps.
    bool spans_hom(const std::vector<Matrix>& psis, const std::vector<int>& degrees) const {
        LinearMap span(span_matrix(psis, degrees), scope, filtration());
        for (const auto& g : generators)
            if (!span.contains(vectorize(g))) return false;
        return true;
    }

    Matrix with_mode(const Matrix& m) const {
        if (mode == SliceMode::Degree) return m;
        return m.with_grading(std::nullopt);
    }
};

/// Presentation of Hom(source, target) by generators and relations.
inline HomPresentation hom_presentation(const PresentedModule& src, const PresentedModule& tgt, Scope scope = {}) {
    const auto& ring = src.ring();
    if (!ring->same_as(*tgt.ring())) throw RingMismatch("modules over different rings");
    const Matrix& r1 = src.presentation();
    const Matrix& r2 = tgt.presentation();
    std::size_t m1 = r1.rows(), n1 = r1.cols(), m2 = r2.rows(), n2 = r2.cols();

    HomPresentation hp;
    hp.source = src;
    hp.target = tgt;
    hp.scope = scope;
    std::optional<Grading> g1, g2;
    if (ring->is_finite()) {
        hp.mode = SliceMode::Whole;
    } else {
        g1 = detail::grading_of(r1);
        g2 = detail::grading_of(r2);
        hp.mode = g1 && g2 ? SliceMode::Degree : SliceMode::Filtration;
    }
    bool graded = hp.mode == SliceMode::Degree;
    auto s1 = [&](std::size_t j) { return graded ? g1->rows[j] : 0; };
    auto c1 = [&](std::size_t l) { return graded ? g1->cols[l] : 0; };
    auto s2 = [&](std::size_t i) { return graded ? g2->rows[i] : 0; };
    auto c2 = [&](std::size_t k) { return graded ? g2->cols[k] : 0; };

    std::size_t npsi = m2 * m1, nxi = n2 * n1;
    Matrix t(ring, m2 * n1, npsi + nxi);
    Grading tg;
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t l = 0; l < n1; ++l) tg.rows.push_back(s2(i) - c1(l));
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m1; ++j) tg.cols.push_back(s2(i) - s1(j));
    for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n1; ++l) tg.cols.push_back(c2(k) - c1(l));
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t l = 0; l < n1; ++l) {
            std::size_t row = i * n1 + l;
            for (std::size_t j = 0; j < m1; ++j) t(row, i * m1 + j) = r1(j, l);
            for (std::size_t k = 0; k < n2; ++k) t(row, npsi + k * n1 + l) = -r2(i, k);
        }
    hp.psi_shifts.assign(tg.cols.begin(), tg.cols.begin() + static_cast<std::ptrdiff_t>(npsi));
    if (graded) t.set_grading(tg);

    Matrix j(ring, npsi, n2 * m1);
    Grading jg{hp.psi_shifts, {}};
    for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t jj = 0; jj < m1; ++jj) jg.cols.push_back(c2(k) - s1(jj));
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t jj = 0; jj < m1; ++jj)
            for (std::size_t k = 0; k < n2; ++k) j(i * m1 + jj, k * m1 + jj) = r2(i, k);
    if (graded) j.set_grading(jg);
    hp.zero_maps = j;

    bool force = hp.mode == SliceMode::Filtration;
    LinearMap tmap(t, scope, force);
    std::vector<Candidate> cands;
    for (int d : tmap.source_degrees())
        for (auto& v : tmap.kernel_slice(d)) {
            v.resize(npsi);
            cands.push_back({std::move(v), d});
        }
    Matrix psi = minimize_generators(ring, npsi, hp.psi_shifts, std::move(cands), hp.mode, scope, &hp.zero_maps);
    std::vector<int> gdeg;
    for (std::size_t c = 0; c < psi.cols(); ++c) {
        Matrix p = unvectorize(ring, psi.col_entries(c), m2, m1);
        auto xi = hp.lift(p);
        if (!xi) throw EquivalenceViolation("computed homomorphism has no lift");
        hp.generators.push_back(std::move(p));
        hp.lifts.push_back(std::move(*xi));
        gdeg.push_back(graded ? psi.grading()->cols[c] : 0);
    }

    std::size_t g = hp.generators.size();
    if (g == 0) {
        // Hom = 0: one generator killed by a unit
        Matrix rel = Matrix::identity(ring, 1);
        if (graded) rel.set_grading(Grading{{0}, {0}});
        hp.relations = rel;
        return hp;
    }
    LinearMap big(hp.span_matrix(hp.generators, gdeg), scope, force);
    std::vector<Candidate> rels;
    for (int d : big.source_degrees())
        for (auto& v : big.kernel_slice(d)) {
            v.resize(g);
            rels.push_back({std::move(v), d});
        }
    Matrix rel = minimize_generators(ring, g, gdeg, std::move(rels), hp.mode, scope);
    if (rel.cols() == 0) {
        rel = Matrix(ring, g, 1);
        if (graded) rel.set_grading(Grading{gdeg, {gdeg[0]}});
    }
    hp.relations = rel;
    return hp;
}

/// Element-wise description of Hom over a finite ring: every homomorphism as
/// the tuple of canonical representatives of the images of the generators.
struct HomOracle {
    std::size_t cardinality = 0;
    std::set<std::vector<std::vector<Int>>> maps;
};

namespace detail {

/// Coefficient vectors of all of A^m on the finite backend.
inline std::vector<Vec> enumerate_free(const RingPtr& ring, std::size_t m, std::size_t budget) {
    auto carrier = enumerate_carrier(ring, budget);
    std::vector<Vec> out{Vec{}};
    for (std::size_t i = 0; i < m; ++i) {
        if (out.size() * carrier.size() > budget) throw TooLarge("free module too large to enumerate");
        std::vector<Vec> next;
        for (const auto& v : out)
            for (const auto& e : carrier) {
                Vec w = v;
                w.push_back(e);
                next.push_back(std::move(w));
            }
        out = std::move(next);
    }
    return out;
}

inline std::vector<Int> flat_coords(const Vec& v) {
    std::vector<Int> out;
    for (const auto& e : v) {
        const auto& basis = e.ring()->carrier_basis();
        for (const auto& m : basis) out.push_back(e.coefficient(m));
    }
    return out;
}

}  // namespace detail

/// Canonical forms in Coker(rho) by brute force: the lexicographically
/// smallest coordinate vector of each coset of the image.
class CosetTable {
public:
    CosetTable(const Matrix& rho, std::size_t budget = 1u << 20) : ring_(rho.ring()) {
        auto sources = detail::enumerate_free(ring_, rho.cols(), budget);
        std::set<std::vector<Int>> img;
        for (const auto& v : sources) img.insert(detail::flat_coords(apply_matrix(rho, v)));
        image_.assign(img.begin(), img.end());
        auto all = detail::enumerate_free(ring_, rho.rows(), budget);
        for (const auto& v : all) {
            auto c = detail::flat_coords(v);
            auto canon = canonical_coords(c);
            reps_.insert(canon);
        }
    }

    std::vector<Int> canonical(const Vec& v) const { return canonical_coords(detail::flat_coords(v)); }
    std::size_t size() const { return reps_.size(); }
    const std::set<std::vector<Int>>& representatives() const { return reps_; }
    bool is_zero(const Vec& v) const {
        auto c = canonical(v);
        return std::all_of(c.begin(), c.end(), [](Int x) { return x == 0; });
    }

    Vec to_vec(const std::vector<Int>& coords, std::size_t m) const {
        const auto& basis = ring_->carrier_basis();
        Vec v = zero_vec(ring_, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (coords[i * basis.size() + b]) v[i].add_term(basis[b], coords[i * basis.size() + b]);
        return v;
    }

private:
    std::vector<Int> canonical_coords(const std::vector<Int>& c) const {
        Int n = ring_->modulus();
        std::vector<Int> best;
        for (const auto& w : image_) {
            std::vector<Int> s(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) s[i] = zn::reduce(c[i] + w[i], n);
            if (best.empty() || s < best) best = std::move(s);
        }
        return best;
    }

    RingPtr ring_;
    std::vector<std::vector<Int>> image_;
    std::set<std::vector<Int>> reps_;
};

/// Enumerates all generator images and keeps the well-defined ones.
inline HomOracle brute_force_hom_oracle(const PresentedModule& src, const PresentedModule& tgt,
                                        std::size_t budget = 1u << 22) {
    const auto& ring = src.ring();
    if (!ring->is_finite()) throw WrongBackend("the brute-force oracle needs a finite ring");
    CosetTable table(tgt.presentation());
    std::vector<std::vector<Int>> reps(table.representatives().begin(), table.representatives().end());
    std::size_t m1 = src.num_generators(), m2 = tgt.num_generators();
    double total = std::pow(static_cast<double>(reps.size()), static_cast<double>(m1));
    if (total > static_cast<double>(budget)) throw TooLarge("too many candidate homomorphisms");
    const Matrix& r1 = src.presentation();
    HomOracle out;
    std::vector<std::size_t> idx(m1, 0);
    std::vector<Vec> images(m1);
    while (true) {
        for (std::size_t j = 0; j < m1; ++j) images[j] = table.to_vec(reps[idx[j]], m2);
        bool ok = true;
        for (std::size_t l = 0; l < r1.cols() && ok; ++l) {
            Vec sum = zero_vec(ring, m2);
            for (std::size_t j = 0; j < m1; ++j)
                for (std::size_t i = 0; i < m2; ++i) sum[i] += r1(j, l) * images[j][i];
            ok = table.is_zero(sum);
        }
        if (ok) {
            std::vector<std::vector<Int>> key;
            for (std::size_t j = 0; j < m1; ++j) key.push_back(reps[idx[j]]);
            out.maps.insert(std::move(key));
        }
        std::size_t j = 0;
        for (; j < m1; ++j) {
            if (++idx[j] < reps.size()) break;
            idx[j] = 0;
        }
        if (j == m1) break;
    }
    out.cardinality = out.maps.size();
    return out;
}

/// All homomorphisms described by a presentation, in the oracle's canonical form.
inline std::set<std::vector<std::vector<Int>>> enumerate_presented_homs(const HomPresentation& hp,
                                                                        std::size_t budget = 1u << 22) {
    const auto& ring = hp.ring();
    if (!ring->is_finite()) throw WrongBackend("enumeration needs a finite ring");
    CosetTable table(hp.target.presentation());
    Int n = ring->modulus();
    std::size_t g = hp.generators.size();
    std::size_t m1 = hp.cols(), m2 = hp.rows();
    // A-combinations of the generators: coefficients run over the carrier
    Layout lay(ring, g, std::vector<int>(g, 0), SliceMode::Whole, 0);
    std::vector<zn::Row> full;
    for (std::size_t s = 0; s < lay.size(); ++s) {
        zn::Row r(lay.size(), 0);
        r[s] = 1;
        full.push_back(std::move(r));
    }
    auto howell = zn::howell_form(std::move(full), lay.size(), n);
    std::set<std::vector<std::vector<Int>>> out;
    std::size_t count = 0;
    zn::for_each_in_span(howell, lay.size(), n, [&](const zn::Row& row) {
        if (++count > budget) throw TooLarge("too many coefficient tuples");
        Vec coeff = lay.vector_from(row);
        Matrix psi(ring, m2, m1);
        for (std::size_t c = 0; c < g; ++c)
            if (!coeff[c].is_zero()) psi = psi + hp.generators[c].scaled(coeff[c]);
        std::vector<std::vector<Int>> key;
        for (std::size_t jj = 0; jj < m1; ++jj) key.push_back(table.canonical(psi.col_entries(jj)));
        out.insert(std::move(key));
    });
    return out;
}

}  // namespace totref

namespace totref {

/// Exactness of A^r -rel-> A^g -pi-> Hom(M, N) -> 0 where pi(e_c) = [psis[c]].
inline VerificationReport verify_hom_sequence(const HomPresentation& hp, const std::vector<Matrix>& psis, const Matrix& rel,
                                              const std::string& paper_ref) {
    VerificationReport rep(paper_ref, scope_string(hp.mode, hp.scope.degree_bound));
    std::size_t g = psis.size();
    if (rel.rows() != g) throw DimensionMismatch("relation matrix does not match the number of maps");
    bool lifts = true;
    for (std::size_t c = 0; c < g; ++c) lifts = hp.lift(psis[c]).has_value() && lifts;
    rep.add("maps are homomorphisms", lifts);
    std::vector<int> degs(g, 0);
    Matrix graded_rel = hp.with_mode(rel);
    if (hp.mode == SliceMode::Degree) {
        for (std::size_t c = 0; c < g; ++c) {
            auto d = hp.degree_of(psis[c]);
            if (!d) throw NonHomogeneous("map " + psis[c].to_string() + " is not homogeneous");
            degs[c] = *d;
        }
        auto gr = infer_grading(rel, degs);
        if (!gr) throw NonHomogeneous("relation matrix incompatible with the degrees of the maps");
        graded_rel.set_grading(gr);
        rep.data["generator_degrees"] = degs;
    }
    auto add = [&](const std::string& name, bool ok, Json detail = nullptr) {
        if (hp.filtration() && !ok) return rep.add_inconclusive(name, false, std::move(detail));
        return rep.add(name, ok, std::move(detail));
    };
    add("surjective", hp.spans_hom(psis, degs));
    bool composite = true;
    for (std::size_t l = 0; l < rel.cols(); ++l) {
        Matrix sum(hp.ring(), hp.rows(), hp.cols());
        for (std::size_t c = 0; c < g; ++c)
            if (!rel(c, l).is_zero()) sum = sum + psis[c].scaled(rel(c, l));
        composite = hp.is_zero_class(sum) && composite;
    }
    add("pi rel = 0", composite);
    LinearMap span(hp.span_matrix(psis, degs), hp.scope, hp.filtration());
    LinearMap image(graded_rel, hp.scope, hp.filtration());
    std::size_t checked = 0;
    std::optional<Vec> witness;
    for (int d : span.source_degrees()) {
        for (auto& v : span.kernel_slice(d)) {
            v.resize(g);
            ++checked;
            if (!image.contains(v)) {
                witness = std::move(v);
                break;
            }
        }
        if (witness) break;
    }
    Json kd{{"kernel_vectors_checked", checked}};
    if (witness) kd["witness"] = to_json(*witness);
    add("ker pi = im rel", !witness, kd);
    return rep;
}

}  // namespace totref
