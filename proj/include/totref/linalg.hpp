#pragma once

// Ring-linear algebra reduced to Z/n linear algebra on coefficient vectors.
//
// A free module A^m is cut into slices: the whole carrier (finite backend),
// one total degree at a time (graded backend, homogeneous maps), or all
// monomials of degree <= D (graded backend, non-homogeneous maps, i.e. the
// computation happens in A/m^{D+1}).

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "totref/error.hpp"
#include "totref/matrix.hpp"
#include "totref/ring.hpp"
#include "totref/zn.hpp"

namespace totref {

struct Scope {
    int degree_bound = 8;
};

enum class SliceMode { Whole, Degree, Filtration };

inline std::string mode_name(SliceMode m) {
    switch (m) {
        case SliceMode::Whole: return "exhaustive";
        case SliceMode::Degree: return "per-degree";
        case SliceMode::Filtration: return "filtration";
    }
    return "?";
}

using Vec = std::vector<Element>;

inline Vec zero_vec(const RingPtr& ring, std::size_t n) { return Vec(n, Element(ring)); }

inline bool is_zero_vec(const Vec& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

inline std::string vec_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

inline Matrix matrix_from_columns(const RingPtr& ring, std::size_t height, const std::vector<Vec>& cols) {
    Matrix m(ring, height, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < height; ++i) m(i, j) = cols[j][i];
    return m;
}

inline Vec apply_matrix(const Matrix& a, const Vec& v) {
    if (v.size() != a.cols()) throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " for " + a.shape());
    Vec out = zero_vec(a.ring(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
    return out;
}

/// Graded degree of a vector's terms in a free module with the given shifts.
inline std::vector<int> vector_degrees(const Vec& v, const std::vector<int>& shifts) {
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (const auto& [m, c] : v[i].terms()) out.push_back(total_degree(m) + shifts[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Basis of one slice of a free module: pairs (component, monomial).
class Layout {
public:
    Layout(const RingPtr& ring, std::size_t count, const std::vector<int>& shifts, SliceMode mode, int degree)
        : ring_(ring), count_(count) {
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<Exponents> monos;
            if (mode == SliceMode::Whole)
                monos = ring->carrier_basis();
            else if (mode == SliceMode::Degree)
                monos = ring->graded_basis(degree - shifts.at(i));
            else
                monos = ring->basis_up_to(degree);
            for (auto& m : monos) {
                index_.emplace(std::make_pair(i, m), slots_.size());
                slots_.emplace_back(i, std::move(m));
            }
        }
    }

    std::size_t size() const { return slots_.size(); }
    const std::vector<std::pair<std::size_t, Exponents>>& slots() const { return slots_; }

    /// Coefficients of the terms of v lying in this slice; other terms are dropped.
    zn::Row coords(const Vec& v) const {
        zn::Row row(slots_.size(), 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (const auto& [m, c] : v[i].terms()) {
                auto it = index_.find({i, m});
                if (it != index_.end()) row[it->second] = c;
            }
        return row;
    }

    Vec vector_from(const zn::Row& c) const {
        Vec v = zero_vec(ring_, count_);
        for (std::size_t s = 0; s < slots_.size(); ++s)
            if (c[s] != 0) v[slots_[s].first].add_term(slots_[s].second, c[s]);
        return v;
    }

private:
    RingPtr ring_;
    std::size_t count_;
    std::vector<std::pair<std::size_t, Exponents>> slots_;
    std::map<std::pair<std::size_t, Exponents>, std::size_t> index_;
};

/// Finds degree shifts making every nonzero entry of m homogeneous of degree
/// cols[j] - rows[i]. With `fixed_rows` the row degrees are prescribed.
/// Unconstrained nodes get degree 0.
inline std::optional<Grading> infer_grading(const Matrix& m, const std::optional<std::vector<int>>& fixed_rows = std::nullopt) {
    std::size_t r = m.rows(), c = m.cols();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (!m(i, j).is_zero() && !m(i, j).is_homogeneous()) return std::nullopt;
    std::vector<std::optional<int>> deg(r + c);
    std::queue<std::size_t> todo;
    if (fixed_rows) {
        if (fixed_rows->size() != r) throw DimensionMismatch("fixed row degrees of wrong length");
        for (std::size_t i = 0; i < r; ++i) {
            deg[i] = (*fixed_rows)[i];
            todo.push(i);
        }
    }
    auto propagate = [&]() -> bool {
        while (!todo.empty()) {
            std::size_t node = todo.front();
            todo.pop();
            int d = *deg[node];
            if (node < r) {
                for (std::size_t j = 0; j < c; ++j) {
                    if (m(node, j).is_zero()) continue;
                    int want = d + m(node, j).degree();
                    if (!deg[r + j]) {
                        deg[r + j] = want;
                        todo.push(r + j);
                    } else if (*deg[r + j] != want) {
                        return false;
                    }
                }
            } else {
                std::size_t j = node - r;
                for (std::size_t i = 0; i < r; ++i) {
                    if (m(i, j).is_zero()) continue;
                    int want = d - m(i, j).degree();
                    if (!deg[i]) {
                        deg[i] = want;
                        todo.push(i);
                    } else if (*deg[i] != want) {
                        return false;
                    }
                }
            }
        }
        return true;
    };
    if (!propagate()) return std::nullopt;
    for (std::size_t node = 0; node < r + c; ++node) {
        if (deg[node]) continue;
        deg[node] = 0;
        todo.push(node);
        if (!propagate()) return std::nullopt;
    }
    Grading g;
    for (std::size_t i = 0; i < r; ++i) g.rows.push_back(*deg[i]);
    for (std::size_t j = 0; j < c; ++j) g.cols.push_back(*deg[r + j]);
    return g;
}

/// A matrix prepared for repeated solving: slices and their Z/n systems are built lazily.
class LinearMap {
public:
    explicit LinearMap(Matrix m, Scope scope = {}, bool force_filtration = false)
        : m_(std::move(m)), scope_(scope) {
        const auto& ring = m_.ring();
        if (ring->is_finite()) {
            mode_ = SliceMode::Whole;
        } else if (force_filtration) {
            mode_ = SliceMode::Filtration;
        } else if (m_.grading()) {
            if (!m_.is_homogeneous()) throw NonHomogeneous("matrix " + m_.to_string() + " is not homogeneous for its grading");
            mode_ = SliceMode::Degree;
            grading_ = m_.grading();
        } else if (auto g = infer_grading(m_)) {
            mode_ = SliceMode::Degree;
            grading_ = g;
        } else {
            mode_ = SliceMode::Filtration;
        }
        if (!grading_) grading_ = Grading{std::vector<int>(m_.rows(), 0), std::vector<int>(m_.cols(), 0)};
    }

    const Matrix& matrix() const { return m_; }
    const RingPtr& ring() const { return m_.ring(); }
    SliceMode mode() const { return mode_; }
    bool truncated() const { return mode_ == SliceMode::Filtration; }
    const Grading& grading() const { return *grading_; }
    const Scope& scope() const { return scope_; }

    /// Degrees to visit for kernel computations on the source.
    std::vector<int> source_degrees() const { return degree_range(grading_->cols); }
    std::vector<int> target_degrees() const { return degree_range(grading_->rows); }

    /// Some x with m x = b, or nullopt. In per-degree mode b is split into
    /// homogeneous components and each is solved in its own degree.
    std::optional<Vec> solve(const Vec& b) const {
        if (b.size() != m_.rows()) throw DimensionMismatch("right-hand side of length " + std::to_string(b.size()) + " for " + m_.shape());
        if (mode_ != SliceMode::Degree) {
            const Slice& s = slice(0);
            auto x = s.system.solve(s.target.coords(b));
            if (!x) return std::nullopt;
            return s.source.vector_from(*x);
        }
        Vec total = zero_vec(ring(), m_.cols());
        for (int d : vector_degrees(b, grading_->rows)) {
            const Slice& s = slice(d);
            auto x = s.system.solve(s.target.coords(b));
            if (!x) return std::nullopt;
            Vec part = s.source.vector_from(*x);
            for (std::size_t j = 0; j < total.size(); ++j) total[j] += part[j];
        }
        return total;
    }

    bool contains(const Vec& b) const { return solve(b).has_value(); }

    int kernel_length(int degree) const {
        const Slice& s = slice(degree);
        return zn::span_length(s.system.kernel_basis(), ring()->modulus(), ring()->p());
    }
    int image_length(int degree) const {
        const Slice& s = slice(degree);
        return zn::span_length(s.system.image_basis(), ring()->modulus(), ring()->p());
    }
    /// Z/n-kernel basis of one slice, as ring vectors.
    std::vector<Vec> kernel_slice(int degree) const {
        const Slice& s = slice(degree);
        std::vector<Vec> out;
        for (const auto& row : s.system.kernel_basis()) out.push_back(s.source.vector_from(row));
        return out;
    }
    /// Howell rows of the kernel and the layout they live in.
    std::pair<const Layout*, const std::vector<zn::Row>*> kernel_rows(int degree) const {
        const Slice& s = slice(degree);
        return {&s.source, &s.system.kernel_basis()};
    }
    const Layout& target_layout(int degree) const { return slice(degree).target; }
    std::vector<zn::Row> image_rows(int degree) const { return slice(degree).system.image_basis(); }

private:
    struct Slice {
        Layout source, target;
        zn::ColumnSystem system;
    };

    std::vector<int> degree_range(const std::vector<int>& shifts) const {
        if (mode_ != SliceMode::Degree) return {0};
        if (shifts.empty()) return {};
        int lo = *std::min_element(shifts.begin(), shifts.end());
        int hi = *std::max_element(shifts.begin(), shifts.end()) + scope_.degree_bound;
        std::vector<int> out;
        for (int d = lo; d <= hi; ++d) out.push_back(d);
        return out;
    }

    const Slice& slice(int degree) const {
        int key = mode_ == SliceMode::Degree ? degree : 0;
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
        int layout_degree = mode_ == SliceMode::Filtration ? scope_.degree_bound : key;
        Layout src(ring(), m_.cols(), grading_->cols, mode_, layout_degree);
        Layout tgt(ring(), m_.rows(), grading_->rows, mode_, layout_degree);
        std::vector<zn::Row> columns;
        columns.reserve(src.size());
        for (const auto& [j, mono] : src.slots()) {
            Vec image = zero_vec(ring(), m_.rows());
            for (std::size_t i = 0; i < m_.rows(); ++i)
                if (!m_(i, j).is_zero()) image[i] = m_(i, j).times_monomial(mono);
            columns.push_back(tgt.coords(image));
        }
        zn::ColumnSystem sys(columns, tgt.size(), ring()->modulus());
        auto ptr = std::make_unique<Slice>(Slice{std::move(src), std::move(tgt), std::move(sys)});
        return *cache_.emplace(key, std::move(ptr)).first->second;
    }

    Matrix m_;
    Scope scope_;
    SliceMode mode_ = SliceMode::Whole;
    std::optional<Grading> grading_;
    mutable std::map<int, std::unique_ptr<Slice>> cache_;
};

namespace detail {

inline int p_valuation(Int c, Int p, int cap) {
    int v = 0;
    while (c != 0 && c % p == 0 && v < cap) {
        c /= p;
        ++v;
    }
    return v;
}

/// Ordering key for candidates on the finite backend: lower order first.
inline std::pair<int, int> candidate_order(const Vec& v, Int p, int k) {
    int deg = 1 << 20, val = k;
    for (const auto& e : v) {
        if (e.is_zero()) continue;
        int low = e.low_degree();
        int lv = k;
        for (const auto& [m, c] : e.terms())
            if (total_degree(m) == low) lv = std::min(lv, p_valuation(c, p, k));
        if (low < deg || (low == deg && lv < val)) {
            deg = low;
            val = lv;
        }
    }
    return {deg, val};
}

}  // namespace detail

struct Candidate {
    Vec v;
    int degree = 0;
};

/// Reduces candidates to an irredundant (hence minimal, the ring being
/// local or graded local) generating set of the submodule they span, modulo
/// the span of `base` when given. Returns the generators as the columns of a
/// height x g matrix; in per-degree mode the column degrees are the generator
/// degrees.
inline Matrix minimize_generators(const RingPtr& ring, std::size_t height, const std::vector<int>& row_shifts,
                                  std::vector<Candidate> cands, SliceMode mode, Scope scope,
                                  const Matrix* base = nullptr) {
    Int n = ring->modulus();
    std::vector<Candidate> fixed;
    if (base)
        for (std::size_t j = 0; j < base->cols(); ++j)
            fixed.push_back({base->col_entries(j), base->grading() ? base->grading()->cols[j] : 0});
    // rows spanning the part of A*g lying in the layout
    auto multiples = [&](const Candidate& g, const Layout& lay, int d, std::vector<zn::Row>& rows) {
        std::vector<Exponents> monos = mode == SliceMode::Degree ? ring->graded_basis(d - g.degree)
                                       : mode == SliceMode::Whole ? ring->carrier_basis()
                                                                  : ring->basis_up_to(scope.degree_bound);
        for (const auto& m : monos) {
            Vec w = g.v;
            for (auto& e : w)
                if (!e.is_zero()) e = e.times_monomial(m);
            rows.push_back(lay.coords(w));
        }
    };
    auto in_span = [&](const std::vector<zn::Row>& howell, const zn::Row& v) {
        zn::Row r = zn::reduce_mod_span(v, howell, n);
        return std::all_of(r.begin(), r.end(), [](Int c) { return c == 0; });
    };
    cands.erase(std::remove_if(cands.begin(), cands.end(), [](const Candidate& c) { return is_zero_vec(c.v); }),
                cands.end());
    std::vector<Candidate> kept;
    if (mode == SliceMode::Degree) {
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Candidate& a, const Candidate& b) { return a.degree < b.degree; });
        std::size_t i = 0;
        while (i < cands.size()) {
            int d = cands[i].degree;
            Layout lay(ring, height, row_shifts, mode, d);
            std::vector<zn::Row> rows;
            for (const auto& g : fixed) multiples(g, lay, d, rows);
            for (const auto& g : kept) multiples(g, lay, d, rows);
            auto howell = zn::howell_form(std::move(rows), lay.size(), n);
            for (; i < cands.size() && cands[i].degree == d; ++i) {
                zn::Row c = lay.coords(cands[i].v);
                if (in_span(howell, c)) continue;
                howell.push_back(std::move(c));
                howell = zn::howell_form(std::move(howell), lay.size(), n);
                kept.push_back(std::move(cands[i]));
            }
        }
    } else {
        Int p = ring->p();
        int k = ring->k();
        std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
            return detail::candidate_order(a.v, p, k) < detail::candidate_order(b.v, p, k);
        });
        Layout lay(ring, height, row_shifts, mode, scope.degree_bound);
        std::vector<zn::Row> base_rows;
        for (const auto& g : fixed) multiples(g, lay, 0, base_rows);
        auto howell = zn::howell_form(base_rows, lay.size(), n);
        for (auto& c : cands) {
            if (in_span(howell, lay.coords(c.v))) continue;
            multiples(c, lay, 0, howell);
            howell = zn::howell_form(std::move(howell), lay.size(), n);
            kept.push_back(std::move(c));
        }
        for (std::size_t i = kept.size(); i-- > 0;) {
            std::vector<zn::Row> rows = base_rows;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) multiples(kept[j], lay, 0, rows);
            if (in_span(zn::howell_form(std::move(rows), lay.size(), n), lay.coords(kept[i].v)))
                kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    std::vector<Vec> cols;
    std::vector<int> degs;
    for (auto& c : kept) {
        cols.push_back(std::move(c.v));
        degs.push_back(c.degree);
    }
    Matrix out = matrix_from_columns(ring, height, cols);
    if (mode == SliceMode::Degree) out.set_grading(Grading{row_shifts, degs});
    return out;
}

/// Module generators of ker(map) as the columns of a matrix.
inline Matrix kernel_gens(const LinearMap& map) {
    std::vector<Candidate> cands;
    for (int d : map.source_degrees())
        for (auto& v : map.kernel_slice(d)) cands.push_back({std::move(v), d});
    return minimize_generators(map.ring(), map.matrix().cols(), map.grading().cols, std::move(cands), map.mode(),
                               map.scope());
}

inline Matrix kernel_gens(const Matrix& rho, Scope scope = {}) { return kernel_gens(LinearMap(rho, scope)); }

/// Some xi with rho * xi = b, column by column.
inline std::optional<Matrix> solve_right(const Matrix& rho, const Matrix& b, Scope scope = {}) {
    if (rho.rows() != b.rows()) throw DimensionMismatch("solve_right with " + rho.shape() + " and " + b.shape());
    LinearMap map(rho, scope);
    Matrix xi(rho.ring(), rho.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto x = map.solve(b.col_entries(j));
        if (!x) return std::nullopt;
        for (std::size_t i = 0; i < rho.cols(); ++i) xi(i, j) = (*x)[i];
    }
    return xi;
}

struct SliceRecord {
    std::optional<int> degree;
    int kernel_length = 0;
    int image_length = 0;
    bool equal = true;
};

struct ExactnessCertificate {
    bool pass = true;
    SliceMode mode = SliceMode::Whole;
    int bound = 0;
    std::vector<SliceRecord> slices;
    std::optional<Vec> witness;  // kernel vector outside the image
};

/// Gradings for a composable pair (incoming then outgoing) agreeing on the middle module.
inline std::optional<std::pair<Grading, Grading>> infer_complex_grading(const Matrix& incoming, const Matrix& outgoing) {
    std::optional<Grading> gout = outgoing.grading();
    if (!gout || !outgoing.is_homogeneous()) gout = infer_grading(outgoing);
    if (!gout) return std::nullopt;
    std::optional<Grading> gin = incoming.grading();
    if (!gin || gin->rows != gout->cols || !incoming.is_homogeneous()) gin = infer_grading(incoming, gout->cols);
    if (!gin) return std::nullopt;
    return std::make_pair(*gin, *gout);
}

/// Compares ker(outgoing) with im(incoming) slice by slice.
inline ExactnessCertificate check_exact_at(const Matrix& incoming, const Matrix& outgoing, Scope scope = {}) {
    if (outgoing.cols() != incoming.rows())
        throw DimensionMismatch("cannot compose " + outgoing.shape() + " after " + incoming.shape());
    if (!(outgoing * incoming).is_zero()) throw NotAComplex("composite " + (outgoing * incoming).to_string() + " is nonzero");
    const auto& ring = outgoing.ring();
    std::optional<LinearMap> in, out;
    if (ring->is_graded()) {
        if (auto g = infer_complex_grading(incoming, outgoing)) {
            in.emplace(incoming.with_grading(g->first), scope);
            out.emplace(outgoing.with_grading(g->second), scope);
        } else {
            in.emplace(incoming.with_grading(std::nullopt), scope, true);
            out.emplace(outgoing.with_grading(std::nullopt), scope, true);
        }
    } else {
        in.emplace(incoming, scope);
        out.emplace(outgoing, scope);
    }
    ExactnessCertificate cert;
    cert.mode = out->mode();
    cert.bound = scope.degree_bound;
    for (int d : out->source_degrees()) {
        SliceRecord rec;
        if (cert.mode == SliceMode::Degree) rec.degree = d;
        rec.kernel_length = out->kernel_length(d);
        rec.image_length = in->image_length(d);
        rec.equal = rec.kernel_length == rec.image_length;
        if (!rec.equal && cert.pass) {
            cert.pass = false;
            for (auto& v : out->kernel_slice(d))
                if (!in->contains(v)) {
                    cert.witness = std::move(v);
                    break;
                }
        }
        cert.slices.push_back(rec);
    }
    return cert;
}

}  // namespace totref
