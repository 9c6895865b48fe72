#pragma once

#include <optional>
#include <string>
#include <vector>

#include "totref/error.hpp"
#include "totref/parse.hpp"
#include "totref/ring.hpp"

namespace totref {

/// Degrees of the basis vectors of target (rows) and source (cols) free modules.
/// A matrix is homogeneous for a grading when every nonzero entry (i, j) is
/// homogeneous of degree cols[j] - rows[i].
struct Grading {
    std::vector<int> rows;
    std::vector<int> cols;
    friend bool operator==(const Grading&, const Grading&) = default;
};

/// Dense matrix over a ring; acts on column vectors from the left.
class Matrix {
public:
    Matrix() = default;
    Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Element(ring_)) {}

    static Matrix identity(const RingPtr& ring, std::size_t n) {
        Matrix m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Element::constant(ring, 1);
        return m;
    }

    static Matrix from_elements(const RingPtr& ring, const std::vector<std::vector<Element>>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(ring, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw DimensionMismatch("ragged matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows) {
        std::vector<std::vector<Element>> el;
        for (const auto& row : rows) {
            el.emplace_back();
            for (const auto& s : row) el.back().push_back(parse_element(ring, s));
        }
        return from_elements(ring, el);
    }

    /// Column vector with the given entries.
    static Matrix column(const RingPtr& ring, const std::vector<Element>& v) {
        Matrix m(ring, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    const RingPtr& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Element& operator()(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
    const Element& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }

    const std::optional<Grading>& grading() const { return grading_; }
    Matrix& set_grading(std::optional<Grading> g) {
        if (g && (g->rows.size() != rows_ || g->cols.size() != cols_))
            throw DimensionMismatch("grading does not match matrix shape");
        grading_ = std::move(g);
        return *this;
    }
    Matrix with_grading(std::optional<Grading> g) const {
        Matrix m = *this;
        m.set_grading(std::move(g));
        return m;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    /// Checks homogeneity of every nonzero entry against the attached grading.
    bool is_homogeneous() const {
        if (!grading_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const auto& e = (*this)(i, j);
                if (e.is_zero()) continue;
                int want = grading_->cols[j] - grading_->rows[i];
                if (!e.is_homogeneous() || e.degree() != want) return false;
            }
        return true;
    }

    Matrix col(std::size_t j) const {
        Matrix m(ring_, rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, j);
        if (grading_) m.grading_ = Grading{grading_->rows, {grading_->cols[j]}};
        return m;
    }

    std::vector<Element> col_entries(std::size_t j) const {
        std::vector<Element> v;
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    /// Transpose; the grading is dualized (degrees negated and swapped).
    Matrix transpose() const {
        Matrix t(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        if (grading_) {
            Grading g;
            for (int c : grading_->cols) g.rows.push_back(-c);
            for (int r : grading_->rows) g.cols.push_back(-r);
            t.grading_ = std::move(g);
        }
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("product of " + a.shape() + " and " + b.shape());
        RingPtr r = a.ring_ ? a.ring_ : b.ring_;
        Matrix out(r, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
            }
        if (a.grading_ && b.grading_ && a.grading_->cols == b.grading_->rows)
            out.grading_ = Grading{a.grading_->rows, b.grading_->cols};
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, b, false); }
    friend Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, b, true); }

    Matrix scaled(const Element& s) const {
        Matrix m = *this;
        for (auto& e : m.entries_) e = s * e;
        m.grading_.reset();
        return m;
    }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& e : m.entries_) e = -e;
        return m;
    }

    /// Entry-wise equality; gradings are metadata and are not compared.
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
        return out;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
            s += "]";
        }
        return s + "]";
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    static Matrix combine(const Matrix& a, const Matrix& b, bool subtract) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch("sum of " + a.shape() + " and " + b.shape());
        Matrix out = a;
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            if (subtract)
                out.entries_[i] -= b.entries_[i];
            else
                out.entries_[i] += b.entries_[i];
        }
        if (!(a.grading_ && b.grading_ && *a.grading_ == *b.grading_)) out.grading_.reset();
        return out;
    }

    RingPtr ring_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Element> entries_;
    std::optional<Grading> grading_;
};

/// Horizontal concatenation [a | b]; gradings are merged when row degrees agree.
inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack of " + a.shape() + " and " + b.shape());
    Matrix out(a.ring() ? a.ring() : b.ring(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    if (a.grading() && b.grading() && a.grading()->rows == b.grading()->rows) {
        Grading g{a.grading()->rows, a.grading()->cols};
        g.cols.insert(g.cols.end(), b.grading()->cols.begin(), b.grading()->cols.end());
        out.set_grading(std::move(g));
    }
    return out;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    Matrix out(a.ring() ? a.ring() : b.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    if (a.grading() && b.grading()) {
        Grading g = *a.grading();
        g.rows.insert(g.rows.end(), b.grading()->rows.begin(), b.grading()->rows.end());
        g.cols.insert(g.cols.end(), b.grading()->cols.begin(), b.grading()->cols.end());
        out.set_grading(std::move(g));
    }
    return out;
}

inline Matrix diagonal(const RingPtr& ring, const std::vector<Element>& d) {
    Matrix m(ring, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

/// Determinant by cofactor expansion (the matrices here are tiny).
inline Element determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square " + m.shape());
    const auto& r = m.ring();
    std::size_t n = m.rows();
    if (n == 0) return Element::constant(r, 1);
    if (n == 1) return m(0, 0);
    Element det(r);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix minor(r, n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        Element term = m(0, j) * determinant(minor);
        if (j % 2) det -= term;
        else det += term;
    }
    return det;
}

inline Matrix adjugate(const Matrix& m) {
    std::size_t n = m.rows();
    const auto& r = m.ring();
    Matrix adj(r, n, n);
    if (n == 1) {
        adj(0, 0) = Element::constant(r, 1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix minor(r, n - 1, n - 1);
            for (std::size_t a = 0, ra = 0; a < n; ++a) {
                if (a == i) continue;
                for (std::size_t b = 0, cb = 0; b < n; ++b)
                    if (b != j) minor(ra, cb++) = m(a, b);
                ++ra;
            }
            Element c = determinant(minor);
            adj(j, i) = (i + j) % 2 ? -c : c;
        }
    return adj;
}

}  // namespace totref
