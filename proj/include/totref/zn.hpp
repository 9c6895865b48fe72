#pragma once

// Linear algebra over Z/nZ via the Howell normal form.
//
// Vectors are plain coefficient rows with entries in [0, n). A linear map is
// passed as the list of its columns (images of the standard basis vectors),
// so the row span of the augmented system [col_j | e_j] encodes both image
// and kernel at once.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace totref::zn {

using Int = std::int64_t;
using Row = std::vector<Int>;

inline Int reduce(Int a, Int n) {
    a %= n;
    return a < 0 ? a + n : a;
}

inline Int mulmod(Int a, Int b, Int n) {
    return static_cast<Int>(static_cast<__int128>(a) * b % n);
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

struct Gcdex {
    Int g, s, t;
};

inline Gcdex extended_gcd(Int a, Int b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo n; nullopt when gcd(a, n) != 1.
inline std::optional<Int> inverse(Int a, Int n) {
    a = reduce(a, n);
    auto [g, s, t] = extended_gcd(a, n);
    (void)t;
    if (g != 1) return std::nullopt;
    return reduce(s, n);
}

/// A unit u with u*a = gcd(a, n) (mod n). Requires a != 0 mod n.
inline Int normalizing_unit(Int a, Int n) {
    Int g = gcd(a, n);
    Int m = n / g;
    Int u = m == 1 ? 1 : *inverse(a / g, m);
    while (gcd(u, n) != 1) u += m;
    return reduce(u, n);
}

/// Valuation of the order-defining divisor: for n = p^k and d | n, returns log_p(n/d).
inline int log_index(Int n, Int d, Int p) {
    Int q = n / d;
    int e = 0;
    while (q > 1) {
        q /= p;
        ++e;
    }
    return e;
}

/// Howell form of the row span of `rows` (each of width `width`) over Z/n.
/// Output rows are nonzero, sorted by strictly increasing leading column,
/// with leading entries dividing n and entries above each pivot reduced.
inline std::vector<Row> howell_form(std::vector<Row> a, std::size_t width, Int n) {
    for (auto& row : a) {
        row.resize(width, 0);
        for (auto& v : row) v = reduce(v, n);
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < a.size(); ++c) {
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            if (a[r][c] == 0) {
                std::swap(a[r], a[i]);
                continue;
            }
            auto [g, s, t] = extended_gcd(a[r][c], a[i][c]);
            Int u = reduce(-(a[i][c] / g), n);
            Int v = reduce(a[r][c] / g, n);
            s = reduce(s, n);
            t = reduce(t, n);
            for (std::size_t j = c; j < width; ++j) {
                Int x = a[r][j], y = a[i][j];
                a[r][j] = reduce(mulmod(s, x, n) + mulmod(t, y, n), n);
                a[i][j] = reduce(mulmod(u, x, n) + mulmod(v, y, n), n);
            }
        }
        if (a[r][c] == 0) continue;
        Int unit = normalizing_unit(a[r][c], n);
        if (unit != 1)
            for (std::size_t j = c; j < width; ++j) a[r][j] = mulmod(unit, a[r][j], n);
        Int pivot = a[r][c];
        for (std::size_t i = 0; i < r; ++i) {
            Int q = a[i][c] / pivot;
            if (q == 0) continue;
            for (std::size_t j = c; j < width; ++j) a[i][j] = reduce(a[i][j] - mulmod(q, a[r][j], n), n);
        }
        Int ann = n / pivot;
        if (ann != n) {
            Row w(width, 0);
            bool nonzero = false;
            for (std::size_t j = c + 1; j < width; ++j) {
                w[j] = mulmod(ann, a[r][j], n);
                nonzero = nonzero || w[j] != 0;
            }
            if (nonzero) a.push_back(std::move(w));
        }
        ++r;
    }
    a.resize(r);
    return a;
}

inline std::size_t leading_index(const Row& row) {
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) return j;
    return row.size();
}

/// Composition length (log_p of cardinality) of the span of a Howell basis.
inline int span_length(const std::vector<Row>& howell, Int n, Int p) {
    int len = 0;
    for (const auto& row : howell) len += log_index(n, row[leading_index(row)], p);
    return len;
}

/// Reduces `v` against a Howell basis; returns the canonical representative of v + span.
inline Row reduce_mod_span(Row v, const std::vector<Row>& howell, Int n) {
    for (const auto& h : howell) {
        std::size_t c = leading_index(h);
        Int q = v[c] / h[c];
        if (q == 0) continue;
        for (std::size_t j = c; j < v.size(); ++j) v[j] = reduce(v[j] - mulmod(q, h[j], n), n);
    }
    return v;
}

/// Solver for M x = b where M is given by its columns (each of height `height`).
/// Construction computes one Howell form; solve() is then a reduction.
class ColumnSystem {
public:
    ColumnSystem(const std::vector<Row>& columns, std::size_t height, Int n)
        : height_(height), unknowns_(columns.size()), n_(n) {
        std::vector<Row> aug;
        aug.reserve(columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            Row row(height + unknowns_, 0);
            for (std::size_t i = 0; i < height && i < columns[j].size(); ++i) row[i] = reduce(columns[j][i], n);
            row[height + j] = 1;
            aug.push_back(std::move(row));
        }
        auto h = howell_form(std::move(aug), height + unknowns_, n);
        for (auto& row : h) {
            if (leading_index(row) < height)
                image_.push_back(std::move(row));
            else
                kernel_.push_back(Row(row.begin() + static_cast<std::ptrdiff_t>(height), row.end()));
        }
    }

    std::size_t height() const { return height_; }
    std::size_t unknowns() const { return unknowns_; }
    Int modulus() const { return n_; }

    /// Some x with M x = b, first in elimination order; nullopt when b is not in the image.
    std::optional<Row> solve(Row b) const {
        b.resize(height_, 0);
        for (auto& v : b) v = reduce(v, n_);
        Row x(unknowns_, 0);
        for (const auto& h : image_) {
            std::size_t c = leading_index(h);
            for (std::size_t j = 0; j < c; ++j)
                if (b[j] != 0) return std::nullopt;
            if (b[c] % h[c] != 0) return std::nullopt;
            Int q = b[c] / h[c];
            if (q == 0) continue;
            for (std::size_t j = c; j < height_; ++j) b[j] = reduce(b[j] - mulmod(q, h[j], n_), n_);
            for (std::size_t j = 0; j < unknowns_; ++j) x[j] = reduce(x[j] + mulmod(q, h[height_ + j], n_), n_);
        }
        for (Int v : b)
            if (v != 0) return std::nullopt;
        return x;
    }

    /// Howell basis of the image, restricted to the first `height` coordinates.
    std::vector<Row> image_basis() const {
        std::vector<Row> out;
        out.reserve(image_.size());
        for (const auto& h : image_) out.emplace_back(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(height_));
        return out;
    }

    /// Howell basis of the kernel {x : M x = 0}.
    const std::vector<Row>& kernel_basis() const { return kernel_; }

private:
    std::size_t height_, unknowns_;
    Int n_;
    std::vector<Row> image_;
    std::vector<Row> kernel_;
};

/// Calls f on every element of the span of a Howell basis exactly once.
template <class F>
void for_each_in_span(const std::vector<Row>& howell, std::size_t width, Int n, F&& f) {
    std::vector<Int> bound(howell.size());
    for (std::size_t r = 0; r < howell.size(); ++r) bound[r] = n / howell[r][leading_index(howell[r])];
    std::vector<Int> coeff(howell.size(), 0);
    Row v(width, 0);
    while (true) {
        f(static_cast<const Row&>(v));
        std::size_t r = 0;
        for (; r < howell.size(); ++r) {
            ++coeff[r];
            for (std::size_t j = 0; j < width; ++j) v[j] = reduce(v[j] + howell[r][j], n);
            if (coeff[r] < bound[r]) break;
            // wrapped around: coeff*row == 0 is not guaranteed, so subtract explicitly
            for (std::size_t j = 0; j < width; ++j) v[j] = reduce(v[j] - mulmod(bound[r], howell[r][j], n), n);
            coeff[r] = 0;
        }
        if (r == howell.size()) return;
    }
}

}  // namespace totref::zn
