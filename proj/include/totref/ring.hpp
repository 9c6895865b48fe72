#pragma once

// Rings of the form R[vars]/(monomials), R = Z/p^k, and their elements.
//
// Two backends share this representation:
//  * FiniteLocal: the relations contain a pure power of every variable, so the
//    standard monomials form a finite Z/p^k-basis and the carrier is enumerable.
//  * GradedMonomialQuotient: k = 1, arbitrary monomial relations; elements are
//    polynomial representatives of the localization at the irrelevant ideal.
//
// Both are local with maximal ideal (p, vars), so an element is a unit exactly
// when its constant coefficient is nonzero mod p.

#include <algorithm>
#include <cmath>
#include <optional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "totref/error.hpp"
#include "totref/zn.hpp"

namespace totref {

using Int = zn::Int;
using Exponents = std::vector<int>;

enum class RingKind { FiniteLocal, GradedMonomialQuotient };

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Degree-lexicographic order with the declared variable order (x > y > z).
struct DegLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

inline bool divides(const Exponents& d, const Exponents& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
public:
    static RingPtr finite(Int p, int k, std::vector<std::string> vars = {}, std::vector<Exponents> relations = {}) {
        return make(RingKind::FiniteLocal, p, k, std::move(vars), std::move(relations));
    }
    static RingPtr graded(Int p, std::vector<std::string> vars, std::vector<Exponents> relations = {}) {
        return make(RingKind::GradedMonomialQuotient, p, 1, std::move(vars), std::move(relations));
    }

    RingKind kind() const { return kind_; }
    bool is_finite() const { return kind_ == RingKind::FiniteLocal; }
    bool is_graded() const { return kind_ == RingKind::GradedMonomialQuotient; }
    Int p() const { return p_; }
    int k() const { return k_; }
    Int modulus() const { return n_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t num_vars() const { return vars_.size(); }
    const std::vector<Exponents>& relations() const { return relations_; }

    bool is_standard(const Exponents& m) const {
        for (const auto& r : relations_)
            if (divides(r, m)) return false;
        return true;
    }

    /// Normal-form monomials of total degree exactly d, in descending deglex order.
    const std::vector<Exponents>& graded_basis(int d) const {
        static const std::vector<Exponents> empty;
        if (d < 0) return empty;
        std::lock_guard lock(cache_mutex_);
        auto it = basis_cache_.find(d);
        if (it != basis_cache_.end()) return it->second;
        std::vector<Exponents> out;
        Exponents cur(num_vars(), 0);
        enumerate_degree(d, 0, cur, out);
        return basis_cache_.emplace(d, std::move(out)).first->second;
    }

    /// Normal-form monomials of degree <= d.
    std::vector<Exponents> basis_up_to(int d) const {
        std::vector<Exponents> out;
        for (int e = 0; e <= d; ++e) {
            const auto& b = graded_basis(e);
            out.insert(out.end(), b.begin(), b.end());
        }
        return out;
    }

    /// Finite backend: the full Z/p^k-basis of the carrier.
    const std::vector<Exponents>& carrier_basis() const {
        if (!is_finite()) throw WrongBackend("carrier basis requested on the graded backend");
        return carrier_;
    }

    int max_degree() const { return max_degree_; }

    std::string describe() const {
        std::string s = is_finite() ? "Z/" + std::to_string(n_) : "F" + std::to_string(p_);
        if (!vars_.empty()) {
            s += "[";
            for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
            s += "]";
        }
        if (!relations_.empty()) {
            s += "/(";
            for (std::size_t i = 0; i < relations_.size(); ++i) s += (i ? "," : "") + monomial_string(relations_[i]);
            s += ")";
        }
        return s;
    }

    std::string monomial_string(const Exponents& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars_[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }

    bool same_as(const Ring& o) const {
        return kind_ == o.kind_ && n_ == o.n_ && vars_ == o.vars_ && relations_ == o.relations_;
    }

    /// A copy of this ring with one more monomial relation.
    RingPtr with_relation(const Exponents& m) const {
        auto rel = relations_;
        rel.push_back(m);
        return make(kind_, p_, k_, vars_, std::move(rel));
    }

private:
    Ring() = default;

    static RingPtr make(RingKind kind, Int p, int k, std::vector<std::string> vars, std::vector<Exponents> relations) {
        if (p < 2) throw InvalidRing("characteristic base must be a prime");
        for (Int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw InvalidRing(std::to_string(p) + " is not prime");
        if (k < 1) throw InvalidRing("exponent k must be positive");
        if (kind == RingKind::GradedMonomialQuotient && k != 1)
            throw InvalidRing("graded backend works over a prime field");
        Int n = 1;
        for (int i = 0; i < k; ++i) {
            if (n > (Int{1} << 31) / p) throw InvalidRing("modulus too large");
            n *= p;
        }
        std::shared_ptr<Ring> r(new Ring());
        r->kind_ = kind;
        r->p_ = p;
        r->k_ = k;
        r->n_ = n;
        r->vars_ = std::move(vars);
        for (auto& m : relations) {
            if (m.size() != r->vars_.size()) throw InvalidRing("relation has wrong number of exponents");
            if (total_degree(m) == 0) throw InvalidRing("relation 1 would give the zero ring");
        }
        r->relations_ = minimal_relations(std::move(relations));
        if (kind == RingKind::FiniteLocal) r->build_carrier();
        return r;
    }

    static std::vector<Exponents> minimal_relations(std::vector<Exponents> rel) {
        std::sort(rel.begin(), rel.end(), DegLexLess{});
        rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
        std::vector<Exponents> out;
        for (const auto& m : rel) {
            bool redundant = false;
            for (const auto& o : out) redundant = redundant || divides(o, m);
            if (!redundant) out.push_back(m);
        }
        return out;
    }

    void build_carrier() {
        // every variable needs a pure-power relation for the carrier to be finite
        for (std::size_t v = 0; v < vars_.size(); ++v) {
            bool bounded = false;
            for (const auto& r : relations_) {
                bool pure = r[v] > 0;
                for (std::size_t w = 0; w < r.size(); ++w) pure = pure && (w == v || r[w] == 0);
                bounded = bounded || pure;
            }
            if (!bounded) throw InvalidRing("finite backend needs a pure power relation for " + vars_[v]);
        }
        for (int d = 0;; ++d) {
            const auto& b = graded_basis(d);
            if (b.empty()) break;
            carrier_.insert(carrier_.end(), b.begin(), b.end());
            max_degree_ = d;
        }
    }

    void enumerate_degree(int remaining, std::size_t var, Exponents& cur, std::vector<Exponents>& out) const {
        if (var + 1 >= num_vars()) {
            if (num_vars() == 0) {
                if (remaining == 0) out.push_back(cur);
                return;
            }
            cur[var] = remaining;
            if (is_standard(cur)) out.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[var] = e;
            enumerate_degree(remaining - e, var + 1, cur, out);
        }
        cur[var] = 0;
    }

    RingKind kind_{};
    Int p_ = 2;
    int k_ = 1;
    Int n_ = 2;
    std::vector<std::string> vars_;
    std::vector<Exponents> relations_;
    std::vector<Exponents> carrier_;
    int max_degree_ = 0;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::vector<Exponents>> basis_cache_;
};

/// An element in normal form: coefficients in [0, n), no zero terms, no term
/// divisible by a relation. Equality is structural.
class Element {
public:
    using Terms = std::map<Exponents, Int, DegLexLess>;

    Element() = default;
    explicit Element(RingPtr ring) : ring_(std::move(ring)) {}

    static Element constant(const RingPtr& ring, Int c) {
        Element e(ring);
        e.add_term(Exponents(ring->num_vars(), 0), c);
        return e;
    }
    static Element monomial(const RingPtr& ring, const Exponents& m, Int c = 1) {
        Element e(ring);
        e.add_term(m, c);
        return e;
    }
    static Element variable(const RingPtr& ring, std::size_t index) {
        Exponents m(ring->num_vars(), 0);
        m.at(index) = 1;
        return monomial(ring, m);
    }

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient(const Exponents& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }
    Int constant_term() const { return ring_ ? coefficient(Exponents(ring_->num_vars(), 0)) : 0; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }

    /// Highest total degree of a term; -1 for zero.
    int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }
    int low_degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }
    bool is_homogeneous() const { return degree() == low_degree(); }

    Element homogeneous_part(int d) const {
        Element out(ring_);
        for (const auto& [m, c] : terms_)
            if (total_degree(m) == d) out.terms_.emplace(m, c);
        return out;
    }

    void add_term(const Exponents& m, Int c) {
        Int n = ring_->modulus();
        c = zn::reduce(c, n);
        if (c == 0 || !ring_->is_standard(m)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = zn::reduce(it->second + c, n);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const {
        Element out(ring_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, ring_->modulus() - c);
        return out;
    }

    friend Element operator*(const Element& a, const Element& b) {
        RingPtr r = a.ring_ ? a.ring_ : b.ring_;
        check_same(a, b);
        Element out(r);
        if (!r) return out;
        Int n = r->modulus();
        Exponents prod(r->num_vars());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
                out.add_term(prod, zn::mulmod(ca, cb, n));
            }
        return out;
    }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    Element times_monomial(const Exponents& mono) const {
        Element out(ring_);
        Exponents prod(mono.size());
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = m[i] + mono[i];
            if (ring_->is_standard(prod)) out.terms_.emplace(prod, c);
        }
        return out;
    }

    Element scaled(Int s) const {
        Element out(ring_);
        for (const auto& [m, c] : terms_) out.add_term(m, zn::mulmod(c, zn::reduce(s, ring_->modulus()), ring_->modulus()));
        return out;
    }

    Element pow(unsigned e) const {
        Element result = constant(ring_, 1), base = *this;
        while (e) {
            if (e & 1u) result *= base;
            base *= base;
            e >>= 1u;
        }
        return result;
    }

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    /// Deterministic printing: descending deglex, coefficients in (-n/2, n/2].
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        Int n = ring_->modulus();
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Int c = it->second;
            bool negative = c > n / 2;
            Int mag = negative ? n - c : c;
            bool unit_mono = total_degree(it->first) == 0;
            std::string body;
            if (unit_mono)
                body = std::to_string(mag);
            else if (mag == 1)
                body = ring_->monomial_string(it->first);
            else
                body = std::to_string(mag) + "*" + ring_->monomial_string(it->first);
            if (s.empty())
                s = negative ? "-" + body : body;
            else
                s += negative ? " - " + body : " + " + body;
        }
        return s;
    }

private:
    static void check_same(const Element& a, const Element& b) {
        if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_))
            throw RingMismatch("elements belong to different rings");
    }
    void adopt(const Element& o) {
        check_same(*this, o);
        if (!ring_) ring_ = o.ring_;
    }

    RingPtr ring_;
    Terms terms_;
};

inline bool is_unit(const Element& e) { return e.ring() && zn::reduce(e.constant_term(), e.ring()->p()) != 0; }

/// Polynomial inverse of a unit: always exists on the finite backend (the
/// non-constant part is nilpotent); on the graded backend only for nonzero constants.
inline std::optional<Element> try_inverse(const Element& e) {
    if (!is_unit(e)) return std::nullopt;
    const auto& r = e.ring();
    auto c_inv = zn::inverse(e.constant_term(), r->modulus());
    Element u = Element::constant(r, *c_inv);
    if (e.is_constant()) return u;
    if (!r->is_finite()) return std::nullopt;
    Element one = Element::constant(r, 1), two = Element::constant(r, 2);
    // Newton iteration u <- u(2 - eu) doubles the nilpotency order each step
    for (int i = 0; i < 64 && e * u != one; ++i) u = u * (two - e * u);
    if (e * u != one) return std::nullopt;
    return u;
}

/// Finite backend: every element of the carrier exactly once.
inline std::vector<Element> enumerate_carrier(const RingPtr& ring, std::size_t budget = 1u << 20) {
    const auto& basis = ring->carrier_basis();
    Int n = ring->modulus();
    double size = std::pow(static_cast<double>(n), static_cast<double>(basis.size()));
    if (size > static_cast<double>(budget)) throw TooLarge("carrier of " + ring->describe() + " exceeds budget");
    std::vector<Element> out;
    std::vector<Int> coeff(basis.size(), 0);
    while (true) {
        Element e(ring);
        for (std::size_t i = 0; i < basis.size(); ++i) e.add_term(basis[i], coeff[i]);
        out.push_back(std::move(e));
        std::size_t i = 0;
        for (; i < coeff.size(); ++i) {
            if (++coeff[i] < n) break;
            coeff[i] = 0;
        }
        if (i == coeff.size()) break;
    }
    return out;
}

}  // namespace totref
