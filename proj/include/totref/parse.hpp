#pragma once

// Recursive-descent parser for ring elements:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | identifier | '(' expr ')'

#include <cctype>
#include <string>
#include <string_view>

#include "totref/ring.hpp"

namespace totref {

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

    Element parse() {
        Element e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("at position " + std::to_string(pos_) + " in \"" + std::string(text_) + "\": " + msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Element expr() {
        Element acc = term();
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Element term() {
        Element acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    Element unary() {
        if (accept('-')) return -unary();
        return power();
    }

    Element power() {
        Element base = atom();
        if (accept('^')) {
            skip_space();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("exponent must be a non-negative integer literal");
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
                if (e > 1000000) fail("exponent too large");
            }
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Element atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Element e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int n = ring_->modulus(), v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = (v * 10 + (text_[pos_++] - '0')) % n;
            return Element::constant(ring_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            const auto& vars = ring_->vars();
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return Element::variable(ring_, i);
            throw UnknownVariable("unknown variable '" + name + "' in \"" + std::string(text_) + "\"");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const RingPtr& ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Element parse_element(const RingPtr& ring, std::string_view text) {
    return detail::ExpressionParser(ring, text).parse();
}

/// Parses a pure monomial such as "x*y" or "z^3" into an exponent vector.
inline Exponents parse_monomial(const std::vector<std::string>& vars, std::string_view text) {
    // parse in the free polynomial ring over F_2 so relations cannot interfere
    auto free = Ring::graded(2, vars);
    Element e = parse_element(free, text);
    if (e.terms().size() != 1) throw ParseError("\"" + std::string(text) + "\" is not a monomial");
    return e.terms().begin()->first;
}

}  // namespace totref
