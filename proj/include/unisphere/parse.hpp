#pragma once

// Recursive-descent parser for the polynomial expression grammar:
//
//   expr     := ['-'] term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := rational | name | name '^' nat | '(' expr ')'
//   rational := int | int '/' posint
//
// Names are alphanumeric identifiers. 'w' is reserved for the
// quadratic generator; 'i' resolves to it when the discriminant is -1
// and no variable shadows it. Whitespace is insignificant.

#include "unisphere/poly.hpp"

#include <cctype>

namespace unisphere {

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view src, VarSetPtr vars, RingPtr ring)
        : src_(src), vars_(std::move(vars)), ring_(std::move(ring)) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Poly expr() {
        bool neg = eat('-');
        Poly p = term();
        if (neg) p = -p;
        for (;;) {
            if (eat('+'))
                p = p + term();
            else if (eat('-'))
                p = p - term();
            else
                return p;
        }
    }

    Poly term() {
        Poly p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    Poly factor() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational();
        if (std::isalpha(static_cast<unsigned char>(c))) return named();
        fail("expected a factor");
    }

    std::string integer_digits() {
        skip_ws();
        size_t b = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == b) fail("expected digits");
        return std::string(src_.substr(b, pos_ - b));
    }

    Poly rational() {
        mpz_class num(integer_digits());
        if (eat('/')) {
            mpz_class den(integer_digits());
            if (den == 0) fail("zero denominator");
            return Poly::constant(vars_, RingElem::rational(ring_, make_rational(num, den)));
        }
        return Poly::constant(vars_, RingElem::rational(ring_, make_rational(num)));
    }

    Poly named() {
        skip_ws();
        size_t b = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string name(src_.substr(b, pos_ - b));
        Poly base = resolve(name);
        if (eat('^')) {
            mpz_class e(integer_digits());
            if (e < 0 || e > 4096) fail("exponent out of range");
            return base.pow(e.get_ui());
        }
        return base;
    }

    Poly resolve(const std::string& name) {
        if (vars_ && vars_->index_of(name))
            return Poly::variable(vars_, ring_, name);
        if (ring_->kind == RingKind::Quadratic) {
            if (name == "w") return Poly::constant(vars_, RingElem::generator(ring_));
            if (name == "i" && ring_->discriminant == -1)
                return Poly::constant(vars_, RingElem::generator(ring_));
        }
        fail("unknown variable: " + name);
    }

    std::string_view src_;
    size_t pos_ = 0;
    VarSetPtr vars_;
    RingPtr ring_;
};

}  // namespace detail

inline Poly parse_poly(std::string_view expr, const VarSetPtr& vars, const RingPtr& ring) {
    return detail::ExprParser(expr, vars, ring).run();
}

/// Evaluates a variable-free expression to a ring element.
inline RingElem ring_eval(std::string_view expr, const RingPtr& ring) {
    static const VarSetPtr none = VarSet::make({});
    return parse_poly(expr, none, ring).constant_value();
}

}  // namespace unisphere
