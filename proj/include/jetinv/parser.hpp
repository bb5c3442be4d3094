#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "jetinv/ratfunc.hpp"

namespace jetinv {

// Recursive-descent parser for the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-')* base ('^' integer)?
//   base   := integer | variable | jetvar | '(' expr ')'
//   jetvar := 'u' '[' integer (',' integer)* ']'
// Whitespace is insignificant; implicit multiplication is a syntax error.
class Parser {
public:
    Parser(std::string text, VarTable::Ptr table)
        : text_(std::move(text)), table_(std::move(table)) {}

    RatFunc parse() {
        skip_ws();
        RatFunc r = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    RatFunc parse_expr() {
        RatFunc acc = parse_term();
        for (;;) {
            skip_ws();
            if (peek() == '+') { get(); acc += parse_term(); }
            else if (peek() == '-') { get(); acc -= parse_term(); }
            else return acc;
        }
    }

    RatFunc parse_term() {
        RatFunc acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') { get(); acc *= parse_factor(); }
            else if (peek() == '/') {
                get();
                RatFunc d = parse_factor();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFunc parse_factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '-' || peek() == '+') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        RatFunc b = parse_base();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            long e = parse_integer("exponent");
            b = b.pow(e);
        }
        return neg ? -b : b;
    }

    RatFunc parse_base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            RatFunc r = parse_expr();
            skip_ws();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = parse_integer("number");
            return RatFunc::constant(table_, Rational(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = parse_ident();
            skip_ws();
            if (name.size() == 1 && peek() == '[') {
                name += parse_jet_indices();
            }
            int idx = table_->find(name);
            if (idx < 0)
                throw Error("unknown-variable",
                            "unknown variable '" + name + "' at " + location());
            return RatFunc::variable(table_, static_cast<std::size_t>(idx));
        }
        fail(c == '\0' ? "unexpected end of input"
                       : std::string("unexpected character '") + c + "'");
    }

    std::string parse_jet_indices() {
        std::string out;
        expect('[');
        out += '[';
        for (;;) {
            skip_ws();
            out += std::to_string(parse_integer("jet index"));
            skip_ws();
            if (peek() == ',') { get(); out += ','; continue; }
            expect(']');
            out += ']';
            return out;
        }
    }

    std::string parse_ident() {
        std::string s;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            s += get();
        return s;
    }

    long parse_integer(const char* what) {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail(std::string("expected ") + what);
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > (1L << 30)) fail("integer literal too large");
        }
        return v;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char get() {
        char c = peek();
        ++pos_;
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }

    void skip_ws() {
        while (std::isspace(static_cast<unsigned char>(peek()))) get();
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }

    std::string location() const {
        return std::to_string(line_) + ":" + std::to_string(col_);
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, col_, msg);
    }

    std::string text_;
    VarTable::Ptr table_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline RatFunc parse_expression(const std::string& text, const VarTable::Ptr& table) {
    return Parser(text, table).parse();
}

} // namespace jetinv
