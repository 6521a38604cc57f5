#include "gmmp/parser.hpp"

#include <cctype>

namespace gmmp {

namespace {

class PolyParser {
public:
    PolyParser(const std::string& src, RingPtr ring, std::size_t line0, std::size_t col0)
        : src_(src), ring_(std::move(ring)), line_(line0), col_(col0) {}

    Polynomial parse() {
        skip_ws();
        Polynomial p = expression();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            advance();
    }

    bool peek_is(char c) { return pos_ < src_.size() && src_[pos_] == c; }

    bool accept(char c) {
        skip_ws();
        if (!peek_is(c)) return false;
        advance();
        return true;
    }

    Polynomial expression() {
        skip_ws();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Polynomial acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("malformed exponent: expected a non-negative integer after '^'");
            unsigned long e = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(src_[pos_] - '0');
                if (e > 100000) fail("exponent too large");
                advance();
            }
            Polynomial pow = Polynomial::constant(ring_, Rational(1));
            for (unsigned long i = 0; i < e; ++i) pow = pow * base;
            return pow;
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            advance();
            Polynomial p = expression();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                digits.push_back(src_[pos_]);
                advance();
            }
            // rational literal n/d (so canonical printing round-trips)
            if (accept('/')) {
                skip_ws();
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    fail("malformed rational literal: expected digits after '/'");
                std::string den;
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    den.push_back(src_[pos_]);
                    advance();
                }
                if (den.find_first_not_of('0') == std::string::npos)
                    fail("rational literal with zero denominator");
                return Polynomial::constant(ring_, Rational(mpq_class(digits + "/" + den)));
            }
            return Polynomial::constant(ring_, Rational(mpq_class(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                name.push_back(src_[pos_]);
                advance();
            }
            auto idx = ring_->var_index(name);
            if (!idx) fail("unknown variable '" + name + "'");
            return Polynomial::variable(ring_, *idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& src_;
    RingPtr ring_;
    std::size_t pos_ = 0;
    std::size_t line_, col_;
};

} // namespace

Polynomial parse_poly(const std::string& src, const RingPtr& ring) {
    return PolyParser(src, ring, 1, 1).parse();
}

Polynomial parse_poly_at(const std::string& src, const RingPtr& ring, std::size_t line0,
                         std::size_t col0) {
    return PolyParser(src, ring, line0, col0).parse();
}

} // namespace gmmp
