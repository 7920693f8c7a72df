#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "curvefrob/poly.hpp"

namespace curvefrob {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

namespace detail {

// Recursive descent over
//   expr   := '-'? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := uint | uint '/' uint | 'x' | 'y' | '(' expr ')'
// Whitespace is insignificant; multiplication is always explicit.
class PolyParser {
  public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected input after expression");
        return p;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    Poly expr() {
        skip_ws();
        bool negate = false;
        if (!eof() && peek() == '-') {
            negate = true;
            ++pos_;
        }
        Poly acc = term();
        if (negate) acc = -acc;
        for (;;) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            Poly t = term();
            if (c == '+')
                acc += t;
            else
                acc -= t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly factor() {
        Poly b = base();
        skip_ws();
        if (!eof() && peek() == '^') {
            ++pos_;
            skip_ws();
            if (eof()) fail("missing exponent");
            if (peek() == '-') fail("exponent must be a non-negative integer");
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a non-negative integer");
            int k = parse_exponent();
            skip_ws();
            if (!eof() && peek() == '/') fail("exponent must be an integer");
            b = b.pow(k);
        }
        return b;
    }

    Poly base() {
        skip_ws();
        if (eof()) fail("unexpected end of input");
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            skip_ws();
            if (eof() || peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == 'x') {
            ++pos_;
            return Poly::var_x();
        }
        if (c == 'y') {
            ++pos_;
            return Poly::var_y();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = parse_uint();
            skip_ws();
            if (!eof() && peek() == '/') {
                ++pos_;
                skip_ws();
                if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected denominator");
                std::size_t den_pos = pos_;
                Integer den = parse_uint();
                if (den == 0) throw ParseError("zero denominator", den_pos);
                Rational q(num, den);
                q.canonicalize();
                return Poly::constant(q);
            }
            return Poly::constant(Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            fail(std::string("unknown variable '") + c + "' (only x and y are allowed)");
        fail(std::string("unexpected character '") + c + "'");
    }

    Integer parse_uint() {
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)), 10);
    }

    int parse_exponent() {
        std::size_t start = pos_;
        Integer k = parse_uint();
        if (!k.fits_sint_p() || k > 100000) throw ParseError("exponent too large", start);
        return static_cast<int>(k.get_si());
    }
};

}  // namespace detail

inline Poly parse_polynomial(const std::string& text) {
    return detail::PolyParser(text).parse();
}

}  // namespace curvefrob
