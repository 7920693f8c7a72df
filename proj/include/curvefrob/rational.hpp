#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvefrob {

// Exact rational scalar. mpq_class keeps values canonical: lowest terms,
// positive denominator, zero stored as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Accepts "n" or "p/q" with an optional leading '-'. The denominator, when
// present, must be a plain digit string.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&] { throw std::invalid_argument("invalid rational \"" + text + "\""); };
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    const std::size_t num_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_start) bad();
    if (i < text.size()) {
        if (text[i] != '/') bad();
        ++i;
        const std::size_t den_start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_start || i != text.size()) bad();
    }
    Rational q(text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
}

}  // namespace curvefrob
