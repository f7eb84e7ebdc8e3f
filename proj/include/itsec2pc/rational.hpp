#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "itsec2pc/errors.hpp"

namespace itsec2pc {

// All probability mass is carried as exact rationals; floating point enters
// only through logarithms.
using Rational = mpq_class;

inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::size_t slash = text.find('/');
    auto check_digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) throw ParseError("bad rational literal: '" + text + "'");
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("bad rational literal: '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_digits(0, text.size());
    } else {
        check_digits(0, slash);
        check_digits(slash + 1, text.size());
    }
    Rational q;
    try {
        q = Rational(text, 10);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: '" + text + "'");
    }
    if (q.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

// mpq_class(n, d) does not canonicalize; this does.
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace itsec2pc
