#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wsuper {

// Exact rational scalar. GMP keeps values in canonical reduced form.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// True iff a - b is a (possibly zero) integer.
inline bool integer_difference(const Rat& a, const Rat& b) { return is_integer(Rat(a - b)); }

inline std::string to_string(const Rat& r) { return r.get_str(); }

// Accepts "p", "-p", "p/q".
inline Rat parse_rat(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("cannot parse rational: \"" + text + "\"");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: \"" + text + "\"");
    r.canonicalize();
    return r;
}

}  // namespace wsuper
