#pragma once

#include <gmpxx.h>

#include <string>

namespace mcfix {

// Exact rational scalar. mpq_class keeps fractions reduced with positive
// denominator, which is relied on everywhere for deterministic output.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "-3/4", "5", "0". Throws std::invalid_argument on garbage.
Rat parse_rat(const std::string& s);

// Renders "p/q" with q omitted when 1.
std::string rat_str(const Rat& r);

// 1/n! as an exact rational.
Rat inv_factorial(int n);

}  // namespace mcfix
