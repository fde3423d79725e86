#pragma once

#include <gmpxx.h>

#include <string>

#include "ccnet/common.hpp"

namespace ccnet {

// Exact rational scalar. All metric distances and dual values use this type;
// floating point only appears in the LP solver and in sampling probabilities.
using Rat = mpq_class;

// mpq_class's two-argument constructor stores the fraction verbatim, but
// GMP's equality assumes reduced form; always build fractions through this.
inline Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "7/5", "3", "-2/9", and decimal literals like "1.4" or "0.25".
// Decimals are converted exactly (1.4 -> 7/5), never through a double.
Rat parse_rational(const std::string& text);

// Canonical form: "p/q", or just "p" when q == 1.
std::string rational_str(const Rat& q);

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace ccnet
