#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rho {

// Exact arbitrary-precision rational. All arithmetic in the engine is exact;
// there is no floating point anywhere.
using Rational = mpq_class;

inline std::string rat_str(const Rational& q) { return q.get_str(); }

// Parses "p" or "p/q" (optionally signed). Throws std::invalid_argument on
// malformed input or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace rho
