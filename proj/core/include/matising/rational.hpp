#pragma once

#include <gmpxx.h>

#include <string>

namespace matising {

/// Exact rational scalar for the oracle paths.
using Rat = mpq_class;

/// Parses "3", "-1/2" or a finite decimal like "0.25" exactly.
Rat parse_rational(const std::string& text);

/// Canonical text form: integer when the denominator is 1, else "num/den".
std::string to_string(const Rat& value);

double to_double(const Rat& value);

/// value / 2^k, exact.
Rat div_pow2(const Rat& value, unsigned k);

}  // namespace matising
