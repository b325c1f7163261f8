#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dsg {

// Exact rational arithmetic. All solver-facing quantities (rewards, discount
// factors, values, tails, thresholds) are mpq rationals; no floating point is
// used anywhere in value computation. Doubles appear only behind explicit
// "approx" conversions for display.
using Rat = mpq_class;

// Raised on malformed input text (game files, profile files, DIMACS, rational
// literals). The message carries position information where available.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when well-formed input violates a semantic invariant (bad discount
// factor, dangling edge target, initial distribution not summing to one, ...).
// The message names the violated invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Parses the canonical rational syntax: -?[0-9]+(/[1-9][0-9]*)?
// This is stricter than mpq_set_str (which would happily accept "3/0" or
// hex digits); we validate the shape first and canonicalize after.
Rat rat_parse(const std::string& text);

// Canonical rendering: "p" when the denominator is 1, "p/q" otherwise, sign
// on the numerator. rat_parse(rat_str(r)) == r for every r.
std::string rat_str(const Rat& r);

// base^e for non-negative integer exponents.
Rat rat_pow(const Rat& base, unsigned long e);

// Lossy conversion for human-oriented output (--approx).
double rat_approx(const Rat& r);

}  // namespace dsg
