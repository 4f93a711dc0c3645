#pragma once

#include <gmpxx.h>

#include <string>

namespace hopfforge {

// Exact arbitrary-precision rational. gmpxx returns expression templates
// from arithmetic; assign to Rational before calling member functions.
using Rational = mpq_class;

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Parses "p", "-p" or "p/q" in base 10. Throws InputError on anything else.
Rational rat_parse(const std::string& s);

}  // namespace hopfforge
