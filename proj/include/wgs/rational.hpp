#pragma once

#include <gmpxx.h>

#include <string>

#include "wgs/relaxation.hpp"

// Exact rational arithmetic for certificates.  The only irrational numbers
// that ever enter a relaxation are chords 2*sin(pi*k/n) and a possible pi/n
// term in the start time; we replace each with a directed rational enclosure
// tight to far below solver tolerances, with denominators kept at most 2^63.

namespace wgs {

using Rational = mpq_class;

struct RationalInterval {
  Rational lo, hi;
};

// exact: IEEE doubles are dyadic rationals
Rational rational_from_double(double v);

// "1", "-0.5", "2.25" -> exact rational; rejects anything else
Rational rational_from_decimal(const std::string& s);

double to_double(const Rational& q);
std::string to_string(const Rational& q);  // "num/den"
Rational rational_from_string(const std::string& s);

// enclosure of pi, width 1e-37
RationalInterval pi_interval();

// enclosure of sin on [0, pi/2] by alternating Taylor partial sums;
// requires 0 <= x.lo <= x.hi <= pi/2 (callers arrange this)
RationalInterval sin_interval(const RationalInterval& x);

// enclosure of 2*sin(pi*gap/n), denominators clamped to <= 2^63
RationalInterval chord_interval(int gap, int n);

// enclosure of the (possibly pi/n-shifted) start time
RationalInterval start_time_interval(const StartTime& t0, int n);

// enclosure of a symbolic rhs value
RationalInterval rhs_interval(const SymbolicRhs& rhs, const StartTime& t0,
                              int n);

// round an interval outward so both denominators are <= 2^bits
RationalInterval round_outward(const RationalInterval& x, int bits = 63);

}  // namespace wgs
