#include "wgs/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace wgs {

Rational rational_from_double(double v) {
  return Rational(v);  // mpq_set_d is exact
}

Rational rational_from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty decimal");
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i] == '-'), ++i;
  std::string digits;
  size_t frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i]);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("bad decimal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal: " + s);
  mpz_class num(digits.empty() ? "0" : digits);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q(num, den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

RationalInterval pi_interval() {
  // 3.1415926535897932384626433832795028841(97...)
  static const mpz_class lo("31415926535897932384626433832795028841");
  static const mpz_class den("10000000000000000000000000000000000000");
  Rational l(lo, den), h(lo + 1, den);
  l.canonicalize();
  h.canonicalize();
  return {l, h};
}

RationalInterval sin_interval(const RationalInterval& x) {
  if (x.lo < 0 || x.hi < x.lo)
    throw std::invalid_argument("sin_interval needs 0 <= lo <= hi");
  // hi must stay in the increasing regime; pi/2 > 1.5707963 > hi is checked
  // loosely against 1.5708 so near-pi/2 chords use the exact special case.
  if (x.hi > Rational(15708, 10000))
    throw std::invalid_argument("sin_interval argument beyond pi/2");

  // alternating Taylor partial sums: with K terms, K even, S <= sin <= S +
  // next term; evaluated at the matching endpoint by monotonicity
  constexpr int K = 20;
  auto taylor = [](const Rational& t, bool upper) {
    const Rational t2 = t * t;
    Rational term = t;  // j = 0
    Rational sum = 0;
    for (int j = 0; j < K; ++j) {
      sum += (j % 2 == 0) ? term : Rational(-term);
      term *= t2;
      term /= (2 * j + 2) * (2 * j + 3);
    }
    if (upper) sum += term;  // K even: next term is positive
    return sum;
  };
  return {taylor(x.lo, false), taylor(x.hi, true)};
}

RationalInterval round_outward(const RationalInterval& x, int bits) {
  auto down = [&](const Rational& q) {
    mpz_class scaled_num = q.get_num() << bits;
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), scaled_num.get_mpz_t(),
               q.get_den().get_mpz_t());
    Rational r(out, mpz_class(1) << bits);
    r.canonicalize();
    return r;
  };
  auto up = [&](const Rational& q) {
    mpz_class scaled_num = q.get_num() << bits;
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), scaled_num.get_mpz_t(),
               q.get_den().get_mpz_t());
    Rational r(out, mpz_class(1) << bits);
    r.canonicalize();
    return r;
  };
  return {down(x.lo), up(x.hi)};
}

RationalInterval chord_interval(int gap, int n) {
  if (n < 3 || gap < 0 || 2 * gap > n)
    throw std::invalid_argument("chord_interval: gap outside [0, n/2]");
  if (gap == 0) return {Rational(0), Rational(0)};
  if (2 * gap == n) return {Rational(2), Rational(2)};  // sin(pi/2) exactly

  const RationalInterval pi = pi_interval();
  RationalInterval x{pi.lo * gap / n, pi.hi * gap / n};
  RationalInterval s = sin_interval(x);
  return round_outward({2 * s.lo, 2 * s.hi});
}

RationalInterval start_time_interval(const StartTime& t0, int n) {
  Rational base = rational_from_decimal(t0.base);
  if (!t0.plus_pi_over_n) return {base, base};
  const RationalInterval pi = pi_interval();
  return round_outward({base + pi.lo / n, base + pi.hi / n});
}

RationalInterval rhs_interval(const SymbolicRhs& rhs, const StartTime& t0,
                              int n) {
  switch (rhs.kind) {
    case SymKind::Zero:
      return {Rational(0), Rational(0)};
    case SymKind::Start: {
      RationalInterval s = start_time_interval(t0, n);
      if (rhs.sign < 0) return {-s.hi, -s.lo};
      return s;
    }
    case SymKind::Chord: {
      RationalInterval c = chord_interval(rhs.gap, n);
      if (rhs.sign < 0) return {-c.hi, -c.lo};
      return c;
    }
  }
  throw std::logic_error("unreachable rhs kind");
}

}  // namespace wgs
