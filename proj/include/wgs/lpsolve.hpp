#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wgs/rational.hpp"
#include "wgs/relaxation.hpp"
#include "wgs/simplex.hpp"

// Solving a relaxation and certifying the result.
//
// The instance has few variables and many rows (the triangle inequalities),
// so we hand the simplex its *dual* in standard form: one equality row per
// instance variable, one column per instance row plus a slack per
// sign-constrained variable.  The basis then has the size of the variable
// count, and the instance's primal solution falls out of the row duals.
//
// Certification re-solves the final basis system in exact rational
// arithmetic.  The standard-form matrix and rhs are exactly representable;
// the only inexact data are the chord constants, which enter the *objective*
// of the standard form only.  A nonnegative exact basic solution is
// therefore dual-feasible regardless of rounding, and pairing it with
// directed rational enclosures of the chords yields an unconditional lower
// bound by weak duality.

namespace wgs {

template <>
struct SimplexTraits<Rational> {
  static Rational feas_tol() { return Rational(0); }
  static Rational opt_tol() { return Rational(0); }
  static Rational pivot_tol() { return Rational(0); }
  static Rational ratio_tie_tol() { return Rational(0); }
  static constexpr bool exact = true;
};

// pinned tolerances
inline constexpr double kFeasTol = 1e-9;    // primal feasibility residuals
inline constexpr double kGapTol = 1e-8;     // primal/dual objective agreement
inline constexpr double kCertSlack = 1e-6;  // certificate vs float optimum

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;   // optimum of the raw epigraph variable z
  double normalized = 0.0;  // objective / f(1,1)
  std::vector<double> x;    // instance variables
  std::vector<double> dual; // y per instance row, nonnegative
  std::vector<int> std_basis;
  long iterations = 0;
  double gap = 0.0;            // |z - y.b|
  double max_violation = 0.0;  // worst primal residual, 0 when feasible
};

// standard-form dual of an instance; Scalar is double for solving and
// Rational for certification
template <typename Scalar>
StandardLp<Scalar> build_dual_standard_form(const RelaxationInstance& inst);

LpSolution solve_relaxation(const RelaxationInstance& inst,
                            const SimplexOptions& opts = {});

struct CertifiedBound {
  bool verified = false;
  Rational value;      // certified lower bound on the normalized optimum
  Rational raw_value;  // same bound before dividing by f(1,1)
  std::vector<std::pair<int, Rational>> dual;  // nonzero multipliers by row
  uint64_t instance_hash = 0;
  bool used_exact_fallback = false;
  std::string failure;  // empty when verified
};

// exact certificate from a floating solve; falls back to a full rational
// simplex (with enclosure objective) if the floating basis is unusable
CertifiedBound certify_lower_bound(const RelaxationInstance& inst,
                                   const LpSolution& sol);

// independent check of a claimed certificate: exact dual feasibility plus
// claimed value <= the enclosure evaluation of y.b
struct CertCheck {
  bool ok = false;
  Rational value;      // raw (unnormalized) re-computed bound
  std::string reason;  // empty when ok
};
CertCheck verify_certificate(const RelaxationInstance& inst,
                             const std::vector<std::pair<int, Rational>>& dual,
                             const Rational& claimed_raw_value);

// normalization f(1,1) as an exact rational (w enters as its exact double)
Rational normalization_rational(const CostFn& cost);

}  // namespace wgs
