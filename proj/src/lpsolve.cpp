#include "wgs/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace wgs {

namespace {

template <typename Scalar>
Scalar from_double(double v) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return rational_from_double(v);
  else
    return Scalar(v);
}

}  // namespace

template <typename Scalar>
StandardLp<Scalar> build_dual_standard_form(const RelaxationInstance& inst) {
  StandardLp<Scalar> lp;
  lp.rows = inst.num_vars;
  lp.rhs.assign(inst.num_vars, Scalar(0));
  lp.rhs[inst.z_var] = Scalar(1);

  // one column per instance row: entries are that row's coefficients, cost
  // is the negated rhs (the standard form minimizes -b.y)
  for (int r = 0; r < inst.num_rows; ++r) {
    lp.begin_column(from_double<Scalar>(-inst.rhs[r].value));
    for (int k = inst.row_ptr[r]; k < inst.row_ptr[r + 1]; ++k)
      lp.push_entry(inst.col_idx[k], from_double<Scalar>(inst.coef[k]));
    lp.end_column();
  }
  // slack per sign-constrained instance variable
  for (int j = 0; j < inst.num_vars; ++j) {
    if (!inst.var_nonneg[j]) continue;
    lp.begin_column(Scalar(0));
    lp.push_entry(j, Scalar(1));
    lp.end_column();
  }
  return lp;
}

template StandardLp<double> build_dual_standard_form<double>(
    const RelaxationInstance&);
template StandardLp<Rational> build_dual_standard_form<Rational>(
    const RelaxationInstance&);

LpSolution solve_relaxation(const RelaxationInstance& inst,
                            const SimplexOptions& opts) {
  const StandardLp<double> lp = build_dual_standard_form<double>(inst);
  RevisedSimplex<double> simplex;
  const SimplexResult<double> res = simplex.solve(lp, opts);

  LpSolution out;
  out.iterations = res.iterations;
  switch (res.status) {  // swap roles: we solved the dual
    case LpStatus::Optimal: out.status = LpStatus::Optimal; break;
    case LpStatus::Infeasible: out.status = LpStatus::Unbounded; break;
    case LpStatus::Unbounded: out.status = LpStatus::Infeasible; break;
    case LpStatus::IterationLimit: out.status = LpStatus::IterationLimit; break;
  }
  if (out.status != LpStatus::Optimal) return out;

  // instance primal = negated row duals of the standard form
  out.x.resize(inst.num_vars);
  for (int j = 0; j < inst.num_vars; ++j) out.x[j] = -res.row_dual[j];
  out.dual.assign(res.v.begin(), res.v.begin() + inst.num_rows);
  out.std_basis = res.basis;
  out.objective = out.x[inst.z_var];
  out.normalized = out.objective / inst.cost.normalization();

  double yb = 0.0;
  for (int r = 0; r < inst.num_rows; ++r)
    yb += out.dual[r] * inst.rhs[r].value;
  out.gap = std::abs(out.objective - yb);

  double worst = 0.0;
  for (int r = 0; r < inst.num_rows; ++r) {
    double ax = 0.0;
    for (int k = inst.row_ptr[r]; k < inst.row_ptr[r + 1]; ++k)
      ax += inst.coef[k] * out.x[inst.col_idx[k]];
    worst = std::max(worst, inst.rhs[r].value - ax);
  }
  for (int j = 0; j < inst.num_vars; ++j)
    if (inst.var_nonneg[j]) worst = std::max(worst, -out.x[j]);
  out.max_violation = worst;
  return out;
}

Rational normalization_rational(const CostFn& cost) {
  switch (cost.kind) {
    case CostKind::Proj2:
    case CostKind::MaxNorm:
    case CostKind::Min:
      return Rational(1);
    case CostKind::WeightedAvg:
      return Rational(1) + rational_from_double(cost.w);
  }
  throw std::logic_error("unreachable cost kind");
}

namespace {

// dense exact solve B x = rhs by Gauss-Jordan; returns false when singular
bool solve_rational_system(std::vector<Rational>& B, std::vector<Rational>& x,
                           int m) {
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (B[r * m + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    if (piv != col) {
      for (int k = col; k < m; ++k)
        std::swap(B[piv * m + k], B[col * m + k]);
      std::swap(x[piv], x[col]);
    }
    const Rational p = B[col * m + col];
    for (int k = col; k < m; ++k) B[col * m + k] /= p;
    x[col] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const Rational f = B[r * m + col];
      if (f == 0) continue;
      for (int k = col; k < m; ++k) B[r * m + k] -= f * B[col * m + k];
      x[r] -= f * x[col];
    }
  }
  return true;
}

// exact basic solution for a given basis of the standard form; empty on
// singular basis
std::vector<Rational> basis_solution(const StandardLp<Rational>& lp,
                                     const std::vector<int>& basis) {
  const int m = lp.rows;
  std::vector<Rational> B(static_cast<size_t>(m) * m, Rational(0));
  for (int c = 0; c < m; ++c) {
    const int j = basis[c];
    for (int k = lp.col_ptr[j]; k < lp.col_ptr[j + 1]; ++k)
      B[lp.row_idx[k] * m + c] = lp.values[k];
  }
  std::vector<Rational> x(lp.rhs);
  if (!solve_rational_system(B, x, m)) return {};
  return x;
}

std::vector<std::pair<int, Rational>> collect_dual(
    const std::vector<int>& basis, const std::vector<Rational>& vb,
    int num_rows) {
  std::vector<std::pair<int, Rational>> dual;
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] < num_rows && vb[i] != 0)
      dual.emplace_back(basis[i], vb[i]);
  std::sort(dual.begin(), dual.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return dual;
}

}  // namespace

CertCheck verify_certificate(const RelaxationInstance& inst,
                             const std::vector<std::pair<int, Rational>>& dual,
                             const Rational& claimed_raw_value) {
  CertCheck out;
  std::vector<Rational> sum(inst.num_vars, Rational(0));
  Rational value(0);
  for (const auto& [r, y] : dual) {
    if (r < 0 || r >= inst.num_rows) {
      out.reason = "dual index out of range";
      return out;
    }
    if (y < 0) {
      out.reason = "negative multiplier on row " + inst.row_name(r);
      return out;
    }
    if (y == 0) continue;
    for (int k = inst.row_ptr[r]; k < inst.row_ptr[r + 1]; ++k)
      sum[inst.col_idx[k]] += y * rational_from_double(inst.coef[k]);
    value += y * rhs_interval(inst.rhs[r], inst.t0, inst.n).lo;
  }
  for (int j = 0; j < inst.num_vars; ++j) {
    const Rational cj = (j == inst.z_var) ? Rational(1) : Rational(0);
    if (inst.var_nonneg[j]) {
      if (sum[j] > cj) {
        out.reason = "dual infeasible on variable " + inst.var_name(j);
        return out;
      }
    } else if (sum[j] != cj) {
      out.reason = "dual equality broken on variable " + inst.var_name(j);
      return out;
    }
  }
  if (claimed_raw_value > value) {
    out.reason = "claimed value exceeds the certified bound";
    out.value = value;
    return out;
  }
  out.ok = true;
  out.value = value;
  return out;
}

CertifiedBound certify_lower_bound(const RelaxationInstance& inst,
                                   const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal)
    throw std::invalid_argument("certification needs an optimal solve");

  CertifiedBound cert;
  cert.instance_hash = inst.hash();

  const StandardLp<Rational> lp = build_dual_standard_form<Rational>(inst);

  std::vector<std::pair<int, Rational>> dual;
  bool have_dual = false;
  if (static_cast<int>(sol.std_basis.size()) == lp.rows) {
    const std::vector<Rational> vb = basis_solution(lp, sol.std_basis);
    if (!vb.empty()) {
      bool nonneg = true;
      for (const Rational& q : vb)
        if (q < 0) {
          nonneg = false;
          break;
        }
      if (nonneg) {
        dual = collect_dual(sol.std_basis, vb, inst.num_rows);
        have_dual = true;
      }
    }
  }

  if (!have_dual) {
    // floating basis was unusable; re-solve exactly with the chord
    // enclosures as objective (any optimum is still just a valid dual)
    cert.used_exact_fallback = true;
    StandardLp<Rational> exact_lp = lp;
    for (int r = 0; r < inst.num_rows; ++r)
      exact_lp.cost[r] = -rhs_interval(inst.rhs[r], inst.t0, inst.n).lo;
    RevisedSimplex<Rational> simplex;
    SimplexOptions opts;
    opts.bland_from_start = true;
    const SimplexResult<Rational> res = simplex.solve(exact_lp, opts);
    if (res.status != LpStatus::Optimal) {
      cert.failure = std::string("exact fallback: ") + to_string(res.status);
      return cert;
    }
    std::vector<Rational> vb(res.basis.size());
    for (size_t i = 0; i < res.basis.size(); ++i) vb[i] = res.v[res.basis[i]];
    dual = collect_dual(res.basis, vb, inst.num_rows);
  }

  // evaluate, round the bound down to a compact rational, re-verify
  Rational raw(0);
  for (const auto& [r, y] : dual)
    raw += y * rhs_interval(inst.rhs[r], inst.t0, inst.n).lo;
  raw = round_outward({raw, raw}).lo;

  const CertCheck check = verify_certificate(inst, dual, raw);
  if (!check.ok) {
    cert.failure = check.reason;
    return cert;
  }
  cert.verified = true;
  cert.dual = std::move(dual);
  cert.raw_value = raw;
  cert.value = raw / normalization_rational(inst.cost);
  return cert;
}

}  // namespace wgs
