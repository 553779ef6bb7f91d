#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Two-phase revised simplex on standard-form problems
//
//     min c.v   s.t.  A v = b,  v >= 0,
//
// templated on the scalar so the same code runs fast in doubles and exactly
// in rationals.  The basis inverse is kept explicitly (dense, row-major) and
// updated by eta row operations; the double instantiation refactorizes
// periodically, the exact one never needs to.  Entering variable by Dantzig
// pricing with a permanent switch to Bland's rule after a degeneracy stall.
//
// Problems here are small (basis of a few hundred) but numerous, so the
// priorities are determinism and robustness, not sparsity tricks.

namespace wgs {

template <typename Scalar>
struct SimplexTraits {
  static Scalar feas_tol() { return Scalar(1e-9); }
  static Scalar opt_tol() { return Scalar(1e-9); }
  static Scalar pivot_tol() { return Scalar(1e-10); }
  static Scalar ratio_tie_tol() { return Scalar(1e-10); }
  static constexpr bool exact = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

// columns in CSC; rows dense on the rhs side
template <typename Scalar>
struct StandardLp {
  int rows = 0;
  std::vector<int> col_ptr{0};
  std::vector<int> row_idx;
  std::vector<Scalar> values;
  std::vector<Scalar> cost;
  std::vector<Scalar> rhs;

  int num_cols() const { return static_cast<int>(cost.size()); }
  void add_column(std::initializer_list<std::pair<int, Scalar>> nz,
                  const Scalar& c) {
    for (const auto& [r, v] : nz) {
      row_idx.push_back(r);
      values.push_back(v);
    }
    col_ptr.push_back(static_cast<int>(row_idx.size()));
    cost.push_back(c);
  }
  void begin_column(const Scalar& c) { cost.push_back(c); }
  void push_entry(int r, const Scalar& v) {
    row_idx.push_back(r);
    values.push_back(v);
  }
  void end_column() { col_ptr.push_back(static_cast<int>(row_idx.size())); }
};

struct SimplexOptions {
  long max_iterations = 200000;
  int refactor_interval = 64;
  bool bland_from_start = false;
};

template <typename Scalar>
struct SimplexResult {
  LpStatus status = LpStatus::IterationLimit;
  Scalar objective{};
  std::vector<Scalar> v;         // full primal vector of the standard form
  std::vector<Scalar> row_dual;  // y with y.A <= c (up to tolerance)
  std::vector<int> basis;        // basic column per row; never artificial
  long iterations = 0;
};

template <typename Scalar>
class RevisedSimplex {
 public:
  using Traits = SimplexTraits<Scalar>;

  SimplexResult<Scalar> solve(const StandardLp<Scalar>& lp,
                              const SimplexOptions& opts = {}) {
    lp_ = &lp;
    opts_ = opts;
    m_ = lp.rows;
    ncols_ = lp.num_cols();
    iterations_ = 0;

    SimplexResult<Scalar> res;

    // crash basis: positive singleton columns claim their row, artificials
    // fill the rest (artificial for row r is column ncols_ + r)
    basis_.assign(m_, -1);
    for (int j = 0; j < ncols_; ++j) {
      if (lp.col_ptr[j + 1] - lp.col_ptr[j] != 1) continue;
      const int r = lp.row_idx[lp.col_ptr[j]];
      const Scalar& v = lp.values[lp.col_ptr[j]];
      if (v > Scalar(0) && basis_[r] < 0 && lp.rhs[r] >= Scalar(0))
        basis_[r] = j;
    }
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < 0) basis_[r] = ncols_ + r;

    in_basis_.assign(ncols_ + m_, 0);
    for (int r = 0; r < m_; ++r) in_basis_[basis_[r]] = 1;
    refactorize();

    // phase 1: minimize the sum of artificial values
    phase1_ = true;
    bland_ = opts.bland_from_start;
    stall_ = 0;
    LpStatus st = iterate();
    if (st != LpStatus::Optimal) {
      res.status = (st == LpStatus::Unbounded) ? LpStatus::Infeasible : st;
      res.iterations = iterations_;
      return res;
    }
    if (phase_objective() > infeas_cutoff()) {
      res.status = LpStatus::Infeasible;
      res.iterations = iterations_;
      return res;
    }
    if (!expel_artificials()) {
      // a row no real column can pivot into means dependent rows; the
      // problems we build never have them, so treat as failure
      res.status = LpStatus::Infeasible;
      res.iterations = iterations_;
      return res;
    }

    // phase 2
    phase1_ = false;
    bland_ = opts.bland_from_start;
    stall_ = 0;
    if constexpr (!Traits::exact) refactorize();
    st = iterate();
    res.status = st;
    res.iterations = iterations_;
    if (st != LpStatus::Optimal) return res;

    res.basis = basis_;
    res.v.assign(ncols_, Scalar(0));
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= ncols_) continue;
      if constexpr (Traits::exact) {
        res.v[basis_[r]] = xb_[r];
      } else {
        res.v[basis_[r]] = xb_[r] < Scalar(0) ? Scalar(0) : xb_[r];
      }
    }
    res.objective = Scalar(0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < ncols_) res.objective += lp.cost[basis_[r]] * xb_[r];
    compute_duals(res.row_dual);
    lp_ = nullptr;
    return res;
  }

 private:
  Scalar infeas_cutoff() const {
    if constexpr (Traits::exact) return Scalar(0);
    else return Scalar(1e-7);
  }

  Scalar column_cost(int j) const {
    if (phase1_) return j >= ncols_ ? Scalar(1) : Scalar(0);
    return j >= ncols_ ? Scalar(0) : lp_->cost[j];
  }

  Scalar phase_objective() const {
    Scalar s(0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= ncols_) s += xb_[r];
    return s;
  }

  // d = Binv * column(j); artificial columns are unit vectors
  void ftran(int j, std::vector<Scalar>& d) const {
    d.assign(m_, Scalar(0));
    if (j >= ncols_) {
      const int r = j - ncols_;
      for (int i = 0; i < m_; ++i) d[i] = binv_[i * m_ + r];
      return;
    }
    for (int k = lp_->col_ptr[j]; k < lp_->col_ptr[j + 1]; ++k) {
      const int r = lp_->row_idx[k];
      const Scalar& v = lp_->values[k];
      for (int i = 0; i < m_; ++i) d[i] += v * binv_[i * m_ + r];
    }
  }

  void compute_duals(std::vector<Scalar>& y) const {
    y.assign(m_, Scalar(0));
    for (int i = 0; i < m_; ++i) {
      const Scalar ci = column_cost(basis_[i]);
      if (ci == Scalar(0)) continue;
      for (int r = 0; r < m_; ++r) y[r] += ci * binv_[i * m_ + r];
    }
  }

  Scalar reduced_cost(int j, const std::vector<Scalar>& y) const {
    Scalar rc = column_cost(j);
    for (int k = lp_->col_ptr[j]; k < lp_->col_ptr[j + 1]; ++k)
      rc -= y[lp_->row_idx[k]] * lp_->values[k];
    return rc;
  }

  // entering column, or -1 if dual-feasible
  int price(const std::vector<Scalar>& y) const {
    const Scalar tol = Traits::opt_tol();
    int best = -1;
    Scalar best_rc(0);
    for (int j = 0; j < ncols_; ++j) {
      if (in_basis_[j]) continue;
      const Scalar rc = reduced_cost(j, y);
      if (rc >= -tol) continue;
      if (bland_) return j;
      if (best < 0 || rc < best_rc) {
        best = j;
        best_rc = rc;
      }
    }
    return best;
  }

  // leaving position by ratio test, or -1 if unbounded along d
  int ratio_test(const std::vector<Scalar>& d) const {
    const Scalar ptol = Traits::pivot_tol();
    const Scalar tie = Traits::ratio_tie_tol();
    int best = -1;
    Scalar best_ratio(0);
    for (int i = 0; i < m_; ++i) {
      if (d[i] <= ptol) continue;
      Scalar num = xb_[i];
      if (num < Scalar(0)) num = Scalar(0);
      const Scalar ratio = num / d[i];
      if (best < 0) {
        best = i;
        best_ratio = ratio;
        continue;
      }
      const Scalar diff = ratio - best_ratio;
      if (diff < -tie) {
        best = i;
        best_ratio = ratio;
      } else if (diff <= tie) {
        // tie: kick artificials first, then the larger pivot, then by
        // position, keeping runs reproducible
        const bool ba = basis_[best] >= ncols_, ia = basis_[i] >= ncols_;
        if (ia != ba) {
          if (ia) best = i, best_ratio = ratio;
        } else if (d[i] > d[best]) {
          best = i;
          best_ratio = ratio;
        }
      }
    }
    return best;
  }

  void pivot(int enter, int leave_pos, std::vector<Scalar>& d) {
    const Scalar piv = d[leave_pos];
    Scalar* rowp = &binv_[leave_pos * m_];
    for (int r = 0; r < m_; ++r) rowp[r] /= piv;
    const Scalar theta = xb_[leave_pos] / piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave_pos || d[i] == Scalar(0)) continue;
      const Scalar f = d[i];
      Scalar* ri = &binv_[i * m_];
      for (int r = 0; r < m_; ++r) ri[r] -= f * rowp[r];
      xb_[i] -= f * theta;
    }
    xb_[leave_pos] = theta;
    in_basis_[basis_[leave_pos]] = 0;
    in_basis_[enter] = 1;
    basis_[leave_pos] = enter;
  }

  LpStatus iterate() {
    std::vector<Scalar> y, d;
    int since_refactor = 0;
    while (iterations_ < opts_.max_iterations) {
      compute_duals(y);
      const int enter = price(y);
      if (enter < 0) return LpStatus::Optimal;
      ftran(enter, d);
      const int leave = ratio_test(d);
      if (leave < 0) return LpStatus::Unbounded;

      const Scalar theta_num =
          xb_[leave] < Scalar(0) ? Scalar(0) : xb_[leave];
      const bool degenerate = theta_num <= Traits::ratio_tie_tol();
      if (degenerate) {
        if (++stall_ > 4 * m_ + 20) bland_ = true;
      } else {
        stall_ = 0;
      }

      pivot(enter, leave, d);
      ++iterations_;
      if constexpr (!Traits::exact) {
        if (++since_refactor >= opts_.refactor_interval) {
          refactorize();
          since_refactor = 0;
        }
      }
    }
    return LpStatus::IterationLimit;
  }

  // move basic artificials out on zero-ratio pivots; rows are independent in
  // our problems so a real pivot column always exists
  bool expel_artificials() {
    std::vector<Scalar> d;
    for (int pos = 0; pos < m_; ++pos) {
      if (basis_[pos] < ncols_) continue;
      int enter = -1;
      Scalar best_mag(0);
      for (int j = 0; j < ncols_; ++j) {
        if (in_basis_[j]) continue;
        Scalar dot(0);
        for (int k = lp_->col_ptr[j]; k < lp_->col_ptr[j + 1]; ++k)
          dot += binv_[pos * m_ + lp_->row_idx[k]] * lp_->values[k];
        const Scalar mag = dot < Scalar(0) ? Scalar(-dot) : dot;
        if (mag > Traits::pivot_tol() && (enter < 0 || mag > best_mag)) {
          enter = j;
          best_mag = mag;
          if constexpr (Traits::exact) break;  // any nonzero pivot is fine
        }
      }
      if (enter < 0) return false;
      ftran(enter, d);
      pivot(enter, pos, d);
      ++iterations_;
    }
    return true;
  }

  // rebuild the inverse from scratch by Gauss-Jordan with partial pivoting,
  // then recompute the basic values
  void refactorize() {
    std::vector<Scalar> B(static_cast<size_t>(m_) * m_, Scalar(0));
    for (int c = 0; c < m_; ++c) {
      const int j = basis_[c];
      if (j >= ncols_) {
        B[(j - ncols_) * m_ + c] = Scalar(1);
        continue;
      }
      for (int k = lp_->col_ptr[j]; k < lp_->col_ptr[j + 1]; ++k)
        B[lp_->row_idx[k] * m_ + c] = lp_->values[k];
    }
    binv_.assign(static_cast<size_t>(m_) * m_, Scalar(0));
    for (int i = 0; i < m_; ++i) binv_[i * m_ + i] = Scalar(1);

    for (int col = 0; col < m_; ++col) {
      int piv = -1;
      Scalar piv_mag(0);
      for (int r = col; r < m_; ++r) {
        Scalar mag = B[r * m_ + col];
        if (mag < Scalar(0)) mag = -mag;
        if (piv < 0 || mag > piv_mag) {
          piv = r;
          piv_mag = mag;
        }
      }
      if (piv_mag == Scalar(0))
        throw std::runtime_error("singular basis during refactorization");
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(B[piv * m_ + k], B[col * m_ + k]);
          std::swap(binv_[piv * m_ + k], binv_[col * m_ + k]);
        }
      }
      const Scalar p = B[col * m_ + col];
      for (int k = 0; k < m_; ++k) {
        B[col * m_ + k] /= p;
        binv_[col * m_ + k] /= p;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const Scalar f = B[r * m_ + col];
        if (f == Scalar(0)) continue;
        for (int k = 0; k < m_; ++k) {
          B[r * m_ + k] -= f * B[col * m_ + k];
          binv_[r * m_ + k] -= f * binv_[col * m_ + k];
        }
      }
    }
    xb_.assign(m_, Scalar(0));
    for (int i = 0; i < m_; ++i)
      for (int r = 0; r < m_; ++r) xb_[i] += binv_[i * m_ + r] * lp_->rhs[r];
  }

  const StandardLp<Scalar>* lp_ = nullptr;
  SimplexOptions opts_;
  int m_ = 0, ncols_ = 0;
  bool phase1_ = true, bland_ = false;
  long iterations_ = 0, stall_ = 0;
  std::vector<int> basis_;
  std::vector<uint8_t> in_basis_;
  std::vector<Scalar> binv_, xb_;
};

}  // namespace wgs
