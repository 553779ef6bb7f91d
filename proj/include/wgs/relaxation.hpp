#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wgs/configuration.hpp"
#include "wgs/cost.hpp"
#include "wgs/geometry.hpp"

// Metric relaxation of a visitation configuration.
//
// Fix a configuration (rho, b) and a start time t0.  At event e the visiting
// agent b[e] sits on vertex rho[e]; the other agent's position is an
// unconstrained "free" point.  Dropping the plane entirely, we keep only a
// pseudo-metric on the 2n points involved (n anchored vertices, n free
// points), pin the anchored-anchored distances to the true chord lengths,
// and ask how early both agents can have reached every vertex.  The optimum
// of the resulting LP is a valid lower bound on the cost of any search
// trajectory pair that visits the vertices in this order with these roles.
//
// Variables: event times t_e, reach times c^j_e (agent j's earliest arrival
// at the vertex of event e), one distance variable per point pair involving
// a free point, and the epigraph variable z for the cost.  All rows are
// written as a.x >= rhs, where each rhs carries at most one symbolic
// constant (the start time or a chord 2*sin(pi*k/n)) so certificates can
// re-evaluate it in exact arithmetic later.

namespace wgs {

// Start time of the first event.  Kept symbolic (an exact rational plus an
// optional pi/n term) so the certification path never rounds it.
struct StartTime {
  // base is a decimal string to stay exact; "1" for searches that begin on
  // the polygon boundary after a unit travel from the center.
  std::string base = "1";
  bool plus_pi_over_n = false;

  double value(int n) const;
  std::string describe(int n) const;
};

enum class SymKind : uint8_t { Zero, Start, Chord };

// rhs = sign * (symbolic constant), with `gap` selecting the chord.
struct SymbolicRhs {
  SymKind kind = SymKind::Zero;
  int gap = 0;
  int sign = 1;
  double value = 0.0;  // resolved double, kept alongside for the fast path
};

enum class RowClass : uint8_t { Ordering, Movement, Reach, Objective, Triangle };

struct RowInfo {
  RowClass cls;
  int a = 0, b = 0, c = 0;  // payload; meaning depends on cls
};

struct RelaxationInstance {
  int n = 0;
  CostFn cost;
  StartTime t0;
  Configuration config;

  int num_vars = 0;
  int num_rows = 0;
  int z_var = -1;

  // rows in CSR form, all constraints a.x >= rhs
  std::vector<int> row_ptr, col_idx;
  std::vector<double> coef;
  std::vector<SymbolicRhs> rhs;
  std::vector<RowInfo> rows;
  std::vector<uint8_t> var_nonneg;  // 1 for distance variables, else free

  // -- variable layout ----------------------------------------------------
  int t_var(int e) const { return e; }
  int c_var(int e, int j) const { return n + 2 * e + j; }
  int d_free_anchored(int e_free, int e_anch) const {
    return 3 * n + e_free * n + e_anch;
  }
  int d_free_free(int e, int ep) const {  // e < ep
    return 3 * n + n * n + e * n - e * (e + 1) / 2 + (ep - e - 1);
  }

  // point ids: anchored point of event e is e, free point of event e is n+e
  bool point_is_free(int p) const { return p >= n; }
  // distance between two point ids: a chord constant if both are anchored,
  // a variable otherwise
  struct Dist {
    bool is_const;
    int var;   // valid when !is_const
    int gap;   // valid when is_const
    double chord;
  };
  Dist dist(int p, int q) const;

  std::string var_name(int v) const;
  std::string row_name(int r) const;
  uint64_t hash() const;
};

// Expected sizes, exposed for sanity checks and capacity planning.
int relaxation_num_vars(int n);
int relaxation_num_rows(int n, const CostFn& cost);

RelaxationInstance build_relaxation(const Configuration& config,
                                    const CostFn& cost, const StartTime& t0);

// Primal solution arranged back into metric-space terms.
struct RelaxationWitness {
  std::vector<double> times;           // t_e
  Eigen::MatrixXd reach;               // 2 x n, reach(j, e) = c^j_e
  Eigen::MatrixXd dist;                // 2n x 2n symmetric, constants filled
  double objective = 0.0;              // z
  double max_triangle_violation = 0.0; // of the returned matrix, >=0
  double min_distance = 0.0;           // most negative distance entry
};

RelaxationWitness extract_witness(const RelaxationInstance& inst,
                                  const std::vector<double>& x);

// CPLEX-style LP text, for cross-checking against external solvers.
void write_lp_text(const RelaxationInstance& inst, std::ostream& os);

}  // namespace wgs
