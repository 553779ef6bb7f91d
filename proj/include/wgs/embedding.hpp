#pragma once

#include <string>
#include <vector>

#include "wgs/configuration.hpp"
#include "wgs/cost.hpp"
#include "wgs/geometry.hpp"

// Explicit planar embeddings: actual positions and times realizing a
// visitation configuration.  The relaxation replaces the Euclidean
// distances below by a free pseudo-metric, so every feasible embedding
// evaluates to at least the LP optimum; a near-matching embedding (as at
// n = 6) shows the relaxation is tight there.

namespace wgs {

struct PlanarEmbedding {
  int n = 0;
  Configuration config;
  double t0 = 1.0;
  std::vector<double> times;       // t_1..t_n, event times
  std::vector<Point> free_points;  // P_i: the non-visitor's position at event i
};

// both agents ride along the visit path together: P_i at vertex rho_i,
// times the cumulative chord sums
PlanarEmbedding collocated_embedding(const Configuration& config, double t0);

// minimal feasible times for the given points: t_1 = t0, then each step
// long enough for the slower agent
void repair_times(PlanarEmbedding& emb);

struct NlpViolation {
  std::string name;
  double amount = 0.0;  // by how much the constraint fails
};

struct NlpEvaluation {
  bool feasible = false;
  double objective = 0.0;      // normalized worst event cost
  double raw_objective = 0.0;  // before dividing by f(1,1)
  std::vector<double> c0, c1;  // per-event reach times of the two agents
  std::vector<NlpViolation> violations;
};

// check ordering and movement against true Euclidean distances (tolerance
// 1e-9) and evaluate max_i f(c0_i, c1_i)
NlpEvaluation evaluate_nlp(const PlanarEmbedding& emb, const CostFn& cost);

struct RefineResult {
  PlanarEmbedding embedding;
  double objective = 0.0;  // normalized
  long evaluations = 0;
  bool budget_exhausted = false;
};

// derivative-free compass descent over the free points, times repaired to
// the minimum after every trial move; deterministic in (seed, budget),
// never returns anything infeasible or worse than the seed
RefineResult refine_embedding(const PlanarEmbedding& seed, const CostFn& cost,
                              long budget = 200000);

}  // namespace wgs
