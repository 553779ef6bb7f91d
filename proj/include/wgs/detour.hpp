#pragma once

#include <optional>
#include <vector>

#include "wgs/cost.hpp"
#include "wgs/geometry.hpp"

// The (a,b)-detour search of the unit disk and its analysis.
//
// Both agents ride from the center to c(-a).  Agent 0 searches clockwise all
// the way to c(b) and cuts back to c(0) along the chord.  Agent 1 searches
// counter-clockwise to c(0), rides the chord to c(b), then searches
// clockwise back to c(0), closing the gap.  A found target halts the finder;
// the other agent pays the straight-line distance from wherever it is.
//
// For the weighted-average cost the two parameters are pinned by equalizing
// the three worst-case branch costs gamma_1 = gamma_2 = gamma_3 below; past
// a threshold weight w0 the plain (pi, 0) split is better and the cost has
// the closed form 1 + d + 2*sin(d)/(w+1) with d = arccos(-(w+1)/2).

namespace wgs {

// the three equalized branch costs minus the common "1 +" prefix
double detour_gamma1(double a, double b, double w);
double detour_gamma2(double a, double b, double w);
double detour_gamma3(double a, double b, double w);

// worst-case normalized costs of the four target-placement cases (case 2
// degenerates to case 1)
struct CaseCosts {
  double c1, c2, c3, c4;
  double worst() const;
};
CaseCosts detour_case_costs(double a, double b, double w);

struct DetourParams {
  double alpha = 0.0;
  double beta = 0.0;
  int iterations = 0;
  double residual = 0.0;  // max |gamma_i - gamma_j| at the solution
};

// damped Newton on (gamma1 - gamma2, gamma1 - gamma3); throws
// DetourSolveError when it cannot converge
struct DetourSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
DetourParams solve_detour_parameters(
    double w, const std::optional<DetourParams>& warm = std::nullopt);

// weight at which alpha_w meets arccos(-(w+1)/2); approx 0.0456911
double detour_threshold_weight();

struct DetourCost {
  double cost = 0.0;  // normalized worst-case search cost
  double d = 0.0;     // the argument of the closed form
  bool above_threshold = false;
  double a = 0.0, b = 0.0;  // parameters actually used by the trajectories
  DetourParams params;      // meaningful below the threshold
};
// closed-form cost of the best detour at this weight; exactly 1 + pi at w=1
DetourCost detour_cost(double w);

// -- trajectories and simulation -----------------------------------------

struct TrajectoryPiece {
  enum class Kind { Segment, Arc } kind = Kind::Segment;
  bool searching = false;
  double t_begin = 0.0, t_end = 0.0;
  Point from{0, 0}, to{0, 0};       // Segment
  double angle_start = 0.0;         // Arc, on the unit circle
  double sweep = 0.0;               // signed; |sweep| = t_end - t_begin

  Point position(double t) const;
};

struct Trajectory {
  std::vector<TrajectoryPiece> pieces;
  double duration() const;
  Point position(double t) const;  // clamped to the endpoints
};

Trajectory detour_trajectory(int agent, double a, double b);

// do the searching arcs of both trajectories jointly cover the circle?
bool covers_circle(const Trajectory& t0, const Trajectory& t1,
                   double tol = 1e-9);

struct SimulationSpec {
  double a = kPi, b = 0.0;
  CostFn cost;
  long grid = 100000;  // equispaced target angles, plus piece boundaries
  int threads = 1;
};

struct SimulationResult {
  double cost = 0.0;   // worst normalized cost over the sampled targets
  double theta = 0.0;  // a worst target angle (smallest among ties)
  double t_find = 0.0;
  int finder = 0;
  double t0 = 0.0, t1 = 0.0;  // termination times at the worst target
  long samples = 0;
};

// unit-speed replay of the algorithm against sampled target positions;
// throws std::runtime_error if the trajectories do not cover the circle
SimulationResult simulate_detour(const SimulationSpec& spec);

}  // namespace wgs
