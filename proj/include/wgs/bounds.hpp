#pragma once

#include "wgs/geometry.hpp"

// Closed-form bounds for searching the unit disk with two agents that start
// at the center, move at unit speed, and pay a weighted average
// (w*x + y)/(w + 1) of their arrival times at the target.

namespace wgs {

// Any pair of trajectories must spend 1 to reach the boundary and jointly
// sweep the whole circle; normalization makes this cost at least 1 + pi
// independently of the weight.
double weak_disk_bound();

// Optimum of the heptagon relaxation for the weighted-average cost, in
// closed form: 1 + cos(3*pi/14)/(w+1) + 5*sin(pi/7).
double heptagon_weighted_bound(double w);

// An n-gon bound lifts to the disk at the price of a pi/n start-time shift.
double lift_to_disk(double ngon_value, int n);

// Best disk bound for the weighted-average cost: the lifted heptagon value
// against the weak bound, whichever wins at this weight.
double disk_weighted_bound(double w);

// Weight where the lifted heptagon bound overtakes the weak bound:
// 7*cos(3*pi/14) / (6*pi - 35*sin(pi/7)) - 1.
double weighted_transition();

}  // namespace wgs
