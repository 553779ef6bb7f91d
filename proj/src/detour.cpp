#include "wgs/detour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace wgs {

namespace {

double wrap_angle(double x) {
  double r = std::fmod(x, kTau);
  if (r < 0.0) r += kTau;
  return r;
}

}  // namespace

double detour_gamma1(double a, double b, double w) {
  (void)b;
  return a + 2.0 * std::sin(a) / (w + 1.0);
}

double detour_gamma2(double a, double b, double w) {
  const double u = a + b / 2.0 + std::sin(b / 2.0);
  return kTau - a - b + 2.0 * std::sin(u) / (w + 1.0);
}

double detour_gamma3(double a, double b, double w) {
  return 2.0 * std::sin(b / 2.0) + (a + b + w * (kTau - a - b)) / (w + 1.0);
}

double CaseCosts::worst() const {
  return std::max(std::max(c1, c2), std::max(c3, c4));
}

CaseCosts detour_case_costs(double a, double b, double w) {
  CaseCosts cc;
  cc.c1 = 1.0 + detour_gamma1(a, b, w);
  cc.c2 = cc.c1;
  cc.c3 = 1.0 + detour_gamma2(a, b, w);
  cc.c4 = 1.0 + detour_gamma3(a, b, w);
  return cc;
}

namespace {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

Vec2 gamma_residual(double a, double b, double w) {
  const double g1 = detour_gamma1(a, b, w);
  const double g2 = detour_gamma2(a, b, w);
  const double g3 = detour_gamma3(a, b, w);
  return {g1 - g2, g1 - g3};
}

double inf_norm(const Vec2& v) {
  return std::max(std::fabs(v.x), std::fabs(v.y));
}

}  // namespace

DetourParams solve_detour_parameters(double w,
                                     const std::optional<DetourParams>& warm) {
  if (!(w >= 0.0 && w <= 1.0))
    throw std::invalid_argument("detour weight must lie in [0, 1]");

  double a = warm ? warm->alpha : 2.0;
  double b = warm ? warm->beta : 0.93;
  const double h = 1e-7;
  const double tol = 1e-12;
  const int max_iter = 100;

  Vec2 f = gamma_residual(a, b, w);
  int iter = 0;
  for (; iter < max_iter && inf_norm(f) > tol; ++iter) {
    // numeric Jacobian, central differences
    const Vec2 fa_p = gamma_residual(a + h, b, w);
    const Vec2 fa_m = gamma_residual(a - h, b, w);
    const Vec2 fb_p = gamma_residual(a, b + h, w);
    const Vec2 fb_m = gamma_residual(a, b - h, w);
    const double j11 = (fa_p.x - fa_m.x) / (2.0 * h);
    const double j12 = (fb_p.x - fb_m.x) / (2.0 * h);
    const double j21 = (fa_p.y - fa_m.y) / (2.0 * h);
    const double j22 = (fb_p.y - fb_m.y) / (2.0 * h);
    const double det = j11 * j22 - j12 * j21;
    if (std::fabs(det) < 1e-14)
      throw DetourSolveError("detour system: singular Jacobian");
    const double da = -(j22 * f.x - j12 * f.y) / det;
    const double db = -(-j21 * f.x + j11 * f.y) / det;

    // damp the step until the residual actually shrinks
    double lambda = 1.0;
    const double f0 = inf_norm(f);
    bool accepted = false;
    while (lambda >= 1e-6) {
      const double na = a + lambda * da;
      const double nb = b + lambda * db;
      const Vec2 nf = gamma_residual(na, nb, w);
      if (inf_norm(nf) < f0) {
        a = na;
        b = nb;
        f = nf;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw DetourSolveError("detour system: damped step stalled");
  }
  if (inf_norm(f) > tol)
    throw DetourSolveError("detour system: no convergence");
  // (pi, 0) solves the system for every weight but describes no detour;
  // landing there means the iteration left the branch of interest
  if (std::fabs(a - kPi) < 1e-6 && std::fabs(b) < 1e-6)
    throw DetourSolveError("detour system: converged to the trivial root");

  DetourParams p;
  p.alpha = a;
  p.beta = b;
  p.iterations = iter;
  const double g1 = detour_gamma1(a, b, w);
  const double g2 = detour_gamma2(a, b, w);
  const double g3 = detour_gamma3(a, b, w);
  p.residual = std::max({std::fabs(g1 - g2), std::fabs(g1 - g3),
                         std::fabs(g2 - g3)});
  return p;
}

double detour_threshold_weight() {
  // alpha_w grows with w while the detour is worthwhile; past the crossing
  // with arccos(-(w+1)/2) the plain (pi, 0) split wins.  Cold starts
  // throughout: warm-starting across bisection jumps can drop the Newton
  // iteration onto the trivial (pi, 0) root.
  auto gap = [](double w) {
    return solve_detour_parameters(w).alpha - std::acos(-(w + 1.0) / 2.0);
  };
  double lo = 0.0, hi = 0.2;
  if (!(gap(lo) < 0.0 && gap(hi) > 0.0))
    throw DetourSolveError("detour threshold: bracket does not straddle");
  for (int i = 0; i < 80 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

DetourCost detour_cost(double w) {
  if (!(w >= 0.0 && w <= 1.0))
    throw std::invalid_argument("detour weight must lie in [0, 1]");
  DetourCost out;
  const double w0 = detour_threshold_weight();
  if (w <= w0) {
    out.params = solve_detour_parameters(w);
    out.d = out.params.alpha;
    out.a = out.params.alpha;
    out.b = out.params.beta;
    out.cost = 1.0 + out.d + 2.0 * std::sin(out.d) / (w + 1.0);
  } else {
    out.above_threshold = true;
    const double x = (w + 1.0) / 2.0;
    out.d = std::acos(-x);
    out.a = kPi;
    out.b = 0.0;
    // sin(arccos(-x)) = sqrt(1 - x^2); vanishes at w = 1 so the cost there
    // is exactly 1 + pi
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    out.cost = 1.0 + out.d + 2.0 * s / (w + 1.0);
  }
  return out;
}

// -- trajectories ----------------------------------------------------------

Point TrajectoryPiece::position(double t) const {
  const double len = t_end - t_begin;
  double frac = 0.0;
  if (len > 0.0) frac = std::clamp((t - t_begin) / len, 0.0, 1.0);
  if (kind == Kind::Segment) return from + frac * (to - from);
  return circle_point(angle_start + sweep * frac);
}

double Trajectory::duration() const {
  return pieces.empty() ? 0.0 : pieces.back().t_end;
}

Point Trajectory::position(double t) const {
  if (pieces.empty()) return Point{0, 0};
  for (const auto& p : pieces)
    if (t <= p.t_end) return p.position(t);
  return pieces.back().position(pieces.back().t_end);
}

namespace {

TrajectoryPiece segment_piece(double t_begin, Point from, Point to) {
  TrajectoryPiece p;
  p.kind = TrajectoryPiece::Kind::Segment;
  p.searching = false;
  p.t_begin = t_begin;
  p.t_end = t_begin + (to - from).norm();
  p.from = from;
  p.to = to;
  return p;
}

TrajectoryPiece arc_piece(double t_begin, double angle_start, double sweep) {
  TrajectoryPiece p;
  p.kind = TrajectoryPiece::Kind::Arc;
  p.searching = true;
  p.t_begin = t_begin;
  p.t_end = t_begin + std::fabs(sweep);
  p.angle_start = angle_start;
  p.sweep = sweep;
  p.from = circle_point(angle_start);
  p.to = circle_point(angle_start + sweep);
  return p;
}

}  // namespace

Trajectory detour_trajectory(int agent, double a, double b) {
  if (agent != 0 && agent != 1)
    throw std::invalid_argument("detour agent must be 0 or 1");
  if (!(a >= 0.0 && b >= 0.0 && a + b <= kTau))
    throw std::invalid_argument("detour parameters need a,b >= 0, a+b <= 2pi");

  Trajectory traj;
  const Point center{0, 0};
  const Point start = circle_point(-a);
  if (agent == 0) {
    // down to c(-a), clockwise sweep to c(b), chord home to c(0)
    auto ride = segment_piece(0.0, center, start);
    auto arc = arc_piece(ride.t_end, -a, -(kTau - a - b));
    auto chord = segment_piece(arc.t_end, circle_point(b), circle_point(0.0));
    traj.pieces = {ride, arc, chord};
  } else {
    // down to c(-a), counter-clockwise to c(0), chord out to c(b),
    // clockwise back to c(0)
    auto ride = segment_piece(0.0, center, start);
    auto arc1 = arc_piece(ride.t_end, -a, a);
    auto chord =
        segment_piece(arc1.t_end, circle_point(0.0), circle_point(b));
    auto arc2 = arc_piece(chord.t_end, b, -b);
    traj.pieces = {ride, arc1, chord, arc2};
  }
  return traj;
}

namespace {

// earliest time a searching arc of the trajectory passes absolute angle
// theta; infinity if never
double first_cover_time(const Trajectory& traj, double theta) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : traj.pieces) {
    if (p.kind != TrajectoryPiece::Kind::Arc || !p.searching) continue;
    const double span = std::fabs(p.sweep);
    // offset from the arc's start, measured along its direction of travel
    double delta = p.sweep >= 0.0 ? wrap_angle(theta - p.angle_start)
                                  : wrap_angle(p.angle_start - theta);
    if (delta > span) {
      if (delta - span > 1e-12) continue;  // not on this arc
      delta = span;
    }
    best = std::min(best, p.t_begin + delta);
  }
  return best;
}

// covered angular intervals, normalized into [0, 2pi)
void collect_cover_intervals(const Trajectory& traj,
                             std::vector<std::pair<double, double>>& out) {
  for (const auto& p : traj.pieces) {
    if (p.kind != TrajectoryPiece::Kind::Arc || !p.searching) continue;
    const double span = std::fabs(p.sweep);
    if (span >= kTau) {
      out.emplace_back(0.0, kTau);
      continue;
    }
    const double lo =
        wrap_angle(p.sweep >= 0.0 ? p.angle_start : p.angle_start + p.sweep);
    const double hi = lo + span;
    if (hi <= kTau) {
      out.emplace_back(lo, hi);
    } else {
      out.emplace_back(lo, kTau);
      out.emplace_back(0.0, hi - kTau);
    }
  }
}

}  // namespace

bool covers_circle(const Trajectory& t0, const Trajectory& t1, double tol) {
  std::vector<std::pair<double, double>> iv;
  collect_cover_intervals(t0, iv);
  collect_cover_intervals(t1, iv);
  if (iv.empty()) return false;
  std::sort(iv.begin(), iv.end());
  if (iv.front().first > tol) return false;
  double reach = iv.front().second;
  for (const auto& [lo, hi] : iv) {
    if (lo > reach + tol) return false;
    reach = std::max(reach, hi);
  }
  return reach >= kTau - tol;
}

SimulationResult simulate_detour(const SimulationSpec& spec) {
  if (spec.grid < 1) throw std::invalid_argument("simulation grid must be >= 1");
  if (spec.threads < 1)
    throw std::invalid_argument("simulation threads must be >= 1");

  const Trajectory traj0 = detour_trajectory(0, spec.a, spec.b);
  const Trajectory traj1 = detour_trajectory(1, spec.a, spec.b);
  if (!covers_circle(traj0, traj1))
    throw std::runtime_error("detour trajectories do not cover the circle");

  // equispaced targets plus samples hugging every arc endpoint, where the
  // worst case may live as a one-sided limit
  std::vector<double> thetas;
  thetas.reserve(static_cast<size_t>(spec.grid) + 32);
  for (long k = 0; k < spec.grid; ++k)
    thetas.push_back(kTau * static_cast<double>(k) /
                     static_cast<double>(spec.grid));
  for (const Trajectory* traj : {&traj0, &traj1})
    for (const auto& p : traj->pieces) {
      if (p.kind != TrajectoryPiece::Kind::Arc || !p.searching) continue;
      for (double base : {p.angle_start, p.angle_start + p.sweep})
        for (double off : {-1e-9, 0.0, 1e-9})
          thetas.push_back(wrap_angle(base + off));
    }

  struct Best {
    double cost = -std::numeric_limits<double>::infinity();
    double theta = 0.0;
    double t_find = 0.0;
    int finder = 0;
    double t0 = 0.0, t1 = 0.0;
  };
  auto improves = [](const Best& cand, const Best& cur) {
    if (cand.cost != cur.cost) return cand.cost > cur.cost;
    return cand.theta < cur.theta;
  };

  auto evaluate = [&](double theta, Best& best) {
    const double f0 = first_cover_time(traj0, theta);
    const double f1 = first_cover_time(traj1, theta);
    const double t_find = std::min(f0, f1);
    if (!std::isfinite(t_find))
      throw std::runtime_error("simulated target never found");
    const int finder = f0 <= f1 ? 0 : 1;
    const Point target = circle_point(theta);
    const Trajectory& other = finder == 0 ? traj1 : traj0;
    const double t_other = t_find + (other.position(t_find) - target).norm();
    Best cand;
    cand.theta = theta;
    cand.t_find = t_find;
    cand.finder = finder;
    cand.t0 = finder == 0 ? t_find : t_other;
    cand.t1 = finder == 0 ? t_other : t_find;
    cand.cost = spec.cost.normalized(cand.t0, cand.t1);
    if (improves(cand, best)) best = cand;
  };

  Best best;
  if (spec.threads == 1) {
    for (double theta : thetas) evaluate(theta, best);
  } else {
    const size_t total = thetas.size();
    const size_t nthreads = static_cast<size_t>(spec.threads);
    std::vector<Best> partial(nthreads);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t]() {
        const size_t lo = total * t / nthreads;
        const size_t hi = total * (t + 1) / nthreads;
        for (size_t i = lo; i < hi; ++i) evaluate(thetas[i], partial[t]);
      });
    for (auto& th : pool) th.join();
    // the comparator is a total order, so the fold result does not depend
    // on how the samples were split
    for (const auto& cand : partial)
      if (improves(cand, best)) best = cand;
  }

  SimulationResult res;
  res.cost = best.cost;
  res.theta = best.theta;
  res.t_find = best.t_find;
  res.finder = best.finder;
  res.t0 = best.t0;
  res.t1 = best.t1;
  res.samples = static_cast<long>(thetas.size());
  return res;
}

}  // namespace wgs
