#include "wgs/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wgs {

namespace {

constexpr double kNlpFeasTol = 1e-9;

Point anchored_point(const PlanarEmbedding& emb, int event) {
  return vertex_position(emb.config.rho[static_cast<size_t>(event)], emb.n);
}

// where agent j stands at the given event (0-based)
Point agent_point(const PlanarEmbedding& emb, int agent, int event) {
  if (emb.config.b[static_cast<size_t>(event)] == agent)
    return anchored_point(emb, event);
  return emb.free_points[static_cast<size_t>(event)];
}

void check_shape(const PlanarEmbedding& emb) {
  validate(emb.config);
  if (emb.n != emb.config.n)
    throw std::invalid_argument("embedding order disagrees with configuration");
  if (emb.times.size() != static_cast<size_t>(emb.n) ||
      emb.free_points.size() != static_cast<size_t>(emb.n))
    throw std::invalid_argument("embedding needs n times and n free points");
}

}  // namespace

PlanarEmbedding collocated_embedding(const Configuration& config, double t0) {
  validate(config);
  PlanarEmbedding emb;
  emb.n = config.n;
  emb.config = config;
  emb.t0 = t0;
  emb.free_points.reserve(static_cast<size_t>(config.n));
  for (int e = 0; e < config.n; ++e)
    emb.free_points.push_back(
        vertex_position(config.rho[static_cast<size_t>(e)], config.n));
  emb.times.assign(static_cast<size_t>(config.n), t0);
  repair_times(emb);
  return emb;
}

void repair_times(PlanarEmbedding& emb) {
  check_shape(emb);
  emb.times[0] = emb.t0;
  for (int e = 0; e + 1 < emb.n; ++e) {
    double step = 0.0;
    for (int j = 0; j < 2; ++j)
      step = std::max(
          step, (agent_point(emb, j, e + 1) - agent_point(emb, j, e)).norm());
    emb.times[static_cast<size_t>(e) + 1] = emb.times[static_cast<size_t>(e)] + step;
  }
}

NlpEvaluation evaluate_nlp(const PlanarEmbedding& emb, const CostFn& cost) {
  check_shape(emb);
  NlpEvaluation out;

  if (emb.times[0] < emb.t0 - kNlpFeasTol)
    out.violations.push_back(
        {"start: t_1 >= t_0", emb.t0 - emb.times[0]});
  for (int e = 0; e + 1 < emb.n; ++e) {
    const double dt = emb.times[static_cast<size_t>(e) + 1] -
                      emb.times[static_cast<size_t>(e)];
    if (dt < -kNlpFeasTol)
      out.violations.push_back(
          {"order: t_" + std::to_string(e + 2) + " >= t_" +
               std::to_string(e + 1),
           -dt});
    for (int j = 0; j < 2; ++j) {
      const double need =
          (agent_point(emb, j, e + 1) - agent_point(emb, j, e)).norm();
      if (dt < need - kNlpFeasTol)
        out.violations.push_back(
            {"move: agent " + std::to_string(j) + ", events " +
                 std::to_string(e + 1) + "->" + std::to_string(e + 2),
             need - dt});
    }
  }
  out.feasible = out.violations.empty();

  out.c0.resize(static_cast<size_t>(emb.n));
  out.c1.resize(static_cast<size_t>(emb.n));
  double raw = -std::numeric_limits<double>::infinity();
  for (int e = 0; e < emb.n; ++e) {
    const Point target = anchored_point(emb, e);
    const double ce0 = emb.times[static_cast<size_t>(e)] +
                       (agent_point(emb, 0, e) - target).norm();
    const double ce1 = emb.times[static_cast<size_t>(e)] +
                       (agent_point(emb, 1, e) - target).norm();
    out.c0[static_cast<size_t>(e)] = ce0;
    out.c1[static_cast<size_t>(e)] = ce1;
    raw = std::max(raw, cost.evaluate(ce0, ce1));
  }
  out.raw_objective = raw;
  out.objective = raw / cost.normalization();
  return out;
}

namespace {

// Objective with both maxima (slower-agent movement, worst event) replaced
// by log-sum-exp at temperature tau.  This dominates the true objective and
// is smooth, which is what rescues compass search: at tied seeds (e.g. the
// collocated embedding) the exact max has whole subspaces of zero descent
// directions, while the smoothed surface always slopes toward balancing
// them.  tau <= 0 falls back to the exact evaluation.
double smoothed_objective(const PlanarEmbedding& emb, const CostFn& cost,
                          const std::vector<std::pair<double, double>>& terms,
                          double tau) {
  const int n = emb.n;
  std::vector<double> t(static_cast<size_t>(n));
  t[0] = emb.t0;
  for (int e = 0; e + 1 < n; ++e) {
    double d0 = (agent_point(emb, 0, e + 1) - agent_point(emb, 0, e)).norm();
    double d1 = (agent_point(emb, 1, e + 1) - agent_point(emb, 1, e)).norm();
    double step;
    if (tau > 0.0) {
      const double m = std::max(d0, d1);
      step = m + tau * std::log(std::exp((d0 - m) / tau) +
                                std::exp((d1 - m) / tau));
    } else {
      step = std::max(d0, d1);
    }
    t[static_cast<size_t>(e) + 1] = t[static_cast<size_t>(e)] + step;
  }

  const double norm = cost.normalization();
  double peak = -std::numeric_limits<double>::infinity();
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(n) * terms.size());
  for (int e = 0; e < n; ++e) {
    const Point target = anchored_point(emb, e);
    const double c0 =
        t[static_cast<size_t>(e)] + (agent_point(emb, 0, e) - target).norm();
    const double c1 =
        t[static_cast<size_t>(e)] + (agent_point(emb, 1, e) - target).norm();
    for (const auto& [u, v] : terms) {
      const double val = (u * c0 + v * c1) / norm;
      vals.push_back(val);
      peak = std::max(peak, val);
    }
  }
  if (tau <= 0.0) return peak;
  double acc = 0.0;
  for (double val : vals) acc += std::exp((val - peak) / tau);
  return peak + tau * std::log(acc);
}

}  // namespace

RefineResult refine_embedding(const PlanarEmbedding& seed, const CostFn& cost,
                              long budget) {
  if (budget < 1) throw std::invalid_argument("refinement budget must be >= 1");
  check_shape(seed);
  const auto terms = cost.linear_terms();

  const double seed_objective = evaluate_nlp(seed, cost).objective;

  PlanarEmbedding cur = seed;
  repair_times(cur);  // projection; with minimal times only the points matter
  long evals = 1;

  // sixteen compass directions: the norm terms put kinks along arbitrary
  // angles and a coarser fan zigzags to a halt above the optimum
  std::vector<Point> dirs;
  for (int k = 0; k < 16; ++k) {
    const double phi = kTau * static_cast<double>(k) / 16.0;
    dirs.emplace_back(std::cos(phi), std::sin(phi));
  }

  // temperature schedule down to an exact final polish
  std::vector<double> taus = {0.5,    0.125,  3.1e-2, 7.8e-3, 2.0e-3,
                              4.9e-4, 1.2e-4, 3.1e-5, 7.6e-6, 0.0};
  bool exhausted = false;
  for (double tau : taus) {
    if (exhausted) break;
    double cur_val = smoothed_objective(cur, cost, terms, tau);
    ++evals;
    double step = std::max(0.25, 4.0 * tau);
    const double step_floor = tau > 0.0 ? std::max(1e-8, 0.005 * tau) : 1e-9;
    while (step > step_floor && !exhausted) {
      bool improved_this_pass = false;
      for (int e = 0; e < cur.n && !exhausted; ++e) {
        for (const Point& dir : dirs) {
          if (evals >= budget) {
            exhausted = true;
            break;
          }
          const Point saved = cur.free_points[static_cast<size_t>(e)];
          cur.free_points[static_cast<size_t>(e)] = saved + step * dir;
          const double trial = smoothed_objective(cur, cost, terms, tau);
          ++evals;
          if (trial < cur_val - 1e-15) {
            cur_val = trial;
            improved_this_pass = true;
          } else {
            cur.free_points[static_cast<size_t>(e)] = saved;
          }
        }
      }
      if (improved_this_pass)
        step = std::min(step * 2.0, 1.0);  // ride a working step a bit longer
      else
        step *= 0.5;
    }
  }
  repair_times(cur);
  const double cur_obj = evaluate_nlp(cur, cost).objective;

  RefineResult res;
  // descent on the smoothed surrogate all but guarantees this, but keep the
  // contract that the result is never worse than the seed as handed in
  if (cur_obj <= seed_objective) {
    res.embedding = cur;
    res.objective = cur_obj;
  } else {
    res.embedding = seed;
    res.objective = seed_objective;
  }
  res.evaluations = evals;
  res.budget_exhausted = exhausted;
  return res;
}

}  // namespace wgs
