#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "wgs/embedding.hpp"
#include "wgs/lpsolve.hpp"
#include "wgs/relaxation.hpp"

using namespace wgs;

namespace {

Configuration make_config(int n, std::vector<int> rho,
                          std::vector<int> bits) {
  Configuration c;
  c.n = n;
  c.rho = std::move(rho);
  c.b.assign(bits.begin(), bits.end());
  return c;
}

double rel_optimum(const Configuration& cfg, const CostFn& cost) {
  RelaxationInstance inst = build_relaxation(cfg, cost, StartTime{});
  LpSolution sol = solve_relaxation(inst);
  REQUIRE(sol.status == LpStatus::Optimal);
  return sol.normalized;
}

}  // namespace

TEST_SUITE("embedding") {

TEST_CASE("collocated embedding is feasible with cumulative times") {
  const Configuration cfg = make_config(4, {0, 1, 2, 3}, {1, 0, 0, 1});
  const PlanarEmbedding emb = collocated_embedding(cfg, 1.0);
  REQUIRE(emb.times.size() == 4);
  CHECK(emb.times[0] == 1.0);
  // consecutive vertices of the square are one chord apart
  const double chord = chord_from_gap(1, 4);
  for (int e = 0; e + 1 < 4; ++e)
    CHECK(emb.times[e + 1] - emb.times[e] == doctest::Approx(chord));

  const NlpEvaluation ev = evaluate_nlp(emb, CostFn::proj2());
  CHECK(ev.feasible);
  CHECK(ev.violations.empty());
  // with everyone on the event vertex, reach times equal event times
  for (int e = 0; e < 4; ++e) {
    CHECK(ev.c0[e] == doctest::Approx(emb.times[e]));
    CHECK(ev.c1[e] == doctest::Approx(emb.times[e]));
  }
  CHECK(ev.objective == doctest::Approx(emb.times[3]));
}

TEST_CASE("violations are named") {
  const Configuration cfg = make_config(3, {0, 1, 2}, {0, 1, 0});
  PlanarEmbedding emb = collocated_embedding(cfg, 1.0);

  SUBCASE("late start") {
    emb.times[0] = 0.5;
    const NlpEvaluation ev = evaluate_nlp(emb, CostFn::proj2());
    CHECK(!ev.feasible);
    REQUIRE(!ev.violations.empty());
    CHECK(ev.violations.front().name == "start: t_1 >= t_0");
    CHECK(ev.violations.front().amount == doctest::Approx(0.5));
  }

  SUBCASE("movement broken by squeezing one gap") {
    emb.times[1] = emb.times[0] + 0.1;  // the step needs a full chord
    const NlpEvaluation ev = evaluate_nlp(emb, CostFn::proj2());
    CHECK(!ev.feasible);
    bool named = false;
    for (const auto& v : ev.violations)
      if (v.name.find("move:") == 0 && v.name.find("events 1->2") != std::string::npos)
        named = true;
    CHECK(named);
  }

  SUBCASE("order reversal") {
    emb.times[2] = emb.times[1] - 0.2;
    const NlpEvaluation ev = evaluate_nlp(emb, CostFn::proj2());
    CHECK(!ev.feasible);
    bool named = false;
    for (const auto& v : ev.violations)
      if (v.name.find("order: t_3 >= t_2") == 0) named = true;
    CHECK(named);
  }

  SUBCASE("dimension mismatch is rejected") {
    emb.times.pop_back();
    CHECK_THROWS_AS((void)evaluate_nlp(emb, CostFn::proj2()),
                    std::invalid_argument);
  }
}

TEST_CASE("every feasible embedding dominates the relaxation") {
  // the relaxation frees the metric, so no planar embedding can beat it
  std::mt19937 rng(20260815);
  std::uniform_real_distribution<double> coord(-1.2, 1.2);
  const std::vector<Configuration> cfgs = {
      make_config(3, {0, 1, 2}, {0, 1, 0}),
      make_config(3, {0, 2, 1}, {0, 0, 1}),
      make_config(4, {0, 1, 2, 3}, {1, 0, 0, 1}),
      make_config(4, {0, 2, 1, 3}, {0, 1, 1, 0}),
      make_config(5, {0, 2, 1, 3, 4}, {0, 1, 0, 1, 1}),
      make_config(5, {0, 1, 2, 3, 4}, {0, 1, 0, 1, 0}),
  };
  for (const auto& cfg : cfgs) {
    const double rel = rel_optimum(cfg, CostFn::proj2());
    for (int trial = 0; trial < 17; ++trial) {
      PlanarEmbedding emb = collocated_embedding(cfg, 1.0);
      for (auto& p : emb.free_points) p = Point(coord(rng), coord(rng));
      repair_times(emb);
      const NlpEvaluation ev = evaluate_nlp(emb, CostFn::proj2());
      REQUIRE(ev.feasible);
      CHECK(ev.objective >= rel - 1e-8);
    }
  }
}

TEST_CASE("refinement reaches embeddable optima") {
  SUBCASE("triangle: relaxation value is attained") {
    const Configuration cfg = make_config(3, {0, 1, 2}, {0, 1, 0});
    const double rel = rel_optimum(cfg, CostFn::proj2());
    CHECK(rel == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-9));
    const RefineResult res =
        refine_embedding(collocated_embedding(cfg, 1.0), CostFn::proj2());
    CHECK(res.objective <= rel + 1e-6);
    CHECK(res.objective >= rel - 1e-8);
    CHECK(evaluate_nlp(res.embedding, CostFn::proj2()).feasible);

    // an already-optimal embedding is a fixed point
    const RefineResult again =
        refine_embedding(res.embedding, CostFn::proj2(), 50000);
    CHECK(again.objective >= res.objective - 1e-9);
    CHECK(again.objective <= res.objective + 1e-15);
  }

  SUBCASE("hexagon: an optimal tie configuration embeds exactly") {
    const Configuration cfg = make_config(6, {0, 1, 2, 5, 3, 4},
                                          {1, 0, 0, 1, 0, 1});
    const double rel = rel_optimum(cfg, CostFn::proj2());
    CHECK(rel == doctest::Approx(3.0 + std::sqrt(3.0) / 2.0).epsilon(1e-9));
    const RefineResult res =
        refine_embedding(collocated_embedding(cfg, 1.0), CostFn::proj2(), 400000);
    CHECK(res.objective <= rel + 1e-3);
    CHECK(res.objective >= rel - 1e-8);
  }
}

TEST_CASE("refinement contracts") {
  const Configuration cfg = make_config(4, {0, 1, 2, 3}, {1, 0, 0, 1});

  SUBCASE("never worse than the seed, always feasible") {
    PlanarEmbedding seed = collocated_embedding(cfg, 1.0);
    seed.free_points[2] = Point(0.3, -0.4);
    repair_times(seed);
    const double before = evaluate_nlp(seed, CostFn::proj2()).objective;
    const RefineResult res = refine_embedding(seed, CostFn::proj2(), 20000);
    CHECK(res.objective <= before);
    CHECK(evaluate_nlp(res.embedding, CostFn::proj2()).feasible);
  }

  SUBCASE("deterministic in seed and budget") {
    const PlanarEmbedding seed = collocated_embedding(cfg, 1.0);
    const RefineResult a = refine_embedding(seed, CostFn::proj2(), 30000);
    const RefineResult b = refine_embedding(seed, CostFn::proj2(), 30000);
    CHECK(a.objective == b.objective);
    CHECK(a.evaluations == b.evaluations);
    for (size_t i = 0; i < a.embedding.free_points.size(); ++i)
      CHECK((a.embedding.free_points[i] - b.embedding.free_points[i]).norm() ==
            0.0);
  }

  SUBCASE("tiny budget reports exhaustion but stays sound") {
    const PlanarEmbedding seed = collocated_embedding(cfg, 1.0);
    const double before = evaluate_nlp(seed, CostFn::proj2()).objective;
    const RefineResult res = refine_embedding(seed, CostFn::proj2(), 40);
    CHECK(res.budget_exhausted);
    CHECK(res.objective <= before);
    CHECK_THROWS_AS((void)refine_embedding(seed, CostFn::proj2(), 0),
                    std::invalid_argument);
  }

  SUBCASE("weighted cost refines too") {
    const RefineResult res = refine_embedding(
        collocated_embedding(cfg, 1.0), CostFn::weighted(0.5), 60000);
    const double rel = rel_optimum(cfg, CostFn::weighted(0.5));
    CHECK(res.objective >= rel - 1e-8);
    CHECK(evaluate_nlp(res.embedding, CostFn::weighted(0.5)).feasible);
  }
}

}  // TEST_SUITE
