#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wgs/detour.hpp"

using namespace wgs;

TEST_SUITE("detour") {

TEST_CASE("equalized parameters at w = 0") {
  const DetourParams p = solve_detour_parameters(0.0);
  CHECK(p.residual < 1e-10);
  CHECK(p.alpha == doctest::Approx(1.9997).epsilon(1e-3));
  CHECK(p.beta == doctest::Approx(0.925793).epsilon(1e-4));

  const CaseCosts cc = detour_case_costs(p.alpha, p.beta, 0.0);
  CHECK(cc.c1 == doctest::Approx(cc.c3).epsilon(1e-10));
  CHECK(cc.c1 == doctest::Approx(cc.c4).epsilon(1e-10));
  CHECK(cc.c2 == cc.c1);
  CHECK(cc.worst() == doctest::Approx(cc.c1).epsilon(1e-12));
  // all three branch costs reduce to 1 + alpha + 2 sin(alpha)
  CHECK(cc.c1 ==
        doctest::Approx(1.0 + p.alpha + 2.0 * std::sin(p.alpha)).epsilon(1e-12));
}

TEST_CASE("threshold weight") {
  const double w0 = detour_threshold_weight();
  CHECK(w0 == doctest::Approx(0.0456911).epsilon(1e-4));
  // at the threshold the equalized alpha meets arccos(-(w+1)/2)
  const DetourParams p = solve_detour_parameters(w0);
  CHECK(p.alpha == doctest::Approx(std::acos(-(w0 + 1.0) / 2.0)).epsilon(1e-8));
}

TEST_CASE("cost curve") {
  const double w0 = detour_threshold_weight();

  SUBCASE("continuous across the threshold") {
    const DetourCost lo = detour_cost(w0 - 1e-7);
    const DetourCost hi = detour_cost(w0 + 1e-7);
    CHECK(!lo.above_threshold);
    CHECK(hi.above_threshold);
    CHECK(std::fabs(lo.cost - hi.cost) < 1e-4);
  }

  SUBCASE("decreasing in the weight") {
    double prev = detour_cost(0.0).cost;
    CHECK(prev > 4.8);
    for (double w : {0.02, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      const double cur = detour_cost(w).cost;
      CHECK(cur < prev);
      prev = cur;
    }
  }

  SUBCASE("closed form above the threshold") {
    const DetourCost c = detour_cost(0.5);
    const double d = std::acos(-0.75);
    CHECK(c.above_threshold);
    CHECK(c.d == doctest::Approx(d).epsilon(1e-14));
    CHECK(c.cost ==
          doctest::Approx(1.0 + d + 2.0 * std::sin(d) / 1.5).epsilon(1e-12));
  }

  SUBCASE("w = 1 collapses to 1 + pi exactly") {
    const DetourCost c = detour_cost(1.0);
    CHECK(c.above_threshold);
    CHECK(c.cost == 1.0 + kPi);  // bitwise: the sine factor vanishes
    CHECK(c.a == kPi);
    CHECK(c.b == 0.0);
  }

  SUBCASE("rejects weights outside [0, 1]") {
    CHECK_THROWS_AS((void)detour_cost(-0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)detour_cost(1.5), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_detour_parameters(2.0), std::invalid_argument);
  }
}

TEST_CASE("trajectory geometry") {
  const double a = 2.0, b = 0.9;
  const Trajectory t0 = detour_trajectory(0, a, b);
  const Trajectory t1 = detour_trajectory(1, a, b);

  SUBCASE("piece timing") {
    REQUIRE(t0.pieces.size() == 3);
    REQUIRE(t1.pieces.size() == 4);
    CHECK(t0.pieces[0].t_end == doctest::Approx(1.0));
    CHECK(t0.pieces[1].t_end == doctest::Approx(1.0 + kTau - a - b));
    CHECK(t0.duration() ==
          doctest::Approx(1.0 + kTau - a - b + 2.0 * std::sin(b / 2.0)));
    CHECK(t1.pieces[1].t_end == doctest::Approx(1.0 + a));
    CHECK(t1.duration() ==
          doctest::Approx(1.0 + a + 2.0 * std::sin(b / 2.0) + b));
  }

  SUBCASE("positions along the way") {
    CHECK(t0.position(0.0).norm() == doctest::Approx(0.0));
    CHECK((t0.position(1.0) - circle_point(-a)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK((t1.position(1.0) - circle_point(-a)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    // halfway through its sweep, the clockwise agent sits at -a - s/2
    const double s = kTau - a - b;
    CHECK((t0.position(1.0 + s / 2.0) - circle_point(-a - s / 2.0)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    // both finish at c(0)
    CHECK((t0.position(t0.duration()) - circle_point(0.0)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK((t1.position(t1.duration()) - circle_point(0.0)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    // past the end the agent stays put
    CHECK((t1.position(t1.duration() + 5.0) - circle_point(0.0)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("unit speed everywhere") {
    for (const Trajectory* traj : {&t0, &t1})
      for (double t = 0.05; t < traj->duration(); t += 0.1) {
        const double h = 1e-6;
        const double v =
            (traj->position(t + h) - traj->position(t - h)).norm() / (2.0 * h);
        CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
      }
  }

  SUBCASE("joint coverage of the circle") {
    CHECK(covers_circle(t0, t1));
    CHECK(covers_circle(detour_trajectory(0, kPi, 0.0),
                        detour_trajectory(1, kPi, 0.0)));
  }

  SUBCASE("rejects bad parameters") {
    CHECK_THROWS_AS((void)detour_trajectory(2, a, b), std::invalid_argument);
    CHECK_THROWS_AS((void)detour_trajectory(0, -0.1, b),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)detour_trajectory(0, 5.0, 2.0),
                    std::invalid_argument);
  }
}

TEST_CASE("coverage test sees gaps") {
  Trajectory half, other;
  TrajectoryPiece arc;
  arc.kind = TrajectoryPiece::Kind::Arc;
  arc.searching = true;
  arc.t_begin = 0.0;
  arc.t_end = kPi;
  arc.angle_start = 0.0;
  arc.sweep = kPi;
  half.pieces = {arc};
  CHECK(!covers_circle(half, other));
  arc.angle_start = kPi;
  other.pieces = {arc};
  CHECK(covers_circle(half, other));
}

TEST_CASE("simulation matches the closed form") {
  SimulationSpec spec;
  spec.grid = 100000;

  SUBCASE("below the threshold") {
    for (double w : {0.0, 0.02}) {
      const DetourCost c = detour_cost(w);
      REQUIRE(!c.above_threshold);
      spec.a = c.a;
      spec.b = c.b;
      spec.cost = CostFn::weighted(w);
      const SimulationResult sim = simulate_detour(spec);
      CHECK(sim.cost == doctest::Approx(c.cost).epsilon(1e-6));
      CHECK(sim.cost ==
            doctest::Approx(detour_case_costs(c.a, c.b, w).worst())
                .epsilon(1e-6));
    }
  }

  SUBCASE("above the threshold") {
    for (double w : {0.1, 0.5, 0.9}) {
      const DetourCost c = detour_cost(w);
      REQUIRE(c.above_threshold);
      spec.a = c.a;
      spec.b = c.b;
      spec.cost = CostFn::weighted(w);
      const SimulationResult sim = simulate_detour(spec);
      CHECK(sim.cost == doctest::Approx(c.cost).epsilon(1e-6));
    }
  }

  SUBCASE("w = 1 exactly") {
    spec.a = kPi;
    spec.b = 0.0;
    spec.cost = CostFn::weighted(1.0);
    const SimulationResult sim = simulate_detour(spec);
    CHECK(sim.cost == 1.0 + kPi);  // bitwise, via the theta = 0 sample
    CHECK(sim.theta == 0.0);
  }

  SUBCASE("worker count does not change the result") {
    spec.a = kPi;
    spec.b = 0.0;
    spec.cost = CostFn::weighted(0.5);
    spec.grid = 20000;
    spec.threads = 1;
    const SimulationResult one = simulate_detour(spec);
    spec.threads = 3;
    const SimulationResult three = simulate_detour(spec);
    CHECK(one.cost == three.cost);
    CHECK(one.theta == three.theta);
    CHECK(one.t0 == three.t0);
    CHECK(one.t1 == three.t1);
  }

  SUBCASE("finder bookkeeping is consistent") {
    spec.a = 2.0;
    spec.b = 0.9;
    spec.cost = CostFn::weighted(0.3);
    spec.grid = 10000;
    const SimulationResult sim = simulate_detour(spec);
    CHECK(sim.t_find == (sim.finder == 0 ? sim.t0 : sim.t1));
    CHECK(sim.t0 >= 1.0);
    CHECK(sim.t1 >= 1.0);
    CHECK(sim.samples >= spec.grid);
  }

  SUBCASE("rejects bad spec") {
    spec.grid = 0;
    CHECK_THROWS_AS((void)simulate_detour(spec), std::invalid_argument);
    spec.grid = 100;
    spec.threads = 0;
    CHECK_THROWS_AS((void)simulate_detour(spec), std::invalid_argument);
  }
}

}  // TEST_SUITE
