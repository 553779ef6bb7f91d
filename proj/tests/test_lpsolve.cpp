#include <doctest.h>

#include <cmath>
#include <random>

#include "wgs/lpsolve.hpp"

using namespace wgs;

namespace {

Configuration make(int n, std::vector<int> rho, std::vector<int> b) {
  Configuration c;
  c.n = n;
  c.rho = std::move(rho);
  for (int v : b) c.b.push_back(static_cast<uint8_t>(v));
  return c;
}

LpSolution solve_cfg(const Configuration& c, const CostFn& f,
                     const StartTime& t0 = {}) {
  const RelaxationInstance inst = build_relaxation(c, f, t0);
  LpSolution sol = solve_relaxation(inst);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.gap <= kGapTol);
  CHECK(sol.max_violation <= kFeasTol);
  return sol;
}

Configuration random_config(int n, std::mt19937& rng) {
  Configuration c;
  c.n = n;
  c.rho.resize(n);
  for (int i = 0; i < n; ++i) c.rho[i] = i;
  std::shuffle(c.rho.begin(), c.rho.end(), rng);
  c.b.resize(n);
  for (int i = 0; i < n; ++i) c.b[i] = static_cast<uint8_t>(rng() & 1);
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("lpsolve");

TEST_CASE("known optima of small polygons, second-arrival cost") {
  // triangle: 1 + sqrt(3)
  auto sol3 = solve_cfg(make(3, {0, 1, 2}, {0, 1, 0}), CostFn::proj2());
  CHECK(sol3.objective == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-9));
  CHECK(sol3.normalized == doctest::Approx(sol3.objective));

  // square: 1 + 3/sqrt(2)
  auto sol4 = solve_cfg(make(4, {0, 1, 2, 3}, {1, 0, 0, 1}), CostFn::proj2());
  CHECK(sol4.objective ==
        doctest::Approx(1.0 + 3.0 / std::sqrt(2.0)).epsilon(1e-9));

  // pentagon (reference value to 6 decimals)
  auto sol5 =
      solve_cfg(make(5, {0, 2, 1, 3, 4}, {0, 1, 0, 1, 1}), CostFn::proj2());
  CHECK(sol5.objective == doctest::Approx(3.714412).epsilon(5e-7));

  // hexagon: 3 + sqrt(3)/2
  auto sol6 = solve_cfg(make(6, {0, 1, 2, 4, 3, 5}, {1, 0, 0, 1, 0, 1}),
                        CostFn::proj2());
  CHECK(sol6.objective ==
        doctest::Approx(3.0 + std::sqrt(3.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("pointwise-larger costs give larger relaxation optima") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const Configuration c = random_config(3 + trial % 3, rng);
    const double p2 = solve_cfg(c, CostFn::proj2()).objective;
    const double mx = solve_cfg(c, CostFn::max_norm()).objective;
    CHECK(mx >= p2 - 1e-9);
  }
}

TEST_CASE("solutions are genuine metric certificates") {
  const Configuration c = make(5, {0, 2, 1, 3, 4}, {0, 1, 0, 1, 1});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::max_norm(), StartTime{});
  const LpSolution sol = solve_relaxation(inst);
  REQUIRE(sol.status == LpStatus::Optimal);
  const RelaxationWitness w = extract_witness(inst, sol.x);
  CHECK(w.max_triangle_violation <= 1e-8);
  CHECK(w.min_distance >= -1e-9);
  CHECK(w.objective == doctest::Approx(sol.objective));
  for (size_t r = 0; r < sol.dual.size(); ++r) CHECK(sol.dual[r] >= -1e-9);
}

TEST_CASE("start-time shifts move the optimum linearly") {
  std::mt19937 rng(31);
  const double shift = 0.8125;  // exact dyadic, keeps the check tight
  const CostFn fns[] = {CostFn::proj2(), CostFn::max_norm(),
                        CostFn::weighted(0.37)};
  for (int n = 3; n <= 5; ++n) {
    const Configuration c = random_config(n, rng);
    for (const CostFn& f : fns) {
      StartTime base;                  // t0 = 1
      StartTime moved;
      moved.base = "1.8125";
      const LpSolution a = solve_cfg(c, f, base);
      const LpSolution b = solve_cfg(c, f, moved);
      CHECK(b.objective - a.objective ==
            doctest::Approx(shift * f.normalization()).epsilon(1e-8));
      CHECK(b.normalized - a.normalized == doctest::Approx(shift).epsilon(1e-8));
    }
  }
}

TEST_CASE("certificates verify and bound the floating optimum from below") {
  const Configuration cases[] = {
      make(3, {0, 1, 2}, {0, 1, 0}),
      make(4, {0, 1, 2, 3}, {1, 0, 0, 1}),
  };
  const CostFn fns[] = {CostFn::proj2(), CostFn::weighted(0.5)};
  for (const Configuration& c : cases) {
    for (const CostFn& f : fns) {
      const RelaxationInstance inst = build_relaxation(c, f, StartTime{});
      const LpSolution sol = solve_relaxation(inst);
      REQUIRE(sol.status == LpStatus::Optimal);
      const CertifiedBound cert = certify_lower_bound(inst, sol);
      REQUIRE(cert.verified);
      INFO("fallback used: ", cert.used_exact_fallback);
      const double cv = to_double(cert.value);
      CHECK(cv <= sol.normalized + 1e-9);
      CHECK(cv >= sol.normalized - kCertSlack);
      CHECK(cert.instance_hash == inst.hash());

      const CertCheck again =
          verify_certificate(inst, cert.dual, cert.raw_value);
      CHECK(again.ok);
    }
  }
}

TEST_CASE("tampered certificates are rejected") {
  const Configuration c = make(3, {0, 1, 2}, {0, 1, 0});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::proj2(), StartTime{});
  const LpSolution sol = solve_relaxation(inst);
  const CertifiedBound cert = certify_lower_bound(inst, sol);
  REQUIRE(cert.verified);

  // inflating the claimed value must fail
  CHECK_FALSE(
      verify_certificate(inst, cert.dual, cert.raw_value + Rational(1, 1000))
          .ok);

  // perturbing a multiplier breaks dual feasibility
  auto bent = cert.dual;
  REQUIRE(!bent.empty());
  bent.front().second += Rational(1, 1000);
  CHECK_FALSE(verify_certificate(inst, bent, cert.raw_value).ok);

  // negative multipliers are rejected outright
  auto negative = cert.dual;
  negative.front().second = Rational(-1, 2);
  CHECK_FALSE(verify_certificate(inst, negative, Rational(0)).ok);
}

TEST_CASE("weighted certificates scale by the exact normalization") {
  const Configuration c = make(3, {0, 1, 2}, {0, 1, 0});
  const CostFn f = CostFn::weighted(0.25);
  const RelaxationInstance inst = build_relaxation(c, f, StartTime{});
  const LpSolution sol = solve_relaxation(inst);
  const CertifiedBound cert = certify_lower_bound(inst, sol);
  REQUIRE(cert.verified);
  CHECK(cert.raw_value == cert.value * normalization_rational(f));
  CHECK(normalization_rational(f) == Rational(5, 4));
}

TEST_SUITE_END();
