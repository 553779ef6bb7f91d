#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <set>

#include "wgs/enumeration.hpp"

using namespace wgs;

namespace {

Configuration make(int n, std::vector<int> rho, std::vector<int> b) {
  Configuration c;
  c.n = n;
  c.rho = std::move(rho);
  for (int v : b) c.b.push_back(static_cast<uint8_t>(v));
  return c;
}

std::string key(const Configuration& c) { return format_config(c); }

// the relaxation often has several tied minimizers (beyond the symmetries
// we quotient); "found the published one" means it is in the tie set
bool among_minimizers(const SweepResult& res, const Configuration& published,
                      bool agent_sym = false) {
  const Configuration want = canonical(published, agent_sym);
  for (const SweepRecord& r : res.near_min)
    if (r.config == want && r.value <= res.value + 1e-9) return true;
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("enumeration");

TEST_CASE("configuration counts match the quotient arithmetic") {
  CHECK(raw_config_count(3) == 16);
  CHECK(raw_config_count(4) == 96);
  CHECK(raw_config_count(7) == 92160);
  CHECK(canonical_config_count(3, false) == 8);
  CHECK(canonical_config_count(4, false) == 48);
  CHECK(canonical_config_count(7, false) == 46080);
  CHECK(canonical_config_count(7, true) == 23040);
  CHECK(enumerate_configs(3, false).size() == 8);
  CHECK(enumerate_configs(3, true).size() == 4);
  CHECK(enumerate_configs(5, false).size() == 384);
}

TEST_CASE("unranking is a bijection onto valid configurations") {
  std::set<std::string> seen;
  const long total = raw_config_count(4);
  for (long idx = 0; idx < total; ++idx) {
    const Configuration c = unrank_config(idx, 4);
    CHECK_NOTHROW(validate(c));
    CHECK(c.rho[0] == 0);
    seen.insert(key(c));
  }
  CHECK(static_cast<long>(seen.size()) == total);
  CHECK_THROWS_AS(unrank_config(total, 4), std::out_of_range);
  CHECK_THROWS_AS(unrank_config(-1, 4), std::out_of_range);
}

TEST_CASE("canonical set covers the space exactly once") {
  std::set<std::string> canon;
  for (const Configuration& c : enumerate_configs(4, false)) {
    CHECK(is_canonical_config(c, false));
    CHECK_FALSE(is_canonical_config(reflect(c), false));
    canon.insert(key(c));
  }
  // every raw configuration reduces to an enumerated representative
  for (long idx = 0; idx < raw_config_count(4); ++idx) {
    const Configuration rep = canonical(unrank_config(idx, 4));
    CHECK(canon.count(key(rep)) == 1);
  }
}

TEST_CASE("triangle sweep recovers the known minimum and minimizer") {
  SweepSpec spec;
  spec.n = 3;
  spec.cost = CostFn::proj2();
  const SweepResult res = sweep(spec);
  CHECK(res.complete);
  CHECK(res.examined == 8);
  CHECK(res.total_configs == 8);
  CHECK(res.value == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-9));
  const Configuration published = make(3, {0, 1, 2}, {0, 1, 0});
  CHECK(among_minimizers(res, published));
  REQUIRE(!res.near_min.empty());
  CHECK(res.near_min.front().config == res.argmin);
}

TEST_CASE("square sweep value, argmin, and worker-count independence") {
  SweepSpec spec;
  spec.n = 4;
  spec.cost = CostFn::proj2();
  spec.block_size = 7;  // force ragged blocks
  const SweepResult a = sweep(spec);
  CHECK(a.complete);
  CHECK(a.examined == 48);
  CHECK(a.value == doctest::Approx(1.0 + 3.0 / std::sqrt(2.0)).epsilon(1e-9));
  const Configuration published = make(4, {0, 1, 2, 3}, {1, 0, 0, 1});
  CHECK(among_minimizers(a, published));

  spec.threads = 3;
  const SweepResult b = sweep(spec);
  CHECK(b.value == a.value);
  CHECK(b.argmin == a.argmin);
  CHECK(b.examined == a.examined);
  REQUIRE(b.near_min.size() == a.near_min.size());
  for (size_t i = 0; i < a.near_min.size(); ++i) {
    CHECK(b.near_min[i].config == a.near_min[i].config);
    CHECK(b.near_min[i].value == a.near_min[i].value);
  }
}

TEST_CASE("pentagon sweep matches the reference table") {
  SweepSpec spec;
  spec.n = 5;
  spec.cost = CostFn::proj2();
  const SweepResult res = sweep(spec);
  CHECK(res.complete);
  CHECK(res.examined == 384);
  CHECK(res.value == doctest::Approx(3.714412).epsilon(5e-7));
  const Configuration published = make(5, {0, 2, 1, 3, 4}, {0, 1, 0, 1, 1});
  CHECK(among_minimizers(res, published));
}

TEST_CASE("retention policies") {
  SweepSpec spec;
  spec.n = 3;
  spec.cost = CostFn::proj2();
  spec.retention = Retention::All;
  const SweepResult all = sweep(spec);
  CHECK(all.records.size() == 8);
  for (const SweepRecord& r : all.records) CHECK(r.value >= all.value - 1e-12);

  spec.retention = Retention::TopK;
  spec.top_k = 3;
  const SweepResult top = sweep(spec);
  REQUIRE(top.records.size() == 3);
  CHECK(top.records[0].value == all.value);
  CHECK(top.records[0].value <= top.records[1].value);
  CHECK(top.records[1].value <= top.records[2].value);
}

TEST_CASE("agent-symmetric costs halve the sweep") {
  SweepSpec spec;
  spec.n = 3;
  spec.cost = CostFn::max_norm();
  const SweepResult res = sweep(spec);
  CHECK(res.examined == 4);
  CHECK(res.value >= 1.0 + std::sqrt(3.0) - 1e-9);  // max >= second arrival
}

TEST_CASE("interrupted sweeps resume to the uninterrupted result") {
  const char* path = "sweep_ckpt_test.json";
  std::remove(path);

  SweepSpec spec;
  spec.n = 4;
  spec.cost = CostFn::proj2();
  spec.block_size = 8;  // 96 raw indices -> 12 blocks
  const SweepResult clean = sweep(spec);

  spec.checkpoint_path = path;
  spec.progress = [](long done, long) { return done < 6; };
  const SweepResult partial = sweep(spec);
  CHECK_FALSE(partial.complete);
  CHECK(partial.blocks_done == 6);

  spec.progress = nullptr;
  spec.threads = 2;
  const SweepResult resumed = sweep(spec);
  CHECK(resumed.resumed);
  CHECK(resumed.complete);
  CHECK(resumed.value == clean.value);
  CHECK(resumed.argmin == clean.argmin);
  CHECK(resumed.examined == clean.examined);

  // a finished checkpoint short-circuits
  const SweepResult again = sweep(spec);
  CHECK(again.complete);
  CHECK(again.examined == clean.examined);
  CHECK(again.value == clean.value);

  // the checkpoint refuses to drive a different sweep
  spec.cost = CostFn::max_norm();
  CHECK_THROWS(sweep(spec));
  std::remove(path);
}

TEST_CASE("invalid sweep parameters are rejected") {
  SweepSpec spec;
  spec.n = 3;
  spec.cost = CostFn::min_norm();
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.cost = CostFn::proj2();
  spec.threads = 0;
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.threads = 1;
  spec.block_size = 0;
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.block_size = 64;
  spec.retention = Retention::All;
  spec.checkpoint_path = "nope.json";
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
}

TEST_SUITE_END();
