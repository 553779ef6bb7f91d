#include <doctest.h>

#include <set>
#include <sstream>

#include "wgs/relaxation.hpp"

using namespace wgs;

namespace {
Configuration make(int n, std::vector<int> rho, std::vector<int> b) {
  Configuration c;
  c.n = n;
  c.rho = std::move(rho);
  for (int v : b) c.b.push_back(static_cast<uint8_t>(v));
  return c;
}
}  // namespace

TEST_SUITE_BEGIN("relaxation");

TEST_CASE("variable and row counts follow the combinatorics") {
  // 3n time/reach + n^2 free-anchored + C(n,2) free-free + epigraph
  CHECK(relaxation_num_vars(3) == 22);
  CHECK(relaxation_num_vars(7) == 92);
  CHECK(relaxation_num_vars(9) == 145);
  // n ordering + 2(n-1) movement + 2n reach + n*terms epigraph
  // + 3*(C(2n,3) - C(n,3)) triangles
  CHECK(relaxation_num_rows(3, CostFn::proj2()) == 3 + 4 + 6 + 3 + 57);
  CHECK(relaxation_num_rows(3, CostFn::max_norm()) == 3 + 4 + 6 + 6 + 57);
  CHECK(relaxation_num_rows(7, CostFn::proj2()) == 7 + 12 + 14 + 7 + 987);

  const Configuration c = make(3, {0, 1, 2}, {0, 1, 0});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::proj2(), StartTime{});
  CHECK(inst.num_vars == 22);
  CHECK(inst.num_rows == 73);
  CHECK(inst.rhs.size() == 73);
  CHECK(inst.rows.size() == 73);
  CHECK(static_cast<int>(inst.row_ptr.size()) == inst.num_rows + 1);
}

TEST_CASE("variable indexing is a bijection with sensible names") {
  const Configuration c = make(4, {0, 2, 1, 3}, {1, 0, 1, 0});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::max_norm(), StartTime{});
  std::set<int> seen;
  for (int e = 0; e < 4; ++e) seen.insert(inst.t_var(e));
  for (int e = 0; e < 4; ++e)
    for (int j = 0; j < 2; ++j) seen.insert(inst.c_var(e, j));
  for (int ef = 0; ef < 4; ++ef)
    for (int ea = 0; ea < 4; ++ea) seen.insert(inst.d_free_anchored(ef, ea));
  for (int e = 0; e < 4; ++e)
    for (int ep = e + 1; ep < 4; ++ep) seen.insert(inst.d_free_free(e, ep));
  seen.insert(inst.z_var);
  CHECK(static_cast<int>(seen.size()) == inst.num_vars);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == inst.num_vars - 1);

  std::set<std::string> names;
  for (int v = 0; v < inst.num_vars; ++v) names.insert(inst.var_name(v));
  CHECK(names.size() == static_cast<size_t>(inst.num_vars));
  CHECK(inst.var_name(inst.z_var) == "z");
}

TEST_CASE("start time enters exactly one rhs") {
  const Configuration c = make(3, {0, 1, 2}, {0, 1, 0});
  StartTime t0;
  t0.base = "1.5";
  t0.plus_pi_over_n = true;
  const RelaxationInstance inst = build_relaxation(c, CostFn::proj2(), t0);
  int start_rows = 0;
  for (const SymbolicRhs& r : inst.rhs)
    if (r.kind == SymKind::Start) {
      ++start_rows;
      CHECK(r.value == doctest::Approx(1.5 + kPi / 3.0));
    }
  CHECK(start_rows == 1);
  CHECK(t0.describe(3) == "1.5 + pi/3");
}

TEST_CASE("anchored-anchored distances are substituted, never variables") {
  const Configuration c = make(5, {0, 2, 1, 3, 4}, {0, 1, 0, 1, 1});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::proj2(), StartTime{});
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) {
      const auto d = inst.dist(p, q);
      CHECK(d.is_const);
      CHECK(d.chord ==
            doctest::Approx(chord_length(c.rho[p], c.rho[q], 5)));
    }
  const auto fa = inst.dist(2, 5 + 2);  // anchored event 2, free event 2
  CHECK_FALSE(fa.is_const);
  CHECK(fa.var == inst.d_free_anchored(2, 2));
}

TEST_CASE("each rhs carries at most one symbolic constant") {
  const Configuration c = make(6, {0, 1, 2, 4, 3, 5}, {1, 0, 0, 1, 0, 1});
  for (const CostFn& f : {CostFn::proj2(), CostFn::max_norm()}) {
    const RelaxationInstance inst = build_relaxation(c, f, StartTime{});
    for (int r = 0; r < inst.num_rows; ++r) {
      const SymbolicRhs& s = inst.rhs[r];
      switch (s.kind) {
        case SymKind::Zero: CHECK(s.value == 0.0); break;
        case SymKind::Start: CHECK(s.value == doctest::Approx(1.0)); break;
        case SymKind::Chord:
          CHECK(std::abs(s.value) ==
                doctest::Approx(chord_from_gap(s.gap, 6)));
          break;
      }
    }
  }
}

TEST_CASE("reflecting a configuration leaves the instance bit-identical") {
  const Configuration c = make(6, {0, 2, 5, 1, 4, 3}, {1, 0, 1, 1, 0, 0});
  const RelaxationInstance a =
      build_relaxation(c, CostFn::proj2(), StartTime{});
  const RelaxationInstance b =
      build_relaxation(rotate_to_zero(reflect(c)), CostFn::proj2(), StartTime{});
  CHECK(a.col_idx == b.col_idx);
  CHECK(a.coef == b.coef);
  REQUIRE(a.rhs.size() == b.rhs.size());
  for (size_t r = 0; r < a.rhs.size(); ++r) {
    CHECK(a.rhs[r].kind == b.rhs[r].kind);
    CHECK(a.rhs[r].gap == b.rhs[r].gap);
    CHECK(a.rhs[r].value == b.rhs[r].value);
  }
  CHECK(a.hash() != b.hash());  // hash still covers the configuration
}

TEST_CASE("witness reassembles the solution vector") {
  const Configuration c = make(3, {0, 1, 2}, {0, 1, 0});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::proj2(), StartTime{});
  std::vector<double> x(inst.num_vars, 0.0);
  for (int e = 0; e < 3; ++e) x[inst.t_var(e)] = 1.0 + e;
  for (int e = 0; e < 3; ++e)
    for (int j = 0; j < 2; ++j) x[inst.c_var(e, j)] = 2.0 + e;
  // a valid metric: everything at distance 1 (chords of the triangle are
  // sqrt(3), so keep them as the constants they are)
  for (int v = 9; v < inst.z_var; ++v) x[v] = 1.0;
  x[inst.z_var] = 5.0;
  const RelaxationWitness w = extract_witness(inst, x);
  CHECK(w.times == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(w.reach(0, 2) == 4.0);
  CHECK(w.objective == 5.0);
  CHECK(w.dist(0, 1) == doctest::Approx(std::sqrt(3.0)));
  CHECK(w.dist(3, 0) == 1.0);
  CHECK(w.dist(0, 3) == 1.0);
  // sqrt(3) side vs two unit legs violates the triangle inequality by
  // sqrt(3) - 2 < 0, i.e. not at all; the witness agrees
  CHECK(w.max_triangle_violation == doctest::Approx(0.0));
  CHECK(w.min_distance == 0.0);  // diagonal

  CHECK_THROWS_AS(extract_witness(inst, std::vector<double>(3, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("lp text export lists objective, rows and free variables") {
  const Configuration c = make(3, {0, 1, 2}, {0, 1, 0});
  const RelaxationInstance inst =
      build_relaxation(c, CostFn::proj2(), StartTime{});
  std::ostringstream os;
  write_lp_text(inst, os);
  const std::string text = os.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("obj: z") != std::string::npos);
  CHECK(text.find("ord_0: + t0 >= 1") != std::string::npos);
  CHECK(text.find("t0 free") != std::string::npos);
  CHECK(text.find("z free") != std::string::npos);
  CHECK(text.find("dfa_0_0 free") == std::string::npos);  // distances stay >= 0
  CHECK(text.find("End") != std::string::npos);
}

TEST_SUITE_END();
