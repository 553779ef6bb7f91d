#include "wgs/relaxation.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wgs/hash.hpp"

namespace wgs {

double StartTime::value(int n) const {
  size_t pos = 0;
  double v = std::stod(base, &pos);
  if (pos != base.size())
    throw std::invalid_argument("start time base is not a decimal: " + base);
  if (plus_pi_over_n) v += kPi / static_cast<double>(n);
  return v;
}

std::string StartTime::describe(int n) const {
  if (!plus_pi_over_n) return base;
  return base + " + pi/" + std::to_string(n);
}

int relaxation_num_vars(int n) {
  return 3 * n + n * n + n * (n - 1) / 2 + 1;
}

int relaxation_num_rows(int n, const CostFn& cost) {
  const int terms = static_cast<int>(cost.linear_terms().size());
  auto c3 = [](long long m) { return m * (m - 1) * (m - 2) / 6; };
  const long long tri = 3 * (c3(2 * n) - c3(n));
  return n + 2 * (n - 1) + 2 * n + n * terms + static_cast<int>(tri);
}

RelaxationInstance::Dist RelaxationInstance::dist(int p, int q) const {
  if (p > q) std::swap(p, q);
  Dist d{};
  if (q < n) {  // both anchored
    d.is_const = true;
    d.gap = circular_gap(config.rho[p], config.rho[q], n);
    d.chord = chord_from_gap(d.gap, n);
    d.var = -1;
    return d;
  }
  d.is_const = false;
  d.gap = -1;
  d.chord = 0.0;
  if (p < n) {  // free q-n vs anchored p
    d.var = d_free_anchored(q - n, p);
  } else {
    d.var = d_free_free(p - n, q - n);
  }
  return d;
}

namespace {

// incremental CSR assembly
struct RowBuilder {
  RelaxationInstance& inst;
  explicit RowBuilder(RelaxationInstance& i) : inst(i) { inst.row_ptr = {0}; }

  void add(std::initializer_list<std::pair<int, double>> entries,
           const SymbolicRhs& rhs, const RowInfo& info) {
    for (const auto& [col, v] : entries) {
      inst.col_idx.push_back(col);
      inst.coef.push_back(v);
    }
    inst.row_ptr.push_back(static_cast<int>(inst.col_idx.size()));
    inst.rhs.push_back(rhs);
    inst.rows.push_back(info);
  }
};

SymbolicRhs rhs_zero() { return {SymKind::Zero, 0, 1, 0.0}; }

SymbolicRhs rhs_chord(int gap, int sign, int n) {
  return {SymKind::Chord, gap, sign,
          static_cast<double>(sign) * chord_from_gap(gap, n)};
}

}  // namespace

RelaxationInstance build_relaxation(const Configuration& config,
                                    const CostFn& cost, const StartTime& t0) {
  validate(config);
  const int n = config.n;

  RelaxationInstance inst;
  inst.n = n;
  inst.cost = cost;
  inst.t0 = t0;
  inst.config = config;
  inst.num_vars = relaxation_num_vars(n);
  inst.z_var = inst.num_vars - 1;
  inst.var_nonneg.assign(inst.num_vars, 0);
  for (int v = 3 * n; v < inst.z_var; ++v) inst.var_nonneg[v] = 1;

  const auto terms = cost.linear_terms();  // rejects non-linearizable costs
  RowBuilder rb(inst);

  // ordering: the first event happens no earlier than t0, later events keep
  // their order
  rb.add({{inst.t_var(0), 1.0}},
         {SymKind::Start, 0, 1, t0.value(n)},
         {RowClass::Ordering, 0, 0, 0});
  for (int e = 0; e + 1 < n; ++e)
    rb.add({{inst.t_var(e + 1), 1.0}, {inst.t_var(e), -1.0}}, rhs_zero(),
           {RowClass::Ordering, e + 1, 0, 0});

  // movement: between consecutive events an agent covers at least its own
  // displacement
  for (int j = 0; j < 2; ++j) {
    for (int e = 0; e + 1 < n; ++e) {
      const int p = (config.b[e] == j) ? e : n + e;
      const int q = (config.b[e + 1] == j) ? e + 1 : n + e + 1;
      const auto d = inst.dist(p, q);
      if (d.is_const) {
        rb.add({{inst.t_var(e + 1), 1.0}, {inst.t_var(e), -1.0}},
               rhs_chord(d.gap, +1, n), {RowClass::Movement, j, e, 0});
      } else {
        rb.add({{inst.t_var(e + 1), 1.0},
                {inst.t_var(e), -1.0},
                {d.var, -1.0}},
               rhs_zero(), {RowClass::Movement, j, e, 0});
      }
    }
  }

  // reach: agent j is at the vertex of event e no later than t_e plus its
  // current distance to that vertex
  for (int e = 0; e < n; ++e) {
    for (int j = 0; j < 2; ++j) {
      if (config.b[e] == j) {
        rb.add({{inst.c_var(e, j), 1.0}, {inst.t_var(e), -1.0}}, rhs_zero(),
               {RowClass::Reach, j, e, 0});
      } else {
        rb.add({{inst.c_var(e, j), 1.0},
                {inst.t_var(e), -1.0},
                {inst.d_free_anchored(e, e), -1.0}},
               rhs_zero(), {RowClass::Reach, j, e, 0});
      }
    }
  }

  // objective epigraph: z >= u*c0_e + v*c1_e for every linear piece of f
  for (int e = 0; e < n; ++e) {
    for (int k = 0; k < static_cast<int>(terms.size()); ++k) {
      const auto [u, v] = terms[k];
      std::vector<std::pair<int, double>> row;
      row.emplace_back(inst.z_var, 1.0);
      if (u != 0.0) row.emplace_back(inst.c_var(e, 0), -u);
      if (v != 0.0) row.emplace_back(inst.c_var(e, 1), -v);
      for (const auto& [col, cv] : row) {
        inst.col_idx.push_back(col);
        inst.coef.push_back(cv);
      }
      inst.row_ptr.push_back(static_cast<int>(inst.col_idx.size()));
      inst.rhs.push_back(rhs_zero());
      inst.rows.push_back({RowClass::Objective, e, k, 0});
    }
  }

  // triangle inequalities over all point triples with at least one free
  // point; constants move to the rhs.  Row order inside a triple: pq+qr>=pr,
  // pq+pr>=qr, pr+qr>=pq.
  const int npts = 2 * n;
  auto add_triangle = [&](int p, int q, int r) {
    const RelaxationInstance::Dist pq = inst.dist(p, q);
    const RelaxationInstance::Dist qr = inst.dist(q, r);
    const RelaxationInstance::Dist pr = inst.dist(p, r);
    auto emit = [&](const RelaxationInstance::Dist& x,
                    const RelaxationInstance::Dist& y,
                    const RelaxationInstance::Dist& zd, int which) {
      // x + y >= zd
      std::vector<std::pair<int, double>> row;
      double rhs_sign = 0.0;
      int gap = -1;
      if (x.is_const) {
        gap = x.gap;
        rhs_sign = -1.0;
      } else {
        row.emplace_back(x.var, 1.0);
      }
      if (y.is_const) {
        gap = y.gap;
        rhs_sign = -1.0;
      } else {
        row.emplace_back(y.var, 1.0);
      }
      if (zd.is_const) {
        gap = zd.gap;
        rhs_sign = 1.0;
      } else {
        row.emplace_back(zd.var, -1.0);
      }
      SymbolicRhs rhs = rhs_zero();
      if (gap >= 0 && rhs_sign != 0.0)
        rhs = rhs_chord(gap, rhs_sign > 0 ? 1 : -1, n);
      for (const auto& [col, cv] : row) {
        inst.col_idx.push_back(col);
        inst.coef.push_back(cv);
      }
      inst.row_ptr.push_back(static_cast<int>(inst.col_idx.size()));
      inst.rhs.push_back(rhs);
      inst.rows.push_back({RowClass::Triangle, p, q * npts + r, which});
    };
    emit(pq, qr, pr, 0);
    emit(pq, pr, qr, 1);
    emit(pr, qr, pq, 2);
  };
  for (int p = 0; p < npts; ++p)
    for (int q = p + 1; q < npts; ++q)
      for (int r = q + 1; r < npts; ++r) {
        if (r < n) continue;  // all three anchored: nothing to constrain
        add_triangle(p, q, r);
      }

  inst.num_rows = static_cast<int>(inst.rhs.size());
  if (inst.num_rows != relaxation_num_rows(n, cost))
    throw std::logic_error("relaxation row count mismatch");
  return inst;
}

std::string RelaxationInstance::var_name(int v) const {
  std::ostringstream os;
  if (v < n) {
    os << "t" << v;
  } else if (v < 3 * n) {
    os << "c" << ((v - n) % 2) << "_" << ((v - n) / 2);
  } else if (v < 3 * n + n * n) {
    const int k = v - 3 * n;
    os << "dfa_" << (k / n) << "_" << (k % n);
  } else if (v < num_vars - 1) {
    int k = v - 3 * n - n * n;
    int e = 0;
    while (k >= n - e - 1) k -= n - e - 1, ++e;
    os << "dff_" << e << "_" << (e + k + 1);
  } else {
    os << "z";
  }
  return os.str();
}

std::string RelaxationInstance::row_name(int r) const {
  const RowInfo& ri = rows.at(r);
  std::ostringstream os;
  switch (ri.cls) {
    case RowClass::Ordering: os << "ord_" << ri.a; break;
    case RowClass::Movement: os << "mov_a" << ri.a << "_e" << ri.b; break;
    case RowClass::Reach: os << "reach_a" << ri.a << "_e" << ri.b; break;
    case RowClass::Objective: os << "obj_e" << ri.a << "_k" << ri.b; break;
    case RowClass::Triangle:
      os << "tri_" << ri.a << "_" << (ri.b / (2 * n)) << "_" << (ri.b % (2 * n))
         << "_" << ri.c;
      break;
  }
  return os.str();
}

uint64_t RelaxationInstance::hash() const {
  Fnv1a h;
  h.add(n).add(static_cast<int>(cost.kind)).add(cost.w);
  h.add(t0.base).add(static_cast<int>(t0.plus_pi_over_n));
  for (int v : config.rho) h.add(v);
  for (uint8_t a : config.b) h.add(static_cast<int>(a));
  for (int v : col_idx) h.add(v);
  for (double v : coef) h.add(v);
  for (const auto& s : rhs)
    h.add(static_cast<int>(s.kind)).add(s.gap).add(s.sign);
  return h.value();
}

RelaxationWitness extract_witness(const RelaxationInstance& inst,
                                  const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != inst.num_vars)
    throw std::invalid_argument("witness vector has wrong length");
  const int n = inst.n;
  RelaxationWitness w;
  w.times.assign(x.begin(), x.begin() + n);
  w.reach.resize(2, n);
  for (int e = 0; e < n; ++e)
    for (int j = 0; j < 2; ++j) w.reach(j, e) = x[inst.c_var(e, j)];
  w.objective = x[inst.z_var];

  const int npts = 2 * n;
  w.dist = Eigen::MatrixXd::Zero(npts, npts);
  for (int p = 0; p < npts; ++p)
    for (int q = p + 1; q < npts; ++q) {
      const auto d = inst.dist(p, q);
      const double v = d.is_const ? d.chord : x[d.var];
      w.dist(p, q) = w.dist(q, p) = v;
    }
  w.min_distance = w.dist.minCoeff();
  w.max_triangle_violation = 0.0;
  for (int p = 0; p < npts; ++p)
    for (int q = 0; q < npts; ++q)
      for (int r = 0; r < npts; ++r) {
        if (p == q || q == r || p == r) continue;
        const double viol = w.dist(p, r) - w.dist(p, q) - w.dist(q, r);
        w.max_triangle_violation = std::max(w.max_triangle_violation, viol);
      }
  return w;
}

void write_lp_text(const RelaxationInstance& inst, std::ostream& os) {
  os << std::setprecision(17);
  os << "Minimize\n obj: " << inst.var_name(inst.z_var) << "\nSubject To\n";
  for (int r = 0; r < inst.num_rows; ++r) {
    os << ' ' << inst.row_name(r) << ':';
    for (int k = inst.row_ptr[r]; k < inst.row_ptr[r + 1]; ++k) {
      const double c = inst.coef[k];
      os << (c < 0 ? " - " : " + ");
      if (std::abs(c) != 1.0) os << std::abs(c) << ' ';
      os << inst.var_name(inst.col_idx[k]);
    }
    os << " >= " << inst.rhs[r].value << '\n';
  }
  os << "Bounds\n";
  for (int v = 0; v < inst.num_vars; ++v)
    if (!inst.var_nonneg[v]) os << ' ' << inst.var_name(v) << " free\n";
  os << "End\n";
}

}  // namespace wgs
