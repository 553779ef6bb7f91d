// wgsearch: certified lower bounds and matching detour upper bounds for
// two-agent weighted search on regular n-gons and the unit disk.
//
// Subcommands:
//   ngon-bound        relaxation minimum over visit configurations (or one
//                     configuration via --config), with an exact certificate
//   disk-bound        n-gon bound lifted to the disk; for the weighted cost
//                     the max of the weak bound and the lifted heptagon bound
//   sweep-w           CSV table of lower/upper bounds across weights
//   detour            (a,b)-detour parameters, closed-form cost, simulation
//   certify           turn a stored solution into an exact certificate, or
//                     re-verify a stored certificate (--check)
//   verify-embedding  check a stored planar embedding, optionally refine it
//   resume            continue a checkpointed sweep
//
// Exit codes: 0 ok, 2 bad arguments/inputs, 3 solver failure, 4 detour
// root-finder failure, 5 verification failure (tampered certificate, hash
// mismatch, infeasible embedding).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "wgs/bounds.hpp"
#include "wgs/detour.hpp"
#include "wgs/embedding.hpp"
#include "wgs/enumeration.hpp"
#include "wgs/io.hpp"

namespace {

using namespace wgs;

constexpr int kExitBadArgs = 2;
constexpr int kExitSolver = 3;
constexpr int kExitRootFinder = 4;
constexpr int kExitVerify = 5;

// thrown by command bodies; main turns it into a message + exit code
struct CommandError {
  int code;
  std::string message;
};

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string bit_string(const Configuration& c) {
  std::string s;
  for (uint8_t v : c.b) s += static_cast<char>('0' + v);
  return s;
}

std::string rho_string(const Configuration& c, int base) {
  std::string s = "(";
  for (size_t i = 0; i < c.rho.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.rho[i] + base);
  }
  return s + ")";
}

std::string config_line(const Configuration& c) {
  return "rho=" + rho_string(c, 0) + " b=" + bit_string(c) +
         "   [1-indexed rho=" + rho_string(c, 1) + "]";
}

std::string lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// a double as a decimal string rational_from_decimal can parse back
std::string decimal_of_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (std::string_view(buf).find_first_of("eE") == std::string_view::npos)
    return buf;
  std::snprintf(buf, sizeof buf, "%.17f", v);
  return buf;
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::exists(path))
    throw CommandError{kExitBadArgs,
                       std::string(what) + " not found: " + path};
}

Json read_input_json(const std::string& path, const char* what) {
  require_file(path, what);
  try {
    return read_json_file(path);
  } catch (const std::exception& e) {
    throw CommandError{kExitBadArgs,
                       std::string(what) + " is not valid JSON: " + e.what()};
  }
}

// ---------------------------------------------------------------------------
// options shared by the bound-producing commands

struct BoundOpts {
  int n = 7;
  std::string cost_kind = "proj2";
  double w = 0.0;
  std::string t0 = "1";
  bool t0_plus_pi_over_n = false;
  int threads = 0;  // 0: hardware concurrency
  long block_size = 1024;
  std::string checkpoint;
  bool extended = false;
  std::string config_text;  // ngon-bound only
  std::string json_path;
  std::string solution_out;
  std::string certificates_out;
  std::string lp_out;
  bool sweep = false;  // disk-bound only
};

void add_cost_options(CLI::App* cmd, BoundOpts& o) {
  cmd->add_option("--cost", o.cost_kind, "cost functional: proj2 | max | gw")
      ->check(CLI::IsMember({"proj2", "max", "gw"}));
  cmd->add_option("--w", o.w, "weight for --cost gw")
      ->check(CLI::Range(0.0, 1.0));
}

void add_t0_options(CLI::App* cmd, BoundOpts& o) {
  cmd->add_option("--t0", o.t0, "start time (decimal string, default 1)");
  cmd->add_flag("--t0-plus-pi-over-n", o.t0_plus_pi_over_n,
                "add pi/n to the start time");
}

void add_sweep_options(CLI::App* cmd, BoundOpts& o) {
  cmd->add_option("--threads", o.threads,
                  "worker threads (default: hardware concurrency)")
      ->envname("WGSEARCH_THREADS")
      ->check(CLI::Range(0, 1024));
  cmd->add_option("--block-size", o.block_size, "configurations per block")
      ->check(CLI::Range(1L, 1000000L));
  cmd->add_option("--checkpoint", o.checkpoint,
                  "JSON checkpoint file (written after every block)");
  cmd->add_flag("--extended", o.extended,
                "confirm a long exhaustive run (required for n >= 8 sweeps)");
}

CostFn make_cost(const BoundOpts& o) {
  if (o.cost_kind == "proj2") return CostFn::proj2();
  if (o.cost_kind == "max") return CostFn::max_norm();
  return CostFn::weighted(o.w);
}

ProblemSpec make_problem(const BoundOpts& o) {
  ProblemSpec p;
  p.n = o.n;
  p.cost = make_cost(o);
  p.t0 = StartTime{o.t0, o.t0_plus_pi_over_n};
  try {
    rational_from_decimal(o.t0);
  } catch (const std::exception& e) {
    throw CommandError{kExitBadArgs,
                       std::string("--t0 must be a decimal number: ") +
                           e.what()};
  }
  return p;
}

Json bound_parameters(const BoundOpts& o) {
  Json j{{"n", o.n}, {"cost", o.cost_kind}, {"t0", o.t0},
         {"t0_plus_pi_over_n", o.t0_plus_pi_over_n}};
  if (o.cost_kind == "gw") j["w"] = o.w;
  if (!o.config_text.empty()) j["config"] = o.config_text;
  if (!o.checkpoint.empty()) j["checkpoint"] = o.checkpoint;
  return j;
}

// ---------------------------------------------------------------------------
// solving helpers

struct SingleOutcome {
  RelaxationInstance inst;
  LpSolution sol;
  CertifiedBound cert;
};

SingleOutcome solve_and_certify(const ProblemSpec& p) {
  SingleOutcome out{build_relaxation(*p.config, p.cost, p.t0), {}, {}};
  out.sol = solve_relaxation(out.inst);
  if (out.sol.status != LpStatus::Optimal)
    throw CommandError{kExitSolver,
                       "relaxation solve ended with status " +
                           lp_status_name(out.sol.status) + " for config " +
                           format_config(*p.config)};
  out.cert = certify_lower_bound(out.inst, out.sol);
  if (!out.cert.verified)
    throw CommandError{kExitSolver,
                       "could not certify config " + format_config(*p.config) +
                           ": " + out.cert.failure};
  return out;
}

void guard_extended(const SweepSpec& spec, bool extended) {
  if (spec.n < 8) return;
  if (!extended)
    throw CommandError{
        kExitBadArgs,
        "an exhaustive sweep at n >= 8 covers " +
            std::to_string(canonical_config_count(spec.n, false)) +
            "+ configurations and runs for hours; pass --extended to confirm "
            "and --checkpoint <file> so it can be resumed"};
  if (spec.checkpoint_path.empty())
    throw CommandError{kExitBadArgs,
                       "--extended sweeps also need --checkpoint <file>"};
}

struct SweepOutcome {
  SweepResult res;
  Rational certified;  // min certified value over the near-min tie set
  std::vector<Json> certificates;
};

// run the sweep, then certify every near-min configuration; the minimum of
// the exact certificates is a sound global lower bound even though the
// per-configuration comparison used floating point
SweepOutcome run_checked_sweep(SweepSpec spec, const ProblemSpec& base) {
  if (!spec.progress)
    spec.progress = [](long done, long total) {
      const long step = std::max(1L, total / 20);
      if (done % step == 0 || done == total)
        std::fprintf(stderr, "  blocks %ld/%ld\n", done, total);
      return true;
    };
  SweepOutcome out;
  out.res = sweep(spec);
  if (!out.res.complete)
    throw CommandError{kExitSolver, "sweep stopped before finishing"};
  if (out.res.near_min.empty())
    throw CommandError{kExitSolver, "sweep returned an empty near-min set"};
  bool first = true;
  for (const SweepRecord& rec : out.res.near_min) {
    ProblemSpec p = base;
    p.config = rec.config;
    SingleOutcome s = solve_and_certify(p);
    out.certificates.push_back(certificate_to_json(p, s.cert));
    if (first || s.cert.value < out.certified) {
      out.certified = s.cert.value;
      first = false;
    }
  }
  return out;
}

void maybe_write_certificates(const std::string& path,
                              const std::vector<Json>& certs,
                              const Json& manifest) {
  if (path.empty()) return;
  Json j{{"manifest", manifest}, {"certificates", certs}};
  write_json_file(path, j);
  std::printf("certificates        %s (%zu entries)\n", path.c_str(),
              certs.size());
}

// ---------------------------------------------------------------------------
// ngon-bound

void cmd_ngon_bound(const BoundOpts& o) {
  ProblemSpec base = make_problem(o);
  const Json manifest =
      make_manifest("ngon-bound", bound_parameters(o), Json::object());

  std::printf("n                   %d\n", o.n);
  std::printf("cost                %s\n", base.cost.name().c_str());
  std::printf("t0                  %s\n", base.t0.describe(o.n).c_str());

  if (!o.config_text.empty()) {
    // single-configuration mode: one LP, always certified
    ProblemSpec p = base;
    p.config = parse_config(o.config_text, o.n);
    SingleOutcome s = solve_and_certify(p);
    if (!o.lp_out.empty()) {
      std::ostringstream lp;
      write_lp_text(s.inst, lp);
      std::ofstream f(o.lp_out);
      f << lp.str();
    }
    std::printf("config              %s\n", config_line(*p.config).c_str());
    std::printf("relaxation optimum  %s\n", fmt6(s.sol.normalized).c_str());
    std::printf("certified bound     %s\n",
                fmt6(to_double(s.cert.value)).c_str());
    std::printf("certificate         %s%s\n", to_string(s.cert.value).c_str(),
                s.cert.used_exact_fallback ? "  (exact re-solve)" : "");
    if (!o.solution_out.empty()) {
      Json j = solution_to_json(p, s.inst, s.sol);
      j["manifest"] = manifest;
      write_json_file(o.solution_out, j);
      std::printf("solution            %s\n", o.solution_out.c_str());
    }
    if (!o.json_path.empty()) {
      Json j{{"manifest", manifest},
             {"problem", problem_to_json(p)},
             {"mode", "single"},
             {"value", s.sol.normalized},
             {"certified_value", to_string(s.cert.value)},
             {"certified_value_double", to_double(s.cert.value)},
             {"solution", solution_to_json(p, s.inst, s.sol)},
             {"certificate", certificate_to_json(p, s.cert)}};
      write_json_file(o.json_path, j);
    }
    maybe_write_certificates(o.certificates_out,
                             {certificate_to_json(p, s.cert)}, manifest);
    return;
  }

  // sweep mode: exhaustive over canonical configurations
  SweepSpec spec;
  spec.n = o.n;
  spec.cost = base.cost;
  spec.t0 = base.t0;
  spec.threads = resolve_threads(o.threads);
  spec.block_size = o.block_size;
  spec.checkpoint_path = o.checkpoint;
  guard_extended(spec, o.extended);

  SweepOutcome out = run_checked_sweep(spec, base);
  const SweepResult& res = out.res;
  std::printf("configurations      %ld canonical, %ld examined%s\n",
              res.total_configs, res.examined,
              res.resumed ? " (resumed)" : "");
  std::printf("relaxation minimum  %s\n", fmt6(res.value).c_str());
  std::printf("argmin              %s\n", config_line(res.argmin).c_str());
  std::printf("near-min ties       %zu within %g\n", res.near_min.size(),
              kNearMinMargin);
  for (const SweepRecord& rec : res.near_min)
    std::printf("                    %s  %s\n", fmt6(rec.value).c_str(),
                format_config(rec.config).c_str());
  std::printf("certified bound     %s\n",
              fmt6(to_double(out.certified)).c_str());
  std::printf("certificate         %s\n", to_string(out.certified).c_str());
  std::printf("wall time           %.3f s\n", res.wall_seconds);

  if (!o.solution_out.empty()) {
    ProblemSpec p = base;
    p.config = res.argmin;
    SingleOutcome s = solve_and_certify(p);
    Json j = solution_to_json(p, s.inst, s.sol);
    j["manifest"] = manifest;
    write_json_file(o.solution_out, j);
    std::printf("solution            %s\n", o.solution_out.c_str());
  }
  if (!o.json_path.empty()) {
    Json j{{"manifest", manifest},
           {"problem", problem_to_json(base)},
           {"mode", "sweep"},
           {"value", res.value},
           {"certified_value", to_string(out.certified)},
           {"certified_value_double", to_double(out.certified)},
           {"argmin", config_to_json(res.argmin)},
           {"sweep", sweep_result_to_json(res)},
           {"certificates", out.certificates}};
    write_json_file(o.json_path, j);
  }
  maybe_write_certificates(o.certificates_out, out.certificates, manifest);
}

// ---------------------------------------------------------------------------
// disk-bound

void cmd_disk_bound(const BoundOpts& o) {
  ProblemSpec base = make_problem(o);
  const bool gw = base.cost.kind == CostKind::WeightedAvg;
  const Json manifest =
      make_manifest("disk-bound", bound_parameters(o), Json::object());
  const bool closed_form = gw && o.n == 7 && !o.sweep;

  std::printf("n (polygon)         %d\n", o.n);
  std::printf("cost                %s\n", base.cost.name().c_str());
  std::printf("method              %s\n",
              closed_form ? "closed form (heptagon)" : "exhaustive sweep");

  double ngon_value = 0.0;
  std::optional<Rational> ngon_cert;
  SweepOutcome out;
  if (closed_form) {
    ngon_value = heptagon_weighted_bound(o.w);
  } else {
    SweepSpec spec;
    spec.n = o.n;
    spec.cost = base.cost;
    spec.t0 = base.t0;
    spec.threads = resolve_threads(o.threads);
    spec.block_size = o.block_size;
    spec.checkpoint_path = o.checkpoint;
    guard_extended(spec, o.extended);
    out = run_checked_sweep(spec, base);
    ngon_value = out.res.value;
    ngon_cert = out.certified;
    std::printf("configurations      %ld canonical, %ld examined%s\n",
                out.res.total_configs, out.res.examined,
                out.res.resumed ? " (resumed)" : "");
    std::printf("argmin              %s\n",
                config_line(out.res.argmin).c_str());
  }

  // lifting: a disk search is at least as hard as the inscribed n-gon
  // search started pi/n later, which adds pi/n to the bound
  const double lifted = lift_to_disk(ngon_value, o.n);
  const double weak = weak_disk_bound();
  const double headline = gw ? std::max(weak, lifted) : lifted;
  std::printf("ngon bound          %s\n", fmt6(ngon_value).c_str());
  std::printf("lift (pi/n)         %s\n", fmt6(kPi / o.n).c_str());
  std::printf("lifted disk bound   %s\n", fmt6(lifted).c_str());
  if (gw) {
    std::printf("weak disk bound     %s  (1 + pi)\n", fmt6(weak).c_str());
    std::printf("disk bound          %s  (%s branch)\n", fmt6(headline).c_str(),
                weak >= lifted ? "weak" : "lifted");
  } else {
    std::printf("disk bound          %s\n", fmt6(headline).c_str());
  }

  // exact variant: rational n-gon certificate plus a rational lower
  // enclosure of pi/n (and of 1 + pi for the weak branch)
  std::optional<Rational> disk_cert;
  if (ngon_cert) {
    const Rational pi_lo = pi_interval().lo;
    const Rational lifted_cert = *ngon_cert + pi_lo / o.n;
    const Rational weak_cert = Rational(1) + pi_lo;
    disk_cert = gw ? std::max(weak_cert, lifted_cert) : lifted_cert;
    std::printf("certified bound     %s\n",
                fmt6(to_double(*disk_cert)).c_str());
    std::printf("certificate         %s\n", to_string(*disk_cert).c_str());
  } else {
    std::printf("certified           closed form only; rerun with --sweep "
                "for an LP certificate\n");
  }

  if (!o.json_path.empty()) {
    Json j{{"manifest", manifest},
           {"problem", problem_to_json(base)},
           {"method", closed_form ? "closed-form" : "sweep"},
           {"ngon_value", ngon_value},
           {"lifted", lifted},
           {"weak", weak},
           {"value", headline}};
    if (disk_cert) {
      j["certified_value"] = to_string(*disk_cert);
      j["certified_value_double"] = to_double(*disk_cert);
    }
    if (!closed_form) {
      j["sweep"] = sweep_result_to_json(out.res);
      j["certificates"] = out.certificates;
    }
    write_json_file(o.json_path, j);
  }
  if (!closed_form)
    maybe_write_certificates(o.certificates_out, out.certificates, manifest);
}

// ---------------------------------------------------------------------------
// sweep-w

struct SweepWOpts {
  double from = 0.0;
  double to = 1.0;
  double step = 0.01;
  std::string out = "-";
};

void cmd_sweep_w(const SweepWOpts& o) {
  if (o.step <= 0.0)
    throw CommandError{kExitBadArgs, "--step must be positive"};
  if (o.from < 0.0 || o.to > 1.0 || o.from > o.to)
    throw CommandError{kExitBadArgs, "need 0 <= --from <= --to <= 1"};

  std::ostringstream csv;
  csv << "w,weak_lower,heptagon_lifted_lower,combined_lower,detour_upper\n";
  const double weak = weak_disk_bound();
  const long steps = std::lround((o.to - o.from) / o.step);
  long rows = 0;
  int prev_branch = -1;  // 0 weak, 1 lifted
  double prev_w = 0.0;
  std::string crossover;
  for (long k = 0; k <= steps; ++k) {
    double w = o.from + static_cast<double>(k) * o.step;
    w = std::min(w, 1.0);
    const double lifted = lift_to_disk(heptagon_weighted_bound(w), 7);
    const double combined = disk_weighted_bound(w);
    const double upper = detour_cost(w).cost;
    csv << fmt6(w) << ',' << fmt6(weak) << ',' << fmt6(lifted) << ','
        << fmt6(combined) << ',' << fmt6(upper) << '\n';
    ++rows;
    const int branch = weak >= lifted ? 0 : 1;
    if (prev_branch >= 0 && branch != prev_branch)
      crossover = "between w=" + fmt6(prev_w) + " and w=" + fmt6(w) + " (" +
                  (branch == 0 ? "lifted -> weak" : "weak -> lifted") + ")";
    prev_branch = branch;
    prev_w = w;
  }

  if (o.out == "-") {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    std::ofstream f(o.out);
    if (!f) throw CommandError{kExitBadArgs, "cannot write " + o.out};
    f << csv.str();
    std::printf("rows written        %ld -> %s\n", rows, o.out.c_str());
  }
  if (o.out != "-") {
    if (!crossover.empty())
      std::printf("branch crossover    %s\n", crossover.c_str());
    std::printf("transition weight   %s  (where the branches meet)\n",
                fmt6(weighted_transition()).c_str());
  }
}

// ---------------------------------------------------------------------------
// detour

struct DetourOpts {
  double w = 0.0;
  double a = -1.0, b = -1.0;  // optional manual trajectory parameters
  bool simulate = false;
  long grid = 100000;
  int threads = 0;
  std::string json_path;
};

void cmd_detour(const DetourOpts& o) {
  const bool manual = o.a >= 0.0 || o.b >= 0.0;
  if (manual && (o.a < 0.0 || o.b < 0.0))
    throw CommandError{kExitBadArgs, "--a and --b must be given together"};

  const double w0 = detour_threshold_weight();
  std::printf("w                   %s\n", fmt6(o.w).c_str());
  std::printf("threshold w0        %s\n", fmt6(w0).c_str());

  double a, b;
  std::optional<DetourCost> dc;
  if (manual) {
    if (!(o.a > 0.0 && o.b >= 0.0 && o.a + o.b < kTau))
      throw CommandError{kExitBadArgs,
                         "need a > 0, b >= 0, a + b < 2*pi"};
    a = o.a;
    b = o.b;
    std::printf("parameters          a=%s b=%s (manual)\n", fmt6(a).c_str(),
                fmt6(b).c_str());
  } else {
    dc = detour_cost(o.w);  // DetourSolveError -> exit 4 in main
    a = dc->a;
    b = dc->b;
    std::printf("regime              %s\n",
                dc->above_threshold ? "single parameter (arccos branch)"
                                    : "equalized case costs");
    std::printf("parameters          a=%s b=%s\n", fmt6(a).c_str(),
                fmt6(b).c_str());
    if (!dc->above_threshold)
      std::printf("newton              %d iterations, residual %.3e\n",
                  dc->params.iterations, dc->params.residual);
    std::printf("closed-form cost    %s  (1 + d + 2 sin(d)/(w+1), d=%s)\n",
                fmt6(dc->cost).c_str(), fmt6(dc->d).c_str());
  }

  const CaseCosts cc = detour_case_costs(a, b, o.w);
  std::printf("case costs          c1=%s c2=%s c3=%s c4=%s\n",
              fmt6(cc.c1).c_str(), fmt6(cc.c2).c_str(), fmt6(cc.c3).c_str(),
              fmt6(cc.c4).c_str());
  std::printf("worst case          %s\n", fmt6(cc.worst()).c_str());

  std::optional<SimulationResult> sim;
  if (o.simulate) {
    SimulationSpec spec;
    spec.a = a;
    spec.b = b;
    spec.cost = CostFn::weighted(o.w);
    spec.grid = o.grid;
    spec.threads = resolve_threads(o.threads);
    sim = simulate_detour(spec);
    std::printf("simulated cost      %s  (%ld targets)\n",
                fmt6(sim->cost).c_str(), sim->samples);
    std::printf("worst target        theta=%s, found by agent %d at t=%s\n",
                fmt6(sim->theta).c_str(), sim->finder,
                fmt6(sim->t_find).c_str());
    std::printf("arrival times       t0=%s t1=%s\n", fmt6(sim->t0).c_str(),
                fmt6(sim->t1).c_str());
    const double reference = dc ? dc->cost : cc.worst();
    std::printf("sim - closed form   %+.3e\n", sim->cost - reference);
  }

  if (!o.json_path.empty()) {
    Json params{{"w", o.w}, {"simulate", o.simulate}, {"grid", o.grid}};
    if (manual) {
      params["a"] = o.a;
      params["b"] = o.b;
    }
    Json j{{"manifest", make_manifest("detour", params, Json::object())},
           {"w", o.w},
           {"threshold_w0", w0},
           {"a", a},
           {"b", b},
           {"case_costs", Json{{"c1", cc.c1}, {"c2", cc.c2}, {"c3", cc.c3},
                               {"c4", cc.c4}, {"worst", cc.worst()}}}};
    if (dc) {
      j["cost"] = dc->cost;
      j["d"] = dc->d;
      j["above_threshold"] = dc->above_threshold;
    }
    if (sim)
      j["simulation"] = Json{{"cost", sim->cost},   {"theta", sim->theta},
                             {"t_find", sim->t_find}, {"finder", sim->finder},
                             {"t0", sim->t0},         {"t1", sim->t1},
                             {"samples", sim->samples}};
    write_json_file(o.json_path, j);
  }
}

// ---------------------------------------------------------------------------
// certify

struct CertifyOpts {
  std::string input;  // stored solution -> produce a certificate
  std::string check;  // stored certificate -> re-verify it
  std::string out;
};

RelaxationInstance rebuild_instance(const ProblemSpec& p, uint64_t stored_hash,
                                    const char* what) {
  if (!p.config)
    throw CommandError{kExitBadArgs,
                       std::string(what) + " carries no configuration"};
  RelaxationInstance inst = build_relaxation(*p.config, p.cost, p.t0);
  if (inst.hash() != stored_hash)
    throw CommandError{kExitVerify,
                       std::string("instance hash mismatch: ") + what +
                           " says " + hash_hex(stored_hash) +
                           ", rebuilt instance is " + hash_hex(inst.hash())};
  return inst;
}

void cmd_certify(const CertifyOpts& o) {
  if (o.input.empty() == o.check.empty())
    throw CommandError{kExitBadArgs,
                       "pass exactly one of --input <solution.json> or "
                       "--check <certificate.json>"};

  if (!o.check.empty()) {
    // re-verification: replay the stored rational multipliers exactly
    StoredCertificate c;
    try {
      c = certificate_from_json(read_input_json(o.check, "certificate file"));
    } catch (const CommandError&) {
      throw;
    } catch (const std::exception& e) {
      throw CommandError{kExitBadArgs,
                         std::string("bad certificate file: ") + e.what()};
    }
    RelaxationInstance inst =
        rebuild_instance(c.problem, c.instance_hash, "certificate");
    const CertCheck chk = verify_certificate(inst, c.dual, c.raw_value);
    if (!chk.ok)
      throw CommandError{kExitVerify, "certificate rejected: " + chk.reason};
    if (c.value * normalization_rational(c.problem.cost) != c.raw_value)
      throw CommandError{kExitVerify,
                         "stored normalized value does not match the raw "
                         "bound"};
    std::printf("config              %s\n",
                config_line(*c.problem.config).c_str());
    std::printf("certificate ok      %s\n", fmt6(to_double(c.value)).c_str());
    std::printf("exact value         %s\n", to_string(c.value).c_str());
    return;
  }

  StoredSolution s;
  try {
    s = solution_from_json(read_input_json(o.input, "solution file"));
  } catch (const CommandError&) {
    throw;
  } catch (const std::exception& e) {
    throw CommandError{kExitBadArgs,
                       std::string("bad solution file: ") + e.what()};
  }
  RelaxationInstance inst =
      rebuild_instance(s.problem, s.instance_hash, "solution");
  const CertifiedBound cert = certify_lower_bound(inst, s.solution);
  if (!cert.verified)
    throw CommandError{kExitVerify,
                       "certificate construction failed: " + cert.failure};
  std::printf("config              %s\n",
              config_line(*s.problem.config).c_str());
  std::printf("solver optimum      %s\n", fmt6(s.solution.normalized).c_str());
  std::printf("certified bound     %s%s\n", fmt6(to_double(cert.value)).c_str(),
              cert.used_exact_fallback ? "  (exact re-solve)" : "");
  std::printf("exact value         %s\n", to_string(cert.value).c_str());
  if (!o.out.empty()) {
    Json j = certificate_to_json(s.problem, cert);
    j["manifest"] = make_manifest(
        "certify", Json{{"input", o.input}},
        Json{{"instance", hash_hex(inst.hash())}});
    write_json_file(o.out, j);
    std::printf("certificate         %s\n", o.out.c_str());
  }
}

// ---------------------------------------------------------------------------
// verify-embedding

struct VerifyEmbOpts {
  std::string input;
  int n = 0;
  std::string config_text;  // alternative seed: the collocated embedding
  std::string t0 = "1";
  std::string cost_kind = "proj2";
  double w = 0.0;
  bool refine = false;
  long budget = 200000;
  bool compare_rel = false;
  std::string out;
};

void cmd_verify_embedding(const VerifyEmbOpts& o) {
  if (o.input.empty() == o.config_text.empty())
    throw CommandError{kExitBadArgs,
                       "pass exactly one of --input <embedding.json> or "
                       "--n <n> --config <rho;b> (collocated seed)"};
  PlanarEmbedding emb;
  if (!o.input.empty()) {
    try {
      emb = embedding_from_json(read_input_json(o.input, "embedding file"));
    } catch (const CommandError&) {
      throw;
    } catch (const std::exception& e) {
      throw CommandError{kExitBadArgs,
                         std::string("bad embedding file: ") + e.what()};
    }
  } else {
    if (o.n < 3)
      throw CommandError{kExitBadArgs, "--config also needs --n"};
    double t0 = 0.0;
    try {
      t0 = to_double(rational_from_decimal(o.t0));
    } catch (const std::exception& e) {
      throw CommandError{kExitBadArgs,
                         std::string("--t0 must be a decimal number: ") +
                             e.what()};
    }
    emb = collocated_embedding(parse_config(o.config_text, o.n), t0);
  }
  CostFn cost;
  if (o.cost_kind == "proj2") cost = CostFn::proj2();
  else if (o.cost_kind == "max") cost = CostFn::max_norm();
  else cost = CostFn::weighted(o.w);

  std::printf("n                   %d\n", emb.n);
  std::printf("config              %s\n", config_line(emb.config).c_str());
  std::printf("cost                %s\n", cost.name().c_str());

  const NlpEvaluation ev = evaluate_nlp(emb, cost);
  std::printf("objective           %s  (raw %s)\n", fmt6(ev.objective).c_str(),
              fmt6(ev.raw_objective).c_str());
  std::printf("feasible            %s\n", ev.feasible ? "yes" : "no");
  for (const NlpViolation& v : ev.violations)
    std::printf("  violated          %s  by %.3e\n", v.name.c_str(), v.amount);

  std::optional<double> rel_value;
  if (o.compare_rel) {
    ProblemSpec p;
    p.n = emb.n;
    p.cost = cost;
    p.t0 = StartTime{decimal_of_double(emb.t0), false};
    p.config = emb.config;
    SingleOutcome s = solve_and_certify(p);
    rel_value = s.sol.normalized;
    std::printf("relaxation optimum  %s\n", fmt6(*rel_value).c_str());
    std::printf("embedding - relax   %+.3e\n", ev.objective - *rel_value);
  }

  std::optional<RefineResult> rr;
  if (o.refine) {
    // the refiner re-projects the times first, so an input that only
    // violates the time constraints is repaired rather than rejected
    rr = refine_embedding(emb, cost, o.budget);
    std::printf("refined objective   %s  (%ld evaluations%s)\n",
                fmt6(rr->objective).c_str(), rr->evaluations,
                rr->budget_exhausted ? ", budget exhausted" : "");
    if (rel_value)
      std::printf("refined - relax     %+.3e\n", rr->objective - *rel_value);
  }

  if (!o.out.empty()) {
    Json j = embedding_to_json(rr ? rr->embedding : emb);
    j["manifest"] = make_manifest(
        "verify-embedding",
        Json{{"input", o.input.empty() ? o.config_text : o.input},
             {"refine", o.refine},
             {"budget", o.budget}},
        Json::object());
    write_json_file(o.out, j);
    std::printf("embedding written   %s\n", o.out.c_str());
  }

  if (!ev.feasible && !o.refine)
    throw CommandError{kExitVerify,
                       "embedding violates " +
                           std::to_string(ev.violations.size()) +
                           " constraint(s)"};
}

// ---------------------------------------------------------------------------
// resume

void cmd_resume(const BoundOpts& o) {
  require_file(o.checkpoint, "checkpoint");
  ProblemSpec base = make_problem(o);
  SweepSpec spec;
  spec.n = o.n;
  spec.cost = base.cost;
  spec.t0 = base.t0;
  spec.threads = resolve_threads(o.threads);
  spec.block_size = o.block_size;
  spec.checkpoint_path = o.checkpoint;
  // sweep() itself rejects a checkpoint whose spec hash disagrees; surface
  // that as an argument error rather than a solver failure
  SweepOutcome out;
  try {
    out = run_checked_sweep(spec, base);
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).find("checkpoint") != std::string::npos)
      throw CommandError{kExitBadArgs, e.what()};
    throw;
  }
  const SweepResult& res = out.res;
  std::printf("n                   %d\n", o.n);
  std::printf("cost                %s\n", base.cost.name().c_str());
  std::printf("resumed             %s\n", res.resumed ? "yes" : "no (fresh)");
  std::printf("configurations      %ld canonical, %ld examined\n",
              res.total_configs, res.examined);
  std::printf("relaxation minimum  %s\n", fmt6(res.value).c_str());
  std::printf("argmin              %s\n", config_line(res.argmin).c_str());
  std::printf("certified bound     %s\n",
              fmt6(to_double(out.certified)).c_str());
  std::printf("certificate         %s\n", to_string(out.certified).c_str());
  std::printf("wall time           %.3f s\n", res.wall_seconds);
  if (!o.json_path.empty()) {
    Json j{{"manifest",
            make_manifest("resume", bound_parameters(o), Json::object())},
           {"problem", problem_to_json(base)},
           {"value", res.value},
           {"certified_value", to_string(out.certified)},
           {"certified_value_double", to_double(out.certified)},
           {"argmin", config_to_json(res.argmin)},
           {"sweep", sweep_result_to_json(res)},
           {"certificates", out.certificates}};
    write_json_file(o.json_path, j);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "certified lower bounds and matching detour upper bounds for "
      "two-agent weighted search on regular n-gons and the unit disk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wgsearch  0.1.0");

  BoundOpts ngon;
  CLI::App* c_ngon = app.add_subcommand(
      "ngon-bound", "relaxation lower bound on the n-gon, with certificate");
  c_ngon->add_option("--n", ngon.n, "number of vertices")
      ->required()
      ->check(CLI::Range(3, 12));
  add_cost_options(c_ngon, ngon);
  add_t0_options(c_ngon, ngon);
  add_sweep_options(c_ngon, ngon);
  c_ngon->add_option("--config", ngon.config_text,
                     "solve one configuration \"rho_1,..,rho_n;b_1,..,b_n\" "
                     "instead of sweeping");
  c_ngon->add_option("--json", ngon.json_path, "write a JSON report");
  c_ngon->add_option("--solution-out", ngon.solution_out,
                     "store the solved relaxation (input for `certify`)");
  c_ngon->add_option("--certificates-out", ngon.certificates_out,
                     "store the exact certificates of the near-min set");
  c_ngon->add_option("--lp-out", ngon.lp_out,
                     "dump the LP in text form (single-config mode)");
  c_ngon->callback([&ngon]() { cmd_ngon_bound(ngon); });

  BoundOpts disk;
  disk.cost_kind = "gw";
  CLI::App* c_disk = app.add_subcommand(
      "disk-bound", "disk lower bound: lifted n-gon bound (and weak branch)");
  c_disk->add_option("--n", disk.n, "polygon used for the lift (default 7)")
      ->check(CLI::Range(3, 12));
  add_cost_options(c_disk, disk);
  add_t0_options(c_disk, disk);
  add_sweep_options(c_disk, disk);
  c_disk->add_flag("--sweep", disk.sweep,
                   "run the full sweep even where a closed form is known");
  c_disk->add_option("--json", disk.json_path, "write a JSON report");
  c_disk->add_option("--certificates-out", disk.certificates_out,
                     "store the exact certificates of the near-min set");
  c_disk->callback([&disk]() { cmd_disk_bound(disk); });

  SweepWOpts sweepw;
  CLI::App* c_sweepw = app.add_subcommand(
      "sweep-w", "CSV of lower and upper bounds across weights");
  c_sweepw->add_option("--from", sweepw.from, "first weight (default 0)");
  c_sweepw->add_option("--to", sweepw.to, "last weight (default 1)");
  c_sweepw->add_option("--step", sweepw.step, "weight increment");
  c_sweepw->add_option("--out", sweepw.out, "CSV path, or - for stdout");
  c_sweepw->callback([&sweepw]() { cmd_sweep_w(sweepw); });

  DetourOpts det;
  CLI::App* c_det = app.add_subcommand(
      "detour", "(a,b)-detour upper bound: parameters, cost, simulation");
  c_det->add_option("--w", det.w, "weight of the first agent's arrival")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  c_det->add_option("--a", det.a, "override the detour angle a");
  c_det->add_option("--b", det.b, "override the detour angle b");
  c_det->add_flag("--simulate", det.simulate,
                  "validate the cost with the trajectory simulation");
  c_det->add_option("--grid", det.grid, "simulated target angles")
      ->check(CLI::Range(8L, 100000000L));
  c_det->add_option("--threads", det.threads, "simulation worker threads")
      ->envname("WGSEARCH_THREADS")
      ->check(CLI::Range(0, 1024));
  c_det->add_option("--json", det.json_path, "write a JSON report");
  c_det->callback([&det]() { cmd_detour(det); });

  CertifyOpts cert;
  CLI::App* c_cert = app.add_subcommand(
      "certify", "produce or re-verify an exact certificate");
  c_cert->add_option("--input", cert.input,
                     "stored solution JSON (from ngon-bound --solution-out)");
  c_cert->add_option("--check", cert.check,
                     "stored certificate JSON to re-verify");
  c_cert->add_option("--out", cert.out, "where to write the certificate");
  c_cert->callback([&cert]() { cmd_certify(cert); });

  VerifyEmbOpts vemb;
  CLI::App* c_vemb = app.add_subcommand(
      "verify-embedding", "check a planar embedding, optionally refine it");
  c_vemb->add_option("--input", vemb.input, "embedding JSON");
  c_vemb->add_option("--n", vemb.n, "vertices, for the --config seed")
      ->check(CLI::Range(3, 12));
  c_vemb->add_option("--config", vemb.config_text,
                     "seed with the collocated embedding of this "
                     "configuration instead of reading --input");
  c_vemb->add_option("--t0", vemb.t0, "start time for the --config seed");
  c_vemb->add_option("--cost", vemb.cost_kind, "cost functional")
      ->check(CLI::IsMember({"proj2", "max", "gw"}));
  c_vemb->add_option("--w", vemb.w, "weight for --cost gw")
      ->check(CLI::Range(0.0, 1.0));
  c_vemb->add_flag("--refine", vemb.refine, "run the compass refiner");
  c_vemb->add_option("--budget", vemb.budget, "refiner evaluation budget")
      ->check(CLI::Range(1L, 1000000000L));
  c_vemb->add_flag("--compare-rel", vemb.compare_rel,
                   "also solve the relaxation of the same configuration");
  c_vemb->add_option("--out", vemb.out, "where to write the refined embedding");
  c_vemb->callback([&vemb]() { cmd_verify_embedding(vemb); });

  BoundOpts res;
  CLI::App* c_res = app.add_subcommand(
      "resume", "continue a checkpointed sweep and report as ngon-bound");
  c_res->add_option("--n", res.n, "number of vertices")
      ->required()
      ->check(CLI::Range(3, 12));
  add_cost_options(c_res, res);
  add_t0_options(c_res, res);
  c_res->add_option("--threads", res.threads, "worker threads")
      ->envname("WGSEARCH_THREADS")
      ->check(CLI::Range(0, 1024));
  c_res->add_option("--block-size", res.block_size,
                    "must match the original run")
      ->check(CLI::Range(1L, 1000000L));
  c_res->add_option("--checkpoint", res.checkpoint, "checkpoint to continue")
      ->required();
  c_res->add_option("--json", res.json_path, "write a JSON report");
  c_res->callback([&res]() { cmd_resume(res); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadArgs;
  } catch (const CommandError& e) {
    std::fprintf(stderr, "wgsearch: %s\n", e.message.c_str());
    return e.code;
  } catch (const DetourSolveError& e) {
    // the root finder reports its residuals in the message
    std::fprintf(stderr, "wgsearch: detour parameters: %s\n", e.what());
    return kExitRootFinder;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "wgsearch: invalid argument: %s\n", e.what());
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wgsearch: %s\n", e.what());
    return kExitSolver;
  }
}
