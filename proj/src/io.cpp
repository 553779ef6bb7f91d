#include "wgs/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wgs {

namespace {

std::string lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

LpStatus lp_status_from_name(const std::string& s) {
  if (s == "optimal") return LpStatus::Optimal;
  if (s == "infeasible") return LpStatus::Infeasible;
  if (s == "unbounded") return LpStatus::Unbounded;
  if (s == "iteration_limit") return LpStatus::IterationLimit;
  throw std::invalid_argument("unknown LP status: " + s);
}

}  // namespace

Json config_to_json(const Configuration& c) {
  Json j;
  j["n"] = c.n;
  j["rho"] = c.rho;
  j["b"] = Json::array();
  for (uint8_t bit : c.b) j["b"].push_back(static_cast<int>(bit));
  return j;
}

Configuration config_from_json(const Json& j) {
  Configuration c;
  c.n = j.at("n").get<int>();
  c.rho = j.at("rho").get<std::vector<int>>();
  for (const auto& bit : j.at("b"))
    c.b.push_back(static_cast<uint8_t>(bit.get<int>()));
  validate(c);
  return c;
}

Json cost_to_json(const CostFn& cost) {
  Json j;
  switch (cost.kind) {
    case CostKind::Proj2: j["kind"] = "proj2"; break;
    case CostKind::MaxNorm: j["kind"] = "max"; break;
    case CostKind::WeightedAvg: j["kind"] = "gw"; break;
    case CostKind::Min: j["kind"] = "min"; break;
  }
  if (cost.kind == CostKind::WeightedAvg) j["w"] = cost.w;
  return j;
}

CostFn cost_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "proj2") return CostFn::proj2();
  if (kind == "max") return CostFn::max_norm();
  if (kind == "gw") return CostFn::weighted(j.at("w").get<double>());
  if (kind == "min") return CostFn::min_norm();
  throw std::invalid_argument("unknown cost kind: " + kind);
}

Json start_time_to_json(const StartTime& t0) {
  return Json{{"base", t0.base}, {"plus_pi_over_n", t0.plus_pi_over_n}};
}

StartTime start_time_from_json(const Json& j) {
  StartTime t0;
  t0.base = j.at("base").get<std::string>();
  t0.plus_pi_over_n = j.at("plus_pi_over_n").get<bool>();
  return t0;
}

Json problem_to_json(const ProblemSpec& p) {
  Json j;
  j["n"] = p.n;
  j["cost"] = cost_to_json(p.cost);
  j["t0"] = start_time_to_json(p.t0);
  if (p.config) j["config"] = config_to_json(*p.config);
  return j;
}

ProblemSpec problem_from_json(const Json& j) {
  ProblemSpec p;
  p.n = j.at("n").get<int>();
  p.cost = cost_from_json(j.at("cost"));
  p.t0 = start_time_from_json(j.at("t0"));
  if (j.contains("config")) p.config = config_from_json(j.at("config"));
  return p;
}

Json solution_to_json(const ProblemSpec& p, const RelaxationInstance& inst,
                      const LpSolution& sol) {
  Json j;
  j["problem"] = problem_to_json(p);
  j["instance_hash"] = hash_hex(inst.hash());
  j["status"] = lp_status_name(sol.status);
  j["objective"] = sol.objective;
  j["normalized"] = sol.normalized;
  j["iterations"] = sol.iterations;
  j["gap"] = sol.gap;
  j["max_violation"] = sol.max_violation;
  j["std_basis"] = sol.std_basis;
  Json dual = Json::array();
  for (size_t r = 0; r < sol.dual.size(); ++r)
    if (sol.dual[r] != 0.0)
      dual.push_back(Json::array({static_cast<int>(r), sol.dual[r]}));
  j["dual"] = dual;
  return j;
}

StoredSolution solution_from_json(const Json& j) {
  StoredSolution s;
  s.problem = problem_from_json(j.at("problem"));
  s.instance_hash = hash_from_hex(j.at("instance_hash").get<std::string>());
  s.solution.status = lp_status_from_name(j.at("status").get<std::string>());
  s.solution.objective = j.at("objective").get<double>();
  s.solution.normalized = j.at("normalized").get<double>();
  s.solution.iterations = j.at("iterations").get<long>();
  s.solution.gap = j.at("gap").get<double>();
  s.solution.max_violation = j.at("max_violation").get<double>();
  s.solution.std_basis = j.at("std_basis").get<std::vector<int>>();
  return s;
}

Json certificate_to_json(const ProblemSpec& p, const CertifiedBound& cert) {
  Json j;
  j["problem"] = problem_to_json(p);
  j["instance_hash"] = hash_hex(cert.instance_hash);
  j["verified"] = cert.verified;
  j["value"] = to_string(cert.value);
  j["value_double"] = to_double(cert.value);
  j["raw_value"] = to_string(cert.raw_value);
  j["used_exact_fallback"] = cert.used_exact_fallback;
  if (!cert.failure.empty()) j["failure"] = cert.failure;
  Json dual = Json::array();
  for (const auto& [row, y] : cert.dual)
    dual.push_back(Json::array({row, to_string(y)}));
  j["dual"] = dual;
  return j;
}

StoredCertificate certificate_from_json(const Json& j) {
  StoredCertificate c;
  c.problem = problem_from_json(j.at("problem"));
  c.instance_hash = hash_from_hex(j.at("instance_hash").get<std::string>());
  c.verified = j.at("verified").get<bool>();
  c.value = rational_from_string(j.at("value").get<std::string>());
  c.raw_value = rational_from_string(j.at("raw_value").get<std::string>());
  for (const auto& entry : j.at("dual"))
    c.dual.emplace_back(entry.at(0).get<int>(),
                        rational_from_string(entry.at(1).get<std::string>()));
  return c;
}

Json embedding_to_json(const PlanarEmbedding& emb) {
  Json j;
  j["n"] = emb.n;
  j["config"] = config_to_json(emb.config);
  j["t0"] = emb.t0;
  j["times"] = emb.times;
  Json pts = Json::array();
  for (const auto& p : emb.free_points)
    pts.push_back(Json::array({p.x(), p.y()}));
  j["free_points"] = pts;
  return j;
}

PlanarEmbedding embedding_from_json(const Json& j) {
  PlanarEmbedding emb;
  emb.n = j.at("n").get<int>();
  emb.config = config_from_json(j.at("config"));
  emb.t0 = j.at("t0").get<double>();
  emb.times = j.at("times").get<std::vector<double>>();
  for (const auto& p : j.at("free_points"))
    emb.free_points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  if (emb.times.size() != static_cast<size_t>(emb.n) ||
      emb.free_points.size() != static_cast<size_t>(emb.n))
    throw std::invalid_argument("embedding JSON has wrong dimensions");
  return emb;
}

Json sweep_result_to_json(const SweepResult& res) {
  Json j;
  j["value"] = res.value;
  j["argmin"] = config_to_json(res.argmin);
  j["examined"] = res.examined;
  j["total_configs"] = res.total_configs;
  j["blocks_done"] = res.blocks_done;
  j["blocks_total"] = res.blocks_total;
  j["complete"] = res.complete;
  j["resumed"] = res.resumed;
  j["wall_seconds"] = res.wall_seconds;
  Json near = Json::array();
  for (const auto& rec : res.near_min)
    near.push_back(Json{{"value", rec.value},
                        {"config", config_to_json(rec.config)}});
  j["near_min"] = near;
  return j;
}

Json make_manifest(const std::string& command, const Json& parameters,
                   const Json& input_hashes) {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["version"] = "0.1.0";
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  j["timestamp"] = buf;
  j["input_hashes"] = input_hashes;
  return j;
}

std::string hash_hex(uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

uint64_t hash_from_hex(const std::string& s) {
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
    throw std::invalid_argument("hash string must start with 0x");
  return std::stoull(s.substr(2), nullptr, 16);
}

void write_json_file(const std::string& path, const Json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << j.dump(2) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace wgs
