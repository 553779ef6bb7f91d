#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "wgs/configuration.hpp"
#include "wgs/cost.hpp"
#include "wgs/embedding.hpp"
#include "wgs/enumeration.hpp"
#include "wgs/lpsolve.hpp"
#include "wgs/relaxation.hpp"

// JSON forms for everything a run leaves behind: problem parameters, solved
// relaxations (enough to re-certify later), exact certificates (rational
// values as "num/den" strings), embeddings, and sweep summaries.  Every
// emitted file embeds a manifest naming the command, its parameters, and
// the input hashes it depends on.

namespace wgs {

using Json = nlohmann::json;

// the parameters that pin one relaxation problem
struct ProblemSpec {
  int n = 3;
  CostFn cost;
  StartTime t0;
  std::optional<Configuration> config;

  bool operator==(const ProblemSpec& o) const {
    return n == o.n && cost.kind == o.cost.kind && cost.w == o.cost.w &&
           t0.base == o.t0.base && t0.plus_pi_over_n == o.t0.plus_pi_over_n &&
           config == o.config;
  }
};

Json config_to_json(const Configuration& c);
Configuration config_from_json(const Json& j);

Json cost_to_json(const CostFn& cost);
CostFn cost_from_json(const Json& j);

Json start_time_to_json(const StartTime& t0);
StartTime start_time_from_json(const Json& j);

Json problem_to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const Json& j);

// a solved relaxation; carries the standard-form basis so certification can
// be replayed exactly
Json solution_to_json(const ProblemSpec& p, const RelaxationInstance& inst,
                      const LpSolution& sol);
struct StoredSolution {
  ProblemSpec problem;
  LpSolution solution;  // status, objectives, duals, std_basis
  uint64_t instance_hash = 0;
};
StoredSolution solution_from_json(const Json& j);

Json certificate_to_json(const ProblemSpec& p, const CertifiedBound& cert);
struct StoredCertificate {
  ProblemSpec problem;
  std::vector<std::pair<int, Rational>> dual;
  Rational raw_value;
  Rational value;
  bool verified = false;
  uint64_t instance_hash = 0;
};
StoredCertificate certificate_from_json(const Json& j);

Json embedding_to_json(const PlanarEmbedding& emb);
PlanarEmbedding embedding_from_json(const Json& j);

Json sweep_result_to_json(const SweepResult& res);

// manifest embedded in every result file
Json make_manifest(const std::string& command, const Json& parameters,
                   const Json& input_hashes);

std::string hash_hex(uint64_t h);
uint64_t hash_from_hex(const std::string& s);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace wgs
