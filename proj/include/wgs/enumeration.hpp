#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wgs/lpsolve.hpp"

// Exhaustive sweep of the relaxation over all visitation configurations of
// an n-gon.  Rotation is quotiented out by fixing rho[0] = 0; reflection by
// keeping the lexicographically smaller of each mirror pair (reflection has
// no fixed points here), and, for agent-symmetric costs, agent swap by
// keeping b[0] = 0.  That leaves (n-1)! * 2^n / 2 configurations (halved
// again under agent symmetry).
//
// The raw index space (n-1)! * 2^n is cut into fixed blocks; workers pull
// block ids from a shared counter, solve the canonical members, and fold
// per-block minima into the running result under a deterministic total
// order (value, then lexicographic configuration), so the outcome does not
// depend on the worker count or scheduling.  An optional JSON checkpoint
// records finished blocks and the running minimum for resumption.

namespace wgs {

long raw_config_count(int n);  // (n-1)! * 2^n
long canonical_config_count(int n, bool agent_symmetric);

// configuration at a raw index: permutation part in factorial base
// (rho[0] = 0 always), low n bits select the visiting agents
Configuration unrank_config(long idx, int n);

bool is_canonical_config(const Configuration& c, bool agent_symmetric);

// all canonical configurations in raw-index order; for small n
std::vector<Configuration> enumerate_configs(int n, bool agent_symmetric);

enum class Retention { MinOnly, TopK, All };

struct SweepSpec {
  int n = 3;
  CostFn cost;
  StartTime t0;
  int threads = 1;
  long block_size = 1024;
  Retention retention = Retention::MinOnly;
  int top_k = 16;
  std::string checkpoint_path;  // empty disables checkpointing
  // called after every finished block; return false to stop early (finished
  // blocks stay checkpointed and the sweep reports complete = false)
  std::function<bool(long done, long total)> progress;
};

struct SweepRecord {
  Configuration config;
  double value = 0.0;  // normalized relaxation optimum
};

struct SweepResult {
  double value = std::numeric_limits<double>::infinity();
  Configuration argmin;
  long examined = 0;       // canonical configurations solved (incl. resumed)
  long total_configs = 0;  // canonical configurations overall
  long blocks_done = 0;
  long blocks_total = 0;
  bool complete = false;
  bool resumed = false;
  double wall_seconds = 0.0;
  // every configuration within kNearMinMargin of the minimum; certifying
  // all of them turns the float comparison between configurations into a
  // sound global bound
  std::vector<SweepRecord> near_min;
  std::vector<SweepRecord> records;  // per the retention policy
};

// slack for float misranking between configurations; anything certified
// must undercut every configuration outside this margin
inline constexpr double kNearMinMargin = 1e-6;

uint64_t sweep_spec_hash(const SweepSpec& spec);

SweepResult sweep(const SweepSpec& spec);

}  // namespace wgs
