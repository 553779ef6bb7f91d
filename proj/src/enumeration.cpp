#include "wgs/enumeration.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "wgs/hash.hpp"

namespace wgs {

using nlohmann::json;

long raw_config_count(int n) {
  require_ngon(n);
  long f = 1;
  for (int i = 2; i < n; ++i) f *= i;
  if (n > 62 || f > (std::numeric_limits<long>::max() >> n))
    throw std::overflow_error("configuration space exceeds long");
  return f << n;
}

long canonical_config_count(int n, bool agent_symmetric) {
  return raw_config_count(n) / (agent_symmetric ? 4 : 2);
}

Configuration unrank_config(long idx, int n) {
  if (idx < 0 || idx >= raw_config_count(n))
    throw std::out_of_range("raw configuration index out of range");
  const long mask = idx & ((1l << n) - 1);
  long perm = idx >> n;

  Configuration c;
  c.n = n;
  c.rho.reserve(n);
  c.rho.push_back(0);
  std::vector<int> items;
  for (int i = 1; i < n; ++i) items.push_back(i);
  long f = 1;
  for (int i = 2; i <= n - 2; ++i) f *= i;  // (n-2)!, the first digit's radix
  for (int i = 1; i < n; ++i) {
    const long d = perm / f;
    perm %= f;
    c.rho.push_back(items[d]);
    items.erase(items.begin() + d);
    if (n - 1 - i > 0) f /= (n - 1 - i);
  }
  c.b.resize(n);
  for (int i = 0; i < n; ++i) c.b[i] = static_cast<uint8_t>((mask >> i) & 1);
  return c;
}

bool is_canonical_config(const Configuration& c, bool agent_symmetric) {
  if (c.rho[0] != 0) return false;
  const Configuration m = reflect(c);
  if (!(c.rho < m.rho)) return false;  // reflection never fixes rho
  if (agent_symmetric && c.b[0] != 0) return false;
  return true;
}

std::vector<Configuration> enumerate_configs(int n, bool agent_symmetric) {
  std::vector<Configuration> out;
  const long total = raw_config_count(n);
  for (long idx = 0; idx < total; ++idx) {
    Configuration c = unrank_config(idx, n);
    if (is_canonical_config(c, agent_symmetric)) out.push_back(std::move(c));
  }
  return out;
}

uint64_t sweep_spec_hash(const SweepSpec& spec) {
  Fnv1a h;
  h.add(1);  // checkpoint format version
  h.add(spec.n)
      .add(static_cast<int>(spec.cost.kind))
      .add(spec.cost.w)
      .add(spec.t0.base)
      .add(static_cast<int>(spec.t0.plus_pi_over_n))
      .add(static_cast<uint64_t>(spec.block_size));
  return h.value();
}

namespace {

bool record_less(const SweepRecord& a, const SweepRecord& b) {
  if (a.value != b.value) return a.value < b.value;
  return lex_less(a.config, b.config);
}

// keep a sorted list of everything within the margin of the best value seen;
// pruning against intermediate minima is safe because the final minimum can
// only be smaller
void fold_near_min_into(std::vector<SweepRecord>& list, SweepRecord rec) {
  auto it = std::lower_bound(list.begin(), list.end(), rec, record_less);
  list.insert(it, std::move(rec));
  const double cutoff = list.front().value + kNearMinMargin;
  while (!list.empty() && list.back().value > cutoff) list.pop_back();
}

json config_to_json(const Configuration& c) {
  return json{{"n", c.n}, {"rho", c.rho}, {"b", c.b}};
}

Configuration config_from_json(const json& j) {
  Configuration c;
  c.n = j.at("n").get<int>();
  c.rho = j.at("rho").get<std::vector<int>>();
  for (int v : j.at("b").get<std::vector<int>>())
    c.b.push_back(static_cast<uint8_t>(v));
  validate(c);
  return c;
}

// running reduction state shared by workers, guarded by one mutex
struct SweepState {
  std::mutex mu;
  std::vector<uint8_t> done;  // per block
  long blocks_done = 0;
  long examined = 0;
  std::vector<SweepRecord> near_min;  // sorted, near_min[0] is the minimum
  std::vector<std::vector<SweepRecord>> block_records;  // per retention
  bool cancel = false;
  std::string error;

};

void write_checkpoint(const SweepSpec& spec, const SweepState& st) {
  json j;
  j["version"] = 1;
  j["spec_hash"] = sweep_spec_hash(spec);
  j["n"] = spec.n;
  j["cost"] = spec.cost.name();
  j["block_size"] = spec.block_size;
  j["blocks_done"] = st.blocks_done;
  j["examined"] = st.examined;
  std::string bits(st.done.size(), '0');
  for (size_t i = 0; i < st.done.size(); ++i)
    if (st.done[i]) bits[i] = '1';
  j["done"] = bits;
  json nm = json::array();
  for (const SweepRecord& r : st.near_min)
    nm.push_back({{"config", config_to_json(r.config)}, {"value", r.value}});
  j["near_min"] = nm;

  const std::string tmp = spec.checkpoint_path + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw std::runtime_error("cannot write checkpoint " + tmp);
    os << j.dump(1) << '\n';
  }
  if (std::rename(tmp.c_str(), spec.checkpoint_path.c_str()) != 0)
    throw std::runtime_error("cannot replace checkpoint " +
                             spec.checkpoint_path);
}

// true when a checkpoint was loaded; throws on a mismatched one
bool load_checkpoint(const SweepSpec& spec, SweepState& st) {
  std::ifstream is(spec.checkpoint_path);
  if (!is) return false;
  json j;
  is >> j;
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("unknown checkpoint version");
  if (j.at("spec_hash").get<uint64_t>() != sweep_spec_hash(spec))
    throw std::runtime_error(
        "checkpoint was produced by a different sweep specification");
  const std::string bits = j.at("done").get<std::string>();
  if (bits.size() != st.done.size())
    throw std::runtime_error("checkpoint block count mismatch");
  for (size_t i = 0; i < bits.size(); ++i) st.done[i] = bits[i] == '1';
  st.blocks_done = j.at("blocks_done").get<long>();
  st.examined = j.at("examined").get<long>();
  for (const json& r : j.at("near_min")) {
    SweepRecord rec;
    rec.config = config_from_json(r.at("config"));
    rec.value = r.at("value").get<double>();
    st.near_min.push_back(std::move(rec));
  }
  std::sort(st.near_min.begin(), st.near_min.end(), record_less);
  return true;
}

}  // namespace

SweepResult sweep(const SweepSpec& spec) {
  require_ngon(spec.n);
  if (spec.block_size < 1) throw std::invalid_argument("block size < 1");
  if (spec.threads < 1) throw std::invalid_argument("thread count < 1");
  spec.cost.linear_terms();  // reject costs the relaxation cannot express
  const bool agent_sym = spec.cost.kind == CostKind::MaxNorm;
  const long raw_total = raw_config_count(spec.n);
  const long blocks_total =
      (raw_total + spec.block_size - 1) / spec.block_size;
  const bool keep_records = spec.retention != Retention::MinOnly;
  if (keep_records && !spec.checkpoint_path.empty())
    throw std::invalid_argument(
        "checkpointed sweeps support min-only retention");

  SweepState st;
  st.done.assign(blocks_total, 0);
  if (keep_records) st.block_records.resize(blocks_total);

  SweepResult res;
  res.total_configs = canonical_config_count(spec.n, agent_sym);
  res.blocks_total = blocks_total;
  if (!spec.checkpoint_path.empty() && load_checkpoint(spec, st))
    res.resumed = true;

  const auto t_begin = std::chrono::steady_clock::now();
  std::atomic<long> next_block{0};

  auto worker = [&] {
    for (;;) {
      const long blk = next_block.fetch_add(1);
      if (blk >= blocks_total) return;
      {
        std::lock_guard<std::mutex> lock(st.mu);
        if (st.cancel) return;
        if (st.done[blk]) continue;
      }
      const long lo = blk * spec.block_size;
      const long hi = std::min(raw_total, lo + spec.block_size);
      std::vector<SweepRecord> block_near_min;
      std::vector<SweepRecord> block_recs;
      long solved = 0;
      try {
        for (long idx = lo; idx < hi; ++idx) {
          Configuration c = unrank_config(idx, spec.n);
          if (!is_canonical_config(c, agent_sym)) continue;
          const RelaxationInstance inst =
              build_relaxation(c, spec.cost, spec.t0);
          const LpSolution sol = solve_relaxation(inst);
          if (sol.status != LpStatus::Optimal)
            throw std::runtime_error(
                "relaxation solve failed (" +
                std::string(to_string(sol.status)) + ") on configuration " +
                format_config(c));
          ++solved;
          SweepRecord rec{std::move(c), sol.normalized};
          if (keep_records) block_recs.push_back(rec);
          fold_near_min_into(block_near_min, std::move(rec));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(st.mu);
        if (st.error.empty()) st.error = e.what();
        st.cancel = true;
        return;
      }

      std::lock_guard<std::mutex> lock(st.mu);
      st.done[blk] = 1;
      ++st.blocks_done;
      st.examined += solved;
      for (SweepRecord& r : block_near_min)
        fold_near_min_into(st.near_min, std::move(r));
      if (keep_records) st.block_records[blk] = std::move(block_recs);
      if (!spec.checkpoint_path.empty()) write_checkpoint(spec, st);
      if (spec.progress && !spec.progress(st.blocks_done, blocks_total))
        st.cancel = true;
      if (st.cancel) return;
    }
  };

  if (spec.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < spec.threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (!st.error.empty()) throw std::runtime_error(st.error);

  res.blocks_done = st.blocks_done;
  res.complete = st.blocks_done == blocks_total;
  res.examined = st.examined;
  res.near_min = st.near_min;
  if (!st.near_min.empty()) {
    res.value = st.near_min.front().value;
    res.argmin = st.near_min.front().config;
  }
  if (keep_records) {
    for (std::vector<SweepRecord>& blk : st.block_records)
      for (SweepRecord& r : blk) res.records.push_back(std::move(r));
    if (spec.retention == Retention::TopK) {
      std::stable_sort(res.records.begin(), res.records.end(), record_less);
      if (static_cast<int>(res.records.size()) > spec.top_k)
        res.records.resize(spec.top_k);
    }
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();
  return res;
}

}  // namespace wgs
