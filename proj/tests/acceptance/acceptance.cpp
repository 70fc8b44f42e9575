// Copyright 2026 The symfill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "symfill/engine.hpp"
#include "symfill/epoch.hpp"
#include "symfill/generators.hpp"
#include "symfill/reference_kernels.hpp"
#include "symfill/scheduler.hpp"
#include "symfill/supernode.hpp"

using namespace symfill;

namespace {

constexpr int kFuzzCases = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  explicit Check(Outcome& out) : out_(out) {}
  void expect(bool ok, const std::string& what) {
    if (ok || !out_.pass) {
      if (!ok) out_.pass = false;
      return;
    }
    out_.pass = false;
    out_.detail = what;
  }

 private:
  Outcome& out_;
};

std::vector<vertex_t> vertex_set(const std::vector<FrontierEntry>& entries) {
  std::vector<vertex_t> out;
  for (const auto& e : entries) out.push_back(e.vertex);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string list(const std::vector<vertex_t>& v) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  out << '}';
  return out.str();
}

Outcome worked_trace() {
  Outcome o;
  Check c(o);
  const CsrGraph g = testing::trace_graph();
  EngineConfig cfg;
  cfg.record_trace = true;
  MultiSourceEngine engine(g, cfg);
  FillStructure out(10);
  const std::vector<vertex_t> sources{8};
  engine.run(sources, out);
  const auto& t = engine.trace();
  c.expect(t.size() == 4, "expected init plus three iterations, got " + std::to_string(t.size()) + " records");
  if (!o.pass) return o;
  const auto& m1 = t[1].max_id[0];
  c.expect(m1[0] == 1 && m1[3] == 2 && m1[4] == 7 && m1[5] == 2, "iteration 1 maxId differs");
  c.expect(m1[6] == kUnreached, "iteration 1 reached vertex 6");
  c.expect(vertex_set(t[1].recorded) == std::vector<vertex_t>{3, 5},
           "iteration 1 fills " + list(vertex_set(t[1].recorded)));
  c.expect(vertex_set(t[2].frontier) == std::vector<vertex_t>{0, 3, 4, 5}, "iteration 2 frontier");
  bool four = false, five = false;
  for (const MaxIdUpdate& u : t[2].updates) {
    four |= u.vertex == 4 && u.before == 7 && u.after == 3;
    five |= u.vertex == 5 && u.before == 2 && u.after == 1;
  }
  c.expect(four && five, "iteration 2 updates 4: 7->3 and 5: 2->1 not both seen");
  c.expect(vertex_set(t[2].recorded) == std::vector<vertex_t>{4}, "iteration 2 fills");
  c.expect(vertex_set(t[3].frontier) == std::vector<vertex_t>{4}, "iteration 3 frontier is not {4}");
  c.expect(t[3].updates.empty() && t[3].recorded.empty(), "iteration 3 changed state");
  const auto fills = fill_entries(out, g);
  c.expect(fills == std::vector<std::pair<vertex_t, vertex_t>>{{8, 3}, {8, 4}, {8, 5}}, "row 8 fills differ");
  o.detail = "row 8 fills {(8,3),(8,4),(8,5)}, quiescent after iteration 3";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Check c(o);
  EngineConfig cfg;
  cfg.concurrency = 8;
  for (int seed = 0; seed < kFuzzCases && o.pass; ++seed) {
    const auto fc = testing::fuzz_case(seed);
    const FillStructure oracle = brute_force_fills(fc.graph);
    const std::string tag = " at seed " + std::to_string(seed);
    c.expect(compare_structures(oracle, run_multi_source(fc.graph, cfg)).empty(), "engine mismatch" + tag);
    c.expect(compare_structures(oracle, fill1_all(fc.graph)).empty(), "fill1 mismatch" + tag);
    for (vertex_t i = 0; i < fc.n && o.pass; ++i) {
      const RowStructure row = fill2_row(fc.graph, i);
      c.expect(std::equal(row.lower.begin(), row.lower.end(), oracle.lower(i).begin(), oracle.lower(i).end()) &&
                   std::equal(row.upper.begin(), row.upper.end(), oracle.upper(i).begin(), oracle.upper(i).end()),
               "fill2 mismatch in row " + std::to_string(i) + tag);
    }
  }
  if (o.pass) o.detail = std::to_string(kFuzzCases) + " graphs, 0 mismatches";
  return o;
}

Outcome determinism() {
  Outcome o;
  Check c(o);
  for (int seed = 0; seed < kFuzzCases && o.pass; ++seed) {
    const auto fc = testing::fuzz_case(seed);
    std::string first;
    for (int threads : {1, 2, 8}) {
      for (AccessOrder order : {AccessOrder::MaxIdFirst, AccessOrder::FillFirst}) {
        EngineConfig cfg;
        cfg.concurrency = 4;
        cfg.threads = threads;
        cfg.order = order;
        const std::string text = testing::serialize(run_multi_source(fc.graph, cfg));
        if (first.empty()) first = text;
        c.expect(text == first, "serialized structure differs at seed " + std::to_string(seed) + ", threads " +
                                    std::to_string(threads));
      }
    }
  }
  if (o.pass) o.detail = "threads {1,2,8} x both access orders byte-equal on all fuzz inputs";
  return o;
}

Outcome supernodes() {
  Outcome o;
  Check c(o);
  const FillStructure fs = brute_force_fills(testing::augmented_trace_graph());
  const ChunkBitmap bitmap = phase1_bitmap(fs.upper_counts(), {0, 4});
  c.expect(bitmap.to_string() == "0100", "bitmap " + bitmap.to_string());
  c.expect(bitmap.leaders == std::vector<vertex_t>{0, 2, 3}, "leaders " + list(bitmap.leaders));
  const SupernodePartition p = detect_chunk(fs, {0, 4}, 128);
  c.expect(p.size() == 3 && p.block(0) == std::pair<vertex_t, vertex_t>{0, 2} &&
               p.block(1) == std::pair<vertex_t, vertex_t>{2, 3} && p.block(2) == std::pair<vertex_t, vertex_t>{3, 4},
           "blocks differ");
  for (int seed = 0; seed < kFuzzCases && o.pass; ++seed) {
    const FillStructure f = fill1_all(testing::fuzz_case(seed).graph);
    for (std::size_t chunk : {2u, 5u, 16u, 128u}) {
      const SupernodePartition chunked = detect_supernodes(f, chunk, chunk);
      c.expect(chunked == sequential_supernodes(f, chunk, chunk),
               "chunked detection differs at seed " + std::to_string(seed));
      const std::string why = testing::recheck_t3(f, chunked, chunk, chunk);
      c.expect(why.empty(), why);
    }
  }
  if (o.pass) o.detail = "bitmap 0100, leaders {0,2,3}, blocks {0,1},{2},{3}; fuzz partitions exact";
  return o;
}

Outcome chunk_concurrency() {
  Outcome o;
  const SchedulePlan plan = plan_chunks(1u << 20, 128, 6, 1, 1024);
  o.pass = plan.concurrent_chunks_per_node == 48;
  o.detail = "concurrent chunks per node = " + std::to_string(plan.concurrent_chunks_per_node);
  return o;
}

Outcome budget_invariance() {
  Outcome o;
  Check c(o);
  const CsrGraph g = random_degree_pattern(2000, 8, 99);
  EngineConfig unbounded;
  unbounded.concurrency = 64;
  EngineStats base_stats;
  const FillStructure base = run_multi_source(g, unbounded, &base_stats);

  constexpr std::size_t kFloor = 4096 / 16;  // two batches of queue + tracker in 4 KB
  EngineConfig tight = unbounded;
  tight.frontier_floor = kFloor;
  tight.checked = true;
  std::vector<vertex_t> heaviest(64);
  for (vertex_t k = 0; k < 64; ++k) heaviest[k] = g.n() - 1 - k;
  tight.budget_bytes = required_bytes(g.n(), heaviest, kFloor);
  EngineStats tight_stats;
  const FillStructure constrained = run_multi_source(g, tight, &tight_stats);

  c.expect(base_stats.peak_frontier > kFloor, "peak frontier " + std::to_string(base_stats.peak_frontier) +
                                                  " fits in the 4 KB region");
  c.expect(testing::serialize(base) == testing::serialize(constrained), "structures differ");
  c.expect(tight_stats.spill_events > 0, "no spill at the tight budget");
  c.expect(tight_stats.entries_spilled == tight_stats.entries_reloaded &&
               tight_stats.spilled_digest == tight_stats.reloaded_digest,
           "spilled and reloaded multisets differ");

  // Multiset conservation through a spill store at the same capacity.
  SpillStore spill;
  FrontierBatch batch(kFloor);
  std::mt19937_64 rng(1);
  std::vector<FrontierEntry> in, out;
  for (int k = 0; k < 20000; ++k) {
    const FrontierEntry e{static_cast<vertex_t>(rng() % 2000), static_cast<slot_t>(rng() % 64)};
    in.push_back(e);
    batch.append(e, spill);
  }
  do {
    for (const auto& e : batch.entries()) out.push_back(e);
    batch.clear();
  } while (reload_frontiers(spill, batch) > 0 || !batch.empty());
  std::sort(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  c.expect(in == out, "spill store lost or duplicated entries");

  if (o.pass) {
    o.detail = "peak frontier " + std::to_string(base_stats.peak_frontier) + " > " + std::to_string(kFloor) +
               ", spill_events " + std::to_string(tight_stats.spill_events) + ", spilled == reloaded == " +
               std::to_string(tight_stats.entries_spilled);
  }
  return o;
}

Outcome monotonicity() {
  Outcome o;
  Check c(o);
  std::uint64_t updates = 0;
  for (int seed = 0; seed < kFuzzCases && o.pass; ++seed) {
    EngineConfig cfg;
    cfg.checked = true;
    cfg.concurrency = 6;
    cfg.threads = 1 + seed % 4;
    EngineStats stats;
    try {
      run_multi_source(testing::fuzz_case(seed).graph, cfg, &stats);
      updates += stats.maxid_updates;
    } catch (const InvariantViolation& e) {
      c.expect(false, std::string(e.what()) + " at seed " + std::to_string(seed));
    }
  }
  if (o.pass) o.detail = std::to_string(updates) + " logged maxId updates, 0 violations";
  return o;
}

Outcome epoch_correctness() {
  Outcome o;
  Check c(o);
  constexpr vertex_t n = 24;
  constexpr std::uint64_t max_value = 24 * 7;
  constexpr int reuses = 1000;
  MaxIdArray cells(n, max_value);
  std::mt19937_64 rng(3);
  for (int r = 1; r <= reuses && o.pass; ++r) {
    cells.epoch_advance();
    std::vector<vertex_t> shadow(n, kUnreached);
    for (int k = 0; k < 64; ++k) {
      const vertex_t v = static_cast<vertex_t>(rng() % n);
      const vertex_t value = static_cast<vertex_t>(rng() % n);
      shadow[v] = std::min(shadow[v], value);
      cells.lower_to(v, value);
    }
    for (vertex_t v = 0; v < n; ++v) c.expect(cells.get(v) == shadow[v], "decoded read differs at reuse " + std::to_string(r));
  }
  const std::uint64_t expected = std::uint64_t{reuses} * n / max_value;
  c.expect(cells.physical_reinitializations() == expected,
           "reinitializations " + std::to_string(cells.physical_reinitializations()) + " != " +
               std::to_string(expected));
  if (o.pass) {
    o.detail = std::to_string(reuses) + " reuses match the shadow array, " +
               std::to_string(cells.physical_reinitializations()) + " reinitializations";
  }
  return o;
}

Outcome balance() {
  Outcome o;
  const CsrGraph g = skewed_pattern(1024, 3, 0.005, 7);
  double ratio[2] = {0, 0};
  int k = 0;
  for (Assignment a : {Assignment::Interleaved, Assignment::Blocked}) {
    const PipelineResult r = run_pipeline(g, plan_chunks(g.n(), 128, 4, 1, 256, a), PipelineConfig{});
    ratio[k++] = balance_report(r).max_min_ratio;
  }
  o.pass = ratio[0] <= ratio[1];
  std::ostringstream d;
  d.precision(3);
  d << "max/min per-worker edges: interleaved " << ratio[0] << ", blocked " << ratio[1];
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"worked-example trace", worked_trace, 1},
      {"oracle equivalence", oracle_equivalence, 60},
      {"determinism and confluence", determinism, 0},
      {"supernode correctness", supernodes, 0},
      {"concurrent chunks per node", chunk_concurrency, 0},
      {"budget invariance and spill", budget_invariance, 0},
      {"monotonicity audit", monotonicity, 0},
      {"epoch correctness", epoch_correctness, 0},
      {"interleaved balance (supplementary)", balance, 0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      o.pass = false;
      o.detail += " (took longer than " + std::to_string(c.limit_seconds) + " s)";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-36s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.name, seconds, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
