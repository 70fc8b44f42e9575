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

#include "symfill/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace symfill {
namespace {

std::string describe_update(const MaxIdUpdate& u) {
  auto value = [](vertex_t v) { return v == kUnreached ? std::string("inf") : std::to_string(v); };
  return "slot " + std::to_string(u.slot) + " vertex " + std::to_string(u.vertex) + " " + value(u.before) +
         " -> " + value(u.after) + " at iteration " + std::to_string(u.iteration);
}

std::vector<std::vector<vertex_t>> snapshot(const TraversalState& state) {
  std::vector<std::vector<vertex_t>> out(state.slots());
  for (slot_t s = 0; s < state.slots(); ++s) {
    out[s].resize(state.source(s));
    for (vertex_t v = 0; v < state.source(s); ++v) out[s][v] = state.max_id(s, v);
  }
  return out;
}

SpillStore make_spill(const std::string& prefix, int which) {
  if (prefix.empty()) return SpillStore();
  return SpillStore(prefix + "." + std::to_string(which));
}

}  // namespace

void EngineStats::merge(const EngineStats& o) {
  traversed_edges += o.traversed_edges;
  iterations += o.iterations;
  maxid_updates += o.maxid_updates;
  re_relaxations += o.re_relaxations;
  structure_entries += o.structure_entries;
  frontier_insertions += o.frontier_insertions;
  spill_events += o.spill_events;
  entries_spilled += o.entries_spilled;
  entries_reloaded += o.entries_reloaded;
  spilled_digest += o.spilled_digest;
  reloaded_digest += o.reloaded_digest;
  waves += o.waves;
  epoch_reinitializations += o.epoch_reinitializations;
  stamp_resets += o.stamp_resets;
  if (o.effective_concurrency != 0) {
    effective_concurrency =
        effective_concurrency == 0 ? o.effective_concurrency : std::min(effective_concurrency, o.effective_concurrency);
  }
  high_water_mark = std::max(high_water_mark, o.high_water_mark);
  peak_frontier = std::max(peak_frontier, o.peak_frontier);
  seconds += o.seconds;
  profile.insert(profile.end(), o.profile.begin(), o.profile.end());
}

void audit_updates(std::span<const MaxIdUpdate> updates) {
  std::map<std::pair<slot_t, vertex_t>, std::vector<MaxIdUpdate>> chains;
  for (const MaxIdUpdate& u : updates) {
    if (u.after >= u.before) throw InvariantViolation("maxId did not decrease: " + describe_update(u));
    chains[{u.slot, u.vertex}].push_back(u);
  }
  for (auto& [key, chain] : chains) {
    std::sort(chain.begin(), chain.end(), [](const MaxIdUpdate& a, const MaxIdUpdate& b) { return a.before > b.before; });
    if (chain.front().before != kUnreached) {
      throw InvariantViolation("first maxId update does not start from unreached: " + describe_update(chain.front()));
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
      if (chain[k].before != chain[k - 1].after) {
        throw InvariantViolation("maxId history is not a single decreasing chain: " + describe_update(chain[k - 1]) +
                                 " then " + describe_update(chain[k]));
      }
    }
  }
}

MultiSourceEngine::MultiSourceEngine(const CsrGraph& g, EngineConfig config) : g_(g), config_(std::move(config)) {
  if (config_.concurrency == 0) throw InvalidConfig("concurrency must be at least 1");
  if (config_.threads < 1) throw InvalidConfig("thread count must be at least 1");
  if (config_.frontier_floor == 0) throw InvalidConfig("frontier floor must be at least 1");
}

EngineStats MultiSourceEngine::run(std::span<const vertex_t> sources, FillStructure& out) {
  const auto start = std::chrono::steady_clock::now();
  const vertex_t n = g_.n();
  if (out.n() != n) throw DimensionError("output structure does not match the graph");
  for (vertex_t s : sources) {
    if (s >= n) throw RangeError("source " + std::to_string(s) + " outside the graph");
  }
  trace_.clear();
  EngineStats stats;
  if (sources.empty() || n == 0) return stats;

  const std::size_t floor_entries = config_.frontier_floor * static_cast<std::size_t>(config_.threads);
  const bool log_updates = config_.checked || config_.record_trace;
  Arena arena(config_.budget_bytes);
  EpochCodec codec(n, config_.max_value);
  TraversalState state(n, config_.checked);
  std::vector<WorkerLocal> locals(static_cast<std::size_t>(config_.threads));
  SpillStore spill[2] = {make_spill(config_.spill_path, 0), make_spill(config_.spill_path, 1)};

  std::size_t pos = 0;
  while (pos < sources.size()) {
    const auto upcoming = sources.subspan(pos);
    const std::size_t c = shrink_concurrency(config_.concurrency, config_.budget_bytes, n, upcoming, floor_entries);
    const auto wave = upcoming.first(c);
    const bool reset = stats.waves > 0 && codec.advance();
    const ArenaLayout& layout = arena.repartition(n, wave, floor_entries, codec.sentinel(), reset);
    if (config_.checked) {
      const auto regions = layout.regions();
      for (std::size_t a = 0; a < regions.size(); ++a) {
        if (config_.budget_bytes != 0 && regions[a].end() > config_.budget_bytes) {
          throw InvariantViolation("arena region exceeds the budget");
        }
        for (std::size_t b = a + 1; b < regions.size(); ++b) {
          if (regions[a].offset < regions[b].end() && regions[b].offset < regions[a].end()) {
            throw InvariantViolation("arena regions overlap");
          }
        }
      }
    }
    state.begin_wave(wave, arena.view<std::uint32_t>(layout.fill), arena.view<std::uint64_t>(layout.maxid),
                     layout.maxid_offsets, codec);
    FrontierBatch batch[2] = {
        FrontierBatch(arena.view<vertex_t>(layout.queue[0]), arena.view<slot_t>(layout.tracker[0])),
        FrontierBatch(arena.view<vertex_t>(layout.queue[1]), arena.view<slot_t>(layout.tracker[1]))};
    for (auto& l : locals) l.reset(c);

    int cur = 0;
    for (slot_t s = 0; s < c; ++s) {
      for (const FrontierEntry& e : init_source(g_, state, s, locals[0], log_updates)) batch[cur].append(e, spill[cur]);
    }
    if (config_.record_trace) {
      IterationTrace t;
      t.wave = stats.waves;
      t.sources.assign(wave.begin(), wave.end());
      t.updates = locals[0].updates;
      t.recorded = locals[0].structure;
      t.max_id = snapshot(state);
      trace_.push_back(std::move(t));
    }

    std::uint32_t iteration = 0;
    std::vector<std::size_t> update_marks(locals.size()), structure_marks(locals.size());
    while (!batch[cur].empty() || !spill[cur].empty()) {
      ++iteration;
      const int nxt = 1 - cur;
      batch[nxt].clear();
      NextFrontier next(batch[nxt], spill[nxt]);
      BatchOptions options{config_.order, config_.threads, log_updates, iteration};
      for (std::size_t w = 0; w < locals.size(); ++w) {
        update_marks[w] = locals[w].updates.size();
        structure_marks[w] = locals[w].structure.size();
      }
      IterationTrace t;
      // Resident entries first, then whatever was spilled, one capacity-sized
      // refill at a time.
      if (batch[cur].empty()) reload_frontiers(spill[cur], batch[cur]);
      while (!batch[cur].empty()) {
        if (config_.record_trace) {
          const auto entries = batch[cur].entries();
          t.frontier.insert(t.frontier.end(), entries.begin(), entries.end());
        }
        process_batch(g_, state, batch[cur], next, locals, options);
        batch[cur].clear();
        reload_frontiers(spill[cur], batch[cur]);
      }
      const std::size_t peak = std::max(batch[0].peak(), batch[1].peak());
      arena.note_frontier_peak(peak);
      stats.peak_frontier = std::max(stats.peak_frontier, peak);
      if (config_.record_trace) {
        t.wave = stats.waves;
        t.iteration = iteration;
        t.sources.assign(wave.begin(), wave.end());
        for (std::size_t w = 0; w < locals.size(); ++w) {
          t.updates.insert(t.updates.end(), locals[w].updates.begin() + update_marks[w], locals[w].updates.end());
          t.recorded.insert(t.recorded.end(), locals[w].structure.begin() + structure_marks[w],
                            locals[w].structure.end());
        }
        t.max_id = snapshot(state);
        trace_.push_back(std::move(t));
      }
      cur = nxt;
    }

    // Wave barrier: gather rows and counters.
    std::vector<std::vector<vertex_t>> lower(c), upper(c);
    std::vector<MaxIdUpdate> all_updates;
    std::vector<SourceProfile> profile(c);
    for (slot_t s = 0; s < c; ++s) profile[s].source = wave[s];
    for (const WorkerLocal& l : locals) {
      for (const FrontierEntry& e : l.structure) (e.vertex < wave[e.slot] ? lower : upper)[e.slot].push_back(e.vertex);
      for (slot_t s = 0; s < c; ++s) {
        profile[s].insertions += l.insertions[s];
        profile[s].traversed_edges += l.slot_edges[s];
      }
      stats.traversed_edges += l.traversed_edges;
      stats.maxid_updates += l.maxid_updates;
      stats.re_relaxations += l.re_relaxations;
      stats.structure_entries += l.structure.size();
      if (config_.checked) all_updates.insert(all_updates.end(), l.updates.begin(), l.updates.end());
    }
    if (config_.checked) {
      audit_updates(all_updates);
      for (slot_t s = 0; s < c; ++s) {
        std::size_t stamped = 0;
        for (vertex_t v = 0; v < n; ++v) stamped += state.is_stamped(s, v) ? 1 : 0;
        if (stamped != lower[s].size() + upper[s].size()) {
          throw InvariantViolation("fill marks of source " + std::to_string(wave[s]) +
                                   " disagree with its recorded structure");
        }
      }
      const std::uint64_t spilled = spill[0].entries_spilled() + spill[1].entries_spilled();
      const std::uint64_t reloaded = spill[0].entries_reloaded() + spill[1].entries_reloaded();
      if (spilled != reloaded ||
          spill[0].spilled_digest() + spill[1].spilled_digest() != spill[0].reloaded_digest() + spill[1].reloaded_digest()) {
        throw InvariantViolation("spilled frontier entries were not all reloaded");
      }
    }
    for (slot_t s = 0; s < c; ++s) {
      stats.frontier_insertions += profile[s].insertions;
      out.set_row(wave[s], std::move(lower[s]), std::move(upper[s]));
    }
    stats.profile.insert(stats.profile.end(), profile.begin(), profile.end());
    stats.iterations += iteration;
    const std::size_t allowed = c < std::min(config_.concurrency, upcoming.size()) ? c : config_.concurrency;
    stats.effective_concurrency = stats.waves == 0 ? allowed : std::min(stats.effective_concurrency, allowed);
    ++stats.waves;
    pos += c;
  }

  for (const SpillStore& s : spill) {
    stats.spill_events += s.spill_events();
    stats.entries_spilled += s.entries_spilled();
    stats.entries_reloaded += s.entries_reloaded();
    stats.spilled_digest += s.spilled_digest();
    stats.reloaded_digest += s.reloaded_digest();
  }
  stats.epoch_reinitializations = codec.reinitializations();
  stats.stamp_resets = state.stamp_resets();
  stats.high_water_mark = arena.high_water_mark();
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

FillStructure run_multi_source(const CsrGraph& g, std::span<const vertex_t> sources, const EngineConfig& config,
                               EngineStats* stats) {
  FillStructure out(g.n());
  MultiSourceEngine engine(g, config);
  EngineStats s = engine.run(sources, out);
  if (stats != nullptr) *stats = std::move(s);
  return out;
}

FillStructure run_multi_source(const CsrGraph& g, const EngineConfig& config, EngineStats* stats) {
  std::vector<vertex_t> all(g.n());
  std::iota(all.begin(), all.end(), vertex_t{0});
  return run_multi_source(g, all, config, stats);
}

}  // namespace symfill
