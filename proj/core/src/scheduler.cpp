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

#include "symfill/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace symfill {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

}  // namespace

RowRange SchedulePlan::chunk(std::size_t k) const noexcept {
  const std::size_t b = k * chunk_size;
  return {static_cast<vertex_t>(b), static_cast<vertex_t>(std::min<std::size_t>(n, b + chunk_size))};
}

std::size_t concurrent_chunks_per_node(std::size_t chunk_size, std::size_t concurrent_per_worker,
                                       std::size_t workers_per_node) {
  if (chunk_size == 0) throw InvalidConfig("chunk size must be at least 1");
  const std::size_t total = concurrent_per_worker * workers_per_node;
  return std::max<std::size_t>(1, (total + chunk_size - 1) / chunk_size);
}

SchedulePlan plan_chunks(vertex_t n, std::size_t chunk_size, std::size_t workers_per_node, std::size_t nodes,
                         std::size_t concurrent_per_worker, Assignment assignment) {
  if (chunk_size == 0 || workers_per_node == 0 || nodes == 0 || concurrent_per_worker == 0) {
    throw InvalidConfig("chunk size, workers per node, nodes and concurrent sources must all be at least 1");
  }
  SchedulePlan plan;
  plan.n = n;
  plan.chunk_size = chunk_size;
  plan.workers_per_node = workers_per_node;
  plan.nodes = nodes;
  plan.concurrent_per_worker = concurrent_per_worker;
  plan.concurrent_chunks_per_node = concurrent_chunks_per_node(chunk_size, concurrent_per_worker, workers_per_node);
  plan.assignment = assignment;
  plan.node_rounds.resize(nodes);
  plan.sources.resize(n);

  std::vector<std::vector<std::size_t>> node_chunks(nodes);
  for (std::size_t k = 0; k < plan.num_chunks(); ++k) node_chunks[plan.node_of_chunk(k)].push_back(k);

  for (std::size_t node = 0; node < nodes; ++node) {
    const auto& chunks = node_chunks[node];
    for (std::size_t first = 0; first < chunks.size(); first += plan.concurrent_chunks_per_node) {
      ScheduleRound round;
      const std::size_t last = std::min(chunks.size(), first + plan.concurrent_chunks_per_node);
      round.chunks.assign(chunks.begin() + first, chunks.begin() + last);
      std::vector<vertex_t> rows;
      for (std::size_t k : round.chunks) {
        for (vertex_t s = plan.chunk(k).begin; s < plan.chunk(k).end; ++s) rows.push_back(s);
      }
      round.worker_sources.resize(workers_per_node);
      const std::size_t block = (rows.size() + workers_per_node - 1) / workers_per_node;
      for (std::size_t p = 0; p < rows.size(); ++p) {
        const std::size_t w = assignment == Assignment::Interleaved ? p % workers_per_node : p / block;
        round.worker_sources[w].push_back(rows[p]);
        plan.sources[rows[p]] = {node, w, plan.node_rounds[node].size()};
      }
      plan.node_rounds[node].push_back(std::move(round));
    }
  }
  return plan;
}

PipelineResult run_pipeline(const CsrGraph& g, const SchedulePlan& plan, const PipelineConfig& config) {
  if (plan.n != g.n()) throw DimensionError("schedule was planned for a different matrix order");
  if (config.max_supernode == 0) throw InvalidConfig("maximum supernode size must be at least 1");
  const auto start = Clock::now();
  PipelineResult result;
  result.structure = FillStructure(g.n());
  result.per_worker_edges.assign(plan.nodes * plan.workers_per_node, 0);
  std::vector<SupernodePartition> chunk_parts(plan.num_chunks());
  std::vector<EngineStats> worker_stats(plan.nodes * plan.workers_per_node);
  std::vector<double> fill_time(plan.nodes, 0), supernode_time(plan.nodes, 0);

  EngineConfig engine_config = config.engine;
  engine_config.concurrency = plan.concurrent_per_worker;

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto guarded = [&](auto&& body) {
    try {
      body();
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  auto run_node = [&](std::size_t node) {
    for (const ScheduleRound& round : plan.node_rounds[node]) {
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      const auto fill_start = Clock::now();
      std::vector<std::thread> workers;
      for (std::size_t w = 0; w < plan.workers_per_node; ++w) {
        if (round.worker_sources[w].empty()) continue;
        workers.emplace_back([&, w] {
          guarded([&] {
            EngineConfig cfg = engine_config;
            if (!cfg.spill_path.empty()) cfg.spill_path += "." + std::to_string(node) + "." + std::to_string(w);
            MultiSourceEngine engine(g, cfg);
            worker_stats[node * plan.workers_per_node + w].merge(
                engine.run(round.worker_sources[w], result.structure));
          });
        });
      }
      for (auto& t : workers) t.join();
      fill_time[node] += since(fill_start);
      const auto detect_start = Clock::now();
      guarded([&] {
        for (std::size_t k : round.chunks) chunk_parts[k] = detect_chunk(result.structure, plan.chunk(k), config.max_supernode);
      });
      supernode_time[node] += since(detect_start);
    }
  };

  std::vector<std::thread> nodes;
  for (std::size_t node = 0; node < plan.nodes; ++node) nodes.emplace_back(run_node, node);
  for (auto& t : nodes) t.join();
  if (failure) std::rethrow_exception(failure);

  result.supernodes = SupernodePartition(0, 0, {});
  for (const auto& part : chunk_parts) result.supernodes.append(part);
  for (std::size_t i = 0; i < worker_stats.size(); ++i) {
    result.per_worker_edges[i] = worker_stats[i].traversed_edges;
    result.stats.merge(worker_stats[i]);
  }
  std::sort(result.stats.profile.begin(), result.stats.profile.end(),
            [](const SourceProfile& a, const SourceProfile& b) { return a.source < b.source; });
  result.fill_seconds = *std::max_element(fill_time.begin(), fill_time.end());
  result.supernode_seconds = *std::max_element(supernode_time.begin(), supernode_time.end());
  result.wall_seconds = since(start);
  return result;
}

BalanceReport balance_report(const PipelineResult& result) {
  BalanceReport report;
  report.per_worker_edges = result.per_worker_edges;
  report.traversed_edges = result.stats.traversed_edges;
  report.fill_seconds = result.fill_seconds;
  report.teps = result.fill_seconds > 0 ? static_cast<double>(report.traversed_edges) / result.fill_seconds : 0.0;
  report.profile = result.stats.profile;
  if (!report.per_worker_edges.empty()) {
    const auto [lo, hi] = std::minmax_element(report.per_worker_edges.begin(), report.per_worker_edges.end());
    if (*hi == *lo) {
      report.max_min_ratio = 1.0;
    } else if (*lo == 0) {
      report.max_min_ratio = std::numeric_limits<double>::infinity();
    } else {
      report.max_min_ratio = static_cast<double>(*hi) / static_cast<double>(*lo);
    }
  }
  return report;
}

}  // namespace symfill
