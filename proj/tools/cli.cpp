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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symfill/engine.hpp"
#include "symfill/generators.hpp"
#include "symfill/matrix_market.hpp"
#include "symfill/permutation.hpp"
#include "symfill/reference_kernels.hpp"
#include "symfill/scheduler.hpp"
#include "symfill/supernode.hpp"

namespace symfill::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct RunConfig {
  std::string algorithm = "gsofa";
  std::size_t chunk_size = kDefaultSupernodeSize;
  std::size_t max_supernode = kDefaultSupernodeSize;
  std::size_t nodes = 1;
  std::size_t workers_per_node = 1;
  std::size_t concurrent_per_worker = 64;
  int threads_per_worker = 1;
  std::uint64_t budget_bytes = 0;
  std::size_t frontier_floor = kDefaultFrontierFloor;
  std::string spill_path;
  bool fill_check_first = false;
  bool checked = false;
  std::string row_perm;
  std::string col_perm;
  std::string emit = "all";
  std::uint64_t seed = 0;
};

void add_run_options(CLI::App* app, RunConfig& rc) {
  app->add_option("--algorithm", rc.algorithm, "fill1, fill2, gsofa or oracle")
      ->check(CLI::IsMember({"fill1", "fill2", "gsofa", "oracle"}))
      ->capture_default_str();
  app->add_option("--chunk-size", rc.chunk_size, "Rows per chunk")->capture_default_str();
  app->add_option("--max-supernode", rc.max_supernode, "Largest supernode, in rows")->capture_default_str();
  app->add_option("--nodes", rc.nodes, "Simulated nodes")->capture_default_str();
  app->add_option("--workers-per-node", rc.workers_per_node, "Workers per node")->capture_default_str();
  app->add_option("--concurrent-per-worker", rc.concurrent_per_worker, "Concurrent sources per worker")
      ->capture_default_str();
  app->add_option("--threads-per-worker", rc.threads_per_worker, "Threads relaxing each frontier batch")
      ->capture_default_str();
  app->add_option("--budget-bytes", rc.budget_bytes, "Arena budget per worker, 0 for unbounded")
      ->capture_default_str();
  app->add_option("--frontier-floor", rc.frontier_floor, "Minimum frontier capacity per thread")
      ->capture_default_str();
  app->add_option("--spill-path", rc.spill_path, "Keep spilled frontiers in files with this prefix");
  app->add_flag("--fill-check-first", rc.fill_check_first, "Test the fill mark before touching maxId");
  app->add_flag("--checked", rc.checked, "Audit engine invariants while running");
  app->add_option("--row-perm", rc.row_perm, "Row permutation file")->check(CLI::ExistingFile);
  app->add_option("--col-perm", rc.col_perm, "Column permutation file")->check(CLI::ExistingFile);
  app->add_option("--emit", rc.emit, "structure, supernodes, stats or all")
      ->check(CLI::IsMember({"structure", "supernodes", "stats", "all"}))
      ->capture_default_str();
  app->add_option("--seed", rc.seed, "Seed for generated matrices and fault injection")->capture_default_str();
}

CsrGraph load_input(const std::string& path, const RunConfig& rc) {
  CsrGraph g = load_matrix_market(path);
  if (rc.row_perm.empty() && rc.col_perm.empty()) return g;
  const Permutation rows = rc.row_perm.empty() ? Permutation::identity(g.n()) : load_permutation(rc.row_perm);
  const Permutation cols = rc.col_perm.empty() ? Permutation::identity(g.n()) : load_permutation(rc.col_perm);
  return apply_permutation(g, rows, cols);
}

PipelineConfig pipeline_config(const RunConfig& rc) {
  PipelineConfig pc;
  pc.engine.threads = rc.threads_per_worker;
  pc.engine.order = rc.fill_check_first ? AccessOrder::FillFirst : AccessOrder::MaxIdFirst;
  pc.engine.checked = rc.checked;
  pc.engine.budget_bytes = rc.budget_bytes;
  pc.engine.frontier_floor = rc.frontier_floor;
  pc.engine.spill_path = rc.spill_path;
  pc.max_supernode = rc.max_supernode;
  return pc;
}

SchedulePlan make_plan(const CsrGraph& g, const RunConfig& rc) {
  return plan_chunks(g.n(), rc.chunk_size, rc.workers_per_node, rc.nodes, rc.concurrent_per_worker);
}

struct Outcome {
  FillStructure structure;
  SupernodePartition supernodes;
  EngineStats stats;
  BalanceReport balance;
  double fill_seconds = 0;
  double supernode_seconds = 0;
  double wall_seconds = 0;
};

FillStructure reference_structure(const CsrGraph& g, const std::string& algorithm) {
  if (algorithm == "fill1") return fill1_all(g);
  if (algorithm == "fill2") return fill2_all(g);
  return brute_force_fills(g);
}

Outcome compute(const CsrGraph& g, const RunConfig& rc) {
  const SchedulePlan plan = make_plan(g, rc);
  Outcome o;
  if (rc.algorithm == "gsofa") {
    PipelineResult r = run_pipeline(g, plan, pipeline_config(rc));
    o.balance = balance_report(r);
    o.structure = std::move(r.structure);
    o.supernodes = std::move(r.supernodes);
    o.stats = std::move(r.stats);
    o.fill_seconds = r.fill_seconds;
    o.supernode_seconds = r.supernode_seconds;
    o.wall_seconds = r.wall_seconds;
    return o;
  }
  if (rc.max_supernode == 0) throw InvalidConfig("maximum supernode size must be at least 1");
  const auto start = Clock::now();
  o.structure = reference_structure(g, rc.algorithm);
  o.fill_seconds = since(start);
  const auto detect = Clock::now();
  o.supernodes = detect_supernodes(o.structure, rc.max_supernode, rc.chunk_size);
  o.supernode_seconds = since(detect);
  o.wall_seconds = since(start);
  return o;
}

Json stats_json(const CsrGraph& g, const RunConfig& rc, const Outcome& o) {
  Json j;
  j["algorithm"] = rc.algorithm;
  j["n"] = g.n();
  j["nnz_input"] = g.nnz();
  j["nnz_structure"] = o.structure.nnz();
  j["fills"] = fill_count(o.structure, g);
  j["supernodes"] = o.supernodes.size();
  j["max_supernode_rows"] = o.supernodes.max_block_size();
  j["traversed_edges"] = o.stats.traversed_edges;
  j["iterations"] = o.stats.iterations;
  j["maxid_updates"] = o.stats.maxid_updates;
  j["frontier_insertions"] = o.stats.frontier_insertions;
  j["spill_events"] = o.stats.spill_events;
  j["entries_spilled"] = o.stats.entries_spilled;
  j["entries_reloaded"] = o.stats.entries_reloaded;
  j["high_water_mark"] = o.stats.high_water_mark;
  j["effective_concurrency"] = o.stats.effective_concurrency;
  j["epoch_reinitializations"] = o.stats.epoch_reinitializations;
  j["fill_seconds"] = o.fill_seconds;
  j["supernode_seconds"] = o.supernode_seconds;
  j["wall_seconds"] = o.wall_seconds;
  j["teps"] = o.balance.teps;
  j["per_worker_edges"] = o.balance.per_worker_edges;
  j["max_min_ratio"] = std::isfinite(o.balance.max_min_ratio) ? Json(o.balance.max_min_ratio) : Json(nullptr);
  return j;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  return f;
}

bool emits(const RunConfig& rc, const char* what) { return rc.emit == "all" || rc.emit == what; }

int factorize(const std::string& matrix, std::string prefix, const RunConfig& rc, std::ostream& out) {
  const CsrGraph g = load_input(matrix, rc);
  const Outcome o = compute(g, rc);
  if (prefix.empty()) prefix = std::filesystem::path(matrix).replace_extension().string();
  if (emits(rc, "structure")) {
    auto f = open_output(prefix + ".structure");
    write_structure_text(f, o.structure);
    auto fills = open_output(prefix + ".fills");
    for (const auto& [i, j] : fill_entries(o.structure, g)) fills << i << ' ' << j << '\n';
    out << "wrote " << prefix << ".structure and " << prefix << ".fills\n";
  }
  if (emits(rc, "supernodes")) {
    auto f = open_output(prefix + ".supernodes");
    write_supernodes(f, o.supernodes);
    out << "wrote " << prefix << ".supernodes\n";
  }
  const Json stats = stats_json(g, rc, o);
  if (emits(rc, "stats")) {
    auto f = open_output(prefix + ".stats.json");
    f << stats.dump(2) << '\n';
    out << "wrote " << prefix << ".stats.json\n";
  }
  out << rc.algorithm << ": n=" << g.n() << " nnz=" << g.nnz() << " fills=" << stats["fills"]
      << " supernodes=" << o.supernodes.size() << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::optional<std::string> matrix;
  vertex_t random_n = 48;
  std::size_t count = 1;
  double degree = 3;
  bool inject_fault = false;
};

void corrupt_row(FillStructure& fs, std::uint64_t seed, std::ostream& out) {
  std::mt19937_64 rng(seed);
  const vertex_t n = fs.n();
  if (n < 2) return;
  const vertex_t r = static_cast<vertex_t>(rng() % n);
  std::vector<vertex_t> lower(fs.lower(r).begin(), fs.lower(r).end());
  std::vector<vertex_t> upper(fs.upper(r).begin(), fs.upper(r).end());
  if (!upper.empty()) {
    upper.erase(upper.begin() + static_cast<std::ptrdiff_t>(rng() % upper.size()));
  } else if (!lower.empty()) {
    lower.erase(lower.begin() + static_cast<std::ptrdiff_t>(rng() % lower.size()));
  } else {
    (r + 1 < n ? upper : lower).push_back(r + 1 < n ? r + 1 : r - 1);
  }
  fs.set_row(r, std::move(lower), std::move(upper));
  out << "injected fault in row " << r << '\n';
}

std::string first_difference(const SupernodePartition& expected, const SupernodePartition& actual) {
  const auto a = expected.leaders();
  const auto b = actual.leaders();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  std::ostringstream s;
  s << "leaders differ at block " << k << ": expected "
    << (k < a.size() ? std::to_string(a[k]) : std::string("end")) << ", got "
    << (k < b.size() ? std::to_string(b[k]) : std::string("end"));
  return s.str();
}

bool verify_graph(const CsrGraph& g, const RunConfig& rc, const VerifyOptions& vo, std::uint64_t seed,
                  const std::string& label, std::ostream& out) {
  const FillStructure oracle = brute_force_fills(g);
  RunConfig gs = rc;
  gs.algorithm = "gsofa";
  Outcome engine = compute(g, gs);
  if (vo.inject_fault) corrupt_row(engine.structure, seed, out);

  bool ok = true;
  auto check = [&](const char* name, const FillStructure& fs) {
    const auto diffs = compare_structures(oracle, fs);
    if (diffs.empty()) return;
    ok = false;
    out << "FAIL " << label << ": " << name << " differs from oracle\n" << describe(diffs);
  };
  check("fill1", fill1_all(g));
  check("fill2", fill2_all(g));
  check("gsofa", engine.structure);

  const SupernodePartition sequential = sequential_supernodes(oracle, rc.max_supernode, rc.chunk_size);
  auto check_partition = [&](const char* name, const SupernodePartition& p) {
    if (p == sequential) return;
    ok = false;
    out << "FAIL " << label << ": " << name << " supernodes differ from the sequential scan; "
        << first_difference(sequential, p) << '\n';
  };
  check_partition("chunked", detect_supernodes(oracle, rc.max_supernode, rc.chunk_size));
  if (compare_structures(oracle, engine.structure).empty()) check_partition("pipeline", engine.supernodes);
  return ok;
}

int verify(const VerifyOptions& vo, const RunConfig& rc, std::ostream& out) {
  std::size_t failures = 0;
  std::size_t cases = 0;
  if (vo.matrix) {
    cases = 1;
    failures += verify_graph(load_input(*vo.matrix, rc), rc, vo, rc.seed, *vo.matrix, out) ? 0 : 1;
  } else {
    if (vo.random_n == 0) throw InvalidConfig("--random needs at least one vertex");
    for (std::size_t k = 0; k < vo.count; ++k) {
      const std::uint64_t seed = rc.seed + k;
      const CsrGraph g = random_degree_pattern(vo.random_n, vo.degree, seed);
      failures += verify_graph(g, rc, vo, seed, "seed " + std::to_string(seed), out) ? 0 : 1;
      ++cases;
    }
  }
  if (failures != 0) {
    out << "verify: " << failures << " of " << cases << " matrices failed\n";
    return kExitMismatch;
  }
  out << "verify: " << cases << " matrices passed; fill1, fill2, gsofa and oracle agree, supernodes match\n";
  return kExitOk;
}

struct BenchOptions {
  std::string matrix;
  std::size_t runs = 3;
  bool budget_sweep = false;
  std::string output;
};

int bench(const BenchOptions& bo, const RunConfig& rc, std::ostream& out) {
  if (rc.algorithm != "gsofa") throw InvalidConfig("bench measures the gsofa engine only");
  if (bo.runs == 0) throw InvalidConfig("--runs must be at least 1");
  const CsrGraph g = load_input(bo.matrix, rc);
  std::vector<Outcome> runs;
  Json run_teps = Json::array();
  double fill = 0, supernode = 0, wall = 0;
  for (std::size_t k = 0; k < bo.runs; ++k) {
    runs.push_back(compute(g, rc));
    const Outcome& o = runs.back();
    if (!(o.structure == runs.front().structure)) throw InvariantViolation("repeated runs produced different structures");
    fill += o.fill_seconds;
    supernode += o.supernode_seconds;
    wall += o.wall_seconds;
    run_teps.push_back(o.balance.teps);
  }
  const Outcome& first = runs.front();
  const double runs_d = static_cast<double>(bo.runs);
  Json j;
  j["algorithm"] = "gsofa";
  j["runs"] = bo.runs;
  j["n"] = g.n();
  j["nnz_input"] = g.nnz();
  j["traversed_edges"] = first.stats.traversed_edges;
  j["fills"] = fill_count(first.structure, g);
  j["supernodes"] = first.supernodes.size();
  j["iterations"] = first.stats.iterations;
  j["spill_events"] = first.stats.spill_events;
  j["high_water_mark"] = first.stats.high_water_mark;
  j["effective_concurrency"] = first.stats.effective_concurrency;
  j["fill_seconds"] = fill / runs_d;
  j["supernode_seconds"] = supernode / runs_d;
  j["wall_seconds"] = wall / runs_d;
  j["teps"] = fill > 0 ? static_cast<double>(first.stats.traversed_edges) / (fill / runs_d) : 0.0;
  j["run_teps"] = run_teps;
  j["per_worker_edges"] = first.balance.per_worker_edges;
  j["max_min_ratio"] =
      std::isfinite(first.balance.max_min_ratio) ? Json(first.balance.max_min_ratio) : Json(nullptr);
  Json insertions = Json::array();
  for (const SourceProfile& p : first.balance.profile) insertions.push_back(p.insertions);
  j["frontier_insertions_per_source"] = insertions;

  if (bo.budget_sweep) {
    Json sweep = Json::array();
    const std::uint64_t high = first.stats.high_water_mark;
    for (std::uint64_t budget : {std::uint64_t{0}, high / 4, high / 16}) {
      RunConfig swept = rc;
      swept.budget_bytes = budget;
      Json entry;
      entry["budget_bytes"] = budget;
      try {
        const Outcome o = compute(g, swept);
        entry["identical"] = o.structure == first.structure;
        entry["spill_events"] = o.stats.spill_events;
        entry["effective_concurrency"] = o.stats.effective_concurrency;
      } catch (const ConfigurationInfeasible& e) {
        entry["infeasible"] = e.what();
      }
      sweep.push_back(entry);
    }
    j["budget_sweep"] = sweep;
  }

  if (!bo.output.empty()) {
    auto f = open_output(bo.output);
    f << j.dump(2) << '\n';
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct GenerateOptions {
  vertex_t n = 0;
  double degree = 4;
  std::optional<double> density;
  std::uint64_t seed = 0;
  std::string output;
};

int generate(const GenerateOptions& go, std::ostream& out) {
  const CsrGraph g =
      go.density ? random_pattern(go.n, *go.density, go.seed) : random_degree_pattern(go.n, go.degree, go.seed);
  if (go.output.empty() || go.output == "-") {
    write_matrix_market(out, g);
  } else {
    auto f = open_output(go.output);
    write_matrix_market(f, g);
  }
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvariantViolation*>(&e) != nullptr) return kExitInvariant;
  if (dynamic_cast<const InvalidConfig*>(&e) != nullptr || dynamic_cast<const ConfigurationInfeasible*>(&e) != nullptr ||
      dynamic_cast<const ArenaExhausted*>(&e) != nullptr) {
    return kExitConfig;
  }
  return kExitInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic LU factorization: fill-in structure and supernodes of sparse matrices", "symfill"};
  app.require_subcommand(1);
  RunConfig rc;

  std::string factorize_matrix, factorize_prefix;
  auto* fact = app.add_subcommand("factorize", "Compute the L+U structure, supernodes and stats");
  fact->add_option("matrix", factorize_matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  fact->add_option("-o,--output", factorize_prefix, "Output file prefix (default: the matrix path)");
  add_run_options(fact, rc);

  VerifyOptions vo;
  auto* ver = app.add_subcommand("verify", "Check every algorithm against the brute-force oracle");
  ver->add_option("matrix", vo.matrix, "Matrix Market file")->check(CLI::ExistingFile);
  auto* random = ver->add_option("--random", vo.random_n, "Verify generated matrices of this order instead");
  ver->add_option("--count", vo.count, "Generated matrices, seeds --seed onwards")->needs(random)->capture_default_str();
  ver->add_option("--degree", vo.degree, "Mean off-diagonal entries per row of generated matrices")
      ->needs(random)
      ->capture_default_str();
  ver->add_flag("--inject-fault", vo.inject_fault, "Corrupt one row of the engine result (negative control)");
  add_run_options(ver, rc);

  BenchOptions bo;
  auto* ben = app.add_subcommand("bench", "Time the engine and report TEPS and balance");
  ben->add_option("matrix", bo.matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  ben->add_option("--runs", bo.runs, "Timed runs to average")->capture_default_str();
  ben->add_flag("--budget-sweep", bo.budget_sweep, "Also run at 1/4 and 1/16 of the high-water mark");
  ben->add_option("-o,--output", bo.output, "Also write the JSON report here");
  add_run_options(ben, rc);

  GenerateOptions go;
  auto* gen = app.add_subcommand("generate", "Write a random sparse pattern as Matrix Market");
  gen->add_option("-n,--order", go.n, "Matrix order")->required();
  gen->add_option("--degree", go.degree, "Mean off-diagonal entries per row")->capture_default_str();
  gen->add_option("--density", go.density, "Bernoulli density instead of a mean degree");
  gen->add_option("--seed", go.seed, "Random seed")->capture_default_str();
  gen->add_option("-o,--output", go.output, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (vo.matrix && ver->count("--random") > 0) throw InvalidConfig("verify takes a matrix or --random, not both");
    if (*fact) return factorize(factorize_matrix, factorize_prefix, rc, out);
    if (*ver) return verify(vo, rc, out);
    if (*ben) return bench(bo, rc, out);
    return generate(go, out);
  } catch (const std::exception& e) {
    err << "symfill: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace symfill::cli
