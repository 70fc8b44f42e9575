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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <thread>

#include "symfill/frontier.hpp"

namespace symfill {
namespace {

std::vector<vertex_t> vertices(const std::vector<FrontierEntry>& entries) {
  std::vector<vertex_t> out;
  for (const auto& e : entries) out.push_back(e.vertex);
  return out;
}

TEST(FrontierBatch, AppendAtCapacitySpillsResidentEntries) {
  FrontierBatch batch(3);
  SpillStore spill;
  for (vertex_t v : {0u, 5u, 3u}) batch.append({v, 0}, spill);
  EXPECT_EQ(spill.spill_events(), 0u);
  batch.append({7, 0}, spill);
  EXPECT_EQ(vertices(batch.entries()), (std::vector<vertex_t>{7}));
  EXPECT_EQ(spill.size(), 3u);
  EXPECT_EQ(spill.spill_events(), 1u);
  // Resident 7 is handled first, then the spilled entries come back in order.
  batch.clear();
  EXPECT_EQ(reload_frontiers(spill, batch), 3u);
  EXPECT_EQ(vertices(batch.entries()), (std::vector<vertex_t>{0, 5, 3}));
  EXPECT_TRUE(spill.empty());
}

TEST(FrontierBatch, ReloadFromEmptyStoreIsNoOp) {
  FrontierBatch batch(4);
  SpillStore spill;
  EXPECT_EQ(reload_frontiers(spill, batch), 0u);
  EXPECT_TRUE(batch.empty());
}

TEST(FrontierBatch, ViewsArenaArrays) {
  std::vector<vertex_t> q(2);
  std::vector<slot_t> t(2);
  FrontierBatch batch(q, t);
  EXPECT_TRUE(batch.push({4, 1}));
  EXPECT_TRUE(batch.push({6, 0}));
  EXPECT_FALSE(batch.push({8, 0}));
  EXPECT_EQ(q, (std::vector<vertex_t>{4, 6}));
  EXPECT_EQ(t, (std::vector<slot_t>{1, 0}));
  std::vector<slot_t> short_t(1);
  EXPECT_THROW(FrontierBatch(q, short_t), DimensionError);
}

void conservation(SpillStore spill) {
  std::mt19937_64 rng(77);
  FrontierBatch batch(16);
  std::vector<FrontierEntry> appended, drained;
  for (int k = 0; k < 10000; ++k) {
    const FrontierEntry e{static_cast<vertex_t>(rng() % 1000), static_cast<slot_t>(rng() % 8)};
    appended.push_back(e);
    batch.append(e, spill);
    if (rng() % 50 == 0) {
      for (const auto& x : batch.entries()) drained.push_back(x);
      batch.clear();
      reload_frontiers(spill, batch);
    }
  }
  while (!batch.empty()) {
    for (const auto& x : batch.entries()) drained.push_back(x);
    batch.clear();
    reload_frontiers(spill, batch);
  }
  EXPECT_GT(spill.spill_events(), 0u);
  EXPECT_EQ(spill.entries_spilled(), spill.entries_reloaded());
  EXPECT_EQ(spill.spilled_digest(), spill.reloaded_digest());
  std::sort(appended.begin(), appended.end());
  std::sort(drained.begin(), drained.end());
  EXPECT_EQ(appended, drained);
}

TEST(SpillStore, InMemoryConservesEntries) { conservation(SpillStore()); }

TEST(SpillStore, FileBackedConservesEntries) {
  const auto path = std::filesystem::temp_directory_path() / "symfill_spill_test.bin";
  conservation(SpillStore(path.string()));
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(SpillStore, FifoOrder) {
  SpillStore spill;
  const std::vector<FrontierEntry> a{{1, 0}, {2, 0}}, b{{3, 1}};
  spill.spill(a);
  spill.spill(b);
  EXPECT_EQ(vertices(spill.reload(2)), (std::vector<vertex_t>{1, 2}));
  EXPECT_EQ(vertices(spill.reload(5)), (std::vector<vertex_t>{3}));
}

TEST(SpillStore, UnopenablePathFails) {
  EXPECT_THROW(SpillStore("/nonexistent-dir/for/spill.bin"), SpillIOError);
}

TEST(NextFrontier, ConcurrentAppendsAreAllKept) {
  FrontierBatch batch(100);
  SpillStore spill;
  NextFrontier next(batch, spill);
  std::vector<std::thread> threads;
  for (slot_t t = 0; t < 8; ++t) {
    threads.emplace_back([&next, t] {
      for (vertex_t v = 0; v < 500; ++v) {
        const FrontierEntry e{v, t};
        next.append({&e, 1});
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(batch.size() + spill.size(), 4000u);
}

TEST(SpillStore, DigestDetectsSubstitution) {
  SpillStore a, b;
  const std::vector<FrontierEntry> one{{1, 0}, {2, 1}, {3, 0}};
  const std::vector<FrontierEntry> other{{1, 0}, {2, 0}, {3, 1}};
  a.spill(one);
  b.spill(other);
  EXPECT_NE(a.spilled_digest(), b.spilled_digest());
  a.reload(2);
  EXPECT_NE(a.spilled_digest(), a.reloaded_digest());
  a.reload(1);
  EXPECT_EQ(a.spilled_digest(), a.reloaded_digest());
}

}  // namespace
}  // namespace symfill

