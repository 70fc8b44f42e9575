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

#include "oracles.hpp"
#include "symfill/traversal.hpp"

namespace symfill {
namespace {

std::vector<vertex_t> sorted_vertices(const std::vector<FrontierEntry>& entries) {
  std::vector<vertex_t> out;
  for (const auto& e : entries) out.push_back(e.vertex);
  std::sort(out.begin(), out.end());
  return out;
}

class SourceEight : public ::testing::Test {
 protected:
  CsrGraph g = testing::trace_graph();
  StandaloneState standalone{10, {8}};
  TraversalState& state = standalone.state();
  WorkerLocal local;
};

TEST_F(SourceEight, InitEnqueuesLowerNeighbors) {
  const auto first = init_source(g, state, 0, local);
  EXPECT_EQ(sorted_vertices(first), (std::vector<vertex_t>{1, 2, 7}));
  for (vertex_t v : {1u, 2u, 7u}) EXPECT_EQ(state.max_id(0, v), 0u);
  for (vertex_t v : {1u, 2u, 7u, 9u}) EXPECT_TRUE(state.is_stamped(0, v));
  EXPECT_EQ(sorted_vertices(local.structure), (std::vector<vertex_t>{1, 2, 7, 9}));
}

TEST_F(SourceEight, RelaxCasesOfTheFirstTwoIterations) {
  init_source(g, state, 0, local);
  RelaxOutcome r = relax_neighbor(state, 0, 2, 3);
  EXPECT_TRUE(r.updated && r.new_fill && r.enqueue);
  EXPECT_EQ(state.max_id(0, 3), 2u);

  r = relax_neighbor(state, 0, 7, 4);
  EXPECT_TRUE(r.updated);
  EXPECT_FALSE(r.new_fill);
  EXPECT_TRUE(r.enqueue);
  EXPECT_EQ(state.max_id(0, 4), 7u);

  r = relax_neighbor(state, 0, 2, 5);
  EXPECT_TRUE(r.new_fill);
  r = relax_neighbor(state, 0, 1, 0);
  EXPECT_EQ(state.max_id(0, 0), 1u);

  // 5 -> 3 proposes max(2, 5) = 5, which loses to the stored 2.
  r = relax_neighbor(state, 0, 5, 3);
  EXPECT_FALSE(r.updated || r.new_fill || r.enqueue);
  EXPECT_EQ(state.max_id(0, 3), 2u);

  // 0 -> 5 lowers maxId(5) from 2 to 1, but 5 is already filled.
  r = relax_neighbor(state, 0, 0, 5);
  EXPECT_TRUE(r.updated);
  EXPECT_EQ(r.previous, 2u);
  EXPECT_EQ(r.next, 1u);
  EXPECT_FALSE(r.new_fill || r.enqueue);
}

TEST_F(SourceEight, FillFirstSkipsWriteToFilledNeighbor) {
  init_source(g, state, 0, local);
  relax_neighbor(state, 0, 2, 5);
  relax_neighbor(state, 0, 1, 0);
  const RelaxOutcome r = relax_neighbor_fill_first(state, 0, 0, 5);
  EXPECT_FALSE(r.updated || r.new_fill || r.enqueue);
  EXPECT_EQ(state.max_id(0, 5), 2u);
  // An unfilled neighbor behaves as in the default order.
  const RelaxOutcome u = relax_neighbor_fill_first(state, 0, 7, 4);
  EXPECT_TRUE(u.updated && u.enqueue && !u.new_fill);
}

TEST_F(SourceEight, UpperNeighborIsRecordedOnceAndNeverEnqueued) {
  StandaloneState s(10, {3});
  TraversalState& st = s.state();
  WorkerLocal l;
  init_source(g, st, 0, l);
  const RelaxOutcome first = relax_neighbor(st, 0, 0, 5);
  EXPECT_TRUE(first.new_fill);
  EXPECT_FALSE(first.enqueue || first.updated);
  EXPECT_FALSE(relax_neighbor(st, 0, 0, 5).new_fill);
}

TEST_F(SourceEight, BatchesFollowTheIterations) {
  const auto first = init_source(g, state, 0, local);
  local.structure.clear();
  const auto second = process_batch(g, state, first, local);
  EXPECT_EQ(sorted_vertices(second), (std::vector<vertex_t>{0, 3, 4, 5}));
  EXPECT_EQ(sorted_vertices(local.structure), (std::vector<vertex_t>{3, 5}));
  EXPECT_EQ(state.max_id(0, 0), 1u);
  EXPECT_EQ(state.max_id(0, 3), 2u);
  EXPECT_EQ(state.max_id(0, 4), 7u);
  EXPECT_EQ(state.max_id(0, 5), 2u);

  local.structure.clear();
  const auto third = process_batch(g, state, second, local);
  EXPECT_EQ(sorted_vertices(third), (std::vector<vertex_t>{4}));
  EXPECT_EQ(sorted_vertices(local.structure), (std::vector<vertex_t>{4}));
  EXPECT_EQ(state.max_id(0, 4), 3u);
  EXPECT_EQ(state.max_id(0, 5), 1u);

  EXPECT_TRUE(process_batch(g, state, third, local).empty());
  EXPECT_TRUE(process_batch(g, state, std::vector<FrontierEntry>{}, local).empty());
}

TEST(TraversalState, CheckedModeRejectsOutOfSliceAccess) {
  StandaloneState s(10, {4, 8}, true);
  TraversalState& st = s.state();
  EXPECT_THROW(st.max_id(0, 4), InvariantViolation);
  EXPECT_THROW(st.max_id(2, 0), InvariantViolation);
  EXPECT_THROW(st.is_stamped(0, 10), InvariantViolation);
  EXPECT_NO_THROW(st.max_id(1, 7));
}

TEST(TraversalState, SourceWithoutNeighborsHasEmptyFrontier) {
  const CsrGraph g = testing::trace_graph();
  StandaloneState s(10, {6, 0});
  WorkerLocal local;
  EXPECT_TRUE(init_source(g, s.state(), 0, local).empty());
  EXPECT_TRUE(local.structure.empty());
  EXPECT_TRUE(init_source(g, s.state(), 1, local).empty());
  EXPECT_EQ(sorted_vertices(local.structure), (std::vector<vertex_t>{5}));
}

TEST(TraversalState, StampWrapClearsMarks) {
  Arena arena;
  EpochCodec codec(4);
  TraversalState st(4);
  const std::vector<vertex_t> sources{3, 2};
  const ArenaLayout& l = arena.repartition(4, sources, 1, codec.sentinel(), true);
  st.set_next_stamp(std::numeric_limits<std::uint32_t>::max() - 2);
  st.begin_wave(sources, arena.view<std::uint32_t>(l.fill), arena.view<std::uint64_t>(l.maxid), l.maxid_offsets,
                codec);
  EXPECT_TRUE(st.try_stamp(1, 0));
  st.begin_wave(sources, arena.view<std::uint32_t>(l.fill), arena.view<std::uint64_t>(l.maxid), l.maxid_offsets,
                codec);
  EXPECT_EQ(st.stamp_resets(), 1u);
  EXPECT_EQ(st.stamp(0), 1u);
  for (slot_t s = 0; s < 2; ++s) {
    for (vertex_t v = 0; v < 4; ++v) EXPECT_FALSE(st.is_stamped(s, v));
  }
}

}  // namespace
}  // namespace symfill
