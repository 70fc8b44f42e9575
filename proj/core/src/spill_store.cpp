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
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <utility>

#include "symfill/frontier.hpp"

namespace symfill {
namespace {

[[noreturn]] void io_failure(const std::string& what, const std::string& path) {
  throw SpillIOError(what + " spill file '" + path + "': " + std::strerror(errno));
}

}  // namespace

std::uint64_t entry_digest(const FrontierEntry& e) noexcept {
  std::uint64_t z = (std::uint64_t{e.slot} << 32 | e.vertex) + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SpillStore::SpillStore(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  file_ = std::fopen(path_.c_str(), "w+b");
  if (file_ == nullptr) io_failure("cannot open", path_);
}

SpillStore::~SpillStore() { close(); }

SpillStore::SpillStore(SpillStore&& other) noexcept { *this = std::move(other); }

SpillStore& SpillStore::operator=(SpillStore&& other) noexcept {
  if (this == &other) return *this;
  close();
  path_ = std::exchange(other.path_, {});
  file_ = std::exchange(other.file_, nullptr);
  read_pos_ = std::exchange(other.read_pos_, 0);
  memory_ = std::move(other.memory_);
  size_ = std::exchange(other.size_, 0);
  spill_events_ = std::exchange(other.spill_events_, 0);
  entries_spilled_ = std::exchange(other.entries_spilled_, 0);
  entries_reloaded_ = std::exchange(other.entries_reloaded_, 0);
  spilled_digest_ = std::exchange(other.spilled_digest_, 0);
  reloaded_digest_ = std::exchange(other.reloaded_digest_, 0);
  return *this;
}

void SpillStore::close() noexcept {
  if (file_ == nullptr) return;
  std::fclose(file_);
  std::remove(path_.c_str());
  file_ = nullptr;
}

void SpillStore::spill(std::span<const FrontierEntry> entries) {
  if (entries.empty()) return;
  if (file_ != nullptr) {
    if (std::fseek(file_, 0, SEEK_END) != 0) io_failure("cannot seek", path_);
    if (std::fwrite(entries.data(), sizeof(FrontierEntry), entries.size(), file_) != entries.size()) {
      io_failure("cannot write", path_);
    }
  } else {
    memory_.insert(memory_.end(), entries.begin(), entries.end());
  }
  size_ += entries.size();
  ++spill_events_;
  entries_spilled_ += entries.size();
  for (const FrontierEntry& e : entries) spilled_digest_ += entry_digest(e);
}

std::vector<FrontierEntry> SpillStore::reload(std::size_t max_entries) {
  const std::size_t count = std::min(max_entries, size_);
  std::vector<FrontierEntry> out(count);
  if (count == 0) return out;
  if (file_ != nullptr) {
    if (std::fseek(file_, static_cast<long>(read_pos_), SEEK_SET) != 0) io_failure("cannot seek", path_);
    if (std::fread(out.data(), sizeof(FrontierEntry), count, file_) != count) io_failure("cannot read", path_);
    read_pos_ += count * sizeof(FrontierEntry);
  } else {
    std::copy_n(memory_.begin(), count, out.begin());
    memory_.erase(memory_.begin(), memory_.begin() + static_cast<std::ptrdiff_t>(count));
  }
  size_ -= count;
  entries_reloaded_ += count;
  for (const FrontierEntry& e : out) reloaded_digest_ += entry_digest(e);
  if (size_ == 0 && file_ != nullptr) {
    // Drained: start over so the file does not grow across iterations.
    read_pos_ = 0;
    file_ = std::freopen(path_.c_str(), "w+b", file_);
    if (file_ == nullptr) io_failure("cannot truncate", path_);
  }
  return out;
}

}  // namespace symfill
