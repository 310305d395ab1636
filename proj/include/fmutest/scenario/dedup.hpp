#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmutest/scenario/canonical.hpp"
#include "fmutest/scenario/ids.hpp"
#include "fmutest/scenario/types.hpp"

namespace fmutest::scenario {

struct HashEntry {
  std::string digest;
  std::string id;
  ItemKind kind = ItemKind::Goal;
};

/// Append-only digest -> id index, optionally backed by a JSONL file
/// (one {digest, id, kind} object per line). Single writer.
class HashIndex {
 public:
  HashIndex() = default;
  /// Loads existing lines from `path` (if the file exists); later appends go there too.
  explicit HashIndex(std::filesystem::path path);

  [[nodiscard]] std::optional<std::string> find(ItemKind kind, const std::string& digest) const;
  void append(const HashEntry& entry);

  [[nodiscard]] const std::vector<HashEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::vector<std::string> ids(ItemKind kind) const;
  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::vector<HashEntry> entries_;
  std::map<std::pair<ItemKind, std::string>, std::string> by_digest_;
};

template <class T>
struct DedupResult {
  std::vector<T> accepted;
  /// (dropped item, id of the identical item already indexed)
  std::vector<std::pair<T, std::string>> duplicates;
};

/// Exact-match deduplication by canonical digest. Items must carry ids; the
/// accepted ones are appended to the index, so later items in the same batch
/// are checked against earlier ones.
DedupResult<ScenarioGoal> dedup(std::vector<ScenarioGoal> items, HashIndex& index);
DedupResult<ScenarioPlan> dedup(std::vector<ScenarioPlan> items, HashIndex& index);

}  // namespace fmutest::scenario
