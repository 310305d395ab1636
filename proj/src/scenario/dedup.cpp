#include "fmutest/scenario/dedup.hpp"

#include <fstream>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"

namespace fmutest::scenario {

HashIndex::HashIndex(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto kind = parse_item_kind(j.at("kind").get<std::string>());
      if (!kind) throw std::runtime_error("unknown kind");
      HashEntry e{j.at("digest").get<std::string>(), j.at("id").get<std::string>(), *kind};
      by_digest_.emplace(std::pair{e.kind, e.digest}, e.id);
      entries_.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw Error(Errc::IoError, path_.string() + ":" + std::to_string(lineno) +
                                     ": bad hash-index line (" + ex.what() + ")");
    }
  }
}

std::optional<std::string> HashIndex::find(ItemKind kind, const std::string& digest) const {
  auto it = by_digest_.find({kind, digest});
  if (it == by_digest_.end()) return std::nullopt;
  return it->second;
}

void HashIndex::append(const HashEntry& entry) {
  // The first id recorded for a digest stays authoritative.
  by_digest_.emplace(std::pair{entry.kind, entry.digest}, entry.id);
  entries_.push_back(entry);
  if (!path_.empty()) {
    append_line(path_, canonical_dump(nlohmann::json{{"digest", entry.digest},
                                                     {"id", entry.id},
                                                     {"kind", std::string(to_string(entry.kind))}}));
  }
}

std::vector<std::string> HashIndex::ids(ItemKind kind) const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.kind == kind) out.push_back(e.id);
  }
  return out;
}

namespace {

template <class T>
DedupResult<T> dedup_impl(std::vector<T> items, HashIndex& index, ItemKind kind) {
  DedupResult<T> result;
  for (auto& item : items) {
    const std::string digest = canonical_digest(item).hex64;
    if (auto existing = index.find(kind, digest)) {
      result.duplicates.emplace_back(std::move(item), *existing);
      continue;
    }
    index.append({digest, item.id, kind});
    result.accepted.push_back(std::move(item));
  }
  return result;
}

}  // namespace

DedupResult<ScenarioGoal> dedup(std::vector<ScenarioGoal> items, HashIndex& index) {
  return dedup_impl(std::move(items), index, ItemKind::Goal);
}

DedupResult<ScenarioPlan> dedup(std::vector<ScenarioPlan> items, HashIndex& index) {
  return dedup_impl(std::move(items), index, ItemKind::Plan);
}

}  // namespace fmutest::scenario
