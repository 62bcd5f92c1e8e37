#pragma once

// On-disk store of trace tables keyed by the scan configuration. A request
// for a larger x_max extends the stored table in place.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "frobcount/census.hpp"

namespace frobcount {

enum class CacheOutcome { Hit, Extended, Miss, Invalidated };

std::string to_string(CacheOutcome outcome);

struct CacheResult {
  TraceTable table;
  CacheOutcome outcome = CacheOutcome::Miss;
  std::filesystem::path path;
};

struct CacheEntry {
  std::string key;
  std::string curve1;
  std::string curve2;
  std::string field;
  std::uint64_t x_max = 0;
  bool valid = true;
};

/// FROBCOUNT_CACHE_DIR when set, else ".frobcount-cache".
std::filesystem::path default_cache_root();

class TableCache {
 public:
  explicit TableCache(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }

  /// Hex digest of everything that determines the rows except x_max.
  static std::string key(const Curve& e1, const Curve& e2, const ScanOptions& opts);

  std::filesystem::path table_path(const std::string& key) const;

  /// Table truncated to x_max. Progress and warnings go to log when non-null.
  CacheResult fetch_or_scan(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts,
                            std::ostream* log = nullptr);

  std::vector<CacheEntry> list() const;

  /// Removes every stored table; returns how many were removed.
  std::size_t purge();

 private:
  std::filesystem::path root_;
};

}  // namespace frobcount
