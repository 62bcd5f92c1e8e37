#include "frobcount/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "frobcount/error.hpp"
#include "frobcount/table_io.hpp"

namespace frobcount {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void say(std::ostream* log, const std::string& msg) {
  if (log) *log << "[cache] " << msg << '\n';
}

}  // namespace

std::string to_string(CacheOutcome outcome) {
  switch (outcome) {
    case CacheOutcome::Hit: return "hit";
    case CacheOutcome::Extended: return "extended";
    case CacheOutcome::Miss: return "miss";
    case CacheOutcome::Invalidated: return "invalidated";
  }
  return "?";
}

std::filesystem::path default_cache_root() {
  if (const char* env = std::getenv("FROBCOUNT_CACHE_DIR"); env && *env) return env;
  return ".frobcount-cache";
}

std::string TableCache::key(const Curve& e1, const Curve& e2, const ScanOptions& opts) {
  std::string text = e1.to_string() + '|' + e2.to_string() + '|' + e1.field.to_string() + '|';
  text += to_string(filter_conductor(e1)) + '|' + to_string(filter_conductor(e2)) + '|';
  text += (e1.cond_norm_hint ? "h" : "d");
  text += (e2.cond_norm_hint ? "h" : "d");
  const std::uint64_t d2 = e1.field.kind() == FieldKind::Quadratic ? opts.degree_two_bound : 0;
  text += '|' + std::to_string(d2) + '|' + std::to_string(opts.trace.naive_cutoff) + '|' +
          std::to_string(opts.trace.seed);
  return hex64(arith::fnv1a(text));
}

std::filesystem::path TableCache::table_path(const std::string& k) const { return root_ / k / "table.csv"; }

CacheResult TableCache::fetch_or_scan(const Curve& e1, const Curve& e2, std::uint64_t x_max,
                                      const ScanOptions& opts, std::ostream* log) {
  CacheResult res;
  const std::string k = key(e1, e2, opts);
  res.path = table_path(k);
  bool invalid = false;
  if (std::filesystem::exists(res.path)) {
    try {
      TraceTable stored = load_table(res.path);
      if (stored.meta.x_max >= x_max) {
        say(log, "hit " + k + " (stored x_max " + std::to_string(stored.meta.x_max) + ")");
        res.table = truncate_table(stored, x_max);
        res.outcome = CacheOutcome::Hit;
        return res;
      }
      say(log, "extending " + k + " from " + std::to_string(stored.meta.x_max) + " to " + std::to_string(x_max));
      extend_scan(stored, e1, e2, x_max, opts);
      save_table(stored, res.path);
      res.table = std::move(stored);
      res.outcome = CacheOutcome::Extended;
      return res;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CacheInvalid && e.code() != ErrorCode::MissingTable) throw;
      say(log, "warning: " + std::string(e.what()) + "; recomputing");
      invalid = true;
    }
  }
  if (!invalid) say(log, "miss " + k + ", scanning to " + std::to_string(x_max));
  res.table = scan_pair(e1, e2, x_max, opts);
  save_table(res.table, res.path);
  res.outcome = invalid ? CacheOutcome::Invalidated : CacheOutcome::Miss;
  return res;
}

std::vector<CacheEntry> TableCache::list() const {
  std::vector<CacheEntry> out;
  if (!std::filesystem::is_directory(root_)) return out;
  for (const auto& dir : std::filesystem::directory_iterator(root_)) {
    if (!dir.is_directory()) continue;
    const auto path = dir.path() / "table.csv";
    if (!std::filesystem::exists(meta_path(path))) continue;
    CacheEntry e;
    e.key = dir.path().filename().string();
    try {
      const auto kv = parse_key_values(read_file(meta_path(path)));
      auto get = [&](const char* name) {
        auto it = kv.find(name);
        return it == kv.end() ? std::string() : it->second;
      };
      e.curve1 = get("curve1");
      e.curve2 = get("curve2");
      e.field = get("field");
      e.x_max = std::stoull(get("x_max"));
      load_table(path);
    } catch (const std::exception&) {
      e.valid = false;
    }
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) { return a.key < b.key; });
  return out;
}

std::size_t TableCache::purge() {
  std::size_t removed = 0;
  if (!std::filesystem::is_directory(root_)) return 0;
  std::vector<std::filesystem::path> dirs;
  for (const auto& dir : std::filesystem::directory_iterator(root_)) {
    if (dir.is_directory() && std::filesystem::exists(dir.path() / "table.csv.meta")) dirs.push_back(dir.path());
  }
  for (const auto& d : dirs) {
    std::filesystem::remove_all(d);
    ++removed;
  }
  return removed;
}

}  // namespace frobcount
