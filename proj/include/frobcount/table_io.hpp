#pragma once

// CSV persistence for trace tables, with a key=value sidecar carrying the
// scan configuration and a content hash of the CSV bytes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "frobcount/census.hpp"

namespace frobcount {

inline constexpr const char* kTableHeader = "norm,p,f,a1,a2,d1,d2,flags";

/// Header line plus one line per record; empty cells where a curve has bad reduction.
std::string table_to_csv(const TraceTable& t);

/// Inverse of table_to_csv for the records; meta is left default. Throws ParseError.
std::vector<TraceRecord> records_from_csv(const std::string& text);

std::string meta_to_text(const TableMeta& meta, std::uint64_t content_hash);

/// Key/value pairs of a sidecar file. Throws ParseError.
std::map<std::string, std::string> parse_key_values(const std::string& text);

std::uint64_t content_hash(const std::string& csv);

/// Writes path and path.meta.
void save_table(const TraceTable& t, const std::filesystem::path& path);

/// Throws MissingTable when either file is absent, CacheInvalid when the hash disagrees.
TraceTable load_table(const std::filesystem::path& path);

std::filesystem::path meta_path(const std::filesystem::path& table_path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace frobcount
