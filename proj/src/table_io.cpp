#include "frobcount/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frobcount/error.hpp"

namespace frobcount {

namespace {

std::string cell(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = line.find(sep, start);
    parts.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

std::int64_t to_int(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
}

std::uint64_t to_uint(const std::string& s, std::size_t line_no) {
  const std::int64_t v = to_int(s, line_no);
  if (v < 0) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": negative value '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

std::optional<std::int64_t> opt_int(const std::string& s, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  return to_int(s, line_no);
}

const std::string& required(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorCode::CacheInvalid, "metadata lacks '" + key + "'");
  return it->second;
}

}  // namespace

std::string table_to_csv(const TraceTable& t) {
  std::string out = kTableHeader;
  out += '\n';
  for (const auto& r : t.records) {
    out += std::to_string(r.norm);
    out += ',' + std::to_string(r.p);
    out += ',' + std::to_string(r.f);
    out += ',' + cell(r.a1);
    out += ',' + cell(r.a2);
    out += ',' + cell(r.d1);
    out += ',' + cell(r.d2);
    out += ',' + flags_to_string(r.flags);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTableHeader) {
    throw Error(ErrorCode::ParseError, "line 1: expected header '" + std::string(kTableHeader) + "'");
  }
  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 8) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 8 fields, got " +
                                             std::to_string(cells.size()));
    }
    TraceRecord r;
    r.norm = to_uint(cells[0], line_no);
    r.p = to_uint(cells[1], line_no);
    r.f = static_cast<int>(to_int(cells[2], line_no));
    r.a1 = opt_int(cells[3], line_no);
    r.a2 = opt_int(cells[4], line_no);
    r.d1 = opt_int(cells[5], line_no);
    r.d2 = opt_int(cells[6], line_no);
    r.flags = flags_from_string(cells[7]);
    records.push_back(r);
  }
  return records;
}

std::uint64_t content_hash(const std::string& csv) { return arith::fnv1a(csv); }

std::string meta_to_text(const TableMeta& m, std::uint64_t hash) {
  std::ostringstream out;
  out << "curve1=" << m.curve1 << '\n'
      << "curve2=" << m.curve2 << '\n'
      << "field=" << m.field << '\n'
      << "x_max=" << m.x_max << '\n'
      << "filter_mode=" << m.filter_mode << '\n'
      << "cond1=" << to_string(m.cond1) << '\n'
      << "cond2=" << to_string(m.cond2) << '\n'
      << "seed=" << m.seed << '\n'
      << "naive_cutoff=" << m.naive_cutoff << '\n'
      << "degree_two_bound=" << m.degree_two_bound << '\n'
      << "content_hash=";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  out << buf << '\n';
  return out.str();
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::filesystem::path meta_path(const std::filesystem::path& table_path) {
  std::filesystem::path p = table_path;
  p += ".meta";
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingTable, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + path.string());
}

void save_table(const TraceTable& t, const std::filesystem::path& path) {
  const std::string csv = table_to_csv(t);
  write_file(path, csv);
  write_file(meta_path(path), meta_to_text(t.meta, content_hash(csv)));
}

TraceTable load_table(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path) || !std::filesystem::exists(meta_path(path))) {
    throw Error(ErrorCode::MissingTable, "no table at " + path.string());
  }
  const std::string csv = read_file(path);
  std::map<std::string, std::string> kv;
  try {
    kv = parse_key_values(read_file(meta_path(path)));
  } catch (const Error& e) {
    throw Error(ErrorCode::CacheInvalid, std::string("unreadable metadata: ") + e.what());
  }
  std::uint64_t stored = 0;
  try {
    stored = std::stoull(required(kv, "content_hash"), nullptr, 16);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::CacheInvalid, "malformed content hash in " + meta_path(path).string());
  }
  if (stored != content_hash(csv)) throw Error(ErrorCode::CacheInvalid, "content hash mismatch for " + path.string());

  TraceTable t;
  try {
    t.records = records_from_csv(csv);
    t.meta.curve1 = required(kv, "curve1");
    t.meta.curve2 = required(kv, "curve2");
    t.meta.field = required(kv, "field");
    t.meta.x_max = std::stoull(required(kv, "x_max"));
    t.meta.filter_mode = required(kv, "filter_mode");
    t.meta.cond1 = parse_i128(required(kv, "cond1"));
    t.meta.cond2 = parse_i128(required(kv, "cond2"));
    t.meta.seed = std::stoull(required(kv, "seed"));
    t.meta.naive_cutoff = std::stoull(required(kv, "naive_cutoff"));
    t.meta.degree_two_bound = std::stoull(required(kv, "degree_two_bound"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CacheInvalid) throw;
    throw Error(ErrorCode::CacheInvalid, std::string("corrupt table: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::CacheInvalid, std::string("corrupt metadata: ") + e.what());
  }
  return t;
}

}  // namespace frobcount
