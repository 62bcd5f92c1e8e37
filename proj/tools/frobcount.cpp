#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "frobcount/cache.hpp"
#include "frobcount/census.hpp"
#include "frobcount/config.hpp"
#include "frobcount/error.hpp"
#include "frobcount/galois_lab.hpp"
#include "frobcount/named_curves.hpp"
#include "frobcount/report.hpp"
#include "frobcount/table_io.hpp"

using namespace frobcount;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadReduction = 2;
constexpr int kExitUsage = 64;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonSquarefreeDisc:
    case ErrorCode::InvalidDisc:
    case ErrorCode::FieldMismatch:
    case ErrorCode::BeyondScan:
    case ErrorCode::BadAlphaPair:
    case ErrorCode::DomainTooSmall:
    case ErrorCode::EllTooLarge:
    case ErrorCode::EllDividesBoth:
    case ErrorCode::ZeroDet:
    case ErrorCode::MissingTable:
    case ErrorCode::CutoffExceeded:
    case ErrorCode::DegreeTooHigh:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

std::optional<i128> optional_i128(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_i128(text);
}

struct PairArgs {
  std::string curve1, curve2, field = "Q", cond1, cond2;
  std::uint64_t seed = 0;
  std::uint64_t naive_cutoff = kDefaultNaiveCutoff;
  std::optional<std::uint64_t> degree_two_bound;
  std::uint64_t block_size = 1u << 20;
  int workers = 1;
  std::string cache_dir;

  void add_to(CLI::App* cmd, bool curves_required) {
    auto* c1 = cmd->add_option("--curve1", curve1, "First curve: [a1,a2,a3,a4,a6] or a label such as 11a1");
    auto* c2 = cmd->add_option("--curve2", curve2, "Second curve");
    if (curves_required) {
      c1->required();
      c2->required();
    }
    cmd->add_option("--field", field, "Base field: Q or Q(sqrt D)")->capture_default_str();
    cmd->add_option("--cond1", cond1, "Conductor norm of the first curve (default: |disc| or the label's conductor)");
    cmd->add_option("--cond2", cond2, "Conductor norm of the second curve");
    cmd->add_option("--seed", seed, "Seed for the point-counting draws")->capture_default_str();
    cmd->add_option("--naive-cutoff", naive_cutoff, "Primes below this use the character-sum count")
        ->capture_default_str();
    cmd->add_option("--degree-two-bound", degree_two_bound,
                    "Census degree-two ideals up to this norm over quadratic fields (0 skips them)");
    cmd->add_option("--block-size", block_size, "Sieve block size")->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--cache-dir", cache_dir, "Cache root (default: $FROBCOUNT_CACHE_DIR or .frobcount-cache)");
  }

  NumberField number_field() const { return parse_field(field); }
  Curve first() const { return resolve_curve(curve1, number_field(), optional_i128(cond1)); }
  Curve second() const { return resolve_curve(curve2, number_field(), optional_i128(cond2)); }

  ScanOptions scan_options() const {
    ScanOptions o;
    o.workers = workers;
    o.block_size = block_size;
    o.trace.seed = seed;
    o.trace.naive_cutoff = naive_cutoff;
    o.degree_two_bound =
        degree_two_bound ? *degree_two_bound
                         : (number_field().kind() == FieldKind::Quadratic ? kDefaultDegreeTwoBound : 0);
    return o;
  }

  TableCache cache() const { return TableCache(cache_dir.empty() ? default_cache_root() : std::filesystem::path(cache_dir)); }
};

std::vector<double> parse_checkpoints(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad checkpoint '" + item + "'");
    }
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_alpha(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t u1 = 0, u2 = 0;
    const std::string s1 = text.substr(0, comma), s2 = text.substr(comma + 1);
    const long long a1 = std::stoll(s1, &u1), a2 = std::stoll(s2, &u2);
    if (u1 != s1.size() || u2 != s2.size()) throw std::invalid_argument(text);
    return {a1, a2};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "alpha must look like 'a1,a2', got '" + text + "'");
  }
}

int run_ap(const std::string& curve_text, const std::string& field_text, std::uint64_t prime,
           const std::string& cond, std::uint64_t seed) {
  const NumberField field = parse_field(field_text);
  const Curve curve = resolve_curve(curve_text, field, optional_i128(cond));
  if (!arith::is_prime(prime)) throw Error(ErrorCode::InvalidArgument, std::to_string(prime) + " is not prime");
  std::vector<PrimeIdeal> ideals = degree_one_ideals_above(field, prime);
  if (ideals.empty() && prime != 2) ideals.push_back(PrimeIdeal{prime, 2, prime * prime, std::nullopt, 0});
  if (ideals.empty()) throw Error(ErrorCode::DegreeTooHigh, "the inert ideal above 2 is not supported");
  TraceOptions opts;
  opts.seed = seed;
  bool any_bad = false;
  for (const auto& ideal : ideals) {
    std::cout << "p=" << ideal.p << " f=" << ideal.f << " norm=" << ideal.norm;
    if (ideal.root && field.kind() == FieldKind::Quadratic) std::cout << " root=" << *ideal.root;
    const auto outcome =
        ideal.f == 1 ? trace_of_frobenius(curve, ideal, opts) : trace_of_frobenius_degree_two(curve, ideal);
    if (std::holds_alternative<BadReduction>(outcome)) {
      std::cout << " bad reduction\n";
      any_bad = true;
      continue;
    }
    const auto& tv = std::get<TraceValue>(outcome);
    std::cout << " a=" << tv.a << " d=" << frobenius_field(tv.a, ideal.norm).d << '\n';
  }
  return any_bad ? kExitBadReduction : kExitOk;
}

int run_scan(const PairArgs& args, std::uint64_t x_max, const std::string& out, bool no_cache) {
  const Curve e1 = args.first(), e2 = args.second();
  const ScanOptions opts = args.scan_options();
  TraceTable table;
  std::string outcome = "disabled";
  if (no_cache) {
    table = scan_pair(e1, e2, x_max, opts);
  } else {
    TableCache cache = args.cache();
    CacheResult res = cache.fetch_or_scan(e1, e2, x_max, opts, &std::cerr);
    table = std::move(res.table);
    outcome = to_string(res.outcome);
  }
  if (!out.empty()) save_table(table, out);
  std::cout << "rows=" << table.records.size() << " x_max=" << table.meta.x_max << " cache=" << outcome
            << " trace_calls=" << table.stats.trace_calls << " naive=" << table.stats.naive
            << " bsgs=" << table.stats.bsgs << " exhaustive=" << table.stats.exhaustive
            << " fallbacks=" << table.stats.fallbacks << " bad=" << table.stats.bad
            << " filter_mode=" << table.meta.filter_mode << '\n';
  return kExitOk;
}

int run_report(const PairArgs& args, const std::string& table_path, std::optional<std::uint64_t> x_max,
               const std::string& checkpoints, ReportOptions opts, const std::string& out, const std::string& plot) {
  std::filesystem::path path = table_path;
  if (path.empty()) {
    if (args.curve1.empty() || args.curve2.empty()) {
      throw Error(ErrorCode::InvalidArgument, "report needs --table or both --curve1 and --curve2");
    }
    path = args.cache().table_path(TableCache::key(args.first(), args.second(), args.scan_options()));
  }
  const TraceTable table = load_table(path);
  const std::uint64_t limit = x_max.value_or(table.meta.x_max);
  if (limit > table.meta.x_max) {
    throw Error(ErrorCode::BeyondScan,
                "x_max " + std::to_string(limit) + " exceeds the scanned range " + std::to_string(table.meta.x_max));
  }
  opts.checkpoints = checkpoints.empty() ? default_checkpoints(limit) : parse_checkpoints(checkpoints);
  const Report rep = build_report(table, opts);
  const std::string csv = report_csv(rep);
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_file(out, csv);
    std::cout << "# verdict=" << to_string(rep.verdict.verdict) << '\n';
  }
  if (!plot.empty()) write_file(plot, report_svg(rep, table.meta.curve1 + " vs " + table.meta.curve2));
  return kExitOk;
}

int run_grouplab(const std::vector<std::uint32_t>& ells, const std::vector<std::string>& alpha_text,
                 const std::string& csv, bool serial) {
  std::vector<std::pair<std::int64_t, std::int64_t>> alphas;
  for (const auto& a : alpha_text) alphas.push_back(parse_alpha(a));
  const lab::LabReport rep = lab::run_lab(ells, alphas, lab::Exec{!serial});
  std::cout << lab::report_text(rep);
  if (!csv.empty()) write_file(csv, lab::report_csv(rep));
  return rep.all_pass() ? kExitOk : kExitFailure;
}

// Splices "--key=value" lines from --config files in right after the subcommand names,
// ahead of the flags typed on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& raw) {
  std::vector<std::string> head, rest, extra;
  std::size_t i = 0;
  while (i < raw.size() && !raw[i].empty() && raw[i][0] != '-') head.push_back(raw[i++]);
  for (; i < raw.size(); ++i) {
    std::string file;
    if (raw[i] == "--config" && i + 1 < raw.size()) {
      file = raw[++i];
    } else if (raw[i].rfind("--config=", 0) == 0) {
      file = raw[i].substr(9);
    } else {
      rest.push_back(raw[i]);
      continue;
    }
    const auto args = config_to_args(read_file(file));
    extra.insert(extra.end(), args.begin(), args.end());
  }
  head.insert(head.end(), extra.begin(), extra.end());
  head.insert(head.end(), rest.begin(), rest.end());
  return head;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius trace census for pairs of elliptic curves"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string ap_curve, ap_field = "Q", ap_cond;
  std::uint64_t ap_prime = 0, ap_seed = 0;
  auto* ap = app.add_subcommand("ap", "Trace of Frobenius and its kernel at one prime");
  ap->add_option("--curve", ap_curve, "[a1,a2,a3,a4,a6] or a label such as 11a1")->required();
  ap->add_option("--field", ap_field, "Base field: Q or Q(sqrt D)")->capture_default_str();
  ap->add_option("--prime,-p", ap_prime, "Rational prime")->required();
  ap->add_option("--cond", ap_cond, "Conductor norm hint");
  ap->add_option("--seed", ap_seed, "Seed for the point-counting draws");

  PairArgs scan_args;
  std::uint64_t scan_x = 0;
  std::string scan_out;
  bool scan_no_cache = false;
  auto* scan = app.add_subcommand("scan", "Scan a curve pair up to x_max and store the trace table");
  scan_args.add_to(scan, true);
  scan->add_option("--x-max", scan_x, "Largest prime norm")->required()->check(CLI::Range(11.0, 1e15));
  scan->add_option("--out", scan_out, "Also write the table (and .meta) here");
  scan->add_flag("--no-cache", scan_no_cache, "Scan without reading or writing the cache");

  PairArgs rep_args;
  std::string rep_table, rep_checkpoints, rep_out, rep_plot;
  std::optional<std::uint64_t> rep_x;
  ReportOptions rep_opts;
  auto* report = app.add_subcommand("report", "Counters, densities, envelopes and verdict from a scanned table");
  rep_args.add_to(report, false);
  report->add_option("--table", rep_table, "Table CSV written by scan --out");
  report->add_option("--x-max", rep_x, "Last checkpoint (default: the table's x_max)");
  report->add_option("--checkpoints", rep_checkpoints, "Comma-separated checkpoints instead of the default grid");
  report->add_option("--kappa-uncond", rep_opts.kappa_uncond, "Scale of the unconditional envelope")
      ->check(CLI::PositiveNumber);
  report->add_option("--kappa-grh", rep_opts.kappa_grh, "Scale of the GRH envelope")->check(CLI::PositiveNumber);
  report->add_option("--kappa-pcc", rep_opts.kappa_pcc, "Scale of the GRH+AHC+PCC envelope")
      ->check(CLI::PositiveNumber);
  report->add_option("--threshold", rep_opts.threshold, "Tail ratio above which the pair looks isogenous")
      ->capture_default_str();
  report->add_option("--min-primes", rep_opts.min_primes, "Fewest rows for a verdict")->capture_default_str();
  report->add_option("--out", rep_out, "Report CSV path (default: stdout)");
  report->add_option("--plot", rep_plot, "SVG plot path");

  std::vector<std::uint32_t> lab_ells = {3, 5, 7};
  std::vector<std::string> lab_alphas = {"1,1", "1,-1", "2,1", "1,0", "0,1"};
  std::string lab_csv;
  bool lab_serial = false;
  auto* grouplab = app.add_subcommand("grouplab", "Exhaustive checks of the pair-group sizes, classes and sets");
  grouplab->add_option("--ell", lab_ells, "Odd primes up to 13")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->capture_default_str();
  grouplab->add_option("--alpha", lab_alphas, "Coefficient pairs 'a1,a2' (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  grouplab->add_option("--csv", lab_csv, "Also write the report as CSV");
  grouplab->add_flag("--serial", lab_serial, "Use the single-threaded kernels");

  std::string cache_dir;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the table cache");
  cache_cmd->require_subcommand(1);
  cache_cmd->add_option("--cache-dir", cache_dir, "Cache root");
  auto* cache_list = cache_cmd->add_subcommand("list", "List cached tables");
  auto* cache_purge = cache_cmd->add_subcommand("purge", "Delete every cached table");
  cache_list->add_option("--cache-dir", cache_dir, "Cache root");
  cache_purge->add_option("--cache-dir", cache_dir, "Cache root");

  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ap) return run_ap(ap_curve, ap_field, ap_prime, ap_cond, ap_seed);
    if (*scan) return run_scan(scan_args, scan_x, scan_out, scan_no_cache);
    if (*report) return run_report(rep_args, rep_table, rep_x, rep_checkpoints, rep_opts, rep_out, rep_plot);
    if (*grouplab) return run_grouplab(lab_ells, lab_alphas, lab_csv, lab_serial);
    if (*cache_cmd) {
      TableCache cache(cache_dir.empty() ? default_cache_root() : std::filesystem::path(cache_dir));
      if (*cache_list) {
        for (const auto& e : cache.list()) {
          std::cout << e.key << "  " << e.curve1 << "  " << e.curve2 << "  " << e.field << "  x_max=" << e.x_max
                    << (e.valid ? "" : "  INVALID") << '\n';
        }
      } else if (*cache_purge) {
        std::cout << "removed " << cache.purge() << " table(s) from " << cache.root().string() << '\n';
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
