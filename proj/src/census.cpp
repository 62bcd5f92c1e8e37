#include "frobcount/census.hpp"

#include <algorithm>
#include <exception>

#include "frobcount/error.hpp"

namespace frobcount {

namespace {

constexpr const char* kFlagNames[] = {"BadReduction1", "BadReduction2", "DividesSix", "DividesCondHint",
                                      "HigherDegree"};

std::string filter_mode_of(const Curve& e1, const Curve& e2) {
  if (e1.cond_norm_hint && e2.cond_norm_hint) return "hint";
  if (!e1.cond_norm_hint && !e2.cond_norm_hint) return "disc";
  return "mixed";
}

bool divides(std::uint64_t p, i128 n) { return arith::reduce(n, p) == 0; }

// Ideals with norm in [lo, hi] in ideal_less order.
std::vector<PrimeIdeal> ideals_in_range(const NumberField& field, std::uint64_t lo, std::uint64_t hi,
                                        const ScanOptions& opts) {
  std::vector<PrimeIdeal> ideals = degree_one_primes(field, lo, hi, opts.block_size);
  if (opts.degree_two_bound > 0 && field.kind() == FieldKind::Quadratic) {
    auto two = degree_two_primes(field, lo, std::min(hi, opts.degree_two_bound));
    ideals.insert(ideals.end(), two.begin(), two.end());
    std::sort(ideals.begin(), ideals.end(), ideal_less);
  }
  return ideals;
}

struct PairContext {
  const Curve& e1;
  const Curve& e2;
  i128 cond1;
  i128 cond2;
  const ScanOptions& opts;
};

void note_backend(ScanStats& s, const TraceValue& tv) {
  switch (tv.backend) {
    case Backend::Naive: ++s.naive; break;
    case Backend::Bsgs: ++s.bsgs; break;
    case Backend::Exhaustive: ++s.exhaustive; break;
  }
  if (tv.fell_back) ++s.fallbacks;
}

TraceRecord make_record(const PairContext& ctx, const PrimeIdeal& ideal, ScanStats& stats) {
  TraceRecord r;
  r.norm = ideal.norm;
  r.p = ideal.p;
  r.f = ideal.f;
  r.root = ideal.root;
  r.branch = ideal.branch;
  if (ideal.p == 2 || ideal.p == 3) r.flags |= kDividesSix;
  if (divides(ideal.p, ctx.cond1) || divides(ideal.p, ctx.cond2)) r.flags |= kDividesCondHint;
  if (ideal.f >= 2) r.flags |= kHigherDegree;

  auto one = [&](const Curve& curve, std::optional<std::int64_t>& a, std::optional<std::int64_t>& d,
                 RecordFlag bad_flag) {
    ++stats.trace_calls;
    auto outcome = ideal.f == 1 ? trace_of_frobenius(curve, ideal, ctx.opts.trace)
                                : trace_of_frobenius_degree_two(curve, ideal);
    if (std::holds_alternative<BadReduction>(outcome)) {
      r.flags |= bad_flag;
      ++stats.bad;
      return;
    }
    const TraceValue& tv = std::get<TraceValue>(outcome);
    note_backend(stats, tv);
    a = tv.a;
    d = frobenius_field(tv.a, ideal.norm).d;
  };
  one(ctx.e1, r.a1, r.d1, kBadReduction1);
  one(ctx.e2, r.a2, r.d2, kBadReduction2);
  return r;
}

void check_pair(const Curve& e1, const Curve& e2) {
  if (!(e1.field == e2.field)) {
    throw Error(ErrorCode::FieldMismatch, e1.field.to_string() + " vs " + e2.field.to_string());
  }
}

TableMeta make_meta(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts) {
  TableMeta m;
  m.curve1 = e1.to_string();
  m.curve2 = e2.to_string();
  m.field = e1.field.to_string();
  m.x_max = x_max;
  m.filter_mode = filter_mode_of(e1, e2);
  m.cond1 = filter_conductor(e1);
  m.cond2 = filter_conductor(e2);
  m.seed = opts.trace.seed;
  m.naive_cutoff = opts.trace.naive_cutoff;
  m.degree_two_bound = e1.field.kind() == FieldKind::Quadratic ? opts.degree_two_bound : 0;
  return m;
}

std::vector<TraceRecord> scan_range_serial(const PairContext& ctx, const std::vector<PrimeIdeal>& ideals,
                                           ScanStats& stats) {
  std::vector<TraceRecord> out;
  out.reserve(ideals.size());
  for (const auto& ideal : ideals) out.push_back(make_record(ctx, ideal, stats));
  return out;
}

// Rows land in their ideal's slot, so the output order never depends on scheduling.
std::vector<TraceRecord> scan_range_parallel(const PairContext& ctx, const std::vector<PrimeIdeal>& ideals,
                                             ScanStats& stats) {
  std::vector<TraceRecord> out(ideals.size());
  const auto n = static_cast<std::int64_t>(ideals.size());
  std::uint64_t calls = 0, naive = 0, bsgs = 0, exhaustive = 0, fallbacks = 0, bad = 0;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64) num_threads(ctx.opts.workers) \
    reduction(+ : calls, naive, bsgs, exhaustive, fallbacks, bad)
  for (std::int64_t i = 0; i < n; ++i) {
    ScanStats local;
    try {
      out[static_cast<std::size_t>(i)] = make_record(ctx, ideals[static_cast<std::size_t>(i)], local);
    } catch (...) {
#pragma omp critical(frobcount_scan_error)
      if (!failure) failure = std::current_exception();
    }
    calls += local.trace_calls;
    naive += local.naive;
    bsgs += local.bsgs;
    exhaustive += local.exhaustive;
    fallbacks += local.fallbacks;
    bad += local.bad;
  }
  if (failure) std::rethrow_exception(failure);
  stats += ScanStats{calls, naive, bsgs, exhaustive, fallbacks, bad};
  return out;
}

TraceTable scan_impl(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts,
                     bool parallel) {
  check_pair(e1, e2);
  if (x_max < 11) throw Error(ErrorCode::InvalidArgument, "x_max must be at least 11");
  if (opts.workers < 1) throw Error(ErrorCode::InvalidArgument, "worker count must be at least 1");
  TraceTable t;
  t.meta = make_meta(e1, e2, x_max, opts);
  const PairContext ctx{e1, e2, t.meta.cond1, t.meta.cond2, opts};
  auto ideals = ideals_in_range(e1.field, 2, x_max, opts);
  t.records = parallel ? scan_range_parallel(ctx, ideals, t.stats) : scan_range_serial(ctx, ideals, t.stats);
  return t;
}

}  // namespace

std::string flags_to_string(std::uint8_t flags) {
  std::string s;
  for (int i = 0; i < 5; ++i) {
    if (!(flags & (1u << i))) continue;
    if (!s.empty()) s += ';';
    s += kFlagNames[i];
  }
  return s;
}

std::uint8_t flags_from_string(const std::string& text) {
  std::uint8_t flags = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string name = text.substr(start, end - start);
    bool known = false;
    for (int i = 0; i < 5; ++i) {
      if (name == kFlagNames[i]) {
        flags |= static_cast<std::uint8_t>(1u << i);
        known = true;
      }
    }
    if (!known) throw Error(ErrorCode::ParseError, "unknown flag '" + name + "'");
    start = end + 1;
  }
  return flags;
}

ScanStats& ScanStats::operator+=(const ScanStats& o) {
  trace_calls += o.trace_calls;
  naive += o.naive;
  bsgs += o.bsgs;
  exhaustive += o.exhaustive;
  fallbacks += o.fallbacks;
  bad += o.bad;
  return *this;
}

i128 filter_conductor(const Curve& curve) {
  if (curve.cond_norm_hint) return *curve.cond_norm_hint;
  return curve.disc_norm < 0 ? -curve.disc_norm : curve.disc_norm;
}

TraceTable scan_pair(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts) {
  return scan_impl(e1, e2, x_max, opts, true);
}

TraceTable scan_pair_serial(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts) {
  return scan_impl(e1, e2, x_max, opts, false);
}

void extend_scan(TraceTable& table, const Curve& e1, const Curve& e2, std::uint64_t new_x_max,
                 const ScanOptions& opts) {
  check_pair(e1, e2);
  table.stats = ScanStats{};
  if (new_x_max <= table.meta.x_max) return;
  const TableMeta fresh = make_meta(e1, e2, new_x_max, opts);
  if (fresh.curve1 != table.meta.curve1 || fresh.curve2 != table.meta.curve2 ||
      fresh.filter_mode != table.meta.filter_mode || fresh.degree_two_bound != table.meta.degree_two_bound) {
    throw Error(ErrorCode::InvalidArgument, "table was scanned with a different configuration");
  }
  const PairContext ctx{e1, e2, fresh.cond1, fresh.cond2, opts};
  auto ideals = ideals_in_range(e1.field, table.meta.x_max + 1, new_x_max, opts);
  auto rows = scan_range_parallel(ctx, ideals, table.stats);
  table.records.insert(table.records.end(), rows.begin(), rows.end());
  table.meta.x_max = new_x_max;
}

TraceTable truncate_table(const TraceTable& table, std::uint64_t x_max) {
  TraceTable t;
  t.meta = table.meta;
  t.meta.x_max = std::min(x_max, table.meta.x_max);
  for (const auto& r : table.records) {
    if (r.norm <= t.meta.x_max) t.records.push_back(r);
  }
  return t;
}

}  // namespace frobcount
