#pragma once

// Prime scans over a pair of curves and the counting functions evaluated on
// the resulting trace tables.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobcount/ecpoint.hpp"
#include "frobcount/frobenius.hpp"
#include "frobcount/numfield.hpp"

namespace frobcount {

enum RecordFlag : std::uint8_t {
  kBadReduction1 = 1u << 0,
  kBadReduction2 = 1u << 1,
  kDividesSix = 1u << 2,
  kDividesCondHint = 1u << 3,
  kHigherDegree = 1u << 4,
};

/// Semicolon-joined flag names in declaration order ("" when none).
std::string flags_to_string(std::uint8_t flags);
std::uint8_t flags_from_string(const std::string& text);

struct TraceRecord {
  std::uint64_t norm = 0;
  std::uint64_t p = 0;
  int f = 1;
  std::optional<std::uint64_t> root;
  int branch = 0;
  std::optional<std::int64_t> a1, a2;
  std::optional<std::int64_t> d1, d2;
  std::uint8_t flags = 0;

  bool has(RecordFlag flag) const { return (flags & flag) != 0; }
  bool good() const { return !has(kBadReduction1) && !has(kBadReduction2); }
};

struct TableMeta {
  std::string curve1;
  std::string curve2;
  std::string field = "Q";
  std::uint64_t x_max = 0;
  /// "hint", "disc" or "mixed": where N1 and N2 came from.
  std::string filter_mode = "disc";
  i128 cond1 = 1;
  i128 cond2 = 1;
  std::uint64_t seed = 0;
  std::uint64_t naive_cutoff = kDefaultNaiveCutoff;
  /// Largest norm of censused degree-two ideals; 0 when they are skipped.
  std::uint64_t degree_two_bound = 0;
};

struct ScanStats {
  std::uint64_t trace_calls = 0;
  std::uint64_t naive = 0;
  std::uint64_t bsgs = 0;
  std::uint64_t exhaustive = 0;
  std::uint64_t fallbacks = 0;
  std::uint64_t bad = 0;

  ScanStats& operator+=(const ScanStats& o);
};

struct TraceTable {
  std::vector<TraceRecord> records;
  TableMeta meta;
  ScanStats stats;
};

struct ScanOptions {
  int workers = 1;
  std::uint64_t block_size = 1u << 20;
  TraceOptions trace;
  /// Census degree-two ideals up to this norm (quadratic fields only); 0 skips them.
  std::uint64_t degree_two_bound = 0;
};

inline constexpr std::uint64_t kDefaultDegreeTwoBound = 10000;

/// N_j used by the prime filters: the conductor hint, else |disc_norm|.
i128 filter_conductor(const Curve& curve);

/// One row per prime ideal of norm <= x_max. Throws FieldMismatch, InvalidArgument (x_max < 11).
TraceTable scan_pair(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts = {});

/// Single-threaded reference for scan_pair; must produce identical records.
TraceTable scan_pair_serial(const Curve& e1, const Curve& e2, std::uint64_t x_max, const ScanOptions& opts = {});

/// Appends rows for norms in (table.meta.x_max, new_x_max]; stats count only the new work.
void extend_scan(TraceTable& table, const Curve& e1, const Curve& e2, std::uint64_t new_x_max,
                 const ScanOptions& opts = {});

/// Copy restricted to norms <= x_max.
TraceTable truncate_table(const TraceTable& table, std::uint64_t x_max);

/// Scanned ideals of norm <= x (the denominator of every density).
std::uint64_t count_primes(const TraceTable& t, double x);

/// Shared Frobenius fields: good at both curves, norm not dividing N1 N2, d1 = d2.
std::uint64_t count_F(const TraceTable& t, double x);

/// alpha1 a1 + alpha2 a2 = 0 over primes coprime to 6 N1 N2. Throws BadAlphaPair, BeyondScan.
std::uint64_t count_T(const TraceTable& t, std::int64_t alpha1, std::int64_t alpha2, double x);

/// Primes not dividing N_j whose Frobenius field for curve j is Q(sqrt d), d < 0 squarefree.
std::uint64_t count_lang_trotter(const TraceTable& t, int curve_index, std::int64_t d, double x);

struct KernelHistogram {
  std::map<std::int64_t, std::uint64_t> counts;
  std::uint64_t excluded = 0;
};

/// Kernel counts for curve j over the Lang-Trotter filter, plus the excluded rows.
KernelHistogram kernel_histogram(const TraceTable& t, int curve_index, double x);

enum class EnvelopeKind { Unconditional, GRH, GRH_AHC_PCC };

struct BoundEnvelope {
  EnvelopeKind kind = EnvelopeKind::Unconditional;
  double kappa = 1.0;
};

std::string to_string(EnvelopeKind kind);

/// kappa times the bound shape at x. Throws DomainTooSmall for x <= e^e.
double bound_envelope(const BoundEnvelope& env, double x);

struct Counter {
  enum class Kind { F, T, LT } kind = Kind::F;
  std::int64_t alpha1 = 1;
  std::int64_t alpha2 = 1;
  int curve = 1;
  std::int64_t d = -1;

  static Counter shared_fields() { return {}; }
  static Counter trace_relation(std::int64_t a1, std::int64_t a2) { return {Kind::T, a1, a2, 1, -1}; }
  static Counter lang_trotter(int curve, std::int64_t d) { return {Kind::LT, 1, 1, curve, d}; }

  std::string label() const;
  std::uint64_t evaluate(const TraceTable& t, double x) const;
};

struct DensityPoint {
  double x = 0;
  std::uint64_t count = 0;
  std::uint64_t primes = 0;
  double ratio = 0;
};

struct DensitySeries {
  std::vector<DensityPoint> points;
};

DensitySeries density_profile(const TraceTable& t, const Counter& counter, const std::vector<double>& checkpoints);

/// Integer grid round(10^(k/4)) restricted to (lower, x_max], with x_max appended.
std::vector<double> default_checkpoints(std::uint64_t x_max, double lower = 15.154262241479262);

struct DecompositionReport {
  double x = 0;
  std::uint64_t F = 0;
  std::uint64_t T11 = 0;
  std::uint64_t T1m1 = 0;
  std::uint64_t cm_terms = 0;
  std::uint64_t higher_degree = 0;
  std::uint64_t filter_slack = 0;

  std::uint64_t bound() const { return T11 + T1m1 + cm_terms + higher_degree + filter_slack; }
  bool holds() const { return F <= bound(); }
};

/// F(x) <= T11 + T1m1 + CM-kernel primes + higher-degree primes + filter slack.
DecompositionReport decomposition_check(const TraceTable& t, double x);

struct KernelTraceAudit {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t excluded_cm = 0;
  std::uint64_t excluded_prime = 0;
  std::uint64_t higher_degree = 0;
};

/// Compares the stored kernels (d1 = d2) with |a1| = |a2| wherever the equivalence applies.
KernelTraceAudit kernel_trace_audit(const TraceTable& t, double x);

enum class Verdict { PotentiallyIsogenousLikely, NotDetected, InsufficientData };

std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::InsufficientData;
  double tail_ratio = 0;
  std::uint64_t tail_primes = 0;
};

/// Heuristic: share of shared-field primes among the later half of the scanned primes.
VerdictReport isogeny_verdict(const TraceTable& t, double threshold = 0.5, std::uint64_t min_primes = 1000);

}  // namespace frobcount
