#include <cmath>
#include <numeric>

#include "frobcount/census.hpp"
#include "frobcount/error.hpp"

namespace frobcount {

namespace {

void check_range(const TraceTable& t, double x) {
  if (x > static_cast<double>(t.meta.x_max)) {
    throw Error(ErrorCode::BeyondScan,
                "x = " + std::to_string(x) + " exceeds the scanned range " + std::to_string(t.meta.x_max));
  }
}

int valuation(i128 n, std::uint64_t p) {
  if (n < 0) n = -n;
  if (n == 0) return 64;
  int v = 0;
  while (arith::reduce(n, p) == 0) {
    n /= static_cast<i128>(p);
    ++v;
  }
  return v;
}

// N(p) | N1 N2 for the record's ideal.
bool norm_divides_conductors(const TraceRecord& r, const TableMeta& m) {
  if (r.f == 1) return r.has(kDividesCondHint);
  return valuation(m.cond1, r.p) + valuation(m.cond2, r.p) >= r.f;
}

bool counted_in_F(const TraceRecord& r, const TableMeta& m) {
  return r.good() && !norm_divides_conductors(r, m) && r.d1 == r.d2;
}

// gcd(N(p), 6 N1 N2) = 1 with traces available at both curves.
bool passes_T_filter(const TraceRecord& r) {
  return r.good() && !r.has(kDividesSix) && !r.has(kDividesCondHint);
}

bool passes_LT_filter(const TraceRecord& r, int curve_index, const TableMeta& m) {
  const bool bad = r.has(curve_index == 1 ? kBadReduction1 : kBadReduction2);
  return !bad && arith::reduce(curve_index == 1 ? m.cond1 : m.cond2, r.p) != 0;
}

void check_alpha(std::int64_t alpha1, std::int64_t alpha2) {
  if ((alpha1 == 0 && alpha2 == 0) || std::gcd(alpha1, alpha2) != 1) {
    throw Error(ErrorCode::BadAlphaPair,
                "(" + std::to_string(alpha1) + ", " + std::to_string(alpha2) + ") must be coprime and nonzero");
  }
}

void check_curve_index(int curve_index) {
  if (curve_index != 1 && curve_index != 2) throw Error(ErrorCode::InvalidArgument, "curve index must be 1 or 2");
}

template <typename Pred>
std::uint64_t count_if_upto(const TraceTable& t, double x, Pred pred) {
  check_range(t, x);
  std::uint64_t n = 0;
  for (const auto& r : t.records) {
    if (static_cast<double>(r.norm) > x) break;
    if (pred(r)) ++n;
  }
  return n;
}

}  // namespace

std::uint64_t count_primes(const TraceTable& t, double x) {
  return count_if_upto(t, x, [](const TraceRecord&) { return true; });
}

std::uint64_t count_F(const TraceTable& t, double x) {
  return count_if_upto(t, x, [&](const TraceRecord& r) { return counted_in_F(r, t.meta); });
}

std::uint64_t count_T(const TraceTable& t, std::int64_t alpha1, std::int64_t alpha2, double x) {
  check_alpha(alpha1, alpha2);
  return count_if_upto(t, x, [&](const TraceRecord& r) {
    if (!passes_T_filter(r)) return false;
    return static_cast<i128>(alpha1) * *r.a1 + static_cast<i128>(alpha2) * *r.a2 == 0;
  });
}

std::uint64_t count_lang_trotter(const TraceTable& t, int curve_index, std::int64_t d, double x) {
  check_curve_index(curve_index);
  if (d >= 0 || !arith::is_squarefree(d)) {
    throw Error(ErrorCode::InvalidArgument, "d must be a negative squarefree integer, got " + std::to_string(d));
  }
  return count_if_upto(t, x, [&](const TraceRecord& r) {
    if (!passes_LT_filter(r, curve_index, t.meta)) return false;
    return (curve_index == 1 ? r.d1 : r.d2) == d;
  });
}

KernelHistogram kernel_histogram(const TraceTable& t, int curve_index, double x) {
  check_curve_index(curve_index);
  check_range(t, x);
  KernelHistogram h;
  for (const auto& r : t.records) {
    if (static_cast<double>(r.norm) > x) break;
    if (!passes_LT_filter(r, curve_index, t.meta)) {
      ++h.excluded;
      continue;
    }
    ++h.counts[*(curve_index == 1 ? r.d1 : r.d2)];
  }
  return h;
}

std::string to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::Unconditional: return "unconditional";
    case EnvelopeKind::GRH: return "grh";
    case EnvelopeKind::GRH_AHC_PCC: return "grh_ahc_pcc";
  }
  return "?";
}

double bound_envelope(const BoundEnvelope& env, double x) {
  if (!(env.kappa > 0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  const double lx = std::log(x);
  if (!(x > 0) || !(lx > 1) || !(std::log(lx) > 1)) {
    throw Error(ErrorCode::DomainTooSmall, "envelopes need x > e^e, got " + std::to_string(x));
  }
  double shape = 0;
  switch (env.kind) {
    case EnvelopeKind::Unconditional:
      shape = x * std::pow(std::log(lx), 1.0 / 9.0) / std::pow(lx, 19.0 / 18.0);
      break;
    case EnvelopeKind::GRH:
      shape = std::pow(x, 6.0 / 7.0) / std::pow(lx, 5.0 / 7.0);
      break;
    case EnvelopeKind::GRH_AHC_PCC:
      shape = std::pow(x, 2.0 / 3.0) * std::cbrt(lx);
      break;
  }
  return env.kappa * shape;
}

std::string Counter::label() const {
  switch (kind) {
    case Kind::F: return "F";
    case Kind::T: return "T(" + std::to_string(alpha1) + "," + std::to_string(alpha2) + ")";
    case Kind::LT: return "LT" + std::to_string(curve) + "(" + std::to_string(d) + ")";
  }
  return "?";
}

std::uint64_t Counter::evaluate(const TraceTable& t, double x) const {
  switch (kind) {
    case Kind::F: return count_F(t, x);
    case Kind::T: return count_T(t, alpha1, alpha2, x);
    case Kind::LT: return count_lang_trotter(t, curve, d, x);
  }
  return 0;
}

DensitySeries density_profile(const TraceTable& t, const Counter& counter, const std::vector<double>& checkpoints) {
  DensitySeries s;
  for (double x : checkpoints) {
    DensityPoint pt;
    pt.x = x;
    pt.count = counter.evaluate(t, x);
    pt.primes = count_primes(t, x);
    pt.ratio = pt.primes ? static_cast<double>(pt.count) / static_cast<double>(pt.primes) : 0.0;
    s.points.push_back(pt);
  }
  return s;
}

std::vector<double> default_checkpoints(std::uint64_t x_max, double lower) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    double x = std::round(std::pow(10.0, k / 4.0));
    if (x > static_cast<double>(x_max)) break;
    if (x > lower && (out.empty() || x > out.back())) out.push_back(x);
  }
  if (out.empty() || out.back() < static_cast<double>(x_max)) out.push_back(static_cast<double>(x_max));
  return out;
}

DecompositionReport decomposition_check(const TraceTable& t, double x) {
  check_range(t, x);
  DecompositionReport rep;
  rep.x = x;
  rep.F = count_F(t, x);
  rep.T11 = count_T(t, 1, 1, x);
  rep.T1m1 = count_T(t, 1, -1, x);
  for (const auto& r : t.records) {
    if (static_cast<double>(r.norm) > x) break;
    if (r.f == 1 && passes_T_filter(r)) {
      rep.cm_terms += QuadDisc{*r.d1}.has_extra_units() ? 1 : 0;
      rep.cm_terms += QuadDisc{*r.d2}.has_extra_units() ? 1 : 0;
    }
    if (r.f == 1 && counted_in_F(r, t.meta) && !passes_T_filter(r)) ++rep.filter_slack;
  }
  // Every ideal of residue degree >= 2 up to x, censused or not.
  const NumberField field = parse_field(t.meta.field);
  rep.higher_degree = count_degree_two(field, static_cast<std::uint64_t>(x));
  return rep;
}

KernelTraceAudit kernel_trace_audit(const TraceTable& t, double x) {
  check_range(t, x);
  KernelTraceAudit audit;
  for (const auto& r : t.records) {
    if (static_cast<double>(r.norm) > x) break;
    if (!r.good()) continue;
    const FrobeniusSample s1{*r.a1, r.norm, r.f}, s2{*r.a2, r.norm, r.f};
    const bool excluded = r.has(kDividesSix) || r.has(kDividesCondHint);
    const KernelTracePrediction pred = predict_kernel_trace(s1, s2, excluded);
    switch (pred.kind) {
      case KernelTraceCase::HigherDegree: ++audit.higher_degree; break;
      case KernelTraceCase::ExcludedCM: ++audit.excluded_cm; break;
      case KernelTraceCase::ExcludedPrime: ++audit.excluded_prime; break;
      case KernelTraceCase::Equiv:
        ++audit.checked;
        if ((*r.d1 == *r.d2) != pred.same_abs_trace) ++audit.mismatches;
        break;
    }
  }
  return audit;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PotentiallyIsogenousLikely: return "PotentiallyIsogenousLikely";
    case Verdict::NotDetected: return "NotDetected";
    case Verdict::InsufficientData: return "InsufficientData";
  }
  return "?";
}

VerdictReport isogeny_verdict(const TraceTable& t, double threshold, std::uint64_t min_primes) {
  VerdictReport rep;
  const std::size_t n = t.records.size();
  if (n < min_primes || n == 0) return rep;
  std::uint64_t hits = 0;
  for (std::size_t i = n / 2; i < n; ++i) hits += counted_in_F(t.records[i], t.meta) ? 1 : 0;
  rep.tail_primes = n - n / 2;
  rep.tail_ratio = static_cast<double>(hits) / static_cast<double>(rep.tail_primes);
  rep.verdict = rep.tail_ratio > threshold ? Verdict::PotentiallyIsogenousLikely : Verdict::NotDetected;
  return rep;
}

}  // namespace frobcount
