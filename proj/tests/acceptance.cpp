// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "frobcount/cache.hpp"
#include "frobcount/census.hpp"
#include "frobcount/error.hpp"
#include "frobcount/galois_lab.hpp"
#include "frobcount/named_curves.hpp"
#include "frobcount/table_io.hpp"

using namespace frobcount;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

const Curve& curve(const std::string& label) {
  static std::map<std::string, Curve> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, *named_curve(label)).first;
  return it->second;
}

const TraceTable& table_11_37() {
  static const TraceTable t = scan_pair(curve("11a1"), curve("37a1"), 100000);
  return t;
}

const TraceTable& table_11_11() {
  static const TraceTable t = scan_pair(curve("11a1"), curve("11a2"), 100000);
  return t;
}

const TraceTable& table_million() {
  static const TraceTable t = scan_pair(curve("389a1"), curve("5077a1"), 1000000);
  return t;
}

const std::vector<std::pair<std::int64_t, std::int64_t>> kAlphas = {{1, 1}, {1, -1}, {2, 1}, {1, 0}, {0, 1}};

lab::LabReport& lab_report(double* elapsed = nullptr) {
  static double secs = 0;
  static lab::LabReport rep = [] {
    const auto t0 = Clock::now();
    lab::LabReport r = lab::run_lab({3, 5, 7}, kAlphas);
    secs = seconds_since(t0);
    return r;
  }();
  if (elapsed) *elapsed = secs;
  return rep;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome group_sizes() {
  double secs = 0;
  const lab::LabReport& rep = lab_report(&secs);
  std::size_t checked = 0, failed = 0;
  for (const auto& item : rep.items) {
    if (item.alpha != "-" || item.name.rfind("det", 0) == 0) continue;
    ++checked;
    failed += item.pass ? 0 : 1;
  }
  const bool spots = lab::expected_sizes(5).B == 1600 && lab::expected_sizes(5).Uprime == 100 &&
                     lab::expected_sizes(7).Lambda == 6 && lab::expected_sizes(3).P == 576;
  return {failed == 0 && checked == 3 * 14 && spots && secs < 60,
          fmt("%zu size/class items, %zu failed, lab time %.2f s", checked, failed, secs)};
}

Outcome det_trace() {
  std::size_t mismatches = 0, cells = 0;
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    const lab::GL2 gl(ell);
    for (std::int64_t d = 1; d < ell; ++d) {
      for (std::int64_t t = 0; t < ell; ++t) {
        ++cells;
        mismatches += lab::count_det_trace(gl, d, t) == lab::det_trace_closed_form(ell, d, t) ? 0 : 1;
      }
    }
  }
  const lab::GL2 gl5(5);
  const auto s0 = lab::count_det_trace(gl5, 1, 0), s1 = lab::count_det_trace(gl5, 1, 1);
  return {mismatches == 0 && s0 == 30 && s1 == 20,
          fmt("%zu (d,t) cells, %zu mismatches, N(5,1,0)=%llu N(5,1,1)=%llu", cells, mismatches,
              static_cast<unsigned long long>(s0), static_cast<unsigned long long>(s1))};
}

Outcome closure_suite() {
  std::size_t checked = 0, failed = 0;
  for (const auto& item : lab_report().items) {
    if (item.alpha == "-") continue;
    ++checked;
    failed += item.pass ? 0 : 1;
  }
  return {failed == 0 && checked == 3 * kAlphas.size() * 12, fmt("%zu set/closure items, %zu failed", checked, failed)};
}

Outcome bsgs_vs_exhaustive() {
  const auto t0 = Clock::now();
  std::size_t curves = 0, primes = 0, mismatches = 0;
  BsgsOptions strict;
  strict.allow_fallback = false;
  const NumberField q = NumberField::rational();
  for (const auto& nc : named_curves()) {
    if (curves == 20) break;
    ++curves;
    const Curve& c = curve(nc.label);
    for (const auto& ideal : degree_one_primes(q, 11, 5000)) {
      const auto red = reduce_curve(c, ideal);
      if (std::holds_alternative<BadReduction>(red)) continue;
      const auto& rc = std::get<ReducedCurve>(red);
      ++primes;
      const auto fast = count_points_bsgs(rc, trace_seed(c, ideal, 0), strict);
      mismatches += fast.order == count_points_naive(rc, 5001) ? 0 : 1;
    }
  }
  std::size_t violations = 0;
  const TraceTable& big = table_million();
  for (const auto& r : big.records) {
    for (const auto& a : {r.a1, r.a2}) {
      if (a && static_cast<double>(*a) * static_cast<double>(*a) > 4.0 * static_cast<double>(r.norm)) ++violations;
    }
  }
  const double secs = seconds_since(t0);
  return {curves == 20 && mismatches == 0 && violations == 0 && big.meta.x_max == 1000000 && secs < 300,
          fmt("%zu curves, %zu good primes, %zu mismatches; %zu Hasse violations over %zu ideals to 1e6; %.1f s",
              curves, primes, mismatches, violations, big.records.size(), secs)};
}

Outcome equivalence() {
  const KernelTraceAudit a = kernel_trace_audit(table_11_37(), 100000);
  return {a.mismatches == 0 && a.checked > 0,
          fmt("%llu primes checked, %llu mismatches, %llu CM-kernel and %llu filtered primes skipped",
              static_cast<unsigned long long>(a.checked), static_cast<unsigned long long>(a.mismatches),
              static_cast<unsigned long long>(a.excluded_cm), static_cast<unsigned long long>(a.excluded_prime))};
}

Outcome decomposition() {
  ScanOptions quad;
  quad.degree_two_bound = 20000;
  const NumberField k = NumberField::quadratic(-1);
  const TraceTable gauss =
      scan_pair(parse_curve("[0,-1,1,-10,-20]", k), parse_curve("[0,0,1,-1,0]", k), 20000, quad);
  std::size_t points = 0, violations = 0;
  for (const TraceTable* t : {&table_11_37(), &table_11_11(), &table_million(), &gauss}) {
    for (double x : default_checkpoints(t->meta.x_max)) {
      ++points;
      violations += decomposition_check(*t, x).holds() ? 0 : 1;
    }
  }
  return {violations == 0, fmt("%zu checkpoints over 4 scans, %zu violations", points, violations)};
}

Outcome isogeny() {
  const double iso_ratio = static_cast<double>(count_F(table_11_11(), 1e5)) / count_primes(table_11_11(), 1e5);
  const Verdict iso_verdict = isogeny_verdict(table_11_11()).verdict;
  const TraceTable& t = table_11_37();
  std::vector<double> ratios;
  for (double x : default_checkpoints(100000)) {
    if (x < 1000) continue;
    ratios.push_back(static_cast<double>(count_F(t, x)) / count_primes(t, x));
  }
  bool nonincreasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) nonincreasing = nonincreasing && ratios[i] <= ratios[i - 1];
  const Verdict other = isogeny_verdict(t).verdict;
  const bool ok = iso_ratio >= 0.99 && iso_verdict == Verdict::PotentiallyIsogenousLikely && ratios.back() <= 0.2 &&
                  nonincreasing && other == Verdict::NotDetected;
  return {ok, fmt("11a1/11a2 F/pi=%.6f %s; 11a1/37a1 F/pi=%.6f %s, %s over %zu checkpoints", iso_ratio,
                  to_string(iso_verdict).c_str(), ratios.back(), to_string(other).c_str(),
                  nonincreasing ? "nonincreasing" : "increasing somewhere", ratios.size())};
}

Outcome determinism() {
  ScanOptions one, eight;
  eight.workers = 8;
  eight.block_size = 8192;
  const std::string a = table_to_csv(scan_pair(curve("11a1"), curve("37a1"), 100000, one));
  const std::string b = table_to_csv(scan_pair(curve("11a1"), curve("37a1"), 100000, eight));

  const fs::path root = fs::temp_directory_path() / ("frobcount-accept-" + std::to_string(::getpid()));
  fs::remove_all(root);
  TableCache cache(root);
  const CacheResult first = cache.fetch_or_scan(curve("11a1"), curve("37a1"), 100000, one);
  const CacheResult second = cache.fetch_or_scan(curve("11a1"), curve("37a1"), 200000, eight);
  fs::remove_all(root);
  const std::uint64_t fresh = 2 * (arith::prime_pi(200000) - arith::prime_pi(100000));
  const bool extension_ok = first.outcome == CacheOutcome::Miss && second.outcome == CacheOutcome::Extended &&
                            second.table.stats.trace_calls == fresh &&
                            table_to_csv(second.table) == table_to_csv(scan_pair(curve("11a1"), curve("37a1"), 200000, eight));
  return {a == b && extension_ok,
          fmt("CSV %s (%zu bytes); extension made %llu backend calls, expected %llu", a == b ? "identical" : "differs",
              a.size(), static_cast<unsigned long long>(second.table.stats.trace_calls),
              static_cast<unsigned long long>(fresh))};
}

Outcome envelopes() {
  const double e3 = std::exp(3.0), e7 = std::exp(7.0);
  const double grh = bound_envelope({EnvelopeKind::GRH, 1.0}, e7);
  const double grh_hand = std::exp(6.0) * std::pow(7.0, -5.0 / 7.0);
  const double pcc = bound_envelope({EnvelopeKind::GRH_AHC_PCC, 1.0}, e3);
  const double pcc_hand = std::exp(2.0) * std::pow(3.0, 1.0 / 3.0);
  double worst_scale = 0;
  for (double x : {e3, e7, 1e4, 1e6}) {
    const double one = bound_envelope({EnvelopeKind::Unconditional, 1.0}, x);
    const double two = bound_envelope({EnvelopeKind::Unconditional, 2.0}, x);
    worst_scale = std::max(worst_scale, std::abs(two - 2 * one) / (2 * one));
  }
  const double err_grh = std::abs(grh - grh_hand) / grh_hand, err_pcc = std::abs(pcc - pcc_hand) / pcc_hand;
  return {err_grh <= 1e-12 && err_pcc <= 1e-12 && worst_scale <= 1e-12,
          fmt("GRH rel err %.2e, PCC rel err %.2e, kappa scaling rel err %.2e", err_grh, err_pcc, worst_scale)};
}

}  // namespace

int main() {
  report(1, "group sizes, class counts and class bounds for l in {3,5,7}", group_sizes);
  report(2, "det/trace counts match l(l + legendre(t^2-4d))", det_trace);
  report(3, "closure suite on {3,5,7} x five alpha pairs", closure_suite);
  report(4, "BSGS equals exhaustive order on 20 curves; Hasse holds to 1e6", bsgs_vs_exhaustive);
  report(5, "d1 = d2 iff |a1| = |a2| for (11a1, 37a1) to 1e5", equivalence);
  report(6, "decomposition inequality at every checkpoint", decomposition);
  report(7, "isogeny detection for (11a1, 11a2) and (11a1, 37a1)", isogeny);
  report(8, "worker-count determinism and incremental extension", determinism);
  report(9, "bound envelopes against hand values", envelopes);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
