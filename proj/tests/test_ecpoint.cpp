#include <doctest.h>

#include <cmath>
#include <random>

#include "frobcount/arith.hpp"
#include "frobcount/ecpoint.hpp"
#include "frobcount/error.hpp"
#include "frobcount/named_curves.hpp"

using namespace frobcount;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

PrimeIdeal rational_prime(std::uint64_t p) { return PrimeIdeal{p, 1, p, std::nullopt, 0}; }

ReducedCurve reduced(std::uint64_t p, std::array<std::uint64_t, 5> a) {
  auto c = ReducedCurve::make(p, a);
  REQUIRE(c.has_value());
  return *c;
}

// Independent affine count by looping over every (x, y).
std::uint64_t brute_order(const ReducedCurve& c) {
  const std::uint64_t p = c.p();
  const auto& a = c.coeffs();
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) {
      const std::uint64_t lhs = (y * y + a[0] * x % p * y + a[2] * y) % p;
      const std::uint64_t rhs = (x * x % p * x + a[1] * x % p * x + a[3] * x + a[4]) % p;
      n += lhs == rhs ? 1 : 0;
    }
  }
  return n;
}

std::int64_t trace_at(const Curve& e, std::uint64_t p, const TraceOptions& opts = {}) {
  auto r = trace_of_frobenius(e, rational_prime(p), opts);
  REQUIRE(std::holds_alternative<TraceValue>(r));
  return std::get<TraceValue>(r).a;
}

}  // namespace

TEST_CASE("ecpoint: curve parsing and discriminants") {
  const NumberField q = NumberField::rational();
  const Curve e = parse_curve("[0,-1,1,-10,-20]", q);
  CHECK(e.disc_norm == -161051);
  CHECK(e.to_string() == "[0,-1,1,-10,-20]");
  CHECK(parse_curve("[0,0,1,-1,0]", q).disc_norm == 37);
  CHECK(parse_curve("[0,0,0,-1,1]", q).disc_norm == -368);
  CHECK(parse_curve(" [ 0, -1 , 1,-7820,-263580 ] ", q).disc_norm == -11);
  CHECK(code_of([&] { parse_curve("[0,0,0,0,0]", q); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { parse_curve("[0,0,0,1]", q); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_curve("[0,0,0,1+w,1]", q); }) == ErrorCode::ParseError);
  try {
    parse_curve("[0,0,0,-1,x]", q);
    FAIL("expected ParseError");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("column 11") != std::string::npos);
  }
  const NumberField k = NumberField::quadratic(5);
  const Curve ek = parse_curve("[0,0,0,1+2*w,-w]", k);
  CHECK(ek.to_string() == "[0,0,0,1+2*w,0-1*w]");
  CHECK(parse_curve(ek.to_string(), k).to_string() == ek.to_string());
}

TEST_CASE("ecpoint: every corpus curve matches its stored discriminant") {
  for (const auto& nc : named_curves()) {
    const Curve e = *named_curve(nc.label);
    CHECK(e.disc_norm == nc.discriminant);
    CHECK(*e.cond_norm_hint == nc.conductor);
  }
  CHECK_FALSE(named_curve("27a1").has_value());
  CHECK(code_of([] { resolve_curve("11a1", NumberField::quadratic(-1)); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([] { resolve_curve("nope", NumberField::rational()); }) == ErrorCode::ParseError);
}

TEST_CASE("ecpoint: reduction classification") {
  const NumberField q = NumberField::rational();
  const Curve e11 = parse_curve("[0,-1,1,-10,-20]", q);
  CHECK(std::holds_alternative<BadReduction>(reduce_curve(e11, rational_prime(11))));
  const Curve e = parse_curve("[0,0,0,-1,1]", q);
  CHECK(std::holds_alternative<ReducedCurve>(reduce_curve(e, rational_prime(5))));
  CHECK(std::holds_alternative<BadReduction>(reduce_curve(e, rational_prime(23))));
  CHECK(std::holds_alternative<BadReduction>(reduce_curve(e, rational_prime(2))));
  CHECK(code_of([&] { reduce_curve(e, PrimeIdeal{3, 2, 9, std::nullopt, 0}); }) == ErrorCode::DegreeTooHigh);
}

TEST_CASE("ecpoint: naive counts on small fields") {
  CHECK(count_points_naive(reduced(5, {0, 0, 0, 4, 1})) == 8);
  CHECK(count_points_naive(reduced(7, {0, 0, 0, 0, 1})) == 12);
  CHECK(code_of([] { count_points_naive(reduced(5003, {0, 0, 0, 1, 1})); }) == ErrorCode::CutoffExceeded);
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 101ULL, 211ULL}) {
    for (int k = 0; k < 15; ++k) {
      std::array<std::uint64_t, 5> a{};
      for (auto& c : a) c = rng() % p;
      auto c = ReducedCurve::make(p, a);
      if (!c) continue;
      const std::uint64_t n = count_points_naive(*c);
      CHECK(n == brute_order(*c));
      const double w = 2 * std::sqrt(static_cast<double>(p));
      CHECK(std::abs(static_cast<double>(n) - static_cast<double>(p + 1)) <= w);
    }
  }
}

TEST_CASE("ecpoint: BSGS agrees with the naive backend") {
  std::mt19937_64 rng(5);
  BsgsOptions strict;
  strict.allow_fallback = false;
  for (std::uint64_t p : arith::primes_up_to(4999)) {
    if (p <= 3 || rng() % 6) continue;
    std::array<std::uint64_t, 5> a{};
    for (auto& c : a) c = rng() % p;
    auto c = ReducedCurve::make(p, a);
    if (!c) continue;
    const auto r = count_points_bsgs(*c, rng(), strict);
    CHECK_FALSE(r.fell_back);
    CHECK(r.order == count_points_naive(*c));
  }
  const ReducedCurve big = reduced(10007, {0, 0, 0, 10006, 1});
  CHECK(count_points_bsgs(big, 1, strict).order == count_points_naive(big, 20000));
}

TEST_CASE("ecpoint: BSGS resolves every small prime without falling back") {
  BsgsOptions strict;
  strict.allow_fallback = false;
  std::uint64_t cases = 0, wrong = 0;
  for (std::uint64_t p : arith::primes_up_to(100)) {
    if (p <= 3) continue;
    // Every short model over F_p, several draws each.
    for (std::uint64_t A = 0; A < p; ++A) {
      for (std::uint64_t B = 0; B < p; ++B) {
        auto c = ReducedCurve::make(p, {0, 0, 0, A, B});
        if (!c) continue;
        const std::uint64_t want = count_points_naive(*c);
        for (std::uint64_t seed : {1u, 2u}) {
          ++cases;
          wrong += count_points_bsgs(*c, seed * p + A * 31 + B, strict).order == want ? 0 : 1;
        }
      }
    }
  }
  CHECK(wrong == 0);
  CHECK(cases > 50000);
}

TEST_CASE("ecpoint: the BSGS order annihilates random points") {
  const ReducedCurve c = reduced(1000003, {0, 0, 1, 1000002, 0});
  const std::uint64_t n = count_points_bsgs(c, 9).order;
  const ec::ShortCurve s = ec::short_model(c);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const ec::Point pt = ec::random_point(s, rng);
    CHECK(ec::on_curve(s, pt));
    CHECK(ec::multiply(s, pt, n).inf);
  }
}

TEST_CASE("ecpoint: group law basics") {
  const ec::ShortCurve s{10007, 5, 7};
  std::mt19937_64 rng(23);
  const ec::Point p1 = ec::random_point(s, rng), p2 = ec::random_point(s, rng), p3 = ec::random_point(s, rng);
  CHECK(ec::add(s, p1, p2) == ec::add(s, p2, p1));
  CHECK(ec::add(s, ec::add(s, p1, p2), p3) == ec::add(s, p1, ec::add(s, p2, p3)));
  CHECK(ec::add(s, p1, ec::negate(s, p1)).inf);
  CHECK(ec::multiply(s, p1, 3) == ec::add(s, p1, ec::add(s, p1, p1)));
  const std::uint64_t ord = ec::order_from_multiple(s, p1, count_points_naive(ec::as_reduced(s), 20000));
  CHECK(ec::multiply(s, p1, ord).inf);
}

TEST_CASE("ecpoint: twist orders sum to 2p + 2") {
  const ReducedCurve c = reduced(4999, {0, 0, 0, 17, 23});
  const ec::ShortCurve s = ec::short_model(c);
  std::uint64_t g = 2;
  while (arith::legendre(g, 4999) != -1) ++g;
  const ReducedCurve t = ec::as_reduced(ec::quadratic_twist(s, g));
  CHECK(count_points_naive(c, 10000) + count_points_naive(t, 10000) == 2 * 4999 + 2);
}

TEST_CASE("ecpoint: traces of 11a1 and 37a1 match the oracle") {
  const NumberField q = NumberField::rational();
  const Curve e11 = parse_curve("[0,-1,1,-10,-20]", q);
  const Curve e37 = parse_curve("[0,0,1,-1,0]", q);
  const std::uint64_t ps[] = {2, 3, 5, 7, 13, 17, 19, 23, 29};
  const std::int64_t a11[] = {-2, -1, 1, -2, 4, -2, 0, -1, 0};
  const std::int64_t a37[] = {-2, -3, -2, -1, -2, 0, 0, 2, 6};
  for (int i = 0; i < 9; ++i) {
    CHECK(trace_at(e11, ps[i]) == a11[i]);
    CHECK(trace_at(e37, ps[i]) == a37[i]);
  }
  CHECK(trace_at(e37, 11) == -5);
  CHECK(trace_at(parse_curve("[0,0,0,-1,1]", q), 5) == -2);
}

TEST_CASE("ecpoint: trace backends and determinism") {
  const Curve e = *named_curve("389a1");
  TraceOptions forced;
  forced.naive_cutoff = 0;
  forced.bsgs.allow_fallback = false;
  for (std::uint64_t p : {5ULL, 101ULL, 1009ULL, 4999ULL}) {
    auto naive = std::get<TraceValue>(trace_of_frobenius(e, rational_prime(p)));
    auto bsgs = std::get<TraceValue>(trace_of_frobenius(e, rational_prime(p), forced));
    CHECK(naive.backend == Backend::Naive);
    CHECK(bsgs.backend == Backend::Bsgs);
    CHECK(naive.a == bsgs.a);
  }
  CHECK(trace_seed(e, rational_prime(101), 0) == trace_seed(e, rational_prime(101), 0));
  CHECK(trace_seed(e, rational_prime(101), 0) != trace_seed(e, rational_prime(103), 0));
  auto two = trace_of_frobenius(e, rational_prime(2));
  REQUIRE(std::holds_alternative<TraceValue>(two));
  CHECK(std::get<TraceValue>(two).backend == Backend::Naive);
}

TEST_CASE("ecpoint: Hasse bound over a long stretch of primes") {
  const Curve e = *named_curve("5077a1");
  for (std::uint64_t p : arith::primes_up_to(60000)) {
    if (p == 5077) continue;
    const std::int64_t a = trace_at(e, p);
    CHECK(static_cast<double>(a) * a < 4.0 * static_cast<double>(p));
  }
}

TEST_CASE("ecpoint: curves over a quadratic field") {
  const NumberField k = NumberField::quadratic(-1);
  const Curve base = parse_curve("[0,0,0,-1,1]", NumberField::rational());
  const Curve ek = parse_curve("[0,0,0,-1,1]", k);
  // A curve with rational coefficients has the same trace at both ideals above a split p.
  for (const auto& id : degree_one_primes(k, 3, 2000)) {
    if (id.p == 23) continue;
    auto r = trace_of_frobenius(ek, id);
    REQUIRE(std::holds_alternative<TraceValue>(r));
    CHECK(std::get<TraceValue>(r).a == trace_at(base, id.p));
  }
  // At an inert p the residue field is F_{p^2}: a(p^2) = a(p)^2 - 2p.
  for (const auto& id : degree_two_primes(k, 1, 1000 * 1000)) {
    if (id.p == 23) continue;
    auto r = trace_of_frobenius_degree_two(ek, id);
    REQUIRE(std::holds_alternative<TraceValue>(r));
    const auto& tv = std::get<TraceValue>(r);
    CHECK(tv.backend == Backend::Exhaustive);
    const std::int64_t ap = trace_at(base, id.p);
    CHECK(tv.a == ap * ap - 2 * static_cast<std::int64_t>(id.p));
  }
  const Curve twisted = parse_curve("[0,0,0,w,1]", k);
  for (const auto& id : degree_one_primes(k, 3, 3000)) {
    auto r = trace_of_frobenius(twisted, id);
    if (std::holds_alternative<BadReduction>(r)) continue;
    const std::int64_t a = std::get<TraceValue>(r).a;
    CHECK(static_cast<double>(a) * a < 4.0 * static_cast<double>(id.p));
  }
}
