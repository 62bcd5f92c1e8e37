#include <doctest.h>

#include <random>

#include "frobcount/arith.hpp"
#include "frobcount/error.hpp"
#include "frobcount/frobenius.hpp"

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

bool kernel_valid(std::int64_t n, std::int64_t d) {
  if ((n < 0) != (d < 0) || n % d != 0) return false;
  const auto q = static_cast<std::uint64_t>(n / d);
  return arith::is_perfect_square(q) && arith::is_squarefree(d);
}

}  // namespace

TEST_CASE("frobenius: squarefree kernel examples") {
  CHECK(squarefree_kernel(-16) == -1);
  CHECK(squarefree_kernel(-20) == -5);
  CHECK(squarefree_kernel(28) == 7);
  CHECK(squarefree_kernel(1) == 1);
  CHECK(squarefree_kernel(-1) == -1);
  CHECK(squarefree_kernel(-4) == -1);
  CHECK(code_of([] { squarefree_kernel(0); }) == ErrorCode::ZeroInput);
}

TEST_CASE("frobenius: kernel reconstruction for every |n| <= 10^6") {
  for (std::int64_t n = -1000000; n <= 1000000; ++n) {
    if (n == 0) continue;
    const std::int64_t d = squarefree_kernel(n);
    const auto q = static_cast<std::uint64_t>(n / d);
    if (n % d != 0 || !arith::is_perfect_square(q) || (n < 0) != (d < 0)) {
      FAIL("kernel of " << n << " is " << d);
    }
  }
}

TEST_CASE("frobenius: kernel reconstruction on random 63-bit inputs") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 10000; ++i) {
    std::int64_t n = static_cast<std::int64_t>(rng() >> 1);
    if (n == 0) continue;
    if (i % 2) n = -n;
    const std::int64_t d = squarefree_kernel(n);
    REQUIRE(kernel_valid(n, d));
  }
  const std::int64_t big_prime = 1000000007;
  CHECK(squarefree_kernel(big_prime * 4) == big_prime);
  CHECK(squarefree_kernel(-(static_cast<std::int64_t>(2147483647) * 2147483647)) == -1);
  CHECK(squarefree_kernel(static_cast<std::int64_t>(1000003) * 1000033 * 9) == static_cast<std::int64_t>(1000003) * 1000033);
}

TEST_CASE("frobenius: Frobenius fields") {
  CHECK(frobenius_field(-2, 5).d == -1);
  CHECK(frobenius_field(-2, 5).has_extra_units());
  CHECK(frobenius_field(0, 7).d == -7);
  CHECK(frobenius_field(6, 9).d == 1);
  CHECK(frobenius_field(6, 9).is_rational());
  CHECK(frobenius_field(1, 7).d == -3);
  CHECK(code_of([] { frobenius_field(5, 6); }) == ErrorCode::HasseViolation);
  for (std::uint64_t p : arith::primes_up_to(2000)) {
    for (std::int64_t a = -static_cast<std::int64_t>(arith::isqrt(4 * p - 1));
         a * a < static_cast<std::int64_t>(4 * p); ++a) {
      CHECK(frobenius_field(a, p).d < 0);
    }
  }
}

TEST_CASE("frobenius: shared fields") {
  CHECK(shared_field({-2, 5, 1}, {2, 5, 1}));
  CHECK_FALSE(shared_field({0, 7, 1}, {2, 7, 1}));
  CHECK(shared_field({3, 11, 1}, {3, 11, 1}));
  CHECK(code_of([] { shared_field({1, 5, 1}, {1, 7, 1}); }) == ErrorCode::MismatchedPrime);
  // Different |a| can still share a field: a^2 - 4p = -3 m^2 for a = 1, 5 at p = 7.
  CHECK(shared_field({1, 7, 1}, {5, 7, 1}));
}

TEST_CASE("frobenius: equivalence predictions") {
  auto p = predict_kernel_trace({0, 7, 1}, {0, 7, 1}, false);
  CHECK(p.kind == KernelTraceCase::Equiv);
  CHECK(p.same_abs_trace);
  CHECK(predict_kernel_trace({-2, 5, 1}, {0, 5, 1}, false).kind == KernelTraceCase::ExcludedCM);
  CHECK(predict_kernel_trace({1, 7, 1}, {0, 7, 1}, false).kind == KernelTraceCase::ExcludedCM);
  CHECK(predict_kernel_trace({2, 9, 2}, {0, 9, 2}, false).kind == KernelTraceCase::HigherDegree);
  CHECK(predict_kernel_trace({0, 7, 1}, {2, 7, 1}, true).kind == KernelTraceCase::ExcludedPrime);
  CHECK(code_of([] { predict_kernel_trace({1, 5, 1}, {1, 7, 1}, false); }) == ErrorCode::MismatchedPrime);
}

TEST_CASE("frobenius: equivalence holds for every trace pair away from extra units") {
  for (std::uint64_t p : arith::primes_up_to(600)) {
    if (p < 5) continue;
    const auto w = static_cast<std::int64_t>(arith::isqrt(4 * p - 1));
    for (std::int64_t a1 = -w; a1 <= w; ++a1) {
      for (std::int64_t a2 = -w; a2 <= w; ++a2) {
        const auto pred = predict_kernel_trace({a1, p, 1}, {a2, p, 1}, false);
        if (pred.kind != KernelTraceCase::Equiv) continue;
        REQUIRE(shared_field({a1, p, 1}, {a2, p, 1}) == pred.same_abs_trace);
      }
    }
  }
}
