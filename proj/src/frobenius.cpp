#include "frobcount/frobenius.hpp"

#include <cstdlib>
#include <vector>

#include "frobcount/arith.hpp"
#include "frobcount/error.hpp"

namespace frobcount {

namespace {

constexpr std::uint32_t kTrialBound = 1000000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = arith::primes_up_to(kTrialBound);
  return primes;
}

}  // namespace

std::int64_t squarefree_kernel(std::int64_t n) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "squarefree kernel of 0");
  const bool negative = n < 0;
  std::uint64_t m = negative ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  std::uint64_t kernel = 1;
  for (std::uint32_t q : trial_primes()) {
    if (static_cast<std::uint64_t>(q) * q > m) break;
    if (m % q) continue;
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e & 1) kernel *= q;
  }
  // Every prime factor of the cofactor now exceeds min(sqrt m, 10^6): m is 1,
  // a prime, the square of a prime, or a product of large primes.
  if (m > 1 && !arith::is_perfect_square(m)) {
    if (arith::is_prime(m)) {
      kernel *= m;
    } else {
      for (auto [q, e] : arith::factor(m)) {
        if (e & 1) kernel *= q;
      }
    }
  }
  const auto k = static_cast<std::int64_t>(kernel);
  return negative ? -k : k;
}

QuadDisc frobenius_field(std::int64_t a, std::uint64_t q) {
  const i128 disc = static_cast<i128>(a) * a - 4 * static_cast<i128>(q);
  if (disc > 0) {
    throw Error(ErrorCode::HasseViolation,
                "a = " + std::to_string(a) + " exceeds 2 sqrt(" + std::to_string(q) + ")");
  }
  if (disc == 0) return QuadDisc{1};
  return QuadDisc{squarefree_kernel(static_cast<std::int64_t>(disc))};
}

bool shared_field(const FrobeniusSample& s1, const FrobeniusSample& s2) {
  if (s1.q != s2.q || s1.f != s2.f) {
    throw Error(ErrorCode::MismatchedPrime, "samples come from different primes");
  }
  return frobenius_field(s1.a, s1.q) == frobenius_field(s2.a, s2.q);
}

KernelTracePrediction predict_kernel_trace(const FrobeniusSample& s1, const FrobeniusSample& s2, bool divides_6n1n2) {
  if (s1.q != s2.q || s1.f != s2.f) {
    throw Error(ErrorCode::MismatchedPrime, "samples come from different primes");
  }
  if (s1.f >= 2) return {KernelTraceCase::HigherDegree, false};
  if (frobenius_field(s1.a, s1.q).has_extra_units() || frobenius_field(s2.a, s2.q).has_extra_units()) {
    return {KernelTraceCase::ExcludedCM, false};
  }
  if (divides_6n1n2) return {KernelTraceCase::ExcludedPrime, false};
  return {KernelTraceCase::Equiv, std::llabs(s1.a) == std::llabs(s2.a)};
}

}  // namespace frobcount
