#pragma once

// Word-size modular arithmetic, primality, sieving and factoring helpers
// shared by every other module.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frobcount {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);
i128 parse_i128(const std::string& s);

namespace arith {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; a must be a unit.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Canonical residue of a signed value.
std::uint64_t reduce(std::int64_t a, std::uint64_t m);
std::uint64_t reduce(i128 a, std::uint64_t m);

/// Legendre symbol (a/p) for an odd prime p: -1, 0 or 1.
int legendre(std::uint64_t a, std::uint64_t p);

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);
std::uint64_t isqrt(u128 n);
bool is_perfect_square(std::uint64_t n);

/// True iff n has no repeated prime factor (n != 0).
bool is_squarefree(std::int64_t n);

/// All primes <= limit, plain Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Prime factorization with multiplicities, ascending.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n);

/// Segmented Eratosthenes over [lo, hi]. Blocks are independent, so callers
/// may sieve them on different threads.
class SegmentedSieve {
 public:
  SegmentedSieve(std::uint64_t lo, std::uint64_t hi, std::uint64_t block_size = 1u << 20);

  std::size_t block_count() const { return block_count_; }
  std::pair<std::uint64_t, std::uint64_t> block_range(std::size_t block) const;

  /// Primes in the given block, ascending.
  std::vector<std::uint64_t> block_primes(std::size_t block) const;

  /// Every prime in [lo, hi], ascending.
  std::vector<std::uint64_t> all_primes() const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::uint64_t block_size_;
  std::size_t block_count_;
  std::vector<std::uint32_t> base_primes_;
};

/// Number of primes <= x via SegmentedSieve.
std::uint64_t prime_pi(std::uint64_t x);

/// 64-bit FNV-1a, used for content hashes and seeds.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace arith
}  // namespace frobcount
