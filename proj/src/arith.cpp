#include "frobcount/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "frobcount/error.hpp"

namespace frobcount {

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 parse_i128(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  if (i == s.size()) throw Error(ErrorCode::ParseError, "empty integer '" + s + "'");
  u128 v = 0;
  const u128 limit = (static_cast<u128>(1) << 126);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::ParseError, "bad digit in '" + s + "'");
    v = v * 10 + static_cast<unsigned>(s[i] - '0');
    if (v > limit) throw Error(ErrorCode::Overflow, "integer too large '" + s + "'");
  }
  return neg ? -static_cast<i128>(v) : static_cast<i128>(v);
}

namespace arith {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorCode::InvalidArgument, "element is not invertible");
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m))
               : static_cast<std::uint64_t>(t);
}

std::uint64_t reduce(std::int64_t a, std::uint64_t m) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % m;
  std::uint64_t r = static_cast<std::uint64_t>(-(a + 1)) % m;
  return (m - 1 - r) % m;
}

std::uint64_t reduce(i128 a, std::uint64_t m) {
  if (a >= 0) return static_cast<std::uint64_t>(static_cast<u128>(a) % m);
  u128 r = static_cast<u128>(-(a + 1)) % m;
  return static_cast<std::uint64_t>((m - 1 - r) % m);
}

int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (legendre(z, p) != -1) ++z;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t x = powmod(a, (q + 1) / 2, p);
  std::uint64_t t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return x;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t isqrt(u128 n) {
  if (n >> 64 == 0) return isqrt(static_cast<std::uint64_t>(n));
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(std::uint64_t n) {
  std::uint64_t r = isqrt(n);
  return r * r == n;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (const auto& [q, e] : factor(m)) {
    if (e > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return addmod(mulmod(x, x, n), c, n); };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::uint64_t> raw;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % q == 0) {
      raw.push_back(q);
      n /= q;
    }
  }
  for (std::uint64_t q = 17; q < 1000 && q * q <= n; q += 2) {
    while (n % q == 0) {
      raw.push_back(q);
      n /= q;
    }
  }
  factor_into(n, raw);
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t q : raw) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1);
    }
  }
  return out;
}

SegmentedSieve::SegmentedSieve(std::uint64_t lo, std::uint64_t hi, std::uint64_t block_size)
    : lo_(std::max<std::uint64_t>(lo, 2)), hi_(hi), block_size_(std::max<std::uint64_t>(block_size, 64)) {
  block_count_ = hi_ < lo_ ? 0 : static_cast<std::size_t>((hi_ - lo_) / block_size_ + 1);
  base_primes_ = primes_up_to(static_cast<std::uint32_t>(isqrt(hi_) + 1));
}

std::pair<std::uint64_t, std::uint64_t> SegmentedSieve::block_range(std::size_t block) const {
  std::uint64_t a = lo_ + block * block_size_;
  std::uint64_t b = std::min(hi_, a + block_size_ - 1);
  return {a, b};
}

std::vector<std::uint64_t> SegmentedSieve::block_primes(std::size_t block) const {
  auto [a, b] = block_range(block);
  std::vector<char> composite(b - a + 1, 0);
  for (std::uint32_t q : base_primes_) {
    std::uint64_t qq = static_cast<std::uint64_t>(q) * q;
    if (qq > b) break;
    std::uint64_t start = std::max(qq, (a + q - 1) / q * q);
    for (std::uint64_t j = start; j <= b; j += q) composite[j - a] = 1;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = a; n <= b; ++n) {
    if (!composite[n - a]) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> SegmentedSieve::all_primes() const {
  std::vector<std::uint64_t> out;
  for (std::size_t blk = 0; blk < block_count_; ++blk) {
    auto part = block_primes(blk);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::uint64_t prime_pi(std::uint64_t x) {
  if (x < 2) return 0;
  SegmentedSieve sieve(2, x);
  std::uint64_t count = 0;
  for (std::size_t blk = 0; blk < sieve.block_count(); ++blk) count += sieve.block_primes(blk).size();
  return count;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace arith
}  // namespace frobcount
