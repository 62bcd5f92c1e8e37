#include "frobcount/ecpoint.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "frobcount/error.hpp"

namespace frobcount {

using arith::addmod;
using arith::mulmod;
using arith::submod;

namespace {

struct BInvariants {
  std::uint64_t b2, b4, b6, b8;
};

BInvariants b_invariants(std::uint64_t p, const std::array<std::uint64_t, 5>& a) {
  const auto [a1, a2, a3, a4, a6] = a;
  auto m = [p](std::uint64_t x, std::uint64_t y) { return mulmod(x, y, p); };
  BInvariants r{};
  r.b2 = addmod(m(a1, a1), m(4 % p, a2), p);
  r.b4 = addmod(m(2 % p, a4), m(a1, a3), p);
  r.b6 = addmod(m(a3, a3), m(4 % p, a6), p);
  std::uint64_t plus = addmod(addmod(m(m(a1, a1), a6), m(4 % p, m(a2, a6)), p), m(a2, m(a3, a3)), p);
  std::uint64_t minus = addmod(m(a1, m(a3, a4)), m(a4, a4), p);
  r.b8 = submod(plus, minus, p);
  return r;
}

std::uint64_t reduced_discriminant(std::uint64_t p, const std::array<std::uint64_t, 5>& a) {
  auto [b2, b4, b6, b8] = b_invariants(p, a);
  auto m = [p](std::uint64_t x, std::uint64_t y) { return mulmod(x, y, p); };
  std::uint64_t d = submod(0, m(m(b2, b2), b8), p);
  d = submod(d, m(8 % p, m(b4, m(b4, b4))), p);
  d = submod(d, m(27 % p, m(b6, b6)), p);
  d = addmod(d, m(9 % p, m(b2, m(b4, b6))), p);
  return d;
}

// Exhaustive (x, y) loop on the long model; used for p = 2, 3.
std::uint64_t count_exhaustive(std::uint64_t p, const std::array<std::uint64_t, 5>& a) {
  const auto [a1, a2, a3, a4, a6] = a;
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) {
      std::uint64_t lhs = (y * y + a1 * x * y + a3 * y) % p;
      std::uint64_t rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p;
      if (lhs == rhs) ++n;
    }
  }
  return n;
}

// 1 + sum_x (1 + chi(disc_x)) after completing the square in y.
std::uint64_t count_character_sum(std::uint64_t p, const std::array<std::uint64_t, 5>& a) {
  const auto [a1, a2, a3, a4, a6] = a;
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= p / 2; ++y) chi[mulmod(y, y, p)] = 1;
  std::int64_t total = static_cast<std::int64_t>(p) + 1;
  const std::uint64_t four = 4 % p;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t f = addmod(mulmod(addmod(mulmod(addmod(x, a2, p), x, p), a4, p), x, p), a6, p);
    std::uint64_t lin = addmod(mulmod(a1, x, p), a3, p);
    total += chi[addmod(mulmod(lin, lin, p), mulmod(four, f, p), p)];
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t count_naive_unchecked(const ReducedCurve& curve) {
  if (curve.p() <= 3) return count_exhaustive(curve.p(), curve.coeffs());
  return count_character_sum(curve.p(), curve.coeffs());
}

}  // namespace

std::optional<ReducedCurve> ReducedCurve::make(std::uint64_t p, const std::array<std::uint64_t, 5>& a) {
  std::array<std::uint64_t, 5> r{};
  for (std::size_t i = 0; i < 5; ++i) r[i] = a[i] % p;
  if (reduced_discriminant(p, r) == 0) return std::nullopt;
  return ReducedCurve(p, r);
}

std::uint64_t ReducedCurve::discriminant() const { return reduced_discriminant(p_, a_); }

std::variant<ReducedCurve, BadReduction> reduce_curve(const Curve& curve, const PrimeIdeal& ideal) {
  std::array<std::uint64_t, 5> r{};
  for (std::size_t i = 0; i < 5; ++i) r[i] = reduce_element(curve.field, curve.a[i], ideal);
  auto reduced = ReducedCurve::make(ideal.p, r);
  if (!reduced) return BadReduction{};
  return *reduced;
}

std::uint64_t count_points_naive(const ReducedCurve& curve, std::uint64_t cutoff) {
  if (curve.p() >= cutoff) {
    throw Error(ErrorCode::CutoffExceeded,
                "p = " + std::to_string(curve.p()) + " is not below the naive cutoff " + std::to_string(cutoff));
  }
  return count_naive_unchecked(curve);
}

namespace ec {

ShortCurve short_model(const ReducedCurve& curve) {
  const std::uint64_t p = curve.p();
  if (p <= 3) throw Error(ErrorCode::InvalidArgument, "short model needs p > 3");
  auto [b2, b4, b6, b8] = b_invariants(p, curve.coeffs());
  (void)b8;
  auto m = [p](std::uint64_t x, std::uint64_t y) { return mulmod(x, y, p); };
  std::uint64_t c4 = submod(m(b2, b2), m(24 % p, b4), p);
  std::uint64_t c6 = addmod(submod(m(36 % p, m(b2, b4)), m(b2, m(b2, b2)), p), p - m(216 % p, b6), p);
  return ShortCurve{p, submod(0, m(27 % p, c4), p), submod(0, m(54 % p, c6), p)};
}

ShortCurve quadratic_twist(const ShortCurve& c, std::uint64_t d) {
  const std::uint64_t p = c.p;
  std::uint64_t d2 = mulmod(d, d, p);
  return ShortCurve{p, mulmod(c.A, d2, p), mulmod(c.B, mulmod(d2, d, p), p)};
}

ReducedCurve as_reduced(const ShortCurve& c) {
  auto r = ReducedCurve::make(c.p, {0, 0, 0, c.A, c.B});
  if (!r) throw Error(ErrorCode::InvalidArgument, "singular short model");
  return *r;
}

bool on_curve(const ShortCurve& c, const Point& pt) {
  if (pt.inf) return true;
  const std::uint64_t p = c.p;
  std::uint64_t rhs = addmod(mulmod(addmod(mulmod(pt.x, pt.x, p), c.A, p), pt.x, p), c.B, p);
  return mulmod(pt.y, pt.y, p) == rhs;
}

Point negate(const ShortCurve& c, const Point& pt) {
  if (pt.inf) return pt;
  return Point{pt.x, pt.y == 0 ? 0 : c.p - pt.y, false};
}

Point add(const ShortCurve& c, const Point& p1, const Point& p2) {
  if (p1.inf) return p2;
  if (p2.inf) return p1;
  const std::uint64_t p = c.p;
  std::uint64_t lambda;
  if (p1.x == p2.x) {
    if (p1.y != p2.y || p1.y == 0) return Point{};
    std::uint64_t num = addmod(mulmod(3, mulmod(p1.x, p1.x, p), p), c.A, p);
    lambda = mulmod(num, arith::invmod(addmod(p1.y, p1.y, p), p), p);
  } else {
    lambda = mulmod(submod(p2.y, p1.y, p), arith::invmod(submod(p2.x, p1.x, p), p), p);
  }
  std::uint64_t x3 = submod(submod(mulmod(lambda, lambda, p), p1.x, p), p2.x, p);
  std::uint64_t y3 = submod(mulmod(lambda, submod(p1.x, x3, p), p), p1.y, p);
  return Point{x3, y3, false};
}

Point multiply(const ShortCurve& c, const Point& pt, std::uint64_t k) {
  Point result{};
  Point base = pt;
  while (k > 0) {
    if (k & 1) result = add(c, result, base);
    k >>= 1;
    if (k) base = add(c, base, base);
  }
  return result;
}

Point random_point(const ShortCurve& c, std::mt19937_64& rng) {
  const std::uint64_t p = c.p;
  std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
  for (;;) {
    std::uint64_t x = pick(rng);
    std::uint64_t rhs = addmod(mulmod(addmod(mulmod(x, x, p), c.A, p), x, p), c.B, p);
    if (rhs == 0) return Point{x, 0, false};
    if (arith::legendre(rhs, p) != 1) continue;
    std::uint64_t y = arith::sqrtmod(rhs, p);
    if (rng() & 1) y = p - y;
    return Point{x, y, false};
  }
}

std::uint64_t order_from_multiple(const ShortCurve& c, const Point& pt, std::uint64_t n) {
  std::uint64_t order = n;
  for (auto [q, e] : arith::factor(n)) {
    for (int i = 0; i < e; ++i) {
      if (!multiply(c, pt, order / q).inf) break;
      order /= q;
    }
  }
  return order;
}

}  // namespace ec

namespace {

// Some n in [lo, hi] with n * pt = O, found by baby-step/giant-step.
std::optional<std::uint64_t> multiple_in_interval(const ec::ShortCurve& c, const ec::Point& pt, std::uint64_t lo,
                                                  std::uint64_t hi) {
  if (pt.inf) return lo;
  const std::uint64_t width = hi - lo + 1;
  const std::uint64_t m = arith::isqrt(width) + 1;
  std::unordered_multimap<std::uint64_t, std::uint64_t> baby;
  baby.reserve(m * 2);
  ec::Point step = pt;
  for (std::uint64_t j = 1; j <= m; ++j) {
    if (step.inf) {
      // pt has order dividing j; any multiple of j in range works.
      std::uint64_t n = (lo + j - 1) / j * j;
      return n <= hi ? std::optional<std::uint64_t>(n) : std::nullopt;
    }
    baby.emplace(step.x, j);
    step = ec::add(c, step, pt);
  }
  const ec::Point giant = ec::multiply(c, pt, 2 * m + 1);
  std::uint64_t base = lo + m;
  ec::Point r = ec::multiply(c, pt, base);
  for (; base < hi + m + 1; base += 2 * m + 1) {
    if (r.inf) {
      if (base <= hi) return base;
    } else {
      auto [first, last] = baby.equal_range(r.x);
      for (auto it = first; it != last; ++it) {
        for (std::uint64_t n : {base - it->second, base + it->second}) {
          if (n >= lo && n <= hi && ec::multiply(c, pt, n).inf) return n;
        }
      }
    }
    r = ec::add(c, r, giant);
  }
  return std::nullopt;
}

}  // namespace

namespace {

std::uint64_t prime_power_part(std::uint64_t n, std::uint64_t q) {
  std::uint64_t part = 1;
  while (n % q == 0) {
    n /= q;
    part *= q;
  }
  return part;
}

// Known divisor of the group order for one curve: the lcm of every subgroup
// order found so far, together with a point of the largest order seen.
class SubgroupTracker {
 public:
  explicit SubgroupTracker(const ec::ShortCurve& c) : c_(c) {}

  std::uint64_t divisor() const { return divisor_; }

  void add_order(std::uint64_t ord) { divisor_ = std::lcm(divisor_, ord); }

  // Merges q (of order ord_q) into the tracked subgroup data.
  void absorb(const ec::Point& q, std::uint64_t ord_q) {
    add_order(ord_q);
    if (ord_p_ == 0) {
      set_generator(q, ord_q);
      return;
    }
    const std::uint64_t ord_lcm = std::lcm(ord_p_, ord_q);
    if (ord_lcm != ord_p_) {
      ec::Point combined{};
      for (auto [r, e] : arith::factor(ord_lcm)) {
        (void)e;
        const std::uint64_t pp = prime_power_part(ord_p_, r), qp = prime_power_part(ord_q, r);
        const ec::Point part = pp >= qp ? ec::multiply(c_, p_, ord_p_ / pp) : ec::multiply(c_, q, ord_q / qp);
        combined = ec::add(c_, combined, part);
      }
      set_generator(combined, ord_lcm);
    }
    // Order of q modulo <p>, hence |<p, q>| = ord_p * index.
    std::vector<std::uint64_t> divs{1};
    for (auto [r, e] : arith::factor(ord_q)) {
      const std::size_t n = divs.size();
      std::uint64_t pw = 1;
      for (int i = 0; i < e; ++i) {
        pw *= r;
        for (std::size_t k = 0; k < n; ++k) divs.push_back(divs[k] * pw);
      }
    }
    std::sort(divs.begin(), divs.end());
    for (std::uint64_t j : divs) {
      if (in_generated(ec::multiply(c_, q, j))) {
        add_order(ord_p_ * j);
        break;
      }
    }
  }

 private:
  void set_generator(const ec::Point& p, std::uint64_t ord) {
    p_ = p;
    ord_p_ = ord;
    step_ = arith::isqrt(ord) + 1;
    baby_.clear();
    ec::Point cur{};
    for (std::uint64_t i = 0; i < step_; ++i) {
      baby_.emplace(key(cur), i);
      cur = ec::add(c_, cur, p_);
    }
    giant_ = ec::negate(c_, ec::multiply(c_, p_, step_));
  }

  static std::uint64_t key(const ec::Point& pt) { return pt.inf ? ~0ULL : pt.x * 2 + (pt.y & 1); }

  // Baby-step/giant-step membership test in the cyclic group generated by p_.
  bool in_generated(const ec::Point& target) const {
    ec::Point cur = target;
    for (std::uint64_t k = 0; k <= step_; ++k) {
      auto [first, last] = baby_.equal_range(key(cur));
      for (auto it = first; it != last; ++it) {
        if (ec::multiply(c_, p_, it->second) == cur) return true;
      }
      cur = ec::add(c_, cur, giant_);
    }
    return false;
  }

  const ec::ShortCurve& c_;
  ec::Point p_{};
  std::uint64_t ord_p_ = 0;
  std::uint64_t step_ = 0;
  ec::Point giant_{};
  std::unordered_multimap<std::uint64_t, std::uint64_t> baby_;
  std::uint64_t divisor_ = 1;
};

}  // namespace

BsgsResult count_points_bsgs(const ReducedCurve& curve, std::uint64_t seed, const BsgsOptions& opts) {
  const std::uint64_t p = curve.p();
  if (p <= 3) throw Error(ErrorCode::InvalidArgument, "BSGS backend needs p > 3");
  const ec::ShortCurve e = ec::short_model(curve);
  std::uint64_t nonresidue = 2;
  while (arith::legendre(nonresidue, p) != -1) ++nonresidue;
  const ec::ShortCurve twist = ec::quadratic_twist(e, nonresidue);

  const std::uint64_t center = p + 1;
  const std::uint64_t w = arith::isqrt(4 * static_cast<u128>(p));
  const std::uint64_t lo = center - w, hi = center + w;
  // Twist order is 2(p+1) - N and lies in the same interval.
  std::mt19937_64 rng(arith::splitmix64(seed));

  SubgroupTracker on_e(e), on_t(twist);
  std::vector<std::uint64_t> candidates;
  BsgsResult result;
  for (int k = 0; k < opts.max_points; ++k) {
    const bool on_twist = (k % 2) == 1;
    const ec::ShortCurve& c = on_twist ? twist : e;
    SubgroupTracker& tracker = on_twist ? on_t : on_e;
    ec::Point pt = ec::random_point(c, rng);
    ++result.points_used;
    auto n = multiple_in_interval(c, pt, lo, hi);
    if (!n) throw Error(ErrorCode::AmbiguousOrder, "no multiple in the Hasse interval at p = " + std::to_string(p));
    const std::uint64_t ord = ec::order_from_multiple(c, pt, *n);
    tracker.add_order(ord);

    auto narrow = [&] {
      const std::uint64_t de = on_e.divisor(), dt = on_t.divisor();
      candidates.clear();
      for (std::uint64_t cand = (lo + de - 1) / de * de; cand <= hi; cand += de) {
        if ((2 * center - cand) % dt == 0) candidates.push_back(cand);
      }
      return candidates.size() == 1;
    };
    if (narrow() || (tracker.absorb(pt, ord), narrow())) {
      result.order = candidates.front();
      return result;
    }
  }
  if (opts.allow_fallback && p <= opts.fallback_limit) {
    result.order = count_naive_unchecked(curve);
    result.fell_back = true;
    return result;
  }
  throw Error(ErrorCode::AmbiguousOrder, std::to_string(candidates.size()) + " candidate orders remain at p = " +
                                             std::to_string(p));
}

std::uint64_t trace_seed(const Curve& curve, const PrimeIdeal& ideal, std::uint64_t base_seed) {
  std::uint64_t h = arith::fnv1a(curve.to_string());
  h = arith::splitmix64(h ^ ideal.p);
  h = arith::splitmix64(h ^ (ideal.root.value_or(0) * 4 + static_cast<std::uint64_t>(ideal.branch)));
  return arith::splitmix64(h ^ base_seed);
}

std::variant<TraceValue, BadReduction> trace_of_frobenius(const Curve& curve, const PrimeIdeal& ideal,
                                                          const TraceOptions& opts) {
  auto reduced = reduce_curve(curve, ideal);
  if (std::holds_alternative<BadReduction>(reduced)) return BadReduction{};
  const ReducedCurve& rc = std::get<ReducedCurve>(reduced);
  const std::uint64_t p = ideal.p;
  TraceValue tv;
  std::uint64_t order;
  if (p < opts.naive_cutoff || p <= 3) {
    order = count_naive_unchecked(rc);
    tv.backend = Backend::Naive;
  } else {
    auto r = count_points_bsgs(rc, trace_seed(curve, ideal, opts.seed), opts.bsgs);
    order = r.order;
    tv.backend = Backend::Bsgs;
    tv.fell_back = r.fell_back;
  }
  tv.a = static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(order);
  return tv;
}

}  // namespace frobcount
