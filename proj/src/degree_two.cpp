#include <vector>

#include "frobcount/ecpoint.hpp"
#include "frobcount/error.hpp"

namespace frobcount {

namespace {

// F_p[s]/(s^2 - D), elements packed as u + v * p.
struct Fp2 {
  std::uint64_t p;
  std::uint64_t d;

  std::uint64_t size() const { return p * p; }
  std::uint64_t pack(const Fp2Elem& e) const { return e.u + e.v * p; }
  Fp2Elem unpack(std::uint64_t k) const { return {k % p, k / p}; }

  Fp2Elem add(const Fp2Elem& x, const Fp2Elem& y) const { return {(x.u + y.u) % p, (x.v + y.v) % p}; }
  Fp2Elem mul(const Fp2Elem& x, const Fp2Elem& y) const {
    return {(x.u * y.u + d * (x.v * y.v % p)) % p, (x.u * y.v + x.v * y.u) % p};
  }
};

}  // namespace

std::variant<TraceValue, BadReduction> trace_of_frobenius_degree_two(const Curve& curve, const PrimeIdeal& ideal) {
  if (ideal.f != 2 || ideal.p == 2 || curve.field.kind() != FieldKind::Quadratic) {
    throw Error(ErrorCode::InvalidArgument, "degree-two census needs an odd inert prime of a quadratic field");
  }
  const std::uint64_t p = ideal.p;
  if (p > 1000) throw Error(ErrorCode::CutoffExceeded, "degree-two exhaustive count limited to p <= 1000");
  if (arith::reduce(curve.disc.a, p) == 0 && arith::reduce(curve.disc.b, p) == 0) return BadReduction{};

  const Fp2 k{p, arith::reduce(curve.field.disc(), p)};
  std::array<Fp2Elem, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) a[i] = reduce_element_fp2(curve.field, curve.a[i], ideal);
  const auto [a1, a2, a3, a4, a6] = a;

  auto cubic = [&](const Fp2Elem& x) {
    return k.add(k.mul(k.add(k.mul(k.add(x, a2), x), a4), x), a6);
  };

  std::uint64_t count = 1;
  if (p == 3) {
    for (std::uint64_t xi = 0; xi < k.size(); ++xi) {
      Fp2Elem x = k.unpack(xi);
      Fp2Elem rhs = cubic(x);
      Fp2Elem lin = k.add(k.mul(a1, x), a3);
      for (std::uint64_t yi = 0; yi < k.size(); ++yi) {
        Fp2Elem y = k.unpack(yi);
        if (k.add(k.mul(y, y), k.mul(lin, y)) == rhs) ++count;
      }
    }
  } else {
    std::vector<std::uint32_t> roots(k.size(), 0);
    for (std::uint64_t yi = 0; yi < k.size(); ++yi) {
      Fp2Elem y = k.unpack(yi);
      ++roots[k.pack(k.mul(y, y))];
    }
    const Fp2Elem four{4 % p, 0};
    for (std::uint64_t xi = 0; xi < k.size(); ++xi) {
      Fp2Elem x = k.unpack(xi);
      Fp2Elem lin = k.add(k.mul(a1, x), a3);
      count += roots[k.pack(k.add(k.mul(lin, lin), k.mul(four, cubic(x))))];
    }
  }
  TraceValue tv;
  tv.a = static_cast<std::int64_t>(ideal.norm + 1) - static_cast<std::int64_t>(count);
  tv.backend = Backend::Exhaustive;
  return tv;
}

}  // namespace frobcount
