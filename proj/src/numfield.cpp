#include "frobcount/numfield.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "frobcount/error.hpp"

namespace frobcount {

NumberField NumberField::rational() { return NumberField(FieldKind::Rational, 0); }

NumberField NumberField::quadratic(std::int64_t disc) {
  if (disc == 0 || disc == 1) {
    throw Error(ErrorCode::InvalidDisc, "D must not be 0 or 1, got " + std::to_string(disc));
  }
  if (!arith::is_squarefree(disc)) {
    throw Error(ErrorCode::NonSquarefreeDisc, "D = " + std::to_string(disc) + " has a square factor");
  }
  return NumberField(FieldKind::Quadratic, disc);
}

std::string NumberField::to_string() const {
  if (kind_ == FieldKind::Rational) return "Q";
  return "Q(sqrt " + std::to_string(disc_) + ")";
}

NumberField parse_field(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "Q") return NumberField::rational();
  const std::string prefix = "Q(sqrt";
  if (s.rfind(prefix, 0) != 0 || s.back() != ')') {
    throw Error(ErrorCode::ParseError, "field must be 'Q' or 'Q(sqrt D)', got '" + text + "'");
  }
  std::string body = s.substr(prefix.size(), s.size() - prefix.size() - 1);
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::size_t pos = 0;
  std::int64_t d = 0;
  try {
    d = std::stoll(body, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != body.size()) {
    throw Error(ErrorCode::ParseError, "bad discriminant in '" + text + "'");
  }
  return NumberField::quadratic(d);
}

SplitType splitting_type(const NumberField& field, std::uint64_t p) {
  if (field.kind() == FieldKind::Rational) return SplitType::Split;
  std::int64_t d = field.disc();
  if (p == 2) {
    std::uint64_t r = arith::reduce(d, 8);
    if (r == 1) return SplitType::Split;
    if (r == 5) return SplitType::Inert;
    return SplitType::Ramified;
  }
  int chi = arith::legendre(arith::reduce(d, p), p);
  if (chi == 0) return SplitType::Ramified;
  return chi == 1 ? SplitType::Split : SplitType::Inert;
}

bool ideal_less(const PrimeIdeal& a, const PrimeIdeal& b) {
  return std::make_tuple(a.norm, a.f, a.root.value_or(0), a.branch) <
         std::make_tuple(b.norm, b.f, b.root.value_or(0), b.branch);
}

std::vector<PrimeIdeal> degree_one_ideals_above(const NumberField& field, std::uint64_t p) {
  if (field.kind() == FieldKind::Rational) return {PrimeIdeal{p, 1, p, std::nullopt, 0}};
  std::uint64_t dmod = arith::reduce(field.disc(), p);
  switch (splitting_type(field, p)) {
    case SplitType::Inert:
      return {};
    case SplitType::Ramified:
      return {PrimeIdeal{p, 1, p, dmod % p == 0 ? 0 : 1, 0}};
    case SplitType::Split:
      break;
  }
  if (p == 2) return {PrimeIdeal{2, 1, 2, 1, 0}, PrimeIdeal{2, 1, 2, 1, 1}};
  std::uint64_t r = arith::sqrtmod(dmod, p);
  std::uint64_t lo = std::min(r, p - r), hi = std::max(r, p - r);
  return {PrimeIdeal{p, 1, p, lo, 0}, PrimeIdeal{p, 1, p, hi, 0}};
}

std::vector<PrimeIdeal> degree_one_primes(const NumberField& field, std::uint64_t lo, std::uint64_t hi,
                                          std::uint64_t block_size) {
  std::vector<PrimeIdeal> out;
  if (hi < 2 || hi < lo) return out;
  arith::SegmentedSieve sieve(lo, hi, block_size);
  for (std::size_t blk = 0; blk < sieve.block_count(); ++blk) {
    for (std::uint64_t p : sieve.block_primes(blk)) {
      for (auto& ideal : degree_one_ideals_above(field, p)) out.push_back(ideal);
    }
  }
  return out;
}

std::vector<PrimeIdeal> degree_two_primes(const NumberField& field, std::uint64_t lo, std::uint64_t hi) {
  std::vector<PrimeIdeal> out;
  if (field.kind() == FieldKind::Rational) return out;
  for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(arith::isqrt(hi)))) {
    std::uint64_t q = static_cast<std::uint64_t>(p) * p;
    if (p == 2 || q < lo || q > hi) continue;
    if (splitting_type(field, p) == SplitType::Inert) out.push_back(PrimeIdeal{p, 2, q, std::nullopt, 0});
  }
  return out;
}

std::uint64_t count_degree_two(const NumberField& field, std::uint64_t x) {
  if (field.kind() == FieldKind::Rational) return 0;
  std::uint64_t n = 0;
  for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(arith::isqrt(x)))) {
    if (splitting_type(field, p) == SplitType::Inert) ++n;
  }
  return n;
}

std::uint64_t reduce_element(const NumberField& field, const FieldElem& e, const PrimeIdeal& ideal) {
  if (ideal.f != 1) throw Error(ErrorCode::DegreeTooHigh, "residue degree " + std::to_string(ideal.f));
  std::uint64_t p = ideal.p;
  std::uint64_t a = arith::reduce(e.a, p);
  if (field.kind() == FieldKind::Rational || e.b == 0) return a;
  return arith::addmod(a, arith::mulmod(arith::reduce(e.b, p), ideal.root.value_or(0), p), p);
}

Fp2Elem reduce_element_fp2(const NumberField& field, const FieldElem& e, const PrimeIdeal& ideal) {
  if (ideal.f != 2 || field.kind() != FieldKind::Quadratic) {
    throw Error(ErrorCode::InvalidArgument, "not a degree-two ideal");
  }
  return Fp2Elem{arith::reduce(e.a, ideal.p), arith::reduce(e.b, ideal.p)};
}

namespace {

i128 checked_mul(i128 x, i128 y) {
  i128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error(ErrorCode::Overflow, "discriminant exceeds 128 bits");
  return r;
}

i128 checked_add(i128 x, i128 y) {
  i128 r;
  if (__builtin_add_overflow(x, y, &r)) throw Error(ErrorCode::Overflow, "discriminant exceeds 128 bits");
  return r;
}

}  // namespace

WideElem widen(const FieldElem& e) { return WideElem{e.a, e.b}; }

WideElem add(const WideElem& x, const WideElem& y) { return {checked_add(x.a, y.a), checked_add(x.b, y.b)}; }

WideElem sub(const WideElem& x, const WideElem& y) {
  return {checked_add(x.a, checked_mul(-1, y.a)), checked_add(x.b, checked_mul(-1, y.b))};
}

WideElem mul(const NumberField& field, const WideElem& x, const WideElem& y) {
  i128 d = field.kind() == FieldKind::Rational ? 0 : field.disc();
  return {checked_add(checked_mul(x.a, y.a), checked_mul(d, checked_mul(x.b, y.b))),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a))};
}

WideElem scale(i128 k, const WideElem& x) { return {checked_mul(k, x.a), checked_mul(k, x.b)}; }

i128 norm(const NumberField& field, const WideElem& x) {
  if (field.kind() == FieldKind::Rational) return x.a;
  return checked_add(checked_mul(x.a, x.a), checked_mul(-field.disc(), checked_mul(x.b, x.b)));
}

}  // namespace frobcount
