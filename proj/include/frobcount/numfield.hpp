#pragma once

// Base fields of degree at most two and their prime ideals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobcount/arith.hpp"

namespace frobcount {

enum class FieldKind { Rational, Quadratic };

/// Q, or Q(sqrt D) with D squarefree and not 0 or 1.
class NumberField {
 public:
  static NumberField rational();
  /// Throws NonSquarefreeDisc or InvalidDisc.
  static NumberField quadratic(std::int64_t disc);

  FieldKind kind() const { return kind_; }
  std::int64_t disc() const { return disc_; }
  int degree() const { return kind_ == FieldKind::Rational ? 1 : 2; }

  /// "Q" or "Q(sqrt D)".
  std::string to_string() const;

  friend bool operator==(const NumberField&, const NumberField&) = default;

 private:
  NumberField(FieldKind kind, std::int64_t disc) : kind_(kind), disc_(disc) {}

  FieldKind kind_;
  std::int64_t disc_;
};

/// Accepts "Q", "Q(sqrt D)" and "Q(sqrt(D))" with optional whitespace.
NumberField parse_field(const std::string& text);

enum class SplitType { Split, Inert, Ramified };

SplitType splitting_type(const NumberField& field, std::uint64_t p);

/// A prime ideal of the base field. Over a quadratic field, `root` is the
/// residue of sqrt D at a degree-one ideal; `branch` separates the two ideals
/// above 2 when 2 splits (both send sqrt D to 1 on Z[sqrt D]).
struct PrimeIdeal {
  std::uint64_t p = 0;
  int f = 1;
  std::uint64_t norm = 0;
  std::optional<std::uint64_t> root;
  int branch = 0;

  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

/// Norm order, then root, then branch.
bool ideal_less(const PrimeIdeal& a, const PrimeIdeal& b);

/// Degree-one ideals above the rational prime p (empty when p is inert).
std::vector<PrimeIdeal> degree_one_ideals_above(const NumberField& field, std::uint64_t p);

/// Every degree-one ideal with norm in [lo, hi], in ideal_less order.
std::vector<PrimeIdeal> degree_one_primes(const NumberField& field, std::uint64_t lo, std::uint64_t hi,
                                          std::uint64_t block_size = 1u << 20);

inline std::vector<PrimeIdeal> degree_one_primes(const NumberField& field, std::uint64_t x_max) {
  return degree_one_primes(field, 2, x_max);
}

/// Degree-two ideals (odd inert p) with norm p^2 in [lo, hi]. The ideal above
/// an inert 2 is not representable on Z[sqrt D] and is never emitted.
std::vector<PrimeIdeal> degree_two_primes(const NumberField& field, std::uint64_t lo, std::uint64_t hi);

/// Number of degree-two ideals of norm <= x, including any not emitted.
std::uint64_t count_degree_two(const NumberField& field, std::uint64_t x);

/// a + b sqrt D; b is always zero over Q.
struct FieldElem {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// Residue of e at a degree-one ideal. Throws DegreeTooHigh when f >= 2.
std::uint64_t reduce_element(const NumberField& field, const FieldElem& e, const PrimeIdeal& ideal);

/// Element of F_p[s]/(s^2 - D) for an inert odd p: u + v s.
struct Fp2Elem {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  friend bool operator==(const Fp2Elem&, const Fp2Elem&) = default;
};

/// Residue of e at a degree-two ideal.
Fp2Elem reduce_element_fp2(const NumberField& field, const FieldElem& e, const PrimeIdeal& ideal);

/// Exact element of Z[sqrt D] with 128-bit components, used for discriminants.
struct WideElem {
  i128 a = 0;
  i128 b = 0;
};

WideElem widen(const FieldElem& e);
WideElem add(const WideElem& x, const WideElem& y);
WideElem sub(const WideElem& x, const WideElem& y);
WideElem mul(const NumberField& field, const WideElem& x, const WideElem& y);
WideElem scale(i128 k, const WideElem& x);
/// a^2 - D b^2 (or a over Q, as a signed value).
i128 norm(const NumberField& field, const WideElem& x);

}  // namespace frobcount
