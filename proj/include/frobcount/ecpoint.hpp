#pragma once

// Weierstrass models over the base field, their reductions at prime ideals,
// and two independent point-counting backends for F_p.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "frobcount/numfield.hpp"

namespace frobcount {

/// Integral long Weierstrass model [a1, a2, a3, a4, a6].
struct Curve {
  NumberField field = NumberField::rational();
  std::array<FieldElem, 5> a{};
  WideElem disc;
  i128 disc_norm = 0;
  std::optional<i128> cond_norm_hint;

  /// Canonical "[a1,a2,a3,a4,a6]" form; coefficients over a quadratic field print as "a+b*w".
  std::string to_string() const;
};

/// Throws InvalidArgument for a singular model.
Curve make_curve(const NumberField& field, const std::array<FieldElem, 5>& coeffs,
                 std::optional<i128> cond_norm_hint = std::nullopt);

/// Parses "[a1,a2,a3,a4,a6]"; each coefficient is "a" or "a+b*w" (w = sqrt D).
/// ParseError messages carry the 1-based column of the offending character.
Curve parse_curve(const std::string& text, const NumberField& field,
                  std::optional<i128> cond_norm_hint = std::nullopt);

/// Discriminant of [a1..a6] in Z[sqrt D].
WideElem model_discriminant(const NumberField& field, const std::array<FieldElem, 5>& a);

/// A model over F_p with nonzero discriminant.
class ReducedCurve {
 public:
  /// nullopt when the reduced discriminant vanishes.
  static std::optional<ReducedCurve> make(std::uint64_t p, const std::array<std::uint64_t, 5>& a);

  std::uint64_t p() const { return p_; }
  const std::array<std::uint64_t, 5>& coeffs() const { return a_; }
  std::uint64_t discriminant() const;

 private:
  ReducedCurve(std::uint64_t p, const std::array<std::uint64_t, 5>& a) : p_(p), a_(a) {}
  std::uint64_t p_;
  std::array<std::uint64_t, 5> a_;
};

struct BadReduction {
  friend bool operator==(const BadReduction&, const BadReduction&) = default;
};

/// Throws DegreeTooHigh for f >= 2.
std::variant<ReducedCurve, BadReduction> reduce_curve(const Curve& curve, const PrimeIdeal& ideal);

inline constexpr std::uint64_t kDefaultNaiveCutoff = 5000;

/// Exact #E(F_p) by character sums (exhaustive (x, y) loop for p = 2, 3).
/// Throws CutoffExceeded when p >= cutoff.
std::uint64_t count_points_naive(const ReducedCurve& curve, std::uint64_t cutoff = kDefaultNaiveCutoff);

struct BsgsOptions {
  int max_points = 48;
  bool allow_fallback = true;
  /// Largest p for which an unresolved ambiguity falls back to the naive count.
  std::uint64_t fallback_limit = 1u << 22;
};

struct BsgsResult {
  std::uint64_t order = 0;
  int points_used = 0;
  bool fell_back = false;
};

/// #E(F_p) for p > 3 via baby-step/giant-step inside the Hasse interval, with
/// the quadratic twist used to rule out spurious multiples.
/// Throws AmbiguousOrder if the candidates never narrow to one and fallback is not permitted.
BsgsResult count_points_bsgs(const ReducedCurve& curve, std::uint64_t seed, const BsgsOptions& opts = {});

enum class Backend { Naive, Bsgs, Exhaustive };

struct TraceValue {
  std::int64_t a = 0;
  Backend backend = Backend::Naive;
  bool fell_back = false;
};

struct TraceOptions {
  std::uint64_t naive_cutoff = kDefaultNaiveCutoff;
  BsgsOptions bsgs;
  std::uint64_t seed = 0;
};

/// Per-(curve, ideal) generator seed; identical inputs give identical draws.
std::uint64_t trace_seed(const Curve& curve, const PrimeIdeal& ideal, std::uint64_t base_seed);

/// a = N(p) + 1 - #E(F_p) at a degree-one ideal. Throws DegreeTooHigh for f >= 2.
std::variant<TraceValue, BadReduction> trace_of_frobenius(const Curve& curve, const PrimeIdeal& ideal,
                                                          const TraceOptions& opts = {});

/// Exhaustive trace at a degree-two ideal (norm p^2, p odd and inert).
std::variant<TraceValue, BadReduction> trace_of_frobenius_degree_two(const Curve& curve, const PrimeIdeal& ideal);

namespace ec {

/// y^2 = x^3 + A x + B over F_p, p > 3.
struct ShortCurve {
  std::uint64_t p = 0;
  std::uint64_t A = 0;
  std::uint64_t B = 0;
};

struct Point {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  bool inf = true;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Isomorphic short model of a long model over F_p, p > 3.
ShortCurve short_model(const ReducedCurve& curve);

/// Twist by a non-residue d: y^2 = x^3 + A d^2 x + B d^3.
ShortCurve quadratic_twist(const ShortCurve& curve, std::uint64_t d);

ReducedCurve as_reduced(const ShortCurve& curve);

bool on_curve(const ShortCurve& curve, const Point& pt);
Point negate(const ShortCurve& curve, const Point& pt);
Point add(const ShortCurve& curve, const Point& p1, const Point& p2);
Point multiply(const ShortCurve& curve, const Point& pt, std::uint64_t k);
Point random_point(const ShortCurve& curve, std::mt19937_64& rng);

/// Exact order of pt given any multiple n with n * pt = O.
std::uint64_t order_from_multiple(const ShortCurve& curve, const Point& pt, std::uint64_t n);

}  // namespace ec
}  // namespace frobcount
