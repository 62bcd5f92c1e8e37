#pragma once

// Frobenius fields Q(sqrt(a^2 - 4q)) identified by squarefree kernels.

#include <cstdint>

namespace frobcount {

/// Squarefree kernel d of a^2 - 4q; d = 1 encodes Q itself.
struct QuadDisc {
  std::int64_t d = 1;

  bool is_rational() const { return d == 1; }
  /// Q(i) or Q(sqrt -3), the fields with extra units.
  bool has_extra_units() const { return d == -1 || d == -3; }

  friend bool operator==(const QuadDisc&, const QuadDisc&) = default;
};

/// The unique squarefree d with n = d m^2 and sign(d) = sign(n). Throws ZeroInput.
std::int64_t squarefree_kernel(std::int64_t n);

/// Throws HasseViolation when a^2 > 4q.
QuadDisc frobenius_field(std::int64_t a, std::uint64_t q);

/// A trace observed at a prime ideal of norm q and residue degree f.
struct FrobeniusSample {
  std::int64_t a = 0;
  std::uint64_t q = 0;
  int f = 1;
};

/// Whether the two samples have the same Frobenius field. Throws MismatchedPrime.
bool shared_field(const FrobeniusSample& s1, const FrobeniusSample& s2);

enum class KernelTraceCase { Equiv, ExcludedCM, HigherDegree, ExcludedPrime };

struct KernelTracePrediction {
  KernelTraceCase kind = KernelTraceCase::Equiv;
  /// Meaningful for Equiv: the predicted value of shared_field, i.e. |a1| == |a2|.
  bool same_abs_trace = false;
};

/// What the shared-field / shared-|a| equivalence predicts at this prime.
/// `divides_6n1n2` marks a prime whose residue characteristic divides 6 N1 N2.
KernelTracePrediction predict_kernel_trace(const FrobeniusSample& s1, const FrobeniusSample& s2, bool divides_6n1n2);

}  // namespace frobcount
