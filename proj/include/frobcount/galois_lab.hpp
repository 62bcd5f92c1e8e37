#pragma once

// Exhaustive models of GL_2(F_l), the equal-determinant pair group G(l) and
// its distinguished subgroups, together with the trace-relation sets used by
// the counting bounds.

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace frobcount::lab {

inline constexpr std::uint32_t kMaxEll = 13;

/// Entries (a, b; c, d) mod l.
struct Mat2 {
  std::uint8_t a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Throws EllTooLarge for l > 13, InvalidArgument unless l is an odd prime.
void validate_ell(std::uint32_t ell);

/// Serial or OpenMP-parallel execution of the exhaustive kernels.
struct Exec {
  bool parallel = true;
};

/// GL_2(F_l) indexed by determinant fibre: index = (det - 1) * fibre + position.
class GL2 {
 public:
  /// Throws EllTooLarge for l > 13, InvalidArgument unless l is an odd prime.
  explicit GL2(std::uint32_t ell);

  std::uint32_t ell() const { return ell_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(mats_.size()); }
  /// Matrices per determinant value, l (l^2 - 1).
  std::uint32_t fibre() const { return fibre_; }

  const Mat2& mat(std::uint32_t g) const { return mats_[g]; }
  std::uint32_t det(std::uint32_t g) const { return g / fibre_ + 1; }
  std::uint32_t trace(std::uint32_t g) const { return (mats_[g].a + mats_[g].d) % ell_; }
  /// Both eigenvalues lie in F_l.
  bool split(std::uint32_t g) const { return split_[g] != 0; }
  bool upper(std::uint32_t g) const { return mats_[g].c == 0; }

  /// Index of an invertible matrix. Throws ZeroDet for a singular one.
  std::uint32_t index_of(const Mat2& m) const;
  std::uint32_t mul(std::uint32_t g, std::uint32_t h) const;
  std::uint32_t inverse(std::uint32_t g) const { return inverse_[g]; }
  std::uint32_t scalar(std::uint32_t c) const;
  std::uint32_t identity() const { return scalar(1); }
  /// Smallest primitive root mod l.
  std::uint32_t primitive_root() const { return root_; }

  /// Generators of GL_2(F_l): [[1,1],[0,1]], [[1,0],[1,1]], diag(root, 1).
  std::array<std::uint32_t, 3> generators() const;
  /// Permutation g -> s g s^-1.
  std::vector<std::uint32_t> conjugation_table(std::uint32_t s) const;

 private:
  std::uint32_t code(const Mat2& m) const { return ((m.a * ell_ + m.b) * ell_ + m.c) * ell_ + m.d; }

  std::uint32_t ell_;
  std::uint32_t fibre_;
  std::uint32_t root_;
  std::vector<Mat2> mats_;
  std::vector<std::int32_t> by_code_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint8_t> split_;
};

/// G(l) = {(M1, M2) : det M1 = det M2}; element index = first * fibre + (second mod fibre).
class PairGroup {
 public:
  explicit PairGroup(std::uint32_t ell) : gl_(ell) {}

  const GL2& gl() const { return gl_; }
  std::uint32_t ell() const { return gl_.ell(); }
  std::uint64_t size() const { return static_cast<std::uint64_t>(gl_.size()) * gl_.fibre(); }

  std::uint32_t first(std::uint32_t e) const { return e / gl_.fibre(); }
  std::uint32_t second(std::uint32_t e) const {
    const std::uint32_t n = gl_.fibre();
    return (e / (n * n)) * n + e % n;
  }
  /// Throws InvalidArgument when the determinants differ.
  std::uint32_t make(std::uint32_t g1, std::uint32_t g2) const;
  std::uint32_t mul(std::uint32_t e, std::uint32_t f) const {
    return make_unchecked(gl_.mul(first(e), first(f)), gl_.mul(second(e), second(f)));
  }
  std::uint32_t inverse(std::uint32_t e) const {
    return make_unchecked(gl_.inverse(first(e)), gl_.inverse(second(e)));
  }
  std::uint32_t scalar(std::uint32_t c) const { return make_unchecked(gl_.scalar(c), gl_.scalar(c)); }

  bool in_borel(std::uint32_t e) const { return gl_.upper(first(e)) && gl_.upper(second(e)); }
  bool in_unipotent(std::uint32_t e) const;
  bool in_scalar(std::uint32_t e) const;
  /// Scalar times unipotent: upper triangular pairs with one common diagonal value.
  bool in_scaled_unipotent(std::uint32_t e) const;

 private:
  std::uint32_t make_unchecked(std::uint32_t g1, std::uint32_t g2) const {
    return g1 * gl_.fibre() + g2 % gl_.fibre();
  }
  GL2 gl_;
};

struct SubgroupSizes {
  std::uint64_t gl2 = 0;
  std::uint64_t G = 0;
  std::uint64_t B = 0;
  std::uint64_t U = 0;
  std::uint64_t Uprime = 0;
  std::uint64_t Lambda = 0;
  std::uint64_t P = 0;
  std::uint64_t BmodUprime = 0;
};

/// Closed forms for an odd prime l.
SubgroupSizes expected_sizes(std::uint32_t ell);

/// Every size by exhaustive membership tests (P by counting cosets of Lambda).
SubgroupSizes subgroup_sizes(const PairGroup& g, Exec exec = {});

struct ConjugacyClass {
  std::uint32_t rep = 0;
  std::uint64_t size = 0;
};

struct ClassDecomposition {
  std::vector<ConjugacyClass> classes;
  /// Class id per element; empty for quotient decompositions.
  std::vector<std::uint32_t> class_of;
};

ClassDecomposition gl2_classes(const GL2& gl);
ClassDecomposition pair_classes(const PairGroup& g);
/// Classes of G / Lambda from the classes of G; representatives are G elements.
ClassDecomposition projective_classes(const PairGroup& g, const ClassDecomposition& g_classes);

/// Matrices of GL_2(F_l) with determinant d and trace t, by enumeration. Throws ZeroDet.
std::uint64_t count_det_trace(const GL2& gl, std::int64_t d, std::int64_t t);
/// l (l + ((t^2 - 4d) / l)). Throws ZeroDet.
std::uint64_t det_trace_closed_form(std::uint32_t ell, std::int64_t d, std::int64_t t);

/// Coefficients reduced into [0, l).
struct AlphaPair {
  std::uint32_t a1 = 0;
  std::uint32_t a2 = 0;
};

/// Throws BadAlphaPair for (0, 0) or non-coprime input, EllDividesBoth when l divides both.
AlphaPair reduce_alpha(std::uint32_t ell, std::int64_t alpha1, std::int64_t alpha2);

/// The Borel subgroup with its cosets modulo U and modulo U'.
struct BorelData {
  std::vector<std::uint32_t> elems;
  std::unordered_map<std::uint32_t, std::uint32_t> position;
  std::vector<std::uint32_t> unipotent;
  std::vector<std::uint32_t> scaled_unipotent;
  /// Coset id per B position.
  std::vector<std::uint32_t> coset_mod_uprime;
  std::vector<std::uint32_t> coset_mod_u;
  std::vector<std::uint32_t> uprime_reps;
  std::uint32_t uprime_cosets = 0;
  std::uint32_t u_cosets = 0;
};

BorelData borel_data(const PairGroup& g);

struct SetSizes {
  std::uint64_t C0 = 0;
  std::uint64_t C = 0;
  std::uint64_t CBorel = 0;
  std::uint64_t CHatBorel = 0;
  /// Image of C_Borel in B / U (the diagonal torus pairs).
  std::uint64_t CBorelModU = 0;
  std::uint64_t CHatProj = 0;
  bool c_in_c0 = true;
  /// C_Borel built directly from B agrees with C intersected with B.
  bool borel_consistent = true;
};

SetSizes build_sets(const PairGroup& g, const BorelData& borel, AlphaPair alpha, Exec exec = {});

struct ClosureReport {
  bool lambda_normal = false;
  bool uprime_normal = false;
  bool quotient_abelian = false;
  bool uprime_stabilizes_borel_set = false;
  bool classes_meet_borel = false;
  bool lambda_stabilizes_c0 = false;

  bool all() const {
    return lambda_normal && uprime_normal && quotient_abelian && uprime_stabilizes_borel_set &&
           classes_meet_borel && lambda_stabilizes_c0;
  }
};

ClosureReport closure_checks(const PairGroup& g, const BorelData& borel, const ClassDecomposition& g_classes,
                             AlphaPair alpha, Exec exec = {});

struct LabItem {
  std::uint32_t ell = 0;
  std::string alpha;
  std::string name;
  std::string closed_form;
  /// "=" or "<=" between value and bound; "holds" for boolean checks.
  std::string relation;
  std::uint64_t bound = 0;
  std::uint64_t value = 0;
  bool pass = false;
};

struct LabReport {
  std::vector<LabItem> items;
  bool all_pass() const;
  std::size_t failures() const;
};

/// Runs every size, class, det/trace, set-bound and closure check for each l and alpha.
LabReport run_lab(const std::vector<std::uint32_t>& ells, const std::vector<std::pair<std::int64_t, std::int64_t>>& alphas,
                  Exec exec = {});

std::string report_text(const LabReport& r);
std::string report_csv(const LabReport& r);

}  // namespace frobcount::lab
