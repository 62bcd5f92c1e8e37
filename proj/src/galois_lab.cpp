#include "frobcount/galois_lab.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "frobcount/arith.hpp"
#include "frobcount/error.hpp"

namespace frobcount::lab {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

std::uint32_t smallest_primitive_root(std::uint32_t ell) {
  const auto factors = arith::factor(ell - 1);
  for (std::uint32_t g = 2; g < ell; ++g) {
    bool ok = true;
    for (const auto& [q, e] : factors) {
      (void)e;
      if (arith::powmod(g, (ell - 1) / q, ell) == 1) ok = false;
    }
    if (ok) return g;
  }
  return 1;
}

// Orbits of {0..n-1} under the maps next(x, k) for k < gens.
template <typename Next>
ClassDecomposition orbit_partition(std::uint64_t n, int gens, Next next) {
  ClassDecomposition out;
  out.class_of.assign(n, kUnset);
  std::vector<std::uint32_t> queue;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (out.class_of[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.classes.size());
    out.class_of[start] = id;
    queue.assign(1, static_cast<std::uint32_t>(start));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int k = 0; k < gens; ++k) {
        const std::uint32_t y = next(queue[head], k);
        if (out.class_of[y] == kUnset) {
          out.class_of[y] = id;
          queue.push_back(y);
        }
      }
    }
    out.classes.push_back({static_cast<std::uint32_t>(start), queue.size()});
  }
  return out;
}

bool in_relation(const PairGroup& g, AlphaPair alpha, std::uint32_t e) {
  const std::uint32_t ell = g.ell();
  return (alpha.a1 * g.gl().trace(g.first(e)) + alpha.a2 * g.gl().trace(g.second(e))) % ell == 0;
}

bool in_split_relation(const PairGroup& g, AlphaPair alpha, std::uint32_t e) {
  return g.gl().split(g.first(e)) && g.gl().split(g.second(e)) && in_relation(g, alpha, e);
}

std::uint32_t scale(const PairGroup& g, std::uint32_t c, std::uint32_t e) { return g.mul(g.scalar(c), e); }

// Smallest index in the Lambda-orbit of e equals e.
bool is_orbit_min(const PairGroup& g, std::uint32_t e) {
  for (std::uint32_t c = 2; c < g.ell(); ++c) {
    if (scale(g, c, e) < e) return false;
  }
  return true;
}

std::string alpha_label(std::int64_t a1, std::int64_t a2) {
  return "(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
}

}  // namespace

void validate_ell(std::uint32_t ell) {
  if (ell > kMaxEll) {
    throw Error(ErrorCode::EllTooLarge, "l = " + std::to_string(ell) + " exceeds " + std::to_string(kMaxEll));
  }
  if (ell < 3 || !arith::is_prime(ell)) {
    throw Error(ErrorCode::InvalidArgument, "l must be an odd prime, got " + std::to_string(ell));
  }
}

GL2::GL2(std::uint32_t ell) : ell_(ell) {
  validate_ell(ell);
  fibre_ = ell * (ell * ell - 1);
  root_ = smallest_primitive_root(ell);
  by_code_.assign(static_cast<std::size_t>(ell) * ell * ell * ell, -1);
  mats_.reserve(static_cast<std::size_t>(fibre_) * (ell - 1));
  for (std::uint32_t det = 1; det < ell; ++det) {
    for (std::uint32_t code = 0; code < by_code_.size(); ++code) {
      const Mat2 m{static_cast<std::uint8_t>(code / (ell * ell * ell)), static_cast<std::uint8_t>(code / (ell * ell) % ell),
                   static_cast<std::uint8_t>(code / ell % ell), static_cast<std::uint8_t>(code % ell)};
      if ((m.a * m.d + ell * ell - m.b * m.c) % ell != det) continue;
      by_code_[code] = static_cast<std::int32_t>(mats_.size());
      mats_.push_back(m);
    }
  }
  inverse_.resize(mats_.size());
  split_.resize(mats_.size());
  for (std::uint32_t g = 0; g < mats_.size(); ++g) {
    const Mat2& m = mats_[g];
    const auto inv = static_cast<std::uint32_t>(arith::invmod(det(g), ell));
    const Mat2 mi{static_cast<std::uint8_t>(m.d * inv % ell), static_cast<std::uint8_t>((ell - m.b) % ell * inv % ell),
                  static_cast<std::uint8_t>((ell - m.c) % ell * inv % ell), static_cast<std::uint8_t>(m.a * inv % ell)};
    inverse_[g] = index_of(mi);
    const std::uint32_t t = trace(g);
    const std::uint64_t disc = (static_cast<std::uint64_t>(t) * t + 4ull * ell * ell - 4ull * det(g)) % ell;
    split_[g] = disc == 0 || arith::legendre(disc, ell) == 1;
  }
}

std::uint32_t GL2::index_of(const Mat2& m) const {
  if (m.a >= ell_ || m.b >= ell_ || m.c >= ell_ || m.d >= ell_) {
    throw Error(ErrorCode::InvalidArgument, "matrix entries must be reduced mod l");
  }
  const std::int32_t idx = by_code_[code(m)];
  if (idx < 0) throw Error(ErrorCode::ZeroDet, "matrix is singular mod " + std::to_string(ell_));
  return static_cast<std::uint32_t>(idx);
}

std::uint32_t GL2::mul(std::uint32_t g, std::uint32_t h) const {
  const Mat2& x = mats_[g];
  const Mat2& y = mats_[h];
  const std::uint32_t l = ell_;
  const Mat2 z{static_cast<std::uint8_t>((x.a * y.a + x.b * y.c) % l), static_cast<std::uint8_t>((x.a * y.b + x.b * y.d) % l),
               static_cast<std::uint8_t>((x.c * y.a + x.d * y.c) % l), static_cast<std::uint8_t>((x.c * y.b + x.d * y.d) % l)};
  return static_cast<std::uint32_t>(by_code_[code(z)]);
}

std::uint32_t GL2::scalar(std::uint32_t c) const {
  const auto v = static_cast<std::uint8_t>(c % ell_);
  return index_of(Mat2{v, 0, 0, v});
}

std::array<std::uint32_t, 3> GL2::generators() const {
  return {index_of(Mat2{1, 1, 0, 1}), index_of(Mat2{1, 0, 1, 1}),
          index_of(Mat2{static_cast<std::uint8_t>(root_), 0, 0, 1})};
}

std::vector<std::uint32_t> GL2::conjugation_table(std::uint32_t s) const {
  std::vector<std::uint32_t> out(size());
  const std::uint32_t s_inv = inverse(s);
  for (std::uint32_t g = 0; g < size(); ++g) out[g] = mul(mul(s, g), s_inv);
  return out;
}

std::uint32_t PairGroup::make(std::uint32_t g1, std::uint32_t g2) const {
  if (gl_.det(g1) != gl_.det(g2)) throw Error(ErrorCode::InvalidArgument, "pair components have different determinants");
  return make_unchecked(g1, g2);
}

bool PairGroup::in_unipotent(std::uint32_t e) const {
  const Mat2& x = gl_.mat(first(e));
  const Mat2& y = gl_.mat(second(e));
  return x.c == 0 && y.c == 0 && x.a == 1 && x.d == 1 && y.a == 1 && y.d == 1;
}

bool PairGroup::in_scalar(std::uint32_t e) const {
  const Mat2& x = gl_.mat(first(e));
  const Mat2& y = gl_.mat(second(e));
  return x.b == 0 && x.c == 0 && x.a == x.d && x == y;
}

bool PairGroup::in_scaled_unipotent(std::uint32_t e) const {
  const Mat2& x = gl_.mat(first(e));
  const Mat2& y = gl_.mat(second(e));
  return x.c == 0 && y.c == 0 && x.a == x.d && y.a == y.d && x.a == y.a;
}

SubgroupSizes expected_sizes(std::uint32_t ell) {
  const std::uint64_t l = ell;
  SubgroupSizes s;
  s.gl2 = (l * l - 1) * (l * l - l);
  s.G = s.gl2 * s.gl2 / (l - 1);
  s.B = (l - 1) * (l - 1) * (l - 1) * l * l;
  s.U = l * l;
  s.Uprime = (l - 1) * l * l;
  s.Lambda = l - 1;
  s.P = (l - 1) * (l - 1) * l * l * (l + 1) * (l + 1);
  s.BmodUprime = (l - 1) * (l - 1);
  return s;
}

SubgroupSizes subgroup_sizes(const PairGroup& g, Exec exec) {
  SubgroupSizes s;
  const std::uint32_t l = g.ell();
  for (std::uint32_t a = 0; a < l; ++a)
    for (std::uint32_t b = 0; b < l; ++b)
      for (std::uint32_t c = 0; c < l; ++c)
        for (std::uint32_t d = 0; d < l; ++d) s.gl2 += (a * d + l * l - b * c) % l != 0 ? 1 : 0;
  const auto n = static_cast<std::int64_t>(g.size());
  std::uint64_t total = 0, B = 0, U = 0, Up = 0, Lam = 0, P = 0;
#pragma omp parallel for schedule(static) reduction(+ : total, B, U, Up, Lam, P) if (exec.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto e = static_cast<std::uint32_t>(i);
    total += g.gl().det(g.first(e)) == g.gl().det(g.second(e)) ? 1 : 0;
    B += g.in_borel(e) ? 1 : 0;
    U += g.in_unipotent(e) ? 1 : 0;
    Up += g.in_scaled_unipotent(e) ? 1 : 0;
    Lam += g.in_scalar(e) ? 1 : 0;
    P += is_orbit_min(g, e) ? 1 : 0;
  }
  s.G = total;
  s.B = B;
  s.U = U;
  s.Uprime = Up;
  s.Lambda = Lam;
  s.P = P;
  s.BmodUprime = borel_data(g).uprime_cosets;
  return s;
}

ClassDecomposition gl2_classes(const GL2& gl) {
  std::vector<std::vector<std::uint32_t>> tables;
  for (std::uint32_t s : gl.generators()) tables.push_back(gl.conjugation_table(s));
  return orbit_partition(gl.size(), static_cast<int>(tables.size()),
                         [&](std::uint32_t x, int k) { return tables[static_cast<std::size_t>(k)][x]; });
}

ClassDecomposition pair_classes(const PairGroup& g) {
  const GL2& gl = g.gl();
  const auto gens = gl.generators();
  const auto conj_s = gl.conjugation_table(gens[0]);
  const auto conj_l = gl.conjugation_table(gens[1]);
  const auto conj_d = gl.conjugation_table(gens[2]);
  const std::uint32_t n = gl.fibre();
  auto pair = [n](std::uint32_t g1, std::uint32_t g2) { return g1 * n + g2 % n; };
  return orbit_partition(g.size(), 5, [&](std::uint32_t e, int k) {
    const std::uint32_t x = g.first(e), y = g.second(e);
    switch (k) {
      case 0: return pair(conj_s[x], y);
      case 1: return pair(conj_l[x], y);
      case 2: return pair(x, conj_s[y]);
      case 3: return pair(x, conj_l[y]);
      default: return pair(conj_d[x], conj_d[y]);
    }
  });
}

ClassDecomposition projective_classes(const PairGroup& g, const ClassDecomposition& g_classes) {
  const std::size_t k = g_classes.classes.size();
  std::vector<std::uint32_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const std::uint32_t gen = g.gl().primitive_root();
  for (std::uint32_t c = 0; c < k; ++c) {
    const std::uint32_t other = g_classes.class_of[scale(g, gen, g_classes.classes[c].rep)];
    const std::uint32_t a = find(c), b = find(other);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  ClassDecomposition out;
  std::vector<std::uint32_t> slot(k, kUnset);
  for (std::uint32_t c = 0; c < k; ++c) {
    const std::uint32_t root = find(c);
    if (slot[root] == kUnset) {
      slot[root] = static_cast<std::uint32_t>(out.classes.size());
      out.classes.push_back({g_classes.classes[root].rep, 0});
    }
    out.classes[slot[root]].size += g_classes.classes[c].size;
  }
  for (auto& cls : out.classes) cls.size /= (g.ell() - 1);
  return out;
}

std::uint64_t count_det_trace(const GL2& gl, std::int64_t d, std::int64_t t) {
  const std::uint64_t dd = arith::reduce(d, gl.ell());
  const std::uint64_t tt = arith::reduce(t, gl.ell());
  if (dd == 0) throw Error(ErrorCode::ZeroDet, "determinant must be nonzero mod " + std::to_string(gl.ell()));
  std::uint64_t count = 0;
  for (std::uint32_t h = 0; h < gl.size(); ++h) {
    if (gl.det(h) == dd && gl.trace(h) == tt) ++count;
  }
  return count;
}

std::uint64_t det_trace_closed_form(std::uint32_t ell, std::int64_t d, std::int64_t t) {
  const std::uint64_t dd = arith::reduce(d, ell);
  if (dd == 0) throw Error(ErrorCode::ZeroDet, "determinant must be nonzero mod " + std::to_string(ell));
  const std::uint64_t tt = arith::reduce(t, ell);
  const std::uint64_t disc = (tt * tt + 4ull * ell - 4 * dd % ell) % ell;
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(ell) * (ell + arith::legendre(disc, ell)));
}

AlphaPair reduce_alpha(std::uint32_t ell, std::int64_t alpha1, std::int64_t alpha2) {
  if (alpha1 == 0 && alpha2 == 0) throw Error(ErrorCode::BadAlphaPair, "alpha = (0,0)");
  const AlphaPair r{static_cast<std::uint32_t>(arith::reduce(alpha1, ell)),
                    static_cast<std::uint32_t>(arith::reduce(alpha2, ell))};
  if (r.a1 == 0 && r.a2 == 0) {
    throw Error(ErrorCode::EllDividesBoth, std::to_string(ell) + " divides both of " + alpha_label(alpha1, alpha2));
  }
  if (std::gcd(alpha1, alpha2) != 1) {
    throw Error(ErrorCode::BadAlphaPair, alpha_label(alpha1, alpha2) + " is not coprime");
  }
  return r;
}

BorelData borel_data(const PairGroup& g) {
  BorelData b;
  for (std::uint32_t e = 0; e < g.size(); ++e) {
    if (!g.in_borel(e)) continue;
    b.position.emplace(e, static_cast<std::uint32_t>(b.elems.size()));
    b.elems.push_back(e);
    if (g.in_unipotent(e)) b.unipotent.push_back(e);
    if (g.in_scaled_unipotent(e)) b.scaled_unipotent.push_back(e);
  }
  auto label = [&](const std::vector<std::uint32_t>& sub, std::vector<std::uint32_t>& coset, std::uint32_t& count,
                   std::vector<std::uint32_t>* reps) {
    coset.assign(b.elems.size(), kUnset);
    for (std::size_t i = 0; i < b.elems.size(); ++i) {
      if (coset[i] != kUnset) continue;
      for (std::uint32_t u : sub) coset[b.position.at(g.mul(b.elems[i], u))] = count;
      if (reps) reps->push_back(b.elems[i]);
      ++count;
    }
  };
  label(b.scaled_unipotent, b.coset_mod_uprime, b.uprime_cosets, &b.uprime_reps);
  label(b.unipotent, b.coset_mod_u, b.u_cosets, nullptr);
  return b;
}

SetSizes build_sets(const PairGroup& g, const BorelData& borel, AlphaPair alpha, Exec exec) {
  SetSizes s;
  const auto n = static_cast<std::int64_t>(g.size());
  std::uint64_t c0 = 0, c = 0, cb = 0, stray = 0, proj = 0;
#pragma omp parallel for schedule(static) reduction(+ : c0, c, cb, stray, proj) if (exec.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto e = static_cast<std::uint32_t>(i);
    const bool in_c0 = in_relation(g, alpha, e);
    const bool in_c = in_split_relation(g, alpha, e);
    c0 += in_c0 ? 1 : 0;
    c += in_c ? 1 : 0;
    cb += in_c && g.in_borel(e) ? 1 : 0;
    stray += in_c && !in_c0 ? 1 : 0;
    if (is_orbit_min(g, e)) {
      bool hit = in_c0;
      for (std::uint32_t k = 2; k < g.ell() && !hit; ++k) hit = in_relation(g, alpha, scale(g, k, e));
      proj += hit ? 1 : 0;
    }
  }
  s.C0 = c0;
  s.C = c;
  s.CBorel = cb;
  s.CHatProj = proj;
  s.c_in_c0 = stray == 0;

  std::vector<std::uint8_t> seen_uprime(borel.uprime_cosets, 0), seen_u(borel.u_cosets, 0);
  std::uint64_t direct = 0;
  for (std::size_t i = 0; i < borel.elems.size(); ++i) {
    if (!in_split_relation(g, alpha, borel.elems[i])) continue;
    ++direct;
    seen_uprime[borel.coset_mod_uprime[i]] = 1;
    seen_u[borel.coset_mod_u[i]] = 1;
  }
  s.borel_consistent = direct == cb;
  s.CHatBorel = static_cast<std::uint64_t>(std::count(seen_uprime.begin(), seen_uprime.end(), 1));
  s.CBorelModU = static_cast<std::uint64_t>(std::count(seen_u.begin(), seen_u.end(), 1));
  return s;
}

ClosureReport closure_checks(const PairGroup& g, const BorelData& borel, const ClassDecomposition& g_classes,
                             AlphaPair alpha, Exec exec) {
  ClosureReport r;
  const auto n = static_cast<std::int64_t>(g.size());

  std::uint64_t bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad) if (exec.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto e = static_cast<std::uint32_t>(i);
    const std::uint32_t e_inv = g.inverse(e);
    for (std::uint32_t c = 1; c < g.ell(); ++c) {
      bad += g.in_scalar(g.mul(g.mul(e, g.scalar(c)), e_inv)) ? 0 : 1;
    }
  }
  r.lambda_normal = bad == 0;

  bad = 0;
  const auto nb = static_cast<std::int64_t>(borel.elems.size());
#pragma omp parallel for schedule(static) reduction(+ : bad) if (exec.parallel)
  for (std::int64_t i = 0; i < nb; ++i) {
    const std::uint32_t b = borel.elems[static_cast<std::size_t>(i)];
    const std::uint32_t b_inv = g.inverse(b);
    for (std::uint32_t u : borel.scaled_unipotent) bad += g.in_scaled_unipotent(g.mul(g.mul(b, u), b_inv)) ? 0 : 1;
  }
  r.uprime_normal = bad == 0;

  bad = 0;
  for (std::uint32_t x : borel.uprime_reps) {
    for (std::uint32_t y : borel.uprime_reps) {
      const std::uint32_t xy = borel.coset_mod_uprime[borel.position.at(g.mul(x, y))];
      const std::uint32_t yx = borel.coset_mod_uprime[borel.position.at(g.mul(y, x))];
      bad += xy == yx ? 0 : 1;
    }
  }
  r.quotient_abelian = bad == 0;

  std::vector<std::uint32_t> borel_set;
  for (std::uint32_t b : borel.elems) {
    if (in_split_relation(g, alpha, b)) borel_set.push_back(b);
  }
  bad = 0;
  const auto ns = static_cast<std::int64_t>(borel_set.size());
#pragma omp parallel for schedule(static) reduction(+ : bad) if (exec.parallel)
  for (std::int64_t i = 0; i < ns; ++i) {
    const std::uint32_t m = borel_set[static_cast<std::size_t>(i)];
    for (std::uint32_t u : borel.scaled_unipotent) {
      const std::uint32_t um = g.mul(u, m);
      bad += g.in_borel(um) && in_split_relation(g, alpha, um) ? 0 : 1;
    }
  }
  r.uprime_stabilizes_borel_set = bad == 0;

  std::vector<std::uint8_t> meets(g_classes.classes.size(), 0);
  for (std::uint32_t b : borel.elems) meets[g_classes.class_of[b]] = 1;
  bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad) if (exec.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto e = static_cast<std::uint32_t>(i);
    if (in_split_relation(g, alpha, e) && !meets[g_classes.class_of[e]]) ++bad;
  }
  r.classes_meet_borel = bad == 0;

  bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad) if (exec.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto e = static_cast<std::uint32_t>(i);
    if (!in_relation(g, alpha, e)) continue;
    for (std::uint32_t c = 2; c < g.ell(); ++c) bad += in_relation(g, alpha, scale(g, c, e)) ? 0 : 1;
  }
  r.lambda_stabilizes_c0 = bad == 0;
  return r;
}

bool LabReport::all_pass() const { return failures() == 0; }

std::size_t LabReport::failures() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const LabItem& i) { return !i.pass; }));
}

LabReport run_lab(const std::vector<std::uint32_t>& ells,
                  const std::vector<std::pair<std::int64_t, std::int64_t>>& alphas, Exec exec) {
  for (std::uint32_t ell : ells) {
    validate_ell(ell);
    for (const auto& [a1, a2] : alphas) reduce_alpha(ell, a1, a2);
  }

  LabReport rep;
  for (std::uint32_t ell : ells) {
    const std::uint64_t l = ell;
    auto equal = [&](const std::string& alpha, const std::string& name, const std::string& form, std::uint64_t want,
                     std::uint64_t got) { rep.items.push_back({ell, alpha, name, form, "=", want, got, want == got}); };
    auto at_most = [&](const std::string& alpha, const std::string& name, const std::string& form,
                       std::uint64_t bound, std::uint64_t got) {
      rep.items.push_back({ell, alpha, name, form, "<=", bound, got, got <= bound});
    };
    auto holds = [&](const std::string& alpha, const std::string& name, const std::string& form, bool ok) {
      rep.items.push_back({ell, alpha, name, form, "holds", 1, ok ? 1u : 0u, ok});
    };

    const PairGroup g(ell);
    const SubgroupSizes want = expected_sizes(ell);
    const SubgroupSizes got = subgroup_sizes(g, exec);
    equal("-", "|GL2|", "(l^2-1)(l^2-l)", want.gl2, got.gl2);
    equal("-", "|G|", "|GL2|^2/(l-1)", want.G, got.G);
    equal("-", "|B|", "(l-1)^3 l^2", want.B, got.B);
    equal("-", "|U|", "l^2", want.U, got.U);
    equal("-", "|U'|", "(l-1) l^2", want.Uprime, got.Uprime);
    equal("-", "|Lambda|", "l-1", want.Lambda, got.Lambda);
    equal("-", "|P|", "(l-1)^2 l^2 (l+1)^2", want.P, got.P);
    equal("-", "|B/U'|", "(l-1)^2", want.BmodUprime, got.BmodUprime);

    const ClassDecomposition gl_cls = gl2_classes(g.gl());
    equal("-", "#GL2 classes", "l^2-1", l * l - 1, gl_cls.classes.size());
    const ClassDecomposition g_cls = pair_classes(g);
    at_most("-", "#G classes", "4(l+1)^2(l-1)", 4 * (l + 1) * (l + 1) * (l - 1), g_cls.classes.size());
    const ClassDecomposition p_cls = projective_classes(g, g_cls);
    at_most("-", "#P classes", "16(l+1)^2", 16 * (l + 1) * (l + 1), p_cls.classes.size());
    auto partition_ok = [](const ClassDecomposition& d, std::uint64_t order) {
      std::uint64_t sum = 0;
      bool divides = true;
      for (const auto& c : d.classes) {
        sum += c.size;
        divides = divides && c.size > 0 && order % c.size == 0;
      }
      return divides && sum == order;
    };
    holds("-", "GL2 class sizes", "divide and sum to |GL2|", partition_ok(gl_cls, want.gl2));
    holds("-", "G class sizes", "divide and sum to |G|", partition_ok(g_cls, want.G));
    holds("-", "P class sizes", "divide and sum to |P|", partition_ok(p_cls, want.P));

    std::uint64_t matched = 0, fibre_ok = 0;
    for (std::uint32_t d = 1; d < ell; ++d) {
      std::uint64_t fibre = 0;
      for (std::uint32_t t = 0; t < ell; ++t) {
        const std::uint64_t count = count_det_trace(g.gl(), d, t);
        fibre += count;
        matched += count == det_trace_closed_form(ell, d, t) ? 1 : 0;
      }
      fibre_ok += fibre == want.gl2 / (l - 1) ? 1 : 0;
    }
    equal("-", "det/trace counts", "l(l+((t^2-4d)/l)) for all (d,t)", (l - 1) * l, matched);
    equal("-", "det fibres", "sum over t = |GL2|/(l-1)", l - 1, fibre_ok);

    const BorelData borel = borel_data(g);
    for (const auto& [a1, a2] : alphas) {
      const std::string al = alpha_label(a1, a2);
      const AlphaPair alpha = reduce_alpha(ell, a1, a2);
      const SetSizes s = build_sets(g, borel, alpha, exec);
      at_most(al, "|C0|", "2 l^6", 2 * l * l * l * l * l * l, s.C0);
      at_most(al, "|C_Borel mod U'|", "2(l-1)", 2 * (l - 1), s.CHatBorel);
      at_most(al, "|C_Borel mod U|", "2(l-1)^2", 2 * (l - 1) * (l - 1), s.CBorelModU);
      at_most(al, "|C0 mod Lambda|", "2 l^5", 2 * l * l * l * l * l, s.CHatProj);
      holds(al, "C in C0", "C subset of C0", s.c_in_c0);
      holds(al, "C_Borel", "direct over B equals C meet B", s.borel_consistent);
      const ClosureReport c = closure_checks(g, borel, g_cls, alpha, exec);
      holds(al, "Lambda normal in G", "g Lambda g^-1 = Lambda", c.lambda_normal);
      holds(al, "U' normal in B", "b U' b^-1 = U'", c.uprime_normal);
      holds(al, "B/U' abelian", "xy = yx in B/U'", c.quotient_abelian);
      holds(al, "U' C_Borel", "U' C_Borel subset of C_Borel", c.uprime_stabilizes_borel_set);
      holds(al, "classes of C meet B", "every class in C has an element of B", c.classes_meet_borel);
      holds(al, "Lambda C0", "Lambda C0 subset of C0", c.lambda_stabilizes_c0);
    }
  }
  return rep;
}

std::string report_text(const LabReport& r) {
  std::ostringstream out;
  for (const auto& i : r.items) {
    out << "l=" << i.ell << " alpha=" << i.alpha << "  " << i.name << "  [" << i.closed_form << "]  ";
    if (i.relation == "holds") {
      out << (i.pass ? "holds" : "violated");
    } else {
      out << i.value << ' ' << i.relation << ' ' << i.bound;
    }
    out << "  " << (i.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "summary: " << r.items.size() - r.failures() << "/" << r.items.size() << " passed\n";
  return out.str();
}

std::string report_csv(const LabReport& r) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream out;
  out << "ell,alpha,item,closed_form,relation,bound,value,status\n";
  for (const auto& i : r.items) {
    out << i.ell << ',' << quote(i.alpha) << ',' << quote(i.name) << ',' << quote(i.closed_form) << ',' << i.relation
        << ',' << i.bound << ',' << i.value << ',' << (i.pass ? "PASS" : "FAIL") << '\n';
  }
  return out.str();
}

}  // namespace frobcount::lab
