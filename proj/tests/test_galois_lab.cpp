#include <doctest.h>

#include <map>
#include <tuple>

#include "frobcount/error.hpp"
#include "frobcount/galois_lab.hpp"

using namespace frobcount;
using namespace frobcount::lab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

const PairGroup& group(std::uint32_t ell) {
  static std::map<std::uint32_t, PairGroup> cache;
  auto it = cache.find(ell);
  if (it == cache.end()) it = cache.emplace(ell, PairGroup(ell)).first;
  return it->second;
}

struct Frozen {
  std::uint32_t ell;
  std::int64_t a1, a2;
  std::uint64_t C0, C, CBorel, CHatBorel, CBorelModU, CHatProj;
};

// Brute-force enumeration over all pairs of 2x2 matrices (tests/oracles/ec_oracle.py groups).
const Frozen kFrozen[] = {
    {3, 1, 1, 414, 306, 54, 3, 6, 207},       {3, 1, -1, 414, 306, 54, 3, 6, 207},
    {3, 2, 1, 414, 306, 54, 3, 6, 207},       {3, 1, 0, 432, 144, 36, 2, 4, 216},
    {3, 0, 1, 432, 144, 36, 2, 4, 216},       {5, 1, 1, 11900, 7900, 700, 7, 28, 2975},
    {5, 1, -1, 11900, 7900, 700, 7, 28, 2975}, {5, 2, 1, 11400, 1800, 200, 2, 8, 2850},
    {5, 1, 0, 12000, 4800, 400, 4, 16, 3000},  {5, 0, 1, 12000, 4800, 400, 4, 16, 3000},
};

}  // namespace

TEST_CASE("lab: subgroup sizes against the closed forms") {
  CHECK(expected_sizes(5).B == 1600);
  CHECK(expected_sizes(5).Uprime == 100);
  CHECK(expected_sizes(7).Lambda == 6);
  CHECK(expected_sizes(3).P == 576);
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    const SubgroupSizes want = expected_sizes(ell);
    for (bool parallel : {false, true}) {
      const SubgroupSizes got = subgroup_sizes(group(ell), Exec{parallel});
      CHECK(got.gl2 == want.gl2);
      CHECK(got.G == want.G);
      CHECK(got.B == want.B);
      CHECK(got.U == want.U);
      CHECK(got.Uprime == want.Uprime);
      CHECK(got.Lambda == want.Lambda);
      CHECK(got.P == want.P);
      CHECK(got.BmodUprime == want.BmodUprime);
    }
  }
}

TEST_CASE("lab: GL2 indexing and arithmetic") {
  const GL2& gl = group(5).gl();
  CHECK(gl.size() == 480);
  CHECK(gl.fibre() == 120);
  CHECK(gl.primitive_root() == 2);
  CHECK(group(7).gl().primitive_root() == 3);
  for (std::uint32_t g = 0; g < gl.size(); g += 7) {
    CHECK(gl.index_of(gl.mat(g)) == g);
    CHECK(gl.mul(g, gl.inverse(g)) == gl.identity());
    const Mat2& m = gl.mat(g);
    CHECK(gl.det(g) == static_cast<std::uint32_t>(((m.a * m.d - m.b * m.c) % 5 + 5) % 5));
    for (std::uint32_t h = 0; h < gl.size(); h += 53) {
      CHECK(gl.det(gl.mul(g, h)) == gl.det(g) * gl.det(h) % 5);
    }
  }
  CHECK(code_of([&] { gl.index_of(Mat2{1, 2, 2, 4}); }) == ErrorCode::ZeroDet);
  const PairGroup& g = group(3);
  CHECK(code_of([&] { g.make(g.gl().scalar(1), g.gl().index_of(Mat2{2, 0, 0, 1})); }) == ErrorCode::InvalidArgument);
  for (std::uint32_t e = 0; e < g.size(); e += 37) {
    CHECK(g.make(g.first(e), g.second(e)) == e);
    CHECK(g.mul(e, g.inverse(e)) == g.scalar(1));
  }
}

TEST_CASE("lab: ell validation") {
  CHECK(code_of([] { validate_ell(17); }) == ErrorCode::EllTooLarge);
  CHECK(code_of([] { validate_ell(2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { validate_ell(9); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(validate_ell(13));
  CHECK(code_of([] { run_lab({3, 19}, {{1, 1}}); }) == ErrorCode::EllTooLarge);
}

TEST_CASE("lab: alpha reduction") {
  CHECK(reduce_alpha(5, 1, -1).a2 == 4);
  CHECK(reduce_alpha(5, 2, 1).a1 == 2);
  CHECK(code_of([] { reduce_alpha(5, 0, 0); }) == ErrorCode::BadAlphaPair);
  CHECK(code_of([] { reduce_alpha(5, 2, 4); }) == ErrorCode::BadAlphaPair);
  CHECK(code_of([] { reduce_alpha(5, 5, 10); }) == ErrorCode::EllDividesBoth);
  CHECK(code_of([] { run_lab({3}, {{0, 0}}); }) == ErrorCode::BadAlphaPair);
}

TEST_CASE("lab: det/trace counts") {
  CHECK(count_det_trace(group(5).gl(), 1, 0) == 30);
  CHECK(count_det_trace(group(5).gl(), 1, 1) == 20);
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    for (std::int64_t d = 1; d < ell; ++d) {
      for (std::int64_t t = 0; t < ell; ++t) {
        CHECK(count_det_trace(group(ell).gl(), d, t) == det_trace_closed_form(ell, d, t));
      }
    }
    CHECK(count_det_trace(group(ell).gl(), -1, 2 * ell + 1) == det_trace_closed_form(ell, ell - 1, 1));
  }
  CHECK(code_of([] { det_trace_closed_form(5, 10, 1); }) == ErrorCode::ZeroDet);
  CHECK(code_of([] { count_det_trace(group(3).gl(), 0, 1); }) == ErrorCode::ZeroDet);
}

TEST_CASE("lab: conjugacy classes") {
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    const std::uint64_t l = ell;
    const ClassDecomposition gl = gl2_classes(group(ell).gl());
    CHECK(gl.classes.size() == l * l - 1);
    std::uint64_t total = 0;
    for (const auto& c : gl.classes) {
      total += c.size;
      CHECK(expected_sizes(ell).gl2 % c.size == 0);
    }
    CHECK(total == expected_sizes(ell).gl2);

    const ClassDecomposition g = pair_classes(group(ell));
    CHECK(g.classes.size() <= 4 * (l + 1) * (l + 1) * (l - 1));
    CHECK(g.class_of.size() == group(ell).size());
    for (std::uint32_t e = 0; e < group(ell).size(); e += 101) {
      for (std::uint32_t s : group(ell).gl().generators()) {
        const std::uint32_t h = group(ell).make(s, s);
        CHECK(g.class_of[group(ell).mul(group(ell).mul(h, e), group(ell).inverse(h))] == g.class_of[e]);
      }
    }
    const ClassDecomposition p = projective_classes(group(ell), g);
    CHECK(p.classes.size() <= 16 * (l + 1) * (l + 1));
    CHECK(p.classes.size() <= g.classes.size());
    total = 0;
    for (const auto& c : p.classes) total += c.size;
    CHECK(total == expected_sizes(ell).P);
  }
}

TEST_CASE("lab: frozen set sizes") {
  for (const Frozen& f : kFrozen) {
    CAPTURE(f.ell);
    CAPTURE(f.a1);
    CAPTURE(f.a2);
    const PairGroup& g = group(f.ell);
    const BorelData borel = borel_data(g);
    CHECK(borel.uprime_cosets == expected_sizes(f.ell).BmodUprime);
    for (bool parallel : {false, true}) {
      const SetSizes s = build_sets(g, borel, reduce_alpha(f.ell, f.a1, f.a2), Exec{parallel});
      CHECK(s.C0 == f.C0);
      CHECK(s.C == f.C);
      CHECK(s.CBorel == f.CBorel);
      CHECK(s.CHatBorel == f.CHatBorel);
      CHECK(s.CBorelModU == f.CBorelModU);
      CHECK(s.CHatProj == f.CHatProj);
      CHECK(s.c_in_c0);
      CHECK(s.borel_consistent);
    }
  }
}

TEST_CASE("lab: closure checks") {
  for (std::uint32_t ell : {3u, 5u}) {
    const PairGroup& g = group(ell);
    const BorelData borel = borel_data(g);
    const ClassDecomposition cls = pair_classes(g);
    for (auto [a1, a2] : {std::pair<int, int>{1, 1}, {1, -1}, {2, 1}, {1, 0}, {0, 1}}) {
      const AlphaPair alpha = reduce_alpha(ell, a1, a2);
      const ClosureReport serial = closure_checks(g, borel, cls, alpha, Exec{false});
      const ClosureReport par = closure_checks(g, borel, cls, alpha, Exec{true});
      CHECK(serial.all());
      CHECK(par.all());
    }
  }
}

TEST_CASE("lab: full report") {
  const LabReport r = run_lab({3, 5}, {{1, 1}, {1, 0}});
  CHECK(r.all_pass());
  CHECK(r.failures() == 0);
  CHECK(r.items.size() == 2 * (16 + 2 * 12));
  const std::string text = report_text(r);
  CHECK(text.find("summary: 80/80 passed") != std::string::npos);
  const std::string csv = report_csv(r);
  CHECK(csv.rfind("ell,alpha,item,closed_form,relation,bound,value,status\n", 0) == 0);
  CHECK(report_csv(run_lab({3, 5}, {{1, 1}, {1, 0}}, Exec{false})) == csv);
}
