#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "frobcount/census.hpp"
#include "frobcount/galois_lab.hpp"
#include "frobcount/named_curves.hpp"
#include "frobcount/table_io.hpp"

using namespace frobcount;

namespace {

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t x_max = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
  const Curve e1 = *named_curve("11a1"), e2 = *named_curve("37a1");

  ScanOptions par;
  par.workers = workers;
  par.block_size = 1u << 15;
  std::string serial_csv, parallel_csv;
  const double ts = timed([&] { serial_csv = table_to_csv(scan_pair_serial(e1, e2, x_max)); });
  const double tp = timed([&] { parallel_csv = table_to_csv(scan_pair(e1, e2, x_max, par)); });
  std::printf("scan     x_max=%llu  serial %.3f s  parallel(%d) %.3f s  speedup %.2fx  identical=%s\n",
              static_cast<unsigned long long>(x_max), ts, workers, tp, ts / tp, serial_csv == parallel_csv ? "yes" : "no");

  const lab::PairGroup g(7);
  const lab::BorelData borel = lab::borel_data(g);
  const lab::AlphaPair alpha = lab::reduce_alpha(7, 1, -1);
  lab::SetSizes a, b;
  lab::SubgroupSizes sa, sb;
  const double ls = timed([&] {
    sa = lab::subgroup_sizes(g, {false});
    a = lab::build_sets(g, borel, alpha, {false});
  });
  const double lp = timed([&] {
    sb = lab::subgroup_sizes(g, {true});
    b = lab::build_sets(g, borel, alpha, {true});
  });
  const bool same = sa.P == sb.P && sa.B == sb.B && a.C0 == b.C0 && a.C == b.C && a.CHatProj == b.CHatProj;
  std::printf("grouplab l=7         serial %.3f s  parallel(%d) %.3f s  speedup %.2fx  identical=%s\n", ls,
              omp_get_max_threads(), lp, ls / lp, same ? "yes" : "no");
  return serial_csv == parallel_csv && same ? 0 : 1;
}
