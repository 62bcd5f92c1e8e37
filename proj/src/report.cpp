#include "frobcount/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "frobcount/error.hpp"

namespace frobcount {

namespace {

std::string fmt(double v, const char* pattern = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

struct Series {
  std::string name;
  std::string color;
  bool dashed;
  std::vector<double> values;
};

}  // namespace

Report build_report(const TraceTable& t, const ReportOptions& opts) {
  if (opts.checkpoints.empty()) throw Error(ErrorCode::InvalidArgument, "no checkpoints");
  Report r;
  for (double x : opts.checkpoints) {
    if (x > static_cast<double>(t.meta.x_max)) {
      throw Error(ErrorCode::BeyondScan,
                  "checkpoint " + fmt(x) + " exceeds the scanned range " + std::to_string(t.meta.x_max));
    }
    ReportRow row;
    row.x = x;
    row.env_uncond = bound_envelope({EnvelopeKind::Unconditional, opts.kappa_uncond}, x);
    row.env_grh = bound_envelope({EnvelopeKind::GRH, opts.kappa_grh}, x);
    row.env_pcc = bound_envelope({EnvelopeKind::GRH_AHC_PCC, opts.kappa_pcc}, x);
    row.decomposition = decomposition_check(t, x);
    row.F = row.decomposition.F;
    row.T11 = row.decomposition.T11;
    row.T1m1 = row.decomposition.T1m1;
    row.piK = count_primes(t, x);
    r.rows.push_back(row);
  }
  r.verdict = isogeny_verdict(t, opts.threshold, opts.min_primes);
  return r;
}

std::string report_csv(const Report& r) {
  std::string out =
      "x,F,T11,T1m1,piK,ratio_F,ratio_T11,ratio_T1m1,env_uncond,env_grh,env_pcc,"
      "cm_terms,higher_degree,filter_slack,decomposition_bound,decomposition_holds\n";
  for (const auto& row : r.rows) {
    const auto& d = row.decomposition;
    out += fmt(row.x) + ',' + std::to_string(row.F) + ',' + std::to_string(row.T11) + ',' +
           std::to_string(row.T1m1) + ',' + std::to_string(row.piK) + ',' + fmt(row.ratio(row.F)) + ',' +
           fmt(row.ratio(row.T11)) + ',' + fmt(row.ratio(row.T1m1)) + ',' + fmt(row.env_uncond) + ',' +
           fmt(row.env_grh) + ',' + fmt(row.env_pcc) + ',' + std::to_string(d.cm_terms) + ',' +
           std::to_string(d.higher_degree) + ',' + std::to_string(d.filter_slack) + ',' + std::to_string(d.bound()) +
           ',' + (d.holds() ? "true" : "false") + '\n';
  }
  out += "# verdict=" + to_string(r.verdict.verdict) + " tail_ratio=" + fmt(r.verdict.tail_ratio) +
         " tail_primes=" + std::to_string(r.verdict.tail_primes) + '\n';
  return out;
}

std::string report_svg(const Report& r, const std::string& title) {
  std::vector<Series> series = {
      {"piK", "#555555", false, {}},       {"F", "#d62728", false, {}},
      {"T(1,1)", "#1f77b4", false, {}},    {"T(1,-1)", "#2ca02c", false, {}},
      {"env_uncond", "#9467bd", true, {}}, {"env_grh", "#8c564b", true, {}},
      {"env_pcc", "#e377c2", true, {}},
  };
  for (const auto& row : r.rows) {
    series[0].values.push_back(static_cast<double>(row.piK));
    series[1].values.push_back(static_cast<double>(row.F));
    series[2].values.push_back(static_cast<double>(row.T11));
    series[3].values.push_back(static_cast<double>(row.T1m1));
    series[4].values.push_back(row.env_uncond);
    series[5].values.push_back(row.env_grh);
    series[6].values.push_back(row.env_pcc);
  }
  const double W = 760, H = 480, left = 70, right = 170, top = 40, bottom = 50;
  double xmin = r.rows.empty() ? 1 : r.rows.front().x, xmax = r.rows.empty() ? 10 : r.rows.back().x;
  double ymax = 1;
  for (const auto& s : series)
    for (double v : s.values) ymax = std::max(ymax, v);
  const double lx0 = std::log10(xmin), lx1 = std::max(std::log10(xmax), lx0 + 1e-9);
  const double ly0 = 0, ly1 = std::ceil(std::log10(ymax) + 1e-12);
  auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * (W - left - right); };
  auto py = [&](double y) {
    const double ly = std::log10(std::max(y, 1.0));
    return H - bottom - (ly - ly0) / (ly1 - ly0) * (H - top - bottom);
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(left) + "\" y=\"22\" font-size=\"14\">" + title + "</text>\n";
  svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(W - left - right) + "\" height=\"" +
         fmt(H - top - bottom) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = static_cast<int>(std::ceil(lx0)); k <= static_cast<int>(std::floor(lx1)); ++k) {
    const double x = px(std::pow(10.0, k));
    svg += "<line x1=\"" + fmt(x, "%.2f") + "\" y1=\"" + fmt(H - bottom) + "\" x2=\"" + fmt(x, "%.2f") + "\" y2=\"" +
           fmt(top) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(x, "%.2f") + "\" y=\"" + fmt(H - bottom + 18) + "\" text-anchor=\"middle\">1e" +
           std::to_string(k) + "</text>\n";
  }
  for (int k = 0; k <= static_cast<int>(ly1); ++k) {
    const double y = py(std::pow(10.0, k));
    svg += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(y, "%.2f") + "\" x2=\"" + fmt(W - right) + "\" y2=\"" +
           fmt(y, "%.2f") + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(y + 4, "%.2f") + "\" text-anchor=\"end\">1e" +
           std::to_string(k) + "</text>\n";
  }
  svg += "<text x=\"" + fmt((W - right + left) / 2) + "\" y=\"" + fmt(H - 12) + "\" text-anchor=\"middle\">x</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    std::string pts;
    for (std::size_t j = 0; j < r.rows.size(); ++j) {
      if (!pts.empty()) pts += ' ';
      pts += fmt(px(r.rows[j].x), "%.2f") + ',' + fmt(py(s.values[j]), "%.2f");
    }
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"" + pts + "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(i);
    svg += "<line x1=\"" + fmt(W - right + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(W - right + 36) + "\" y2=\"" +
           fmt(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    svg += "<text x=\"" + fmt(W - right + 42) + "\" y=\"" + fmt(ly + 4) + "\">" + s.name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace frobcount
