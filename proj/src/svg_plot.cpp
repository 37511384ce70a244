#include "dtwbench/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

#include "dtwbench/types.hpp"

namespace dtwbench {

namespace {

constexpr const char* kHeader =
    "case_id,algo_kind,param,n,comparisons,reps,mean_ns,std_ns,min_ns";

struct Row {
  std::string case_id;
  std::string kind;
  double param = 0.0;
  long long n = 0;
  long long comparisons = 0;
  double mean_ns = 0.0;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double to_double(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ParseError(line_no, "bad numeric field '" + s + "'");
  return v;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string gnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

const char* kind_color(const std::string& kind) {
  if (kind == "cdtw") return "#1f77b4";
  if (kind == "fastdtw") return "#d62728";
  if (kind == "euclidean") return "#2ca02c";
  return "#9467bd";
}

}  // namespace

std::string render_csv_plot(const std::string& csv_text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < csv_text.size()) {
    std::size_t pos = csv_text.find('\n', start);
    if (pos == std::string::npos) pos = csv_text.size();
    std::string line = csv_text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
    start = pos + 1;
  }
  if (lines.empty() || lines[0] != kHeader)
    throw ParseError(1, "expected header '" + std::string(kHeader) + "'");
  if (lines.size() < 2) throw ParseError(1, "no data rows");

  std::vector<Row> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split_csv_line(lines[li]);
    if (f.size() != 9) throw ParseError(li + 1, "expected 9 fields");
    Row r;
    r.case_id = f[0];
    r.kind = f[1];
    r.param = to_double(f[2], li + 1);
    r.n = static_cast<long long>(to_double(f[3], li + 1));
    r.comparisons = static_cast<long long>(to_double(f[4], li + 1));
    r.mean_ns = to_double(f[6], li + 1);
    rows.push_back(std::move(r));
  }

  // x axis: the sweep parameter unless the report varies N at fixed params.
  std::set<double> params;
  std::set<long long> lengths;
  for (const Row& r : rows) {
    params.insert(r.param);
    lengths.insert(r.n);
  }
  std::map<std::string, std::set<double>> params_by_kind;
  for (const Row& r : rows) params_by_kind[r.kind].insert(r.param);
  bool sweep_is_length = lengths.size() >= 2;
  for (const auto& [kind, ps] : params_by_kind)
    if (ps.size() > 1) sweep_is_length = false;

  auto x_of = [&](const Row& r) {
    if (sweep_is_length) return static_cast<double>(r.n);
    return r.kind == "cdtw" ? r.param * 100.0 : r.param;
  };

  std::map<std::string, std::vector<std::pair<double, double>>> families;
  double xmin = x_of(rows[0]), xmax = xmin;
  double ymin = rows[0].mean_ns, ymax = ymin;
  for (const Row& r : rows) {
    const double x = x_of(r);
    const double y = std::max(r.mean_ns, 1.0);
    families[r.kind].push_back({x, y});
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  int dec_lo = static_cast<int>(std::floor(std::log10(ymin)));
  int dec_hi = static_cast<int>(std::ceil(std::log10(ymax)));
  if (dec_hi == dec_lo) ++dec_hi;

  const double px_l = 80, px_r = 840, px_t = 50, px_b = 470;
  auto sx = [&](double x) {
    return px_l + (x - xmin) / (xmax - xmin) * (px_r - px_l);
  };
  auto sy = [&](double y) {
    const double ly = std::log10(std::max(y, 1.0));
    return px_b - (ly - dec_lo) / (dec_hi - dec_lo) * (px_b - px_t);
  };

  std::string svg;
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"520\" "
      "viewBox=\"0 0 860 520\">\n";
  svg += "<rect width=\"860\" height=\"520\" fill=\"white\"/>\n";

  const Row& first = rows[0];
  std::string n_text =
      lengths.size() == 1 ? std::to_string(first.n) : "varies";
  svg += "<text x=\"80\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\">"
         "case=" + first.case_id + "  n=" + n_text +
         "  comparisons=" + std::to_string(first.comparisons) + "</text>\n";

  for (int d = dec_lo; d <= dec_hi; ++d) {
    const double y = sy(std::pow(10.0, d));
    svg += "<line x1=\"" + num(px_l) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(px_r) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(px_l - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + gnum(std::pow(10.0, d)) + "</text>\n";
  }
  const int x_ticks = 6;
  for (int t = 0; t <= x_ticks; ++t) {
    const double x = xmin + (xmax - xmin) * t / x_ticks;
    svg += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(px_b) + "\" x2=\"" +
           num(sx(x)) + "\" y2=\"" + num(px_b + 5) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(px_b + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + gnum(x) + "</text>\n";
  }
  svg += "<line x1=\"" + num(px_l) + "\" y1=\"" + num(px_t) + "\" x2=\"" +
         num(px_l) + "\" y2=\"" + num(px_b) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + num(px_l) + "\" y1=\"" + num(px_b) + "\" x2=\"" +
         num(px_r) + "\" y2=\"" + num(px_b) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + num((px_l + px_r) / 2) + "\" y=\"505\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         std::string(sweep_is_length ? "N" : "w (%) or r (cells)") +
         "</text>\n";
  svg += "<text x=\"20\" y=\"260\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 20 260)\">time (ns, log scale)</text>\n";

  int legend_row = 0;
  for (auto& [kind, pts] : families) {
    std::sort(pts.begin(), pts.end());
    std::string points;
    for (const auto& [x, y] : pts) {
      if (!points.empty()) points += ' ';
      points += num(sx(x)) + "," + num(sy(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(kind_color(kind)) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = px_t + 16 + 18 * legend_row++;
    svg += "<rect x=\"700\" y=\"" + num(ly - 9) +
           "\" width=\"10\" height=\"10\" fill=\"" + kind_color(kind) +
           "\"/>\n";
    svg += "<text x=\"716\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + kind +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dtwbench
