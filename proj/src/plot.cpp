#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liedeg/errors.hpp"
#include "liedeg/scenario.hpp"

namespace liedeg {

namespace {

struct Row {
  double n = 0.0;
  double abs = 0.0;
};

std::vector<Row> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("N,re,im,abs,err_estimate", 0) != 0)
    throw ConfigError("series CSV: missing header N,re,im,abs,err_estimate");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[5];
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4]) != 5)
      throw ConfigError("series CSV: malformed row '" + line + "'");
    rows.push_back({v[0], v[3]});
  }
  if (rows.empty()) throw ConfigError("series CSV: no data rows");
  return rows;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string emit_plot(const std::string& csv_text) {
  const std::vector<Row> rows = parse_csv(csv_text);
  const double w = 640, h = 480, left = 60, right = 20, ph = 180;
  const double top1 = 30, top2 = 270;
  const double nmax = std::max(1.0, rows.back().n);
  auto xpos = [&](double n) { return left + (w - left - right) * n / nmax; };

  constexpr double kFloor = 1e-17;
  double lo = 0.0, hi = -17.0;
  for (const Row& r : rows) {
    const double l = std::log10(std::max(r.abs, kFloor));
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  lo = std::floor(lo);
  hi = std::max(std::ceil(hi), lo + 1.0);

  std::vector<double> wiener(rows.size(), 0.0);
  double acc = 0.0, wmax = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    acc += rows[i].abs * rows[i].abs;
    wiener[i] = acc / static_cast<double>(i);
    wmax = std::max(wmax, wiener[i]);
  }
  if (wmax <= 0.0) wmax = 1.0;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
       "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(left) + "\" y=\"20\" font-size=\"12\">log10 |c_N|</text>\n";
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top1) + "\" width=\"" + num(w - left - right) +
       "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"4\" y=\"" + num(top1 + 10) + "\" font-size=\"10\">" + num(hi) + "</text>\n";
  s += "<text x=\"4\" y=\"" + num(top1 + ph) + "\" font-size=\"10\">" + num(lo) + "</text>\n";
  for (const Row& r : rows) {
    const double l = std::log10(std::max(r.abs, kFloor));
    const double y = top1 + ph * (hi - l) / (hi - lo);
    s += "<circle cx=\"" + num(xpos(r.n)) + "\" cy=\"" + num(y) + "\" r=\"2\" fill=\"steelblue\"/>\n";
  }
  s += "<text x=\"" + num(left) + "\" y=\"" + num(top2 - 10) + "\" font-size=\"12\">A_N</text>\n";
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top2) + "\" width=\"" + num(w - left - right) +
       "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"4\" y=\"" + num(top2 + 10) + "\" font-size=\"10\">" + num(wmax) + "</text>\n";
  s += "<text x=\"4\" y=\"" + num(top2 + ph) + "\" font-size=\"10\">0</text>\n";
  s += "<polyline fill=\"none\" stroke=\"darkred\" points=\"";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double y = top2 + ph * (1.0 - wiener[i] / wmax);
    s += (i > 1 ? " " : "") + num(xpos(rows[i].n)) + "," + num(y);
  }
  s += "\"/>\n";
  s += "<text x=\"" + num(w - right - 60) + "\" y=\"" + num(h - 10) + "\" font-size=\"10\">N = " +
       num(nmax) + "</text>\n";
  s += "</svg>\n";
  return s;
}

void emit_plot_file(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw IoError("cannot read " + csv_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string svg = emit_plot(buf.str());
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + svg_path);
  out << svg;
  if (!out) throw IoError("write failed for " + svg_path);
}

}  // namespace liedeg
