#include "spark/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spark::report {

std::string p_band(double p) {
  if (p <= 0.0001) return "<=0.0001";
  if (p <= 0.001) return "<=0.001";
  return "<=0.05";
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string cevent_label(const std::string& text, const std::vector<std::string>& attributes) {
  std::string label = text;
  if (!attributes.empty()) {
    label += " (";
    for (std::size_t i = 0; i < std::min<std::size_t>(3, attributes.size()); ++i) {
      if (i) label += ", ";
      label += attributes[i];
    }
    label += ")";
  }
  return label;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// horizontal bar chart; every numeric is the same string as the CSV value
void write_bar_svg(const std::string& path,
                   const std::vector<std::tuple<std::string, double, std::string>>& bars) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write figure: " + path);
  const int row_h = 22, label_w = 360, chart_w = 360;
  const int height = row_h * static_cast<int>(bars.size()) + 40;
  double max_abs = 1.0;
  for (const auto& [label, v, vs] : bars) max_abs = std::max(max_abs, std::fabs(v));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (label_w + chart_w + 120)
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  const int mid = label_w + chart_w / 2;
  out << "<line x1=\"" << mid << "\" y1=\"10\" x2=\"" << mid << "\" y2=\"" << (height - 10)
      << "\" stroke=\"#888\"/>\n";
  int y = 24;
  for (const auto& [label, v, vs] : bars) {
    const double frac = v / max_abs;
    const int w = static_cast<int>(std::fabs(frac) * (chart_w / 2.0 - 4));
    const int x = frac >= 0 ? mid : mid - w;
    const char* color = frac >= 0 ? "#e07b39" : "#3a6ea5";
    out << "<text x=\"" << (label_w - 6) << "\" y=\"" << y << "\" text-anchor=\"end\">"
        << xml_escape(label) << "</text>\n";
    out << "<rect x=\"" << x << "\" y=\"" << (y - 12) << "\" width=\"" << std::max(w, 1)
        << "\" height=\"16\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << (label_w + chart_w + 8) << "\" y=\"" << y << "\">" << vs
        << "</text>\n";
    y += row_h;
  }
  out << "</svg>\n";
}

} // namespace

void emit_or_chart_data(const std::vector<OrChartRow>& rows, std::size_t top_n,
                        const std::string& csv_path, const std::string& svg_path) {
  std::vector<OrChartRow> sig;
  for (const auto& r : rows)
    if (r.p <= 0.05) sig.push_back(r);
  std::stable_sort(sig.begin(), sig.end(),
                   [](const OrChartRow& a, const OrChartRow& b) { return a.frequency > b.frequency; });
  if (sig.size() > top_n) sig.resize(top_n);
  std::stable_sort(sig.begin(), sig.end(),
                   [](const OrChartRow& a, const OrChartRow& b) { return a.odds_ratio > b.odds_ratio; });

  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write OR chart CSV: " + csv_path);
  out << "label,odds_ratio,p_band,direction\n";
  std::vector<std::tuple<std::string, double, std::string>> bars;
  for (const auto& r : sig) {
    const std::string vs = format_value(r.odds_ratio);
    out << csv_escape(r.label) << "," << vs << "," << p_band(r.p) << ","
        << (r.odds_ratio > 1.0 ? "positive" : "negative") << "\n";
    // bar length proportional to log OR so direction reads left/right of 1
    bars.emplace_back(r.label, std::log(std::max(r.odds_ratio, 1e-12)), vs);
  }
  write_bar_svg(svg_path, bars);
}

void emit_blame_table(const std::vector<BlameRow>& rows, const std::string& csv_path,
                      const std::string& svg_path) {
  std::vector<BlameRow> sig;
  for (const auto& r : rows)
    if (r.p < 0.05) sig.push_back(r);
  std::stable_sort(sig.begin(), sig.end(), [](const BlameRow& a, const BlameRow& b) {
    const bool pa = a.rho >= 0, pb = b.rho >= 0;
    if (pa != pb) return pa; // positives first
    return std::fabs(a.rho) > std::fabs(b.rho);
  });

  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write blame table: " + csv_path);
  out << "cevent_id,label,rho,p,n\n";
  std::vector<std::tuple<std::string, double, std::string>> bars;
  for (const auto& r : sig) {
    const std::string vs = format_value(r.rho);
    out << r.cevent_id << "," << csv_escape(r.label) << "," << vs << ","
        << format_value(r.p) << "," << r.n << "\n";
    bars.emplace_back(r.label, r.rho, vs);
  }
  write_bar_svg(svg_path, bars);
}

} // namespace spark::report
