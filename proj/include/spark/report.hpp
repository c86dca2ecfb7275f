#ifndef SPARK_REPORT_HPP
#define SPARK_REPORT_HPP

#include <string>
#include <vector>

namespace spark::report {

struct OrChartRow {
  std::string label;
  double odds_ratio = 1.0;
  double p = 1.0;
  std::size_t frequency = 0;
};

// Keeps rows with p <= 0.05, takes the top_n most frequent, orders by odds
// ratio descending; bands: <=0.0001, <=0.001, <=0.05. Numbers in the SVG are
// the same strings written to the CSV.
void emit_or_chart_data(const std::vector<OrChartRow>& rows, std::size_t top_n,
                        const std::string& csv_path, const std::string& svg_path);

std::string p_band(double p);

struct BlameRow {
  std::string cevent_id;
  std::string label;
  double rho = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

// Filters p < 0.05; positives before negatives, each sorted by |rho|.
void emit_blame_table(const std::vector<BlameRow>& rows, const std::string& csv_path,
                      const std::string& svg_path);

std::string format_value(double v);

// "event text (attr1, attr2, attr3)" labeling for c-events
std::string cevent_label(const std::string& text, const std::vector<std::string>& attributes);

} // namespace spark::report

#endif
