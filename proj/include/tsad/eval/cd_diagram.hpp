#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tsad/csv.hpp"
#include "tsad/error.hpp"

namespace tsad {

namespace detail {

inline std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

struct CdEntry {
  double rank;
  std::string label;  // "1.200 FE-IF 0.746 (0.102)"
};

/// Maximal runs of methods (sorted by rank) whose rank spread is within the
/// critical difference; these get connecting bars in the diagram.
inline std::vector<std::pair<std::size_t, std::size_t>> cd_cliques(
    const std::vector<CdEntry>& sorted, double cd) {
  std::vector<std::pair<std::size_t, std::size_t>> cliques;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1].rank - sorted[i].rank <= cd) ++j;
    if (j > i && (cliques.empty() || cliques.back().second < j))
      cliques.emplace_back(i, j);
  }
  return cliques;
}

}  // namespace detail

/// Renders a critical-difference diagram: a rank axis from 1 to M, one
/// labeled connector per method, a CD ruler, and bars joining methods whose
/// mean ranks differ by less than the critical difference. Writes the SVG to
/// `out` and a plain-text rendering next to it (extension swapped to .txt).
/// Output bytes depend only on the inputs.
inline void render_cd_diagram(std::span<const double> mean_ranks,
                              std::span<const std::string> method_names,
                              std::span<const double> auc_means,
                              std::span<const double> auc_stds,
                              double cd,
                              const std::filesystem::path& out) {
  const std::size_t m = mean_ranks.size();
  if (method_names.size() != m || auc_means.size() != m || auc_stds.size() != m)
    raise(Errc::dimension_mismatch, "CD diagram inputs differ in length");
  if (m < 2) raise(Errc::insufficient_data, "CD diagram needs at least 2 methods");

  std::vector<detail::CdEntry> entries(m);
  for (std::size_t i = 0; i < m; ++i) {
    entries[i].rank = mean_ranks[i];
    entries[i].label = detail::fixed3(mean_ranks[i]) + " " + method_names[i] + " " +
                       detail::fixed3(auc_means[i]) + " (" + detail::fixed3(auc_stds[i]) + ")";
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.rank < b.rank; });
  const auto cliques = detail::cd_cliques(entries, cd);

  // --- geometry ---------------------------------------------------------
  const double axis_left = 170.0;
  const double axis_right = 470.0;
  const double axis_y = 70.0;
  const double row_step = 22.0;
  const std::size_t left_count = (m + 1) / 2;  // best half labels on the left
  const double md = static_cast<double>(m);
  const auto x_of = [&](double rank) {
    return axis_left + (rank - 1.0) / (md - 1.0) * (axis_right - axis_left);
  };
  const double label_top = axis_y + 18.0 + 14.0 * static_cast<double>(cliques.size());
  const std::size_t right_rows = m - left_count;
  const double height =
      label_top + row_step * static_cast<double>(std::max(left_count, right_rows)) + 20.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"" +
         detail::fixed1(height) + "\" font-family=\"monospace\" font-size=\"12\">\n";
  svg += "<rect width=\"640\" height=\"" + detail::fixed1(height) + "\" fill=\"white\"/>\n";

  // rank axis with integer ticks
  svg += "<line x1=\"" + detail::fixed1(axis_left) + "\" y1=\"" + detail::fixed1(axis_y) +
         "\" x2=\"" + detail::fixed1(axis_right) + "\" y2=\"" + detail::fixed1(axis_y) +
         "\" stroke=\"black\"/>\n";
  for (std::size_t r = 1; r <= m; ++r) {
    const double x = x_of(static_cast<double>(r));
    svg += "<line x1=\"" + detail::fixed1(x) + "\" y1=\"" + detail::fixed1(axis_y - 5.0) +
           "\" x2=\"" + detail::fixed1(x) + "\" y2=\"" + detail::fixed1(axis_y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::fixed1(x) + "\" y=\"" + detail::fixed1(axis_y - 9.0) +
           "\" text-anchor=\"middle\">" + std::to_string(r) + "</text>\n";
  }

  // CD ruler above the axis, anchored at rank 1
  const double ruler_y = axis_y - 36.0;
  svg += "<line x1=\"" + detail::fixed1(x_of(1.0)) + "\" y1=\"" + detail::fixed1(ruler_y) +
         "\" x2=\"" + detail::fixed1(x_of(1.0 + cd)) + "\" y2=\"" + detail::fixed1(ruler_y) +
         "\" stroke=\"black\"/>\n";
  for (double rx : {x_of(1.0), x_of(1.0 + cd)}) {
    svg += "<line x1=\"" + detail::fixed1(rx) + "\" y1=\"" + detail::fixed1(ruler_y - 4.0) +
           "\" x2=\"" + detail::fixed1(rx) + "\" y2=\"" + detail::fixed1(ruler_y + 4.0) +
           "\" stroke=\"black\"/>\n";
  }
  svg += "<text x=\"" + detail::fixed1(x_of(1.0 + cd) + 8.0) + "\" y=\"" +
         detail::fixed1(ruler_y + 4.0) + "\">CD = " + detail::fixed3(cd) + "</text>\n";

  // clique bars just below the axis
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    const double y = axis_y + 8.0 + 14.0 * static_cast<double>(c);
    svg += "<line x1=\"" + detail::fixed1(x_of(entries[cliques[c].first].rank) - 2.0) +
           "\" y1=\"" + detail::fixed1(y) + "\" x2=\"" +
           detail::fixed1(x_of(entries[cliques[c].second].rank) + 2.0) + "\" y2=\"" +
           detail::fixed1(y) + "\" stroke=\"black\" stroke-width=\"3\"/>\n";
  }

  // method connectors and labels: best half on the left, rest on the right
  for (std::size_t i = 0; i < m; ++i) {
    const bool left = i < left_count;
    const std::size_t row = left ? i : i - left_count;
    const double x = x_of(entries[i].rank);
    const double y = label_top + row_step * static_cast<double>(row);
    const double label_x = left ? axis_left - 10.0 : axis_right + 10.0;
    svg += "<polyline points=\"" + detail::fixed1(x) + "," + detail::fixed1(axis_y) + " " +
           detail::fixed1(x) + "," + detail::fixed1(y) + " " + detail::fixed1(label_x) + "," +
           detail::fixed1(y) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::fixed1(label_x + (left ? -4.0 : 4.0)) + "\" y=\"" +
           detail::fixed1(y + 4.0) + "\" text-anchor=\"" + (left ? "end" : "start") + "\">" +
           entries[i].label + "</text>\n";
  }
  svg += "</svg>\n";

  auto svg_out = open_out(out.string());
  svg_out << svg;
  if (!svg_out) raise(Errc::io_error, "failed writing " + out.string());
  svg_out.close();

  // plain-text fallback: CD line, then one line per method, best first
  std::string txt = "CD = " + detail::fixed3(cd) + "\n";
  for (const auto& e : entries) txt += e.label + "\n";
  for (const auto& [a, b] : cliques)
    txt += "group: " + detail::fixed3(entries[a].rank) + " .. " +
           detail::fixed3(entries[b].rank) + "\n";
  std::filesystem::path txt_path = out;
  txt_path.replace_extension(".txt");
  auto txt_out = open_out(txt_path.string());
  txt_out << txt;
  if (!txt_out) raise(Errc::io_error, "failed writing " + txt_path.string());
}

}  // namespace tsad
