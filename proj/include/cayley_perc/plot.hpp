// Copyright 2026 The cayley-perc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "cayley_perc/branching.hpp"
#include "cayley_perc/error.hpp"
#include "cayley_perc/io.hpp"
#include "cayley_perc/sweep.hpp"

namespace cperc {

namespace detail {

inline std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace detail

// Mean relative giant size (data, blue) and ℘(ε) (theory, red) against
// λ = (1+ε)/(n-1), as a standalone SVG document.
inline std::string render_plot_svg(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw UsageError("plot: no rows");
  const int n = rows.front().n;
  const std::string tree_id = rows.front().tree_id;
  for (const SweepRow& r : rows) {
    if (r.n != n || r.tree_id != tree_id) throw UsageError("plot: rows mix several (n, tree) pairs");
  }
  const auto summary = summarize(rows);

  constexpr double W = 640, H = 440, L = 70, R = 20, T = 40, B = 60;
  double xmin = summary.front().lambda, xmax = xmin;
  for (const auto& s : summary) {
    xmin = std::min(xmin, s.lambda);
    xmax = std::max(xmax, s.lambda);
  }
  if (xmax - xmin < 1e-9) {
    const double pad = std::max(0.01, 0.1 * xmin);
    xmin = std::max(0.0, xmin - pad);
    xmax += pad;
  }
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - y * (H - T - B); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"440\" viewBox=\"0 0 640 440\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"640\" height=\"440\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">Giant component, n=" + std::to_string(n) +
         ", tree " + tree_id + "</text>\n";
  // axes and ticks
  svg += "<g stroke=\"black\" fill=\"none\">\n";
  svg += "<line x1=\"" + detail::fmt("%.2f", L) + "\" y1=\"" + detail::fmt("%.2f", H - B) + "\" x2=\"" +
         detail::fmt("%.2f", W - R) + "\" y2=\"" + detail::fmt("%.2f", H - B) + "\"/>\n";
  svg += "<line x1=\"" + detail::fmt("%.2f", L) + "\" y1=\"" + detail::fmt("%.2f", T) + "\" x2=\"" +
         detail::fmt("%.2f", L) + "\" y2=\"" + detail::fmt("%.2f", H - B) + "\"/>\n";
  svg += "</g>\n<g fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = xmin + (xmax - xmin) * i / 5.0;
    svg += "<text x=\"" + detail::fmt("%.2f", px(x)) + "\" y=\"" + detail::fmt("%.2f", H - B + 18) +
           "\" text-anchor=\"middle\">" + detail::fmt("%.3f", x) + "</text>\n";
    const double y = i / 5.0;
    svg += "<text x=\"" + detail::fmt("%.2f", L - 8) + "\" y=\"" + detail::fmt("%.2f", py(y) + 4) +
           "\" text-anchor=\"end\">" + detail::fmt("%.1f", y) + "</text>\n";
  }
  svg += "<text x=\"" + detail::fmt("%.2f", (L + W - R) / 2) + "\" y=\"" + detail::fmt("%.2f", H - 15) +
         "\" text-anchor=\"middle\">(1+ε)/(n−1)</text>\n";
  svg += "<text x=\"18\" y=\"" + detail::fmt("%.2f", (T + H - B) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         detail::fmt("%.2f", (T + H - B) / 2) + ")\">|C⁽¹⁾| / |Γₙ|</text>\n";
  svg += "</g>\n";

  // theory curve ℘((n-1)λ - 1)
  std::string theory;
  constexpr int kSamples = 200;
  for (int i = 0; i <= kSamples; ++i) {
    const double lam = xmin + (xmax - xmin) * i / kSamples;
    const double eps = lam * (n - 1) - 1.0;
    const double y = eps > 0 ? survival_at_epsilon(eps).value : 0.0;
    theory += (i ? " " : "") + detail::fmt("%.2f", px(lam)) + "," + detail::fmt("%.2f", py(y));
  }
  svg += "<polyline id=\"theory\" fill=\"none\" stroke=\"red\" stroke-width=\"2\" points=\"" + theory + "\"/>\n";

  std::string data;
  for (std::size_t i = 0; i < summary.size(); ++i) {
    data += (i ? " " : "") + detail::fmt("%.2f", px(summary[i].lambda)) + "," +
            detail::fmt("%.2f", py(summary[i].mean_relative_giant));
  }
  svg += "<polyline id=\"data\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"" + data + "\"/>\n";
  svg += "<g fill=\"blue\">\n";
  for (const auto& s : summary) {
    svg += "<circle cx=\"" + detail::fmt("%.2f", px(s.lambda)) + "\" cy=\"" +
           detail::fmt("%.2f", py(s.mean_relative_giant)) + "\" r=\"3\"/>\n";
  }
  svg += "</g>\n";
  // legend
  svg += "<g font-size=\"11\">\n";
  svg += "<line x1=\"90\" y1=\"52\" x2=\"115\" y2=\"52\" stroke=\"blue\" stroke-width=\"1.5\"/>"
         "<text x=\"120\" y=\"56\">simulation (mean over trials)</text>\n";
  svg += "<line x1=\"90\" y1=\"68\" x2=\"115\" y2=\"68\" stroke=\"red\" stroke-width=\"2\"/>"
         "<text x=\"120\" y=\"72\">branching-process prediction ℘(ε)</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

inline void emit_plot(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  const std::string svg = render_plot_svg(rows);
  try {
    write_file_atomic(path, svg);
  } catch (const std::exception& e) {
    throw std::runtime_error("plot: " + std::string(e.what()));
  }
}

}  // namespace cperc
