#pragma once

// Self-contained SVG scatter of the algebraic parameters: denominator q
// horizontal, numerator p vertical, marker shape by series. One marker per
// (q, p); the extremal series win the marker when a parameter carries
// several certificates.

#include "gharm/classifier.hpp"

#include <map>
#include <string>
#include <vector>

namespace gharm {

inline std::string diagram_svg(const std::vector<EnumRow>& rows, int q_max) {
    const double width = 760, height = 560;
    const double ml = 64, mr = 24, mt = 28, mb = 52;
    const double q_lo = 3, q_hi = q_max;
    const double p_lo = 5, p_hi = static_cast<double>(q_max) * q_max - 2;

    const auto sx = [&](double q) {
        return ml + (q - q_lo) / (q_hi - q_lo + 1e-12) * (width - ml - mr);
    };
    const auto sy = [&](double p) {
        return height - mb - (p - p_lo) / (p_hi - p_lo) * (height - mt - mb);
    };

    // strongest series per (q, p)
    const auto rank = [](Series s) {
        switch (s) {
        case Series::minimal: return 3;
        case Series::maximal: return 2;
        case Series::maximal_even: return 1;
        case Series::interior: return 0;
        }
        return 0;
    };
    std::map<std::pair<long long, long long>, Series> points;
    for (const auto& r : rows) {
        auto [it, fresh] = points.try_emplace({r.q, r.p}, r.cert.series);
        if (!fresh && rank(r.cert.series) > rank(it->second)) it->second = r.cert.series;
    }

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(int(width)) +
         "\" height=\"" + std::to_string(int(height)) + "\" viewBox=\"0 0 " +
         std::to_string(int(width)) + " " + std::to_string(int(height)) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    // axes and ticks
    s += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(height - mb) + "\" x2=\"" + num(width - mr) +
         "\" y2=\"" + num(height - mb) + "\"/>\n";
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
         num(height - mb) + "\"/>\n";
    s += "</g>\n";

    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    const int q_step = q_max > 15 ? 3 : 1;
    for (int q = 3; q <= q_max; q += q_step) {
        s += "<line stroke=\"#ccc\" x1=\"" + num(sx(q)) + "\" y1=\"" + num(mt) + "\" x2=\"" +
             num(sx(q)) + "\" y2=\"" + num(height - mb) + "\"/>\n";
        s += "<text x=\"" + num(sx(q) - 4) + "\" y=\"" + num(height - mb + 16) + "\">" +
             std::to_string(q) + "</text>\n";
    }
    const int p_ticks = 8;
    for (int i = 0; i <= p_ticks; ++i) {
        const double p = p_lo + (p_hi - p_lo) * i / p_ticks;
        s += "<line stroke=\"#eee\" x1=\"" + num(ml) + "\" y1=\"" + num(sy(p)) + "\" x2=\"" +
             num(width - mr) + "\" y2=\"" + num(sy(p)) + "\"/>\n";
        s += "<text x=\"" + num(ml - 40) + "\" y=\"" + num(sy(p) + 4) + "\">" +
             std::to_string(static_cast<long long>(p + 0.5)) + "</text>\n";
    }
    s += "<text x=\"" + num((ml + width - mr) / 2) + "\" y=\"" + num(height - 12) + "\">q</text>\n";
    s += "<text x=\"14\" y=\"" + num((mt + height - mb) / 2) + "\">p</text>\n";
    s += "</g>\n";

    const auto marker = [&](double x, double y, Series series) {
        switch (series) {
        case Series::minimal:
            return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
                   "\" r=\"4\" fill=\"#c0392b\"/>\n";
        case Series::maximal:
            return "<path d=\"M " + num(x) + " " + num(y - 5) + " L " + num(x - 4.5) + " " +
                   num(y + 3.5) + " L " + num(x + 4.5) + " " + num(y + 3.5) +
                   " Z\" fill=\"#2980b9\"/>\n";
        case Series::maximal_even:
            return "<rect x=\"" + num(x - 3.5) + "\" y=\"" + num(y - 3.5) +
                   "\" width=\"7\" height=\"7\" fill=\"#27ae60\"/>\n";
        case Series::interior:
            return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
                   "\" r=\"2.5\" fill=\"#555\"/>\n";
        }
        return std::string();
    };

    for (const auto& [qp, series] : points)
        s += marker(sx(static_cast<double>(qp.first)), sy(static_cast<double>(qp.second)), series);

    // legend
    const double lx = ml + 12, ly = mt + 8;
    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    s += "<rect x=\"" + num(lx - 8) + "\" y=\"" + num(ly - 12) +
         "\" width=\"150\" height=\"74\" fill=\"white\" stroke=\"#999\"/>\n";
    s += marker(lx, ly, Series::minimal) + "<text x=\"" + num(lx + 10) + "\" y=\"" + num(ly + 4) +
         "\">minimal p=q+2</text>\n";
    s += marker(lx, ly + 18, Series::maximal) + "<text x=\"" + num(lx + 10) + "\" y=\"" +
         num(ly + 22) + "\">maximal p=q^2-2</text>\n";
    s += marker(lx, ly + 36, Series::maximal_even) + "<text x=\"" + num(lx + 10) + "\" y=\"" +
         num(ly + 40) + "\">even-q maximal</text>\n";
    s += marker(lx, ly + 54, Series::interior) + "<text x=\"" + num(lx + 10) + "\" y=\"" +
         num(ly + 58) + "\">interior</text>\n";
    s += "</g>\n</svg>\n";
    return s;
}

} // namespace gharm
