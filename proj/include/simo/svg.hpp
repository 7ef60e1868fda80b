#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace simo {

struct ChartSeries {
    std::string label;
    std::vector<std::array<double, 2>> points;  // (x, y)
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string note;  // rendered under the legend, e.g. plotting conventions
    bool log_x = false;
    bool log_y = false;
    int width = 760;
    int height = 520;
};

namespace svg_detail {

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    double transform(double v) const { return log ? std::log10(v) : v; }
    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            const int first = static_cast<int>(std::ceil(lo - 1e-9));
            const int last = static_cast<int>(std::floor(hi + 1e-9));
            int step = 1;
            while ((last - first) / step > 9) ++step;
            for (int d = first; d <= last; d += step) t.push_back(std::pow(10.0, d));
        } else {
            const double span = hi - lo;
            if (span <= 0.0) return {lo};
            const double raw = span / 5.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double m : {1.0, 2.0, 5.0, 10.0}) {
                if (raw <= m * mag) {
                    step = m * mag;
                    break;
                }
            }
            for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
                t.push_back(v);
            }
        }
        return t;
    }
};

}  // namespace svg_detail

// Self-contained SVG line chart, one polyline per series.
inline std::string render_line_chart(const ChartOptions& opt,
                                     const std::vector<ChartSeries>& series) {
    using svg_detail::escape;
    using svg_detail::num;

    static const char* palette[] = {"#4c72b0", "#c44e52", "#55a868",
                                    "#dd8452", "#8172b3", "#64b5cd"};

    svg_detail::Axis xa{0, 1, opt.log_x};
    svg_detail::Axis ya{0, 1, opt.log_y};
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (opt.log_x && !(x > 0.0)) continue;
            if (opt.log_y && !(y > 0.0)) continue;
            const double tx = xa.transform(x);
            const double ty = ya.transform(y);
            if (!any) {
                xa.lo = xa.hi = tx;
                ya.lo = ya.hi = ty;
                any = true;
            } else {
                xa.lo = std::min(xa.lo, tx);
                xa.hi = std::max(xa.hi, tx);
                ya.lo = std::min(ya.lo, ty);
                ya.hi = std::max(ya.hi, ty);
            }
        }
    }
    if (!any) throw std::runtime_error("render_line_chart: no drawable points");
    const auto pad = [](double& lo, double& hi) {
        const double margin = (hi - lo) * 0.05 + 1e-12;
        lo -= margin;
        hi += margin;
    };
    pad(xa.lo, xa.hi);
    pad(ya.lo, ya.hi);

    const double left = 72, right = 24, top = 44, bottom = 56;
    const double plot_w = opt.width - left - right;
    const double plot_h = opt.height - top - bottom;
    const auto px = [&](double v) {
        return left + (xa.transform(v) - xa.lo) / (xa.hi - xa.lo) * plot_w;
    };
    const auto py = [&](double v) {
        return top + plot_h - (ya.transform(v) - ya.lo) / (ya.hi - ya.lo) * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(opt.width / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape(opt.title) + "</text>\n";

    for (double t : xa.ticks()) {
        const double x = px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(top + plot_h) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(top + plot_h + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(t) + "</text>\n";
    }
    for (double t : ya.ticks()) {
        const double y = py(t);
        out += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(left + plot_w) + "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(t) +
               "</text>\n";
    }
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    out += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(opt.height - 14.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(opt.x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + num(top + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 18 " +
           num(top + plot_h / 2) + ")\">" + escape(opt.y_label) + "</text>\n";

    int color_idx = 0;
    for (const auto& s : series) {
        const char* color = palette[color_idx % 6];
        std::string pts;
        for (const auto& [x, y] : s.points) {
            if (opt.log_x && !(x > 0.0)) continue;
            if (opt.log_y && !(y > 0.0)) continue;
            pts += num(px(x)) + "," + num(py(y)) + " ";
            out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                   "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
        }
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.6\"/>\n";
        const double ly = top + 14 + 16.0 * color_idx;
        out += "<line x1=\"" + num(left + plot_w - 120) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(left + plot_w - 96) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(left + plot_w - 90) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) +
               "</text>\n";
        ++color_idx;
    }
    if (!opt.note.empty()) {
        out += "<text x=\"" + num(left) + "\" y=\"" + num(opt.height - 2.0) +
               "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#666666\">" +
               escape(opt.note) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace simo
