#include "qsl/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

constexpr double kW = 720, kH = 480;
constexpr double kL = 70, kR = 20, kT = 40, kB = 55;  // margins

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void take(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) { lo = 0; hi = 1; }
        if (hi - lo < 1e-12) { lo -= 0.5; hi += 0.5; }
    }
};

double tx(double v, const Range& r, bool logscale) {
    const double lo = logscale ? std::log10(r.lo) : r.lo;
    const double hi = logscale ? std::log10(r.hi) : r.hi;
    const double x = logscale ? std::log10(v) : v;
    return kL + (x - lo) / (hi - lo) * (kW - kL - kR);
}

double ty(double v, const Range& r, bool logscale) {
    const double lo = logscale ? std::log10(r.lo) : r.lo;
    const double hi = logscale ? std::log10(r.hi) : r.hi;
    const double y = logscale ? std::log10(v) : v;
    return kH - kB - (y - lo) / (hi - lo) * (kH - kT - kB);
}

std::vector<double> ticks(const Range& r, bool logscale) {
    std::vector<double> out;
    if (logscale) {
        const int lo = static_cast<int>(std::ceil(std::log10(r.lo) - 1e-9));
        const int hi = static_cast<int>(std::floor(std::log10(r.hi) + 1e-9));
        for (int e = lo; e <= hi; ++e) out.push_back(std::pow(10.0, e));
        if (out.size() < 2) { out = {r.lo, r.hi}; }
    } else {
        const double span = r.hi - r.lo;
        const double raw = span / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
            if (raw <= m * mag) { step = m * mag; break; }
        const double first = std::ceil(r.lo / step - 1e-9) * step;
        for (double v = first; v <= r.hi + 1e-9 * span; v += step) out.push_back(v);
    }
    return out;
}

} // namespace

void write_svg_plot(const std::string& path, const SvgAxes& axes,
                    const std::vector<SvgSeries>& series) {
    Range rx, ry;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw contract_violation("svg series has mismatched x/y lengths");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (axes.log_x && !(s.x[i] > 0)) continue;
            if (axes.log_y && !(s.y[i] > 0)) continue;
            rx.take(s.x[i]);
            ry.take(s.y[i]);
        }
    }
    rx.pad();
    ry.pad();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file '" + path + "'");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << axes.title << "</text>\n";

    // frame
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
        << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double v : ticks(rx, axes.log_x)) {
        const double x = tx(v, rx, axes.log_x);
        out << "<line x1=\"" << x << "\" y1=\"" << kH - kB << "\" x2=\"" << x << "\" y2=\""
            << kH - kB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << kH - kB + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(v) << "</text>\n";
    }
    for (double v : ticks(ry, axes.log_y)) {
        const double y = ty(v, ry, axes.log_y);
        out << "<line x1=\"" << kL - 5 << "\" y1=\"" << y << "\" x2=\"" << kL << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kL - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(v) << "</text>\n";
    }
    out << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << axes.xlabel << "</text>\n"
        << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (kT + kH - kB) / 2 << ")\">" << axes.ylabel << "</text>\n";

    double legend_y = kT + 16;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        bool pen_down = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((axes.log_x && !(s.x[i] > 0)) || (axes.log_y && !(s.y[i] > 0)) ||
                !std::isfinite(s.y[i])) {
                pen_down = false;
                continue;
            }
            if (pen_down) out << ' ';
            out << fmt(tx(s.x[i], rx, axes.log_x)) << ',' << fmt(ty(s.y[i], ry, axes.log_y));
            pen_down = true;
        }
        out << "\"/>\n";
        out << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << legend_y << "\" x2=\""
            << kW - kR - 125 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kW - kR - 118 << "\" y=\"" << legend_y + 4
            << "\" font-size=\"12\">" << s.label << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

} // namespace qsl
