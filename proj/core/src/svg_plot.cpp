#include "signorini/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace signorini {

namespace {

const char* kDefaultColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

}  // namespace

void write_convergence_plot(std::ostream& out, std::span<const PlotSeries> series,
                            const PlotSpec& spec) {
    if (series.empty()) throw std::invalid_argument("plot: no series");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const PlotSeries& s : series) {
        if (s.records.size() < 2)
            throw std::invalid_argument("plot: series '" + s.label + "' has fewer than 2 records");
        for (const ConvergenceRecord& r : s.records) {
            if (r.num_dofs <= 0 || !(r.eta_plus_S > 0.0))
                throw std::invalid_argument("plot: nonpositive data in series '" + s.label + "'");
            const double x = std::log10(static_cast<double>(r.num_dofs));
            const double y = std::log10(r.eta_plus_S);
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    const double xpad = std::max(0.05 * (xmax - xmin), 0.05);
    const double ypad = std::max(0.08 * (ymax - ymin), 0.05);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    const double ml = 64, mr = 16, mt = 16, mb = 48;
    const double w = spec.width, h = spec.height;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto Y = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\"" << px(w - ml - mr)
        << "\" height=\"" << px(h - mt - mb)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // decade grid and labels
    for (int k = static_cast<int>(std::ceil(xmin)); k <= static_cast<int>(std::floor(xmax)); ++k) {
        const double x = X(k);
        out << "<line x1=\"" << px(x) << "\" y1=\"" << px(mt) << "\" x2=\"" << px(x)
            << "\" y2=\"" << px(h - mb) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(x) << "\" y=\"" << px(h - mb + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">1e" << k
            << "</text>\n";
    }
    for (int k = static_cast<int>(std::ceil(ymin)); k <= static_cast<int>(std::floor(ymax)); ++k) {
        const double y = Y(k);
        out << "<line x1=\"" << px(ml) << "\" y1=\"" << px(y) << "\" x2=\"" << px(w - mr)
            << "\" y2=\"" << px(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(ml - 6) << "\" y=\"" << px(y + 4)
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">1e" << k
            << "</text>\n";
    }
    out << "<text x=\"" << px(0.5 * (ml + w - mr)) << "\" y=\"" << px(h - 10)
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">degrees of "
           "freedom N</text>\n";
    out << "<text x=\"16\" y=\"" << px(0.5 * (mt + h - mb))
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 16 "
        << px(0.5 * (mt + h - mb)) << ")\">estimator eta + S</text>\n";

    // guide lines, dashed, anchored below the matching series' last point
    for (size_t gi = 0; gi < spec.guide_slopes.size(); ++gi) {
        const double slope = spec.guide_slopes[gi];
        const PlotSeries& anchor_series = series[std::min(gi, series.size() - 1)];
        const ConvergenceRecord& last = anchor_series.records.back();
        const double ax = std::log10(static_cast<double>(last.num_dofs));
        const double ay = std::log10(last.eta_plus_S) - 0.2;
        const double x0 = xmin + xpad, x1 = xmax - xpad;
        const double y0 = ay + slope * (x0 - ax), y1 = ay + slope * (x1 - ax);
        char label[32];
        std::snprintf(label, sizeof label, "%g", slope);
        out << "<line id=\"guide-" << gi << "\" x1=\"" << px(X(x0)) << "\" y1=\"" << px(Y(y0))
            << "\" x2=\"" << px(X(x1)) << "\" y2=\"" << px(Y(y1))
            << "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
        out << "<text x=\"" << px(X(x1) - 4) << "\" y=\"" << px(Y(y1) - 4)
            << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "fill=\"#666666\">slope "
            << label << "</text>\n";
    }

    // series
    for (size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const std::string color =
            s.color.empty() ? kDefaultColors[si % std::size(kDefaultColors)] : s.color;
        out << "<polyline id=\"series-" << escape(s.label) << "\" fill=\"none\" stroke=\""
            << color << "\" stroke-width=\"1.5\" points=\"";
        for (const ConvergenceRecord& r : s.records) {
            out << px(X(std::log10(static_cast<double>(r.num_dofs)))) << ","
                << px(Y(std::log10(r.eta_plus_S))) << " ";
        }
        out << "\"/>\n";
        for (const ConvergenceRecord& r : s.records) {
            out << "<circle cx=\"" << px(X(std::log10(static_cast<double>(r.num_dofs))))
                << "\" cy=\"" << px(Y(std::log10(r.eta_plus_S))) << "\" r=\"2.5\" fill=\""
                << color << "\"/>\n";
        }
    }

    // legend with fitted slopes
    const double lx = ml + 12, ly = mt + 12;
    out << "<rect x=\"" << px(lx) << "\" y=\"" << px(ly) << "\" width=\"210\" height=\""
        << px(18.0 * series.size() + 12) << "\" fill=\"white\" stroke=\"#999999\"/>\n";
    for (size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const std::string color =
            s.color.empty() ? kDefaultColors[si % std::size(kDefaultColors)] : s.color;
        const double ty = ly + 18.0 * (si + 1);
        double slope = 0.0;
        const int tail = std::min<int>(spec.fit_tail, static_cast<int>(s.records.size()));
        slope = fit_rate(s.records, std::max(2, tail));
        char txt[64];
        std::snprintf(txt, sizeof txt, "%s: slope %.3f", s.label.c_str(), slope);
        out << "<line x1=\"" << px(lx + 8) << "\" y1=\"" << px(ty - 4) << "\" x2=\""
            << px(lx + 28) << "\" y2=\"" << px(ty - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << px(lx + 34) << "\" y=\"" << px(ty)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << escape(txt) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace signorini
