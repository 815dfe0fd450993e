#include "paley/plot_svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace paley {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#e377c2"};

}  // namespace

void emit_plot(const std::vector<std::string>& csv_paths, const std::string& out_svg) {
    // series name -> (p, value) points
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    std::map<std::string, std::vector<SweepRecord>> raw;
    for (const auto& path : csv_paths) {
        for (const auto& r : read_csv(path)) {
            if (r.status != "ok" || !(r.value > 0)) continue;
            series[r.quantity].push_back({(double)r.p, r.value});
            raw[r.quantity].push_back(r);
        }
    }
    if (series.empty()) throw std::runtime_error("no plottable rows in the given CSVs");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [name, pts] : series)
        for (auto& [x, y] : pts) {
            xmin = std::min(xmin, std::log10(x));
            xmax = std::max(xmax, std::log10(x));
            ymin = std::min(ymin, std::log10(y));
            ymax = std::max(ymax, std::log10(y));
        }
    if (xmax - xmin < 1e-9) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-9) { ymin -= 0.5; ymax += 0.5; }
    xmin -= 0.05 * (xmax - xmin); xmax += 0.05 * (xmax - xmin);
    ymin -= 0.08 * (ymax - ymin); ymax += 0.08 * (ymax - ymin);

    const double w = 760, h = 520, ml = 70, mr = 20, mt = 20, mb = 55;
    auto sx = [&](double logx) { return ml + (logx - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto sy = [&](double logy) { return h - mb - (logy - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "' viewBox='0 0 " << w << " " << h << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<rect x='" << ml << "' y='" << mt << "' width='" << w - ml - mr << "' height='"
        << h - mt - mb << "' fill='none' stroke='black'/>\n";

    // decade ticks
    for (int e = (int)std::floor(xmin); e <= (int)std::ceil(xmax); ++e) {
        if (e < xmin || e > xmax) continue;
        double px = sx(e);
        svg << "<line x1='" << px << "' y1='" << h - mb << "' x2='" << px << "' y2='"
            << h - mb + 6 << "' stroke='black'/>\n";
        svg << "<text x='" << px << "' y='" << h - mb + 22
            << "' font-size='12' text-anchor='middle'>1e" << e << "</text>\n";
    }
    for (int e = (int)std::floor(ymin); e <= (int)std::ceil(ymax); ++e) {
        if (e < ymin || e > ymax) continue;
        double py = sy(e);
        svg << "<line x1='" << ml - 6 << "' y1='" << py << "' x2='" << ml << "' y2='" << py
            << "' stroke='black'/>\n";
        svg << "<text x='" << ml - 10 << "' y='" << py + 4
            << "' font-size='12' text-anchor='end'>1e" << e << "</text>\n";
    }
    svg << "<text x='" << (ml + w - mr) / 2 << "' y='" << h - 12
        << "' font-size='14' text-anchor='middle'>p</text>\n";
    svg << "<text x='18' y='" << (mt + h - mb) / 2
        << "' font-size='14' text-anchor='middle' transform='rotate(-90 18 "
        << (mt + h - mb) / 2 << ")'>value</text>\n";

    int color_idx = 0;
    double legend_y = mt + 18;
    for (auto& [name, pts] : series) {
        const char* color = kColors[color_idx % 7];
        for (auto& [x, y] : pts)
            svg << "<circle cx='" << sx(std::log10(x)) << "' cy='" << sy(std::log10(y))
                << "' r='3.4' fill='" << color << "' class='marker'/>\n";
        std::string fit_label;
        if (raw[name].size() >= 3) {
            try {
                PowerFit fit = fit_power_law(raw[name]);
                // log10(a p^b) = log10 a + b log10 p
                double lx0 = xmin + 0.02 * (xmax - xmin), lx1 = xmax - 0.02 * (xmax - xmin);
                svg << "<line x1='" << sx(lx0) << "' y1='" << sy(std::log10(fit.a) + fit.b * lx0)
                    << "' x2='" << sx(lx1) << "' y2='" << sy(std::log10(fit.a) + fit.b * lx1)
                    << "' stroke='" << color << "' stroke-dasharray='6 3' class='fitline'/>\n";
                std::ostringstream lbl;
                lbl.precision(3);
                lbl << " ~ " << fit.a << " p^" << fit.b;
                fit_label = lbl.str();
            } catch (const std::exception&) {
            }
        }
        svg << "<rect x='" << w - mr - 235 << "' y='" << legend_y - 10
            << "' width='10' height='10' fill='" << color << "'/>\n";
        svg << "<text x='" << w - mr - 220 << "' y='" << legend_y << "' font-size='12'>" << name
            << fit_label << "</text>\n";
        legend_y += 18;
        ++color_idx;
    }
    svg << "</svg>\n";

    std::ofstream out(out_svg);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_svg);
    out << svg.str();
}

}  // namespace paley
