#include "ocfsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ocfsim/csv.hpp"

namespace ocfsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
    // fixed 6 significant digits keeps coordinates compact and stable
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string escape_xml(const std::string& s) {
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

struct Ticks {
    std::vector<double> values;
    double lo = 0.0, hi = 1.0;
};

/// "Nice" tick positions covering [lo, hi] with about n steps.
Ticks nice_ticks(double lo, double hi, int n) {
    if (!(hi > lo)) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
    const double raw = (hi - lo) / n;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    Ticks t;
    t.lo = std::floor(lo / step) * step;
    t.hi = std::ceil(hi / step) * step;
    for (double v = t.lo; v <= t.hi + step * 0.5; v += step) t.values.push_back(v);
    return t;
}

} // namespace

std::string render_plot(const PlotSpec& spec) {
    const double width = 720, height = 480;
    const double ml = 70, mr = 160, mt = 44, mb = 56; // margins, legend on the right

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }

    const Ticks xt = nice_ticks(xmin, xmax, 6);
    const Ticks yt = nice_ticks(ymin, ymax, 6);
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double v) { return ml + (v - xt.lo) / (xt.hi - xt.lo) * pw; };
    auto sy = [&](double v) { return mt + ph - (v - yt.lo) / (yt.hi - yt.lo) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!spec.provenance.empty()) os << "<!-- " << escape_xml(spec.provenance) << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " font-size=\"15\">" << escape_xml(spec.title) << "</text>\n";

    // grid + axes
    for (double v : xt.values) {
        os << "<line x1=\"" << fmt(sx(v)) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(sx(v))
           << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"#e0e0e0\"/>\n";
        os << "<text x=\"" << fmt(sx(v)) << "\" y=\"" << fmt(mt + ph + 18)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt(v) << "</text>\n";
    }
    for (double v : yt.values) {
        os << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(sy(v)) << "\" x2=\"" << fmt(ml + pw)
           << "\" y2=\"" << fmt(sy(v)) << "\" stroke=\"#e0e0e0\"/>\n";
        os << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(sy(v) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
           << "</text>\n";
    }
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << escape_xml(spec.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
       << " transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << escape_xml(spec.y_label)
       << "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = kPalette[si % kPaletteSize];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (s.step && i > 0)
                pts << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i - 1])) << ' ';
            pts << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i])) << ' ';
        }
        os << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.8\"/>\n";
        if (!s.step) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                os << "<circle cx=\"" << fmt(sx(s.x[i])) << "\" cy=\"" << fmt(sy(s.y[i]))
                   << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        const double ly = mt + 12 + 18 * static_cast<double>(si);
        os << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 34
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_plot(const std::string& path, const PlotSpec& spec) {
    write_file(path, render_plot(spec));
}

std::string render_snapshot(const Topology& topo, const CoalitionStructure& structure,
                            const std::string& provenance) {
    const double width = 640, height = 640, margin = 50;

    double xmin = topo.mbs.x_km, xmax = topo.mbs.x_km;
    double ymin = topo.mbs.y_km, ymax = topo.mbs.y_km;
    auto grow = [&](const Point& p) {
        xmin = std::min(xmin, p.x_km); xmax = std::max(xmax, p.x_km);
        ymin = std::min(ymin, p.y_km); ymax = std::max(ymax, p.y_km);
    };
    for (const auto& s : topo.sbs) {
        grow(s.position);
        for (const auto& u : s.sues) grow(u);
    }
    for (const auto& m : topo.mues) grow(m.position);
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
    const double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
    auto sx = [&](double x) { return (x - cx) / span * (width - 2 * margin) + width / 2; };
    auto sy = [&](double y) { return height / 2 - (y - cy) / span * (height - 2 * margin); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!provenance.empty()) os << "<!-- " << escape_xml(provenance) << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // coalition hulls first so markers stay on top; singletons get a halo
    int color_idx = 0;
    for (const auto& c : structure.coalitions) {
        const char* color = kPalette[color_idx++ % kPaletteSize];
        std::vector<Point> pts;
        for (const auto& [sbs, units] : c.members) pts.push_back(topo.sbs[sbs].position);
        if (pts.size() >= 3) {
            const auto hull = convex_hull(pts);
            std::ostringstream poly;
            for (const auto& p : hull) poly << fmt(sx(p.x_km)) << ',' << fmt(sy(p.y_km)) << ' ';
            os << "<polygon points=\"" << poly.str() << "\" fill=\"" << color
               << "\" fill-opacity=\"0.15\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        } else if (pts.size() == 2) {
            os << "<line x1=\"" << fmt(sx(pts[0].x_km)) << "\" y1=\"" << fmt(sy(pts[0].y_km))
               << "\" x2=\"" << fmt(sx(pts[1].x_km)) << "\" y2=\"" << fmt(sy(pts[1].y_km))
               << "\" stroke=\"" << color << "\" stroke-width=\"10\" stroke-opacity=\"0.25\""
               << " stroke-linecap=\"round\"/>\n";
        } else if (pts.size() == 1) {
            os << "<circle cx=\"" << fmt(sx(pts[0].x_km)) << "\" cy=\"" << fmt(sy(pts[0].y_km))
               << "\" r=\"12\" fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\"" << color
               << "\"/>\n";
        }
    }

    for (const auto& m : topo.mues)
        os << "<circle cx=\"" << fmt(sx(m.position.x_km)) << "\" cy=\"" << fmt(sy(m.position.y_km))
           << "\" r=\"2.5\" fill=\"#999999\"/>\n";
    for (std::size_t i = 0; i < topo.sbs.size(); ++i) {
        const auto& s = topo.sbs[i];
        for (const auto& u : s.sues)
            os << "<circle cx=\"" << fmt(sx(u.x_km)) << "\" cy=\"" << fmt(sy(u.y_km))
               << "\" r=\"2\" fill=\"#2ca02c\"/>\n";
        os << "<rect x=\"" << fmt(sx(s.position.x_km) - 4) << "\" y=\"" << fmt(sy(s.position.y_km) - 4)
           << "\" width=\"8\" height=\"8\" fill=\"#1f77b4\"/>\n";
        os << "<text x=\"" << fmt(sx(s.position.x_km) + 6) << "\" y=\"" << fmt(sy(s.position.y_km) - 6)
           << "\" font-family=\"sans-serif\" font-size=\"11\">SBS " << i << "</text>\n";
    }
    os << "<path d=\"M " << fmt(sx(topo.mbs.x_km)) << ' ' << fmt(sy(topo.mbs.y_km) - 9)
       << " l 8 14 h -16 z\" fill=\"#d62728\"/>\n";
    os << "<text x=\"" << fmt(sx(topo.mbs.x_km) + 10) << "\" y=\"" << fmt(sy(topo.mbs.y_km))
       << "\" font-family=\"sans-serif\" font-size=\"11\">MBS</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_snapshot(const std::string& path, const Topology& topo,
                    const CoalitionStructure& structure, const std::string& provenance) {
    write_file(path, render_snapshot(topo, structure, provenance));
}

} // namespace ocfsim
