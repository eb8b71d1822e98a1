#include "lvbif/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lvbif {

namespace {

constexpr double canvas = 600.0;
constexpr double margin = 40.0;

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string px(double x) { return fmt("%.3f", x); }

const char* terminal_colour(const std::string& name) {
    if (name == "E0") return "#1f77b4";
    if (name == "E1" || name == "E11") return "#ff7f0e";
    if (name == "E12") return "#bcbd22";
    if (name == "E2" || name == "E21") return "#2ca02c";
    if (name == "E22") return "#17becf";
    if (name == "E3") return "#d62728";
    if (name == "LeftWindow") return "#7f7f7f";
    return "#9467bd";
}

const char* curve_colour(CurveKind k) {
    switch (k) {
    case CurveKind::T1: return "#1f77b4";
    case CurveKind::T2: return "#ff7f0e";
    case CurveKind::T3:
    case CurveKind::T3plus: return "#2ca02c";
    case CurveKind::T4:
    case CurveKind::T4plus: return "#17becf";
    case CurveKind::D_branch_neg:
    case CurveKind::D_branch_pos: return "#d62728";
    case CurveKind::H: return "#9467bd";
    default: return "#000000";
    }
}

struct Frame {
    double lo1, hi1, lo2, hi2;
    double x(double v) const { return margin + (v - lo1) / (hi1 - lo1) * (canvas - 2 * margin); }
    double y(double v) const { return canvas - margin - (v - lo2) / (hi2 - lo2) * (canvas - 2 * margin); }
};

void header(std::ostringstream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\"" << canvas
       << "\" viewBox=\"0 0 " << canvas << ' ' << canvas << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void polyline(std::ostringstream& os, const Frame& fr, const Trajectory& t, const Box& clip) {
    os << "<polyline fill=\"none\" stroke=\"" << terminal_colour(t.terminal_name()) << "\" stroke-width=\""
       << (t.separatrix ? "2" : "0.7") << "\" points=\"";
    bool first = true;
    for (const auto& p : t.points) {
        const double a = std::clamp(p.x[0], clip.lo1, clip.hi1), b = std::clamp(p.x[1], clip.lo2, clip.hi2);
        os << (first ? "" : " ") << px(fr.x(a)) << ',' << px(fr.y(b));
        first = false;
        if (a != p.x[0] || b != p.x[1]) break;
    }
    os << "\"/>\n";
}

} // namespace

std::string format_double(double x) { return fmt("%.17g", x); }

std::string trajectories_csv(const Portrait& p) {
    std::ostringstream os;
    os << "t,xi1,xi2,trajectory_id,terminal\n";
    std::size_t id = 0;
    for (const auto* list : {&p.trajectories, &p.separatrices})
        for (const auto& t : *list) {
            const std::string term = t.terminal_name();
            for (const auto& pt : t.points)
                os << format_double(pt.t) << ',' << format_double(pt.x[0]) << ',' << format_double(pt.x[1]) << ','
                   << id << ',' << term << '\n';
            ++id;
        }
    return os.str();
}

std::string curves_csv(const std::vector<BifurcationCurve>& curves) {
    std::ostringstream os;
    os << "kind,branch,mu1,mu2,residual\n";
    for (const auto& c : curves)
        for (const auto& s : c.samples)
            os << to_string(c.kind) << ',' << c.branch << ',' << format_double(s.mu.mu1) << ','
               << format_double(s.mu.mu2) << ',' << format_double(s.residual) << '\n';
    return os.str();
}

std::string portrait_svg(const Portrait& p) {
    std::ostringstream os;
    header(os);
    const Box& w = p.window;
    const Frame fr{w.lo1, w.hi1, w.lo2, w.hi2};
    os << "<rect x=\"" << px(fr.x(w.lo1)) << "\" y=\"" << px(fr.y(w.hi2)) << "\" width=\""
       << px(fr.x(w.hi1) - fr.x(w.lo1)) << "\" height=\"" << px(fr.y(w.lo2) - fr.y(w.hi2))
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& t : p.trajectories) polyline(os, fr, t, w);
    for (const auto& t : p.separatrices) polyline(os, fr, t, w);
    for (const auto& e : p.equilibria.points) {
        if (!e.proper) continue;
        const std::string cx = px(fr.x(e.xi[0])), cy = px(fr.y(e.xi[1]));
        const char* fill = is_attractor(e.kind) ? "black" : is_repeller(e.kind) ? "white" : "#cccccc";
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"5\" fill=\"" << fill
           << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << cx << "\" y=\"" << cy << "\" dx=\"7\" dy=\"-7\" font-family=\"sans-serif\" font-size=\"12\">"
           << to_string(e.label) << "</text>\n";
    }
    os << "<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\">mu = ("
       << fmt("%.6g", p.mu.mu1) << ", " << fmt("%.6g", p.mu.mu2) << ")</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string diagram_svg(const std::vector<BifurcationCurve>& curves) {
    double r = 0.0;
    for (const auto& c : curves)
        for (const auto& s : c.samples) r = std::max(r, s.radius);
    if (r == 0.0) r = 1.0;
    std::ostringstream os;
    header(os);
    const Frame fr{-r, r, -r, r};
    os << "<line x1=\"" << px(fr.x(-r)) << "\" y1=\"" << px(fr.y(0)) << "\" x2=\"" << px(fr.x(r)) << "\" y2=\""
       << px(fr.y(0)) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << px(fr.x(0)) << "\" y1=\"" << px(fr.y(-r)) << "\" x2=\"" << px(fr.x(0)) << "\" y2=\""
       << px(fr.y(r)) << "\" stroke=\"black\"/>\n";
    for (const auto& c : curves) {
        if (c.samples.empty()) continue;
        // Split into half-lines by the side of the first sample.
        const ParamPoint ref = c.samples.front().mu;
        std::vector<CurveSample> halves[2];
        for (const auto& p : c.samples) halves[p.mu.mu1 * ref.mu1 + p.mu.mu2 * ref.mu2 >= 0.0 ? 0 : 1].push_back(p);
        for (auto& s : halves) {
            if (s.empty()) continue;
            std::sort(s.begin(), s.end(), [](const CurveSample& a, const CurveSample& b) { return a.radius < b.radius; });
            os << "<polyline fill=\"none\" stroke=\"" << curve_colour(c.kind) << "\" stroke-width=\"1.5\" points=\""
               << px(fr.x(0)) << ',' << px(fr.y(0));
            for (const auto& p : s) os << ' ' << px(fr.x(p.mu.mu1)) << ',' << px(fr.y(p.mu.mu2));
            os << "\"/>\n";
            const auto& last = s.back();
            os << "<text x=\"" << px(fr.x(last.mu.mu1)) << "\" y=\"" << px(fr.y(last.mu.mu2))
               << "\" font-family=\"sans-serif\" font-size=\"12\">" << to_string(c.kind) << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace lvbif
