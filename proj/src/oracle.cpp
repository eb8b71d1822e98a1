#include "lvbif/oracle.hpp"

#include "lvbif/errors.hpp"
#include "lvbif/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace lvbif {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double refine_size = 1e-12;

bool changes(double a, double b) { return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0); }

template <class F>
double bisect(F f, double a, double b) {
    double fa = f(a);
    while (b - a > refine_size) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (changes(fa, fm)) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// Cells whose corners show a sign change of both interior factors, subdivided until
// refine_size. Capped to keep tangential crossings from exploding.
void quadrisect(const CoeffValues& c, const ParamPoint& mu, double x0, double y0, double h,
                std::vector<State>& out, int& budget) {
    if (budget-- <= 0) return;
    const State g00 = eval_g(c, mu, {x0, y0}), g10 = eval_g(c, mu, {x0 + h, y0});
    const State g01 = eval_g(c, mu, {x0, y0 + h}), g11 = eval_g(c, mu, {x0 + h, y0 + h});
    auto spans = [&](int k) {
        const double lo = std::min({g00[k], g10[k], g01[k], g11[k]});
        const double hi = std::max({g00[k], g10[k], g01[k], g11[k]});
        return lo <= 0.0 && hi >= 0.0;
    };
    if (!spans(0) || !spans(1)) return;
    if (h <= refine_size) {
        out.push_back({x0 + 0.5 * h, y0 + 0.5 * h});
        return;
    }
    const double k = 0.5 * h;
    for (double dx : {0.0, k})
        for (double dy : {0.0, k}) quadrisect(c, mu, x0 + dx, y0 + dy, k, out, budget);
}

void axis_scan(const std::function<double(double)>& f, double lo, double hi, int n, double shift,
               std::vector<double>& out) {
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
        const double a = lo + (i + shift) * h, b = std::min(a + h, hi);
        if (a >= b) continue;
        if (changes(f(a), f(b))) out.push_back(bisect(f, a, b));
    }
}

std::vector<State> dedupe(std::vector<State> pts, double tol) {
    std::sort(pts.begin(), pts.end());
    std::vector<State> out;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : out)
            if (norm(p - q) < tol) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

} // namespace

std::vector<State> grid_equilibria(const ReducedSystem& sys, const ParamPoint& mu, const Box& window, int n,
                                   std::optional<std::uint32_t> seed) {
    if (n < 1 || n > 2000) throw ConfigError("grid_equilibria requires 1 <= n <= 2000");
    const CoeffValues c = sys.at(mu);
    std::vector<State> found;
    const bool has_origin = window.lo1 <= 0.0 && window.hi1 >= 0.0 && window.lo2 <= 0.0 && window.hi2 >= 0.0;
    if (has_origin) found.push_back({0.0, 0.0});

    std::vector<double> shifts{0.0};
    if (seed) {
        std::mt19937 rng(*seed);
        shifts.push_back(std::uniform_real_distribution<double>(0.1, 0.9)(rng));
    }
    const double scale = window.scale();
    const double h = scale / n;
    for (double shift : shifts) {
        if (window.lo2 <= 0.0 && window.hi2 >= 0.0) {
            std::vector<double> r;
            axis_scan([&](double x) { return eval_g(c, mu, {x, 0.0})[0]; }, window.lo1, window.hi1, n, shift, r);
            for (double x : r) found.push_back({x, 0.0});
        }
        if (window.lo1 <= 0.0 && window.hi1 >= 0.0) {
            std::vector<double> r;
            axis_scan([&](double y) { return eval_g(c, mu, {0.0, y})[1]; }, window.lo2, window.hi2, n, shift, r);
            for (double y : r) found.push_back({0.0, y});
        }
        const int extra = shift > 0.0 ? 1 : 0;
        const int cols = static_cast<int>(std::ceil((window.hi1 - window.lo1) / h)) + extra;
        const int rows = static_cast<int>(std::ceil((window.hi2 - window.lo2) / h)) + extra;
        auto per_row = parallel_map(static_cast<std::size_t>(rows), [&](std::size_t j) {
            std::vector<State> local;
            for (int i = 0; i < cols; ++i) {
                int budget = 4000;
                quadrisect(c, mu, window.lo1 + (i + shift - extra) * h,
                           window.lo2 + (static_cast<double>(j) + shift - extra) * h, h, local, budget);
            }
            return local;
        });
        for (const auto& v : per_row) found.insert(found.end(), v.begin(), v.end());
    }

    // Keep interior candidates that are genuine roots of the field.
    std::vector<State> out;
    const double res_tol = 1e-9 * (1.0 + mu.norm());
    for (const State& p : dedupe(found, 1e-10 * (1.0 + scale))) {
        if (p[0] < window.lo1 || p[0] > window.hi1 || p[1] < window.lo2 || p[1] > window.hi2) continue;
        const State g = eval_g(c, mu, p);
        const bool on1 = p[0] == 0.0, on2 = p[1] == 0.0;
        const bool root = (on1 || std::abs(g[0]) < res_tol) && (on2 || std::abs(g[1]) < res_tol);
        if (root) out.push_back(p);
    }
    return dedupe(out, 1e-9 * (1.0 + scale));
}

Mat2 fd_jacobian(const ReducedSystem& sys, const ParamPoint& mu, const State& xi) {
    const CoeffValues c = sys.at(mu);
    const double h = 1e-6 * (1.0 + norm(xi));
    const State f1 = eval_field(c, mu, {xi[0] + h, xi[1]}), b1 = eval_field(c, mu, {xi[0] - h, xi[1]});
    const State f2 = eval_field(c, mu, {xi[0], xi[1] + h}), b2 = eval_field(c, mu, {xi[0], xi[1] - h});
    const double s = 0.5 / h;
    return {(f1[0] - b1[0]) * s, (f2[0] - b2[0]) * s, (f1[1] - b1[1]) * s, (f2[1] - b2[1]) * s};
}

SignScan sign_scan(const ReducedSystem& sys, double r, int n_angles, int axis_samples) {
    if (!(r > 0.0)) throw NotApplicable("sign_scan requires r > 0");
    if (n_angles < 720) throw NotApplicable("sign_scan requires at least 720 angles");
    std::vector<double> angles;
    for (int i = 0; i < n_angles; ++i) angles.push_back((i + 0.5) * two_pi / n_angles);
    const double lo = -6.0, hi = -1.5;
    for (int k = 0; k < 4; ++k) {
        const double axis = k * 0.5 * std::numbers::pi;
        for (int i = 0; i < axis_samples; ++i) {
            const double off = std::pow(10.0, lo + (hi - lo) * i / (axis_samples - 1));
            for (double a : {axis + off, axis - off}) angles.push_back(std::fmod(a + two_pi, two_pi));
        }
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    SignScan scan;
    scan.radius = r;
    const auto sigs = parallel_map(angles.size(), [&](std::size_t i) {
        return signature_at(sys, {r * std::cos(angles[i]), r * std::sin(angles[i])});
    });
    for (std::size_t i = 0; i < angles.size(); ++i) scan.entries.push_back({angles[i], sigs[i]});
    for (const auto& e : scan.entries) {
        if (!scan.blocks.empty() && scan.blocks.back().signature == e.signature)
            scan.blocks.back().angle_hi = e.angle;
        else
            scan.blocks.push_back({e.angle, e.angle, e.signature});
    }
    if (scan.blocks.size() > 1 && scan.blocks.front().signature == scan.blocks.back().signature) {
        scan.blocks.front().angle_lo = scan.blocks.back().angle_lo - two_pi;
        scan.blocks.pop_back();
    }
    return scan;
}

ScanComparison compare_scan(const SignScan& scan, const Decomposition& dec) {
    ScanComparison cmp;
    auto issue = [&](const std::string& s) { cmp.issues.push_back(s); };
    if (scan.blocks.size() != dec.sectors.size()) {
        std::ostringstream os;
        os << "scan has " << scan.blocks.size() << " blocks, decomposition has " << dec.sectors.size() << " sectors";
        issue(os.str());
    }
    for (const auto& e : scan.entries) {
        for (const auto& s : dec.sectors) {
            const bool inside = (e.angle > s.angle_lo && e.angle < s.angle_hi) ||
                                (e.angle + two_pi > s.angle_lo && e.angle + two_pi < s.angle_hi);
            if (!inside) continue;
            if (e.signature != s.signature) {
                std::ostringstream os;
                os << "angle " << e.angle << ": scan " << e.signature << ", sector " << s.sector_id << " "
                   << s.signature;
                issue(os.str());
            }
            break;
        }
    }
    // Each scan block boundary must have a sector boundary between its neighbouring samples.
    for (std::size_t i = 0; i < scan.blocks.size() && scan.blocks.size() > 1; ++i) {
        const double a = scan.blocks[i].angle_hi;
        const double b = scan.blocks[(i + 1) % scan.blocks.size()].angle_lo;
        const double hi = b < a ? b + two_pi : b;
        bool found = false;
        for (const auto& bd : dec.boundaries) {
            const double x = bd.angle < a ? bd.angle + two_pi : bd.angle;
            if (x >= a && x <= hi) found = true;
        }
        if (!found) {
            std::ostringstream os;
            os << "no sector boundary between scanned angles " << a << " and " << b;
            issue(os.str());
        }
    }
    cmp.ok = cmp.issues.empty();
    return cmp;
}

RootComparison compare_roots(const EquilibriumSet& eqs, const std::vector<State>& roots, const Box& window,
                             double tol) {
    RootComparison cmp;
    std::vector<bool> used(roots.size(), false);
    for (const auto& e : eqs.points) {
        if (e.trivial) continue;
        const State& p = e.xi;
        if (p[0] < window.lo1 || p[0] > window.hi1 || p[1] < window.lo2 || p[1] > window.hi2) continue;
        double best = INFINITY;
        std::size_t arg = roots.size();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const double d = norm(roots[i] - p);
            if (d < best) {
                best = d;
                arg = i;
            }
        }
        if (arg == roots.size() || best > tol) {
            std::ostringstream os;
            os << to_string(e.label) << " at (" << p[0] << ", " << p[1] << ") has no oracle root within " << tol;
            cmp.issues.push_back(os.str());
            continue;
        }
        used[arg] = true;
        cmp.max_distance = std::max(cmp.max_distance, best);
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (!used[i]) {
            std::ostringstream os;
            os << "oracle root (" << roots[i][0] << ", " << roots[i][1] << ") has no labelled equilibrium";
            cmp.issues.push_back(os.str());
        }
    cmp.ok = cmp.issues.empty();
    return cmp;
}

} // namespace lvbif
