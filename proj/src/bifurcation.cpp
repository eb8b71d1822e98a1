#include "lvbif/bifurcation.hpp"

#include "lvbif/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace lvbif {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double eps = std::numeric_limits<double>::epsilon();

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * pi);
    return a < 0.0 ? a + 2.0 * pi : a;
}

ParamPoint on_circle(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

bool is_line(CurveKind k) { return k == CurveKind::T1 || k == CurveKind::T2 || k == CurveKind::H; }
bool is_axis(CurveKind k) {
    return k == CurveKind::Xplus || k == CurveKind::Xminus || k == CurveKind::Yplus || k == CurveKind::Yminus;
}

// Parabolas opening along mu2 (graphs over mu1) in the deltazero class, along mu1 otherwise.
bool graph_over_mu1(const ReducedSystem& sys) { return sys.degeneracy == Degeneracy::DeltaZero; }

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

double h_slope(const CoeffValues& c) {
    return (c.theta * c.gamma - 1.0) * c.delta / (c.theta * c.gamma * (c.gamma - c.delta));
}

std::optional<State> interior_point(const ReducedSystem& sys, const ParamPoint& mu) {
    const NewtonResult nr = refine_interior(sys, mu, e3_seed(sys, mu));
    if (!nr.converged) return std::nullopt;
    return nr.xi;
}

// Sign change of f on [lo, hi] closest to target, refined to machine precision.
std::optional<double> bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                                     double target, int n = 40) {
    std::vector<double> xs(n + 1), fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = lo + (hi - lo) * i / n;
        fs[i] = f(xs[i]);
    }
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1])) continue;
        if (fs[i] == 0.0) return xs[i];
        if (fs[i] * fs[i + 1] < 0.0) {
            const double d = std::abs(0.5 * (xs[i] + xs[i + 1]) - target);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
    }
    if (best < 0) return std::nullopt;
    std::uintmax_t max_iter = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, xs[best], xs[best + 1], fs[best], fs[best + 1],
                                                     boost::math::tools::eps_tolerance<double>(52), max_iter);
    const double fa = f(a), fb = f(b);
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

} // namespace

std::string to_string(CurveKind k) {
    switch (k) {
    case CurveKind::T1: return "T1";
    case CurveKind::T2: return "T2";
    case CurveKind::T3: return "T3";
    case CurveKind::T3plus: return "T3plus";
    case CurveKind::T4: return "T4";
    case CurveKind::T4plus: return "T4plus";
    case CurveKind::D_branch_neg: return "D_branch_neg";
    case CurveKind::D_branch_pos: return "D_branch_pos";
    case CurveKind::H: return "H";
    case CurveKind::Xplus: return "Xplus";
    case CurveKind::Xminus: return "Xminus";
    case CurveKind::Yplus: return "Yplus";
    case CurveKind::Yminus: return "Yminus";
    }
    return "?";
}

CurveKind parse_curve_kind(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(CurveKind::Yminus); ++i) {
        const auto k = static_cast<CurveKind>(i);
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown curve kind '" + s + "'");
}

bool admissible(Degeneracy d, CurveKind k) {
    if (is_axis(k)) return true;
    switch (d) {
    case Degeneracy::NonDegenerate: return k == CurveKind::T1 || k == CurveKind::T2 || k == CurveKind::H;
    case Degeneracy::DeltaZero:
        return k == CurveKind::T1 || k == CurveKind::T3 || k == CurveKind::T3plus || k == CurveKind::D_branch_neg ||
               k == CurveKind::D_branch_pos;
    case Degeneracy::ThetaZero:
        return k == CurveKind::T2 || k == CurveKind::T4 || k == CurveKind::T4plus || k == CurveKind::D_branch_neg ||
               k == CurveKind::D_branch_pos;
    case Degeneracy::DoublyDegenerate: return false;
    }
    return false;
}

std::vector<CurveKind> admissible_kinds(Degeneracy d) {
    std::vector<CurveKind> out;
    for (CurveKind k : {CurveKind::Xplus, CurveKind::Yplus, CurveKind::Xminus, CurveKind::Yminus, CurveKind::T1,
                        CurveKind::T2, CurveKind::T3, CurveKind::T3plus, CurveKind::T4, CurveKind::T4plus,
                        CurveKind::D_branch_neg, CurveKind::D_branch_pos, CurveKind::H})
        if (admissible(d, k)) out.push_back(k);
    return out;
}

double curve_residual(const ReducedSystem& sys, CurveKind kind, const ParamPoint& mu) {
    switch (kind) {
    case CurveKind::Xplus:
    case CurveKind::Xminus: return mu.mu2;
    case CurveKind::Yplus:
    case CurveKind::Yminus: return mu.mu1;
    case CurveKind::D_branch_neg:
    case CurveKind::D_branch_pos:
        return graph_over_mu1(sys) ? axis_discriminant_xi2(sys, mu) : axis_discriminant_xi1(sys, mu);
    case CurveKind::H: {
        const auto xi = interior_point(sys, mu);
        if (!xi) return nan;
        return 0.5 * eval_jacobian(sys, mu, *xi).trace();
    }
    case CurveKind::T1:
    case CurveKind::T4:
    case CurveKind::T4plus: {
        const auto xi = interior_point(sys, mu);
        return xi ? (*xi)[1] : nan;
    }
    case CurveKind::T2:
    case CurveKind::T3:
    case CurveKind::T3plus: {
        const auto xi = interior_point(sys, mu);
        return xi ? (*xi)[0] : nan;
    }
    }
    return nan;
}

bool satisfies_constraint(const ReducedSystem& sys, CurveKind kind, const ParamPoint& mu) {
    const CoeffValues c0 = sys.at_origin();
    const bool over_mu1 = graph_over_mu1(sys);
    switch (kind) {
    case CurveKind::T1: return c0.theta * mu.mu1 < 0.0;
    case CurveKind::T2: return c0.delta * mu.mu2 < 0.0;
    case CurveKind::T3: return mu.mu1 < 0.0;
    case CurveKind::T3plus: return mu.mu1 > 0.0;
    case CurveKind::T4: return mu.mu2 < 0.0;
    case CurveKind::T4plus: return mu.mu2 > 0.0;
    case CurveKind::D_branch_neg: return over_mu1 ? mu.mu1 < 0.0 : mu.mu2 < 0.0;
    case CurveKind::D_branch_pos: return over_mu1 ? mu.mu1 > 0.0 : mu.mu2 > 0.0;
    case CurveKind::H: return true;
    case CurveKind::Xplus: return mu.mu1 > 0.0;
    case CurveKind::Xminus: return mu.mu1 < 0.0;
    case CurveKind::Yplus: return mu.mu2 > 0.0;
    case CurveKind::Yminus: return mu.mu2 < 0.0;
    }
    return false;
}

static std::string constraint_text(const ReducedSystem& sys, CurveKind kind) {
    const bool over_mu1 = graph_over_mu1(sys);
    switch (kind) {
    case CurveKind::T1: return "theta*mu1<0";
    case CurveKind::T2: return "delta*mu2<0";
    case CurveKind::T3: return "mu1<0";
    case CurveKind::T3plus: return "mu1>0";
    case CurveKind::T4: return "mu2<0";
    case CurveKind::T4plus: return "mu2>0";
    case CurveKind::D_branch_neg: return over_mu1 ? "mu1<0" : "mu2<0";
    case CurveKind::D_branch_pos: return over_mu1 ? "mu1>0" : "mu2>0";
    case CurveKind::H: return "none";
    case CurveKind::Xplus: return "mu2=0,mu1>0";
    case CurveKind::Xminus: return "mu2=0,mu1<0";
    case CurveKind::Yplus: return "mu1=0,mu2>0";
    case CurveKind::Yminus: return "mu1=0,mu2<0";
    }
    return "";
}

double predicted_leading(const ReducedSystem& sys, CurveKind kind) {
    const CoeffValues c = sys.at_origin();
    const double d1 = sys.delta.d_mu1(), t2 = sys.theta.d_mu2();
    const bool over_mu1 = graph_over_mu1(sys);
    switch (kind) {
    case CurveKind::T1: return 1.0 / (c.theta * c.gamma);
    case CurveKind::T2: return c.delta / c.gamma;
    case CurveKind::H: return h_slope(c);
    case CurveKind::D_branch_neg:
    case CurveKind::D_branch_pos: return over_mu1 ? d1 * d1 / (4.0 * c.P) : t2 * t2 / (4.0 * c.N);
    case CurveKind::T3:
    case CurveKind::T3plus: return (d1 * c.gamma - c.P) / (c.gamma * c.gamma);
    case CurveKind::T4:
    case CurveKind::T4plus: return c.gamma * (t2 - c.N * c.gamma);
    default: return 0.0;
    }
}

static std::string leading_form(const ReducedSystem& sys, CurveKind kind) {
    if (is_line(kind) || is_axis(kind)) return "mu2/mu1";
    return graph_over_mu1(sys) ? "mu2/mu1^2" : "mu1/mu2^2";
}

double leading_ratio(const ReducedSystem& sys, CurveKind kind, const ParamPoint& mu) {
    if (is_axis(kind)) return 0.0;
    if (is_line(kind)) return mu.mu2 / mu.mu1;
    return graph_over_mu1(sys) ? mu.mu2 / (mu.mu1 * mu.mu1) : mu.mu1 / (mu.mu2 * mu.mu2);
}

ParamPoint leading_point(const ReducedSystem& sys, CurveKind kind, double r) {
    const CoeffValues c = sys.at_origin();
    const double a = predicted_leading(sys, kind);
    auto scaled = [r](double x, double y) {
        const double n = std::hypot(x, y);
        return ParamPoint{r * x / n, r * y / n};
    };
    switch (kind) {
    case CurveKind::Xplus: return {r, 0.0};
    case CurveKind::Xminus: return {-r, 0.0};
    case CurveKind::Yplus: return {0.0, r};
    case CurveKind::Yminus: return {0.0, -r};
    case CurveKind::T1: {
        const double s = -sign(c.theta);
        return scaled(s, s * a);
    }
    case CurveKind::T2: return scaled(-1.0, -a);
    case CurveKind::H: return scaled(1.0, a);
    default: break;
    }
    const bool neg = kind == CurveKind::D_branch_neg || kind == CurveKind::T3 || kind == CurveKind::T4;
    const double s = neg ? -r : r;
    if (graph_over_mu1(sys)) return scaled(s, a * s * s);
    return scaled(a * s * s, s);
}

CurveSample solve_on_circle(const ReducedSystem& sys, CurveKind kind, double r, double seed_angle) {
    if (!admissible(sys.degeneracy, kind))
        throw NotApplicable(to_string(kind) + " is not defined for the " + to_string(sys.degeneracy) + " class");
    seed_angle = wrap_angle(seed_angle);
    if (!satisfies_constraint(sys, kind, on_circle(r, seed_angle)))
        throw ConstraintViolation(to_string(kind) + " requested outside its half-line " + constraint_text(sys, kind));
    if (is_axis(kind)) {
        const ParamPoint mu = leading_point(sys, kind, r);
        return {mu, r, wrap_angle(std::atan2(mu.mu2, mu.mu1)), 0.0};
    }
    auto f = [&](double phi) { return curve_residual(sys, kind, on_circle(r, phi)); };
    std::vector<double> windows;
    if (is_line(kind)) {
        windows = {0.05, 0.2, 0.6};
    } else {
        // Offset of the seed from the nearest axis direction.
        const double q = std::round(seed_angle / (0.5 * pi)) * 0.5 * pi;
        const double off = std::max(std::abs(seed_angle - q), 1e-9);
        windows = {0.9 * off, 2.0 * off, 5.0 * off};
    }
    for (double w : windows) {
        const auto root = bracketed_root(f, seed_angle - w, seed_angle + w, seed_angle);
        if (!root) continue;
        const double phi = wrap_angle(*root);
        const ParamPoint mu = on_circle(r, phi);
        if (!satisfies_constraint(sys, kind, mu))
            throw ConstraintViolation(to_string(kind) + " root violates " + constraint_text(sys, kind));
        return {mu, r, phi, curve_residual(sys, kind, mu)};
    }
    throw NoRoot("no root of the " + to_string(kind) + " residual near angle " + std::to_string(seed_angle) +
                 " at radius " + std::to_string(r));
}

CurveSample solve_on_circle(const ReducedSystem& sys, CurveKind kind, double r) {
    if (!admissible(sys.degeneracy, kind))
        throw NotApplicable(to_string(kind) + " is not defined for the " + to_string(sys.degeneracy) + " class");
    const ParamPoint p = leading_point(sys, kind, r);
    return solve_on_circle(sys, kind, r, std::atan2(p.mu2, p.mu1));
}

double solve_on_graph(const ReducedSystem& sys, CurveKind kind, double s) {
    if (!admissible(sys.degeneracy, kind) || is_line(kind) || is_axis(kind))
        throw NotApplicable(to_string(kind) + " is not a parabola-like curve of this class");
    const bool over_mu1 = graph_over_mu1(sys);
    const ParamPoint probe = over_mu1 ? ParamPoint{s, 0.0} : ParamPoint{0.0, s};
    if (!satisfies_constraint(sys, kind, probe))
        throw ConstraintViolation(to_string(kind) + " requested outside its half-line " + constraint_text(sys, kind));
    const double y0 = predicted_leading(sys, kind) * s * s;
    auto f = [&](double y) {
        return curve_residual(sys, kind, over_mu1 ? ParamPoint{s, y} : ParamPoint{y, s});
    };
    const double scale = std::max(std::abs(y0), 1e-9 * s * s);
    for (double w : {0.5, 0.9, 2.0, 5.0}) {
        const auto root = bracketed_root(f, y0 - w * scale, y0 + w * scale, y0);
        if (root) return *root;
    }
    throw NoRoot("no root of the " + to_string(kind) + " residual at abscissa " + std::to_string(s));
}

BifurcationCurve trace_curve(const ReducedSystem& sys, CurveKind kind, const std::vector<double>& radii) {
    if (!admissible(sys.degeneracy, kind))
        throw NotApplicable(to_string(kind) + " is not defined for the " + to_string(sys.degeneracy) + " class");
    BifurcationCurve curve;
    curve.kind = kind;
    curve.constraint = constraint_text(sys, kind);
    curve.branch = kind == CurveKind::H ? "both" : curve.constraint;
    curve.leading_form = leading_form(sys, kind);
    curve.predicted_leading = predicted_leading(sys, kind);
    for (double r : radii) {
        std::vector<double> seeds;
        const ParamPoint p = leading_point(sys, kind, r);
        seeds.push_back(std::atan2(p.mu2, p.mu1));
        if (kind == CurveKind::H) seeds.push_back(seeds.front() + pi);
        for (double seed : seeds) {
            try {
                curve.samples.push_back(solve_on_circle(sys, kind, r, seed));
            } catch (const NoRoot& e) {
                curve.notes.push_back(e.what());
            } catch (const ConstraintViolation& e) {
                curve.notes.push_back(e.what());
            }
        }
    }
    // Leading coefficient: intercept of the ratio regressed on the signed abscissa.
    if (!curve.samples.empty() && !is_axis(kind)) {
        const bool over_mu1 = is_line(kind) || graph_over_mu1(sys);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(curve.samples.size());
        for (const auto& s : curve.samples) {
            const double x = over_mu1 ? s.mu.mu1 : s.mu.mu2;
            const double y = leading_ratio(sys, kind, s.mu);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double den = n * sxx - sx * sx;
        curve.fitted_leading = (n < 2 || std::abs(den) <= 1e-30 * n * sxx) ? sy / n : (sy * sxx - sx * sxy) / den;
    }
    return curve;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::SaddleNode: return "SaddleNode";
    case Verdict::Transcritical: return "Transcritical";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

struct Setup {
    CurveKind kind;
    State xi0;
    Label label;
    int parameter;  // 1 or 2
    int v_index;    // component of v scaled to 1
    int w_index;    // component of w scaled to 1
};

State unit(State v) {
    const double n = norm(v);
    return {v[0] / n, v[1] / n};
}

State field_mu_derivative(const ReducedSystem& sys, const ParamPoint& mu, const State& xi, int k) {
    const double h = 1e-7 * (1.0 + mu.norm());
    ParamPoint a = mu, b = mu;
    (k == 1 ? a.mu1 : a.mu2) += h;
    (k == 1 ? b.mu1 : b.mu2) -= h;
    const State fa = eval_field(sys, a, xi), fb = eval_field(sys, b, xi);
    return {(fa[0] - fb[0]) / (2.0 * h), (fa[1] - fb[1]) / (2.0 * h)};
}

Mat2 jacobian_mu_derivative(const ReducedSystem& sys, const ParamPoint& mu, const State& xi, int k) {
    const double h = 1e-7 * (1.0 + mu.norm());
    ParamPoint a = mu, b = mu;
    (k == 1 ? a.mu1 : a.mu2) += h;
    (k == 1 ? b.mu1 : b.mu2) -= h;
    const Mat2 ja = eval_jacobian(sys, a, xi), jb = eval_jacobian(sys, b, xi);
    const double s = 1.0 / (2.0 * h);
    return {(ja.a - jb.a) * s, (ja.b - jb.b) * s, (ja.c - jb.c) * s, (ja.d - jb.d) * s};
}

SotomayorReport evaluate(const ReducedSystem& sys, const ParamPoint& mu0, const Setup& st) {
    SotomayorReport rep;
    rep.curve_kind = st.kind;
    rep.mu0 = mu0;
    rep.xi0 = st.xi0;
    rep.collision_label = st.label;
    rep.parameter = st.parameter;
    const CoeffValues c = sys.at(mu0);
    const Mat2 A = eval_jacobian(c, mu0, st.xi0);
    const auto ev = eigenvalues(A);
    if (ev[0].imag() != 0.0) throw DegenerateJacobian("Jacobian at the collision point has complex eigenvalues");
    const double l0 = std::abs(ev[0].real()) <= std::abs(ev[1].real()) ? ev[0].real() : ev[1].real();
    const double l1 = std::abs(ev[0].real()) <= std::abs(ev[1].real()) ? ev[1].real() : ev[0].real();
    if (std::abs(l1) <= 1e3 * eps * std::max(A.max_abs(), mu0.norm()))
        throw DegenerateJacobian("zero eigenvalue at the collision point is not simple");

    rep.v = unit(null_vector(A, l0));
    rep.w = unit(null_vector(A.transpose(), l0));
    rep.residual_v = norm(A * rep.v);
    rep.residual_w = norm(A.transpose() * rep.w);

    const State fmu = field_mu_derivative(sys, mu0, st.xi0, st.parameter);
    const Mat2 jmu = jacobian_mu_derivative(sys, mu0, st.xi0, st.parameter);
    auto quantities = [&](const State& v, const State& w) {
        return std::array<double, 3>{dot(w, fmu), dot(w, jmu * v), dot(w, eval_second(c, st.xi0, v, v))};
    };
    const auto cu = quantities(rep.v, rep.w);
    rep.C1 = cu[0];
    rep.C2 = cu[1];
    rep.C3 = cu[2];
    const double vs = rep.v[st.v_index], ws = rep.w[st.w_index];
    if (vs != 0.0 && ws != 0.0) {
        const auto cs = quantities((1.0 / vs) * rep.v, (1.0 / ws) * rep.w);
        rep.C1_scaled = cs[0];
        rep.C2_scaled = cs[1];
        rep.C3_scaled = cs[2];
    } else {
        rep.notes.push_back("designated normalisation component vanishes; scaled quantities unavailable");
        rep.C1_scaled = rep.C2_scaled = rep.C3_scaled = nan;
    }
    return rep;
}

bool nonzero(double value, const std::optional<double>& pred, double fallback_scale) {
    const double scale = pred ? std::abs(*pred) : fallback_scale;
    return std::isfinite(value) && std::abs(value) > 1e3 * eps * scale;
}

void hypothesis(std::vector<std::string>& failed, double value, const std::string& what) {
    if (!(std::abs(value) > zero_tol)) failed.push_back(what);
}

} // namespace

SotomayorReport sotomayor_saddle_node(const ReducedSystem& sys, const ParamPoint& mu0) {
    const CoeffValues c0 = sys.at_origin();
    const CoeffValues c = sys.at(mu0);
    std::vector<std::string> failed;
    Setup st{};
    const bool over_mu1 = sys.degeneracy == Degeneracy::DeltaZero;
    if (over_mu1) {
        const double d1 = sys.delta.d_mu1(), d2 = sys.delta.d_mu2();
        hypothesis(failed, c0.theta, "theta");
        hypothesis(failed, d1, "delta1");
        hypothesis(failed, d2, "delta2");
        hypothesis(failed, c0.P, "P");
        hypothesis(failed, 2.0 * c0.P - d1 * c0.gamma, "2P - delta1*gamma");
        st = {mu0.mu1 < 0.0 ? CurveKind::D_branch_neg : CurveKind::D_branch_pos,
              {0.0, -c.delta / (2.0 * c.P)}, Label::E21, 2, 1, 1};
    } else if (sys.degeneracy == Degeneracy::ThetaZero) {
        const double t1 = sys.theta.d_mu1(), t2 = sys.theta.d_mu2();
        hypothesis(failed, t1, "theta1");
        hypothesis(failed, t2, "theta2");
        hypothesis(failed, c0.delta, "delta");
        hypothesis(failed, c0.N, "N");
        hypothesis(failed, 2.0 * c0.N * c0.gamma - t2, "2N*gamma - theta2");
        st = {mu0.mu2 < 0.0 ? CurveKind::D_branch_neg : CurveKind::D_branch_pos,
              {-c.theta / (2.0 * c.N), 0.0}, Label::E11, 1, 0, 1};
    } else {
        throw NotApplicable("saddle-node curves exist only in the deltazero and thetazero classes");
    }
    SotomayorReport rep = evaluate(sys, mu0, st);
    const double g = c0.gamma;
    if (over_mu1) {
        const double d1 = sys.delta.d_mu1();
        rep.C1_pred = -d1 * mu0.mu1 / (2.0 * c0.P);
        rep.C3_pred = -d1 * mu0.mu1;
    } else {
        const double t2 = sys.theta.d_mu2();
        rep.C1_pred = -mu0.mu2 * (2.0 * c0.N * g - t2) / (2.0 * c0.N * g * g);
        rep.C3_pred = -mu0.mu2 * (2.0 * c0.N * g - t2) / (g * g);
    }
    for (const auto& f : failed) rep.notes.push_back("hypothesis violated: " + f + " = 0");
    const double r = mu0.norm();
    if (!failed.empty())
        rep.verdict = Verdict::Inconclusive;
    else if (nonzero(rep.C1_scaled, rep.C1_pred, r) && nonzero(rep.C3_scaled, rep.C3_pred, r))
        rep.verdict = Verdict::SaddleNode;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

SotomayorReport sotomayor_transcritical(const ReducedSystem& sys, const ParamPoint& mu0) {
    if (sys.degeneracy == Degeneracy::DeltaZero) return sotomayor_transcritical(sys, mu0, CurveKind::T3);
    if (sys.degeneracy == Degeneracy::ThetaZero) return sotomayor_transcritical(sys, mu0, CurveKind::T4);
    throw NotApplicable("specify the transcritical curve kind for this class");
}

SotomayorReport sotomayor_transcritical(const ReducedSystem& sys, const ParamPoint& mu0, CurveKind kind) {
    if (!admissible(sys.degeneracy, kind) || kind == CurveKind::H || kind == CurveKind::D_branch_neg ||
        kind == CurveKind::D_branch_pos)
        throw NotApplicable(to_string(kind) + " is not a transcritical curve of the " + to_string(sys.degeneracy) +
                            " class");
    const CoeffValues c0 = sys.at_origin();
    const double g = c0.gamma;
    const EquilibriumSet eqs = find_equilibria(sys, mu0);
    auto axis_point = [&](Label l) -> State {
        const Equilibrium* e = eqs.find(l);
        if (!e) throw CollisionMismatch(to_string(l) + " does not exist at the requested point of " + to_string(kind));
        return e->xi;
    };
    std::vector<std::string> failed;
    Setup st{};
    std::optional<double> c2_pred, c3_pred;
    switch (kind) {
    case CurveKind::T3:
    case CurveKind::T3plus: {
        const double d1 = sys.delta.d_mu1(), g2 = sys.gamma.d_mu2();
        hypothesis(failed, d1, "delta1");
        hypothesis(failed, g2, "gamma2");
        hypothesis(failed, d1 * g - 2.0 * c0.P, "delta1*gamma - 2P");
        if (!(c0.P > 0.0)) failed.push_back("P > 0");
        // On the opposite half-line E3 meets the other root of the axis quadratic.
        const bool first = (g * d1 - 2.0 * c0.P < 0.0) == (kind == CurveKind::T3);
        const Label l = first ? Label::E21 : Label::E22;
        st = {kind, axis_point(l), l, 2, 1, 0};
        if (kind == CurveKind::T3) {
            const double m1 = mu0.mu1;
            c2_pred = m1 * m1 * (g * d1 - 2.0 * c0.P) * g2 / g;
            c3_pred = 2.0 * g * m1 * (2.0 * c0.P - g * d1);
        }
        break;
    }
    case CurveKind::T4:
    case CurveKind::T4plus: {
        const double t2 = sys.theta.d_mu2(), g1 = sys.gamma.d_mu1();
        hypothesis(failed, g1, "gamma1");
        hypothesis(failed, t2, "theta2");
        hypothesis(failed, c0.delta, "delta");
        hypothesis(failed, t2 - c0.N * g, "theta2 - N*gamma");
        hypothesis(failed, t2 - 2.0 * c0.N * g, "theta2 - 2N*gamma");
        const bool first = (t2 - 2.0 * c0.N * g < 0.0) == (kind == CurveKind::T4);
        const Label l = first ? Label::E11 : Label::E12;
        st = {kind, axis_point(l), l, 1, 1, 1};
        if (kind == CurveKind::T4) {
            c2_pred = g1 * mu0.mu2 / g;
            c3_pred = 2.0 / ((2.0 * c0.N * g - t2) * mu0.mu2);
        }
        break;
    }
    case CurveKind::T1: st = {kind, axis_point(Label::E1), Label::E1, 2, 1, 1}; break;
    case CurveKind::T2: st = {kind, axis_point(Label::E2), Label::E2, 1, 0, 0}; break;
    case CurveKind::Xplus:
    case CurveKind::Xminus: st = {kind, {0.0, 0.0}, Label::E0, 2, 1, 1}; break;
    case CurveKind::Yplus:
    case CurveKind::Yminus: st = {kind, {0.0, 0.0}, Label::E0, 1, 0, 0}; break;
    default: break;
    }
    if (!failed.empty()) {
        std::string msg = to_string(kind) + " transcritical hypotheses violated:";
        for (const auto& f : failed) msg += " " + f;
        throw HypothesisViolation(msg);
    }
    SotomayorReport rep = evaluate(sys, mu0, st);
    rep.C1_pred = 0.0;
    rep.C2_pred = c2_pred;
    rep.C3_pred = c3_pred;
    const double r = mu0.norm();
    const bool c2_ok = nonzero(rep.C2_scaled, c2_pred, r);
    const bool c3_ok = nonzero(rep.C3_scaled, c3_pred, r);
    const bool c1_zero = std::abs(rep.C1_scaled) <= 1e-9 * std::abs(rep.C2_scaled);
    rep.verdict = c1_zero && c2_ok && c3_ok ? Verdict::Transcritical : Verdict::Inconclusive;
    return rep;
}

bool CollisionReport::ok() const {
    for (const auto& s : samples)
        if (!s.ok()) return false;
    return true;
}

CollisionReport collision_check(const ReducedSystem& sys, const BifurcationCurve& curve, const Tolerances& tol) {
    CollisionReport rep;
    rep.kind = curve.kind;
    const CoeffValues c0 = sys.at_origin();
    const double g = c0.gamma;
    for (const auto& s : curve.samples) {
        const EquilibriumSet eqs = find_equilibria(sys, s.mu, tol);
        CollisionSample cs;
        cs.mu = s.mu;
        int sign_expect = 0;  // expected sign of the along-axis eigenvalue
        std::optional<Label> companion;
        bool companion_attracts = false;
        switch (curve.kind) {
        case CurveKind::T1: cs.first = Label::E1; cs.second = Label::E3; break;
        case CurveKind::T2: cs.first = Label::E2; cs.second = Label::E3; break;
        case CurveKind::T3:
        case CurveKind::T3plus: {
            const bool a = g * sys.delta.d_mu1() - 2.0 * c0.P < 0.0;
            cs.first = a == (curve.kind == CurveKind::T3) ? Label::E21 : Label::E22;
            cs.second = Label::E3;
            if (curve.kind == CurveKind::T3) {
                sign_expect = a ? 1 : -1;
                companion = a ? Label::E22 : Label::E21;
                companion_attracts = a;
            }
            break;
        }
        case CurveKind::T4:
        case CurveKind::T4plus: {
            const bool a = sys.theta.d_mu2() - 2.0 * c0.N * g < 0.0;
            cs.first = a == (curve.kind == CurveKind::T4) ? Label::E11 : Label::E12;
            cs.second = Label::E3;
            if (curve.kind == CurveKind::T4) {
                sign_expect = a ? 1 : -1;
                companion = a ? Label::E12 : Label::E11;
                companion_attracts = a;
            }
            break;
        }
        case CurveKind::D_branch_neg:
        case CurveKind::D_branch_pos:
            if (sys.degeneracy == Degeneracy::DeltaZero) {
                cs.first = Label::E21;
                cs.second = Label::E22;
            } else {
                cs.first = Label::E11;
                cs.second = Label::E12;
            }
            break;
        default: throw NotApplicable("collision check is not defined for " + to_string(curve.kind));
        }
        const Equilibrium* a = eqs.find(cs.first);
        const Equilibrium* b = eqs.find(cs.second);
        const double r = s.mu.norm();
        if (!a || !b || norm(a->xi - b->xi) >= tol.collide * r)
            throw CollisionMismatch("expected " + to_string(cs.first) + " and " + to_string(cs.second) +
                                    " to collide on " + to_string(curve.kind));
        cs.distance = norm(a->xi - b->xi);
        // The transverse eigenvalue of the axis point vanishes on T-curves; on D the along-axis one.
        const bool on_d = curve.kind == CurveKind::D_branch_neg || curve.kind == CurveKind::D_branch_pos;
        cs.zero_eigenvalue = on_d ? a->eigenvalues[0].real() : a->eigenvalues[1].real();
        cs.zero_ok = std::abs(cs.zero_eigenvalue) < 1e-9 * r;
        if (sign_expect != 0) {
            cs.other_eigenvalue = a->eigenvalues[0].real();
            cs.sign_ok = sign_expect * cs.other_eigenvalue > 0.0;
        }
        if (companion) {
            cs.companion = companion;
            const Equilibrium* e = eqs.find(*companion);
            cs.companion_proper = e && e->proper && !e->trivial;
            if (cs.companion_proper) {
                cs.companion_kind = e->kind;
                cs.companion_ok = companion_attracts ? is_attractor(e->kind) : is_repeller(e->kind);
            }
        }
        rep.samples.push_back(cs);
    }
    return rep;
}

std::vector<SuiteEntry> sotomayor_suite(const ReducedSystem& sys, const std::vector<double>& radii) {
    std::vector<SuiteEntry> out;
    for (CurveKind k : admissible_kinds(sys.degeneracy)) {
        if (k == CurveKind::H) continue;
        const bool sn = k == CurveKind::D_branch_neg || k == CurveKind::D_branch_pos;
        for (const auto& s : trace_curve(sys, k, radii).samples) {
            SuiteEntry e;
            e.kind = k;
            e.mu = s.mu;
            e.expected = sn ? Verdict::SaddleNode : Verdict::Transcritical;
            try {
                e.verdict = (sn ? sotomayor_saddle_node(sys, s.mu) : sotomayor_transcritical(sys, s.mu, k)).verdict;
            } catch (const Error& err) {
                e.error = err.what();
            }
            out.push_back(e);
        }
    }
    return out;
}

} // namespace lvbif
