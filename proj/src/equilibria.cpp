#include "lvbif/equilibria.hpp"

#include "lvbif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lvbif {

std::string to_string(Label l) {
    switch (l) {
    case Label::E0: return "E0";
    case Label::E1: return "E1";
    case Label::E2: return "E2";
    case Label::E3: return "E3";
    case Label::E11: return "E11";
    case Label::E12: return "E12";
    case Label::E21: return "E21";
    case Label::E22: return "E22";
    }
    return "?";
}

Label parse_label(const std::string& s) {
    for (Label l : {Label::E0, Label::E1, Label::E2, Label::E3, Label::E11, Label::E12, Label::E21, Label::E22})
        if (to_string(l) == s) return l;
    throw ConfigError("unknown equilibrium label '" + s + "'");
}

std::string to_string(Kind k) {
    switch (k) {
    case Kind::Saddle: return "saddle";
    case Kind::AttractorNode: return "attractor-node";
    case Kind::AttractorFocus: return "attractor-focus";
    case Kind::RepellerNode: return "repeller-node";
    case Kind::RepellerFocus: return "repeller-focus";
    case Kind::Degenerate: return "degenerate";
    }
    return "?";
}

char type_letter(Kind k) {
    switch (k) {
    case Kind::Saddle: return 's';
    case Kind::AttractorNode:
    case Kind::AttractorFocus: return 'a';
    case Kind::RepellerNode:
    case Kind::RepellerFocus: return 'r';
    case Kind::Degenerate: return '?';
    }
    return '?';
}

bool is_attractor(Kind k) { return k == Kind::AttractorNode || k == Kind::AttractorFocus; }
bool is_repeller(Kind k) { return k == Kind::RepellerNode || k == Kind::RepellerFocus; }

const Equilibrium* EquilibriumSet::find(Label l) const {
    for (const auto& e : points)
        if (e.label == l) return &e;
    return nullptr;
}

std::vector<const Equilibrium*> EquilibriumSet::visible() const {
    std::vector<const Equilibrium*> out;
    for (const auto& e : points)
        if (e.proper && !e.trivial) out.push_back(&e);
    return out;
}

Kind kind_from_eigenvalues(const std::array<std::complex<double>, 2>& ev, double tol_eig) {
    const double r0 = ev[0].real(), r1 = ev[1].real();
    if (std::abs(r0) <= tol_eig || std::abs(r1) <= tol_eig) return Kind::Degenerate;
    const bool complex_pair = ev[0].imag() != 0.0;
    if (complex_pair) return r0 < 0.0 ? Kind::AttractorFocus : Kind::RepellerFocus;
    if (r0 * r1 < 0.0) return Kind::Saddle;
    return r0 < 0.0 ? Kind::AttractorNode : Kind::RepellerNode;
}

Classification classify(const ReducedSystem& sys, const ParamPoint& mu, const State& xi, const Tolerances& tol) {
    const Mat2 j = eval_jacobian(sys, mu, xi);
    const auto ev = eigenvalues(j);
    return {ev, kind_from_eigenvalues(ev, tol.eig * mu.norm()), 0.5 * j.trace(), j.det()};
}

std::vector<double> quadratic_roots(double a, double b, double c) {
    if (std::abs(a) < zero_tol) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) return {0.0, 0.0};
    return {q / a, c / q};
}

namespace {

// Roots (-b + sqrt(D))/(2a) and (-b - sqrt(D))/(2a), each from the cancellation-free
// expression; the other via the product c/a.
std::optional<std::pair<double, double>> labelled_pair(double a, double b, double c) {
    if (std::abs(a) < zero_tol) return std::nullopt;
    double disc = b * b - 4.0 * a * c;
    // Rounding band of the discriminant: treat as a double root.
    if (disc < 0.0 && disc > -8.0 * std::numeric_limits<double>::epsilon() * (b * b + std::abs(4.0 * a * c)))
        disc = 0.0;
    if (disc < 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    double plus, minus;
    if (b < 0.0) {
        plus = (-b + s) / (2.0 * a);
        minus = plus != 0.0 ? (c / a) / plus : 0.0;
    } else {
        minus = (-b - s) / (2.0 * a);
        plus = minus != 0.0 ? (c / a) / minus : 0.0;
    }
    return std::make_pair(plus, minus);
}

int precedence(Label l) {
    switch (l) {
    case Label::E0: return 0;
    case Label::E1: return 1;
    case Label::E11: return 2;
    case Label::E2: return 3;
    case Label::E21: return 4;
    case Label::E12: return 5;
    case Label::E22: return 6;
    case Label::E3: return 7;
    }
    return 8;
}

enum class Axis { None, Xi1, Xi2, Origin };

Equilibrium make_point(Label label, const State& xi, Axis axis, const CoeffValues& c, const ParamPoint& mu,
                       const Tolerances& tol) {
    Equilibrium e;
    e.label = label;
    e.xi = xi;
    e.jacobian = eval_jacobian(c, mu, xi);
    const Mat2& j = e.jacobian;
    switch (axis) {
    case Axis::Origin:
    case Axis::Xi1: e.eigenvalues = {std::complex<double>(j.a, 0.0), std::complex<double>(j.d, 0.0)}; break;
    case Axis::Xi2: e.eigenvalues = {std::complex<double>(j.d, 0.0), std::complex<double>(j.a, 0.0)}; break;
    case Axis::None: e.eigenvalues = eigenvalues(j); break;
    }
    const double r = mu.norm();
    e.kind = kind_from_eigenvalues(e.eigenvalues, tol.eig * r);
    const double band = tol.proper * r;
    auto check = [&](double v) {
        if (v < -band) e.proper = false;
        if (std::abs(v) <= band) e.boundary = true;
    };
    if (axis == Axis::Xi1 || axis == Axis::None) check(xi[0]);
    if (axis == Axis::Xi2 || axis == Axis::None) check(xi[1]);
    return e;
}

} // namespace

State e3_seed(const ReducedSystem& sys, const ParamPoint& mu) {
    const double m1 = mu.mu1, m2 = mu.mu2;
    const CoeffValues c0 = sys.at_origin();
    const double g = c0.gamma;
    switch (sys.degeneracy) {
    case Degeneracy::NonDegenerate: {
        const double den = c0.theta * c0.delta - 1.0;
        return {(-c0.delta * m1 + g * m2) / den, (m1 - c0.theta * g * m2) / (g * den)};
    }
    case Degeneracy::DeltaZero: {
        const double d1 = sys.delta.d_mu1();
        return {-g * m2 + (d1 * g - c0.P) * m1 * m1 / g, -m1 / g + c0.theta * m2};
    }
    case Degeneracy::ThetaZero: {
        const double t2 = sys.theta.d_mu2();
        return {c0.delta * m1 - g * m2, -m1 / g + (t2 - c0.N * g) * m2 * m2};
    }
    case Degeneracy::DoublyDegenerate: break;
    }
    // Linearisation at the origin: [[0, g], [1/g, 0]] xi = -mu.
    return {-g * m2, -m1 / g};
}

NewtonResult refine_interior(const ReducedSystem& sys, const ParamPoint& mu, State x, const Tolerances& tol) {
    const CoeffValues c = sys.at(mu);
    const double target = tol.newton_tol * (1.0 + mu.norm());
    State g = eval_g(c, mu, x);
    double res = norm(g);
    for (int it = 0; it <= tol.newton_max_iter; ++it) {
        if (res <= target) {
            // Polish towards machine precision; keep a step only if it lowers the residual.
            for (int k = 0; k < 2 && res > 0.0; ++k) {
                const Mat2 jp = eval_g_jacobian(c, x);
                if (jp.det() == 0.0) break;
                const State trial = x - solve(jp, g);
                const State gt = eval_g(c, mu, trial);
                if (!(norm(gt) < res)) break;
                x = trial;
                g = gt;
                res = norm(g);
            }
            return {x, true, it, res};
        }
        if (it == tol.newton_max_iter) break;
        const Mat2 j = eval_g_jacobian(c, x);
        if (j.det() == 0.0) break;
        const State step = solve(j, g);
        double lambda = 1.0;
        State trial = x - lambda * step;
        State gt = eval_g(c, mu, trial);
        // Backtrack while the residual grows.
        for (int k = 0; k < 30 && norm(gt) > res; ++k) {
            lambda *= 0.5;
            trial = x - lambda * step;
            gt = eval_g(c, mu, trial);
        }
        if (trial == x) break;
        x = trial;
        g = gt;
        res = norm(g);
    }
    return {x, res <= target, tol.newton_max_iter, res};
}

double axis_discriminant_xi2(const ReducedSystem& sys, const ParamPoint& mu) {
    const double d = sys.delta(mu);
    return d * d - 4.0 * mu.mu2 * sys.P(mu);
}

double axis_discriminant_xi1(const ReducedSystem& sys, const ParamPoint& mu) {
    const double t = sys.theta(mu);
    return t * t - 4.0 * mu.mu1 * sys.N(mu);
}

EquilibriumSet find_equilibria(const ReducedSystem& sys, const ParamPoint& mu, const Tolerances& tol) {
    if (std::max(std::abs(mu.mu1), std::abs(mu.mu2)) > tol.epsilon_disk)
        throw ConstraintViolation("mu lies outside the analysis disk of size " + std::to_string(tol.epsilon_disk));
    EquilibriumSet out;
    out.mu = mu;
    const CoeffValues c = sys.at(mu);
    const double r = mu.norm();
    out.points.push_back(make_point(Label::E0, {0.0, 0.0}, Axis::Origin, c, mu, tol));
    if (r == 0.0) return out;

    const bool split_xi1 = sys.degeneracy == Degeneracy::ThetaZero || sys.degeneracy == Degeneracy::DoublyDegenerate;
    const bool split_xi2 = sys.degeneracy == Degeneracy::DeltaZero || sys.degeneracy == Degeneracy::DoublyDegenerate;

    // xi1-axis: mu1 + theta xi1 + N xi1^2 = 0
    if (!split_xi1) {
        const auto roots = quadratic_roots(c.N, c.theta, mu.mu1);
        if (!roots.empty()) {
            const double x = *std::min_element(roots.begin(), roots.end(),
                                               [](double a, double b) { return std::abs(a) < std::abs(b); });
            out.points.push_back(make_point(Label::E1, {x, 0.0}, Axis::Xi1, c, mu, tol));
        }
    } else if (auto pr = labelled_pair(c.N, c.theta, mu.mu1)) {
        out.points.push_back(make_point(Label::E11, {pr->first, 0.0}, Axis::Xi1, c, mu, tol));
        out.points.push_back(make_point(Label::E12, {pr->second, 0.0}, Axis::Xi1, c, mu, tol));
    } else if (std::abs(c.N) < zero_tol && c.theta != 0.0) {
        out.points.push_back(make_point(Label::E11, {-mu.mu1 / c.theta, 0.0}, Axis::Xi1, c, mu, tol));
        out.notes.push_back({"DegenerateCase", "N vanishes: single xi1-axis root reported as E11"});
    }

    // xi2-axis: mu2 + delta xi2 + P xi2^2 = 0
    if (!split_xi2) {
        const auto roots = quadratic_roots(c.P, c.delta, mu.mu2);
        if (!roots.empty()) {
            const double y = *std::min_element(roots.begin(), roots.end(),
                                               [](double a, double b) { return std::abs(a) < std::abs(b); });
            out.points.push_back(make_point(Label::E2, {0.0, y}, Axis::Xi2, c, mu, tol));
        }
    } else if (auto pr = labelled_pair(c.P, c.delta, mu.mu2)) {
        out.points.push_back(make_point(Label::E21, {0.0, pr->first}, Axis::Xi2, c, mu, tol));
        out.points.push_back(make_point(Label::E22, {0.0, pr->second}, Axis::Xi2, c, mu, tol));
    } else if (std::abs(c.P) < zero_tol && c.delta != 0.0) {
        out.points.push_back(make_point(Label::E21, {0.0, -mu.mu2 / c.delta}, Axis::Xi2, c, mu, tol));
        out.notes.push_back({"DegenerateCase", "P vanishes: single xi2-axis root reported as E21"});
    }

    // Interior point.
    const CoeffValues c0 = sys.at_origin();
    if (sys.degeneracy == Degeneracy::NonDegenerate && std::abs(c0.theta * c0.delta - 1.0) < 1e-9) {
        out.notes.push_back({"DegenerateCase", "theta*delta - 1 = 0: interior equilibrium not computed"});
    } else {
        const State seed = e3_seed(sys, mu);
        const NewtonResult nr = refine_interior(sys, mu, seed, tol);
        out.newton_iterations = nr.iterations;
        if (!nr.converged) {
            out.notes.push_back({"NewtonDivergence", "interior refinement did not converge; E3 absent"});
        } else if (norm(nr.xi - seed) > 0.5 * (norm(seed) + r)) {
            out.notes.push_back({"AmbiguousLabel", "interior refinement left the seed basin; E3 absent"});
        } else {
            out.points.push_back(make_point(Label::E3, nr.xi, Axis::None, c, mu, tol));
        }
    }

    // Collisions: the later label in precedence order is the trivial one.
    std::sort(out.points.begin(), out.points.end(),
              [](const Equilibrium& a, const Equilibrium& b) { return precedence(a.label) < precedence(b.label); });
    const double collide = tol.collide * r;
    for (std::size_t i = 0; i < out.points.size(); ++i)
        for (std::size_t j = i + 1; j < out.points.size(); ++j)
            if (norm(out.points[i].xi - out.points[j].xi) < collide) out.points[j].trivial = true;

    for (const auto& e : out.points)
        if (e.boundary && !e.trivial)
            out.notes.push_back({"BoundaryCase", to_string(e.label) + " lies within the properness band"});
    return out;
}

CharPolyCheck char_poly_identities(const ReducedSystem& sys, const ParamPoint& mu, const Equilibrium& e3) {
    const CoeffValues c = sys.at(mu);
    const double x = e3.xi[0], y = e3.xi[1];
    const double p = 0.5 * (x * c.theta + y * c.delta) + 0.5 * (x * (c.M * y + 2.0 * c.N * x) + y * (2.0 * c.P * y + c.S * x));
    const double c1 = 2.0 * c.N * c.delta - c.M / c.gamma + c.S * c.theta - 2.0 * c.R * c.gamma;
    const double c2 = c.M * c.delta - c.S * c.gamma + 2.0 * c.P * c.theta - 2.0 * c.L / c.gamma;
    const double c3 = -2.0 * (c.M * c.R - c.N * c.S);
    const double c4 = -4.0 * (c.L * c.R - c.N * c.P);
    const double c5 = -2.0 * (c.L * c.S - c.M * c.P);
    const double det_L =
        x * y * (c.theta * c.delta - 1.0 + c1 * x + c2 * y + c3 * x * x + c4 * x * y + c5 * y * y);
    const Mat2 j = eval_jacobian(c, mu, e3.xi);
    return {p, det_L, 0.5 * j.trace(), j.det()};
}

} // namespace lvbif
