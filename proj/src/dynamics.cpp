#include "lvbif/dynamics.hpp"

#include "lvbif/errors.hpp"
#include "lvbif/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lvbif {

namespace odeint = boost::numeric::odeint;

std::string to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

std::string to_string(Terminal t) {
    switch (t) {
    case Terminal::Converged: return "Converged";
    case Terminal::LeftWindow: return "LeftWindow";
    case Terminal::MaxTime: return "MaxTime";
    }
    return "unknown";
}

double Box::scale() const { return std::max(hi1 - lo1, hi2 - lo2); }

std::string Trajectory::terminal_name() const {
    return terminal == Terminal::Converged && label ? to_string(*label) : to_string(terminal);
}

double default_t_max(const ParamPoint& mu) { return 50.0 / mu.norm(); }

double default_t_max(const EquilibriumSet& eqs) {
    const double r = eqs.mu.norm();
    double rate = r;
    for (const auto& e : eqs.points) {
        if (!e.proper) continue;
        for (const auto& ev : e.eigenvalues) {
            const double a = std::abs(ev.real());
            if (a > slow_rate_floor * r) rate = std::min(rate, a);
        }
    }
    return 50.0 / rate;
}

Box portrait_window(const EquilibriumSet& eqs) {
    double m = 0.0;
    for (const auto& e : eqs.points)
        if (e.proper) m = std::max({m, e.xi[0], e.xi[1]});
    const double w = m > 0.0 ? 3.0 * m : 3.0 * eqs.mu.norm();
    return {0.0, w, 0.0, w};
}

Trajectory integrate(const ReducedSystem& sys, const ParamPoint& mu, const State& x0, Direction dir,
                     const EquilibriumSet& eqs, const Box& window, const IntegrationOptions& opt) {
    if (x0[0] < 0.0 || x0[1] < 0.0) throw ConstraintViolation("initial state outside the closed first quadrant");
    const CoeffValues c = sys.at(mu);
    const double sign = dir == Direction::Forward ? 1.0 : -1.0;
    auto rhs = [&](const State& x, State& dx, double) {
        const State f = eval_field(c, mu, x);
        dx = {sign * f[0], sign * f[1]};
    };
    const double scale = window.scale();
    const double t_max = opt.t_max > 0.0 ? opt.t_max : default_t_max(eqs);
    const double clamp_floor = -10.0 * opt.abs_tol;

    Trajectory tr;
    tr.x0 = x0;
    tr.direction = dir;
    tr.min_coordinate = std::min(x0[0], x0[1]);
    tr.points.push_back({0.0, x0});

    auto converged = [&](const State& x) -> std::optional<Label> {
        if (norm(eval_field(c, mu, x)) >= opt.converge_field) return std::nullopt;
        for (const auto& e : eqs.points)
            if (e.proper && norm(x - e.xi) < opt.converge_factor * scale) return e.label;
        return std::nullopt;
    };
    auto outside = [&](const State& x) {
        return x[0] > window.hi1 + scale || x[1] > window.hi2 + scale;
    };

    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opt.abs_tol, opt.rel_tol);
    State x = x0;
    double t = 0.0;
    double dt = 1e-3 * t_max;
    const double dt_min = 1e-14 * t_max;
    if (auto l = converged(x)) {
        tr.terminal = Terminal::Converged;
        tr.label = l;
        return tr;
    }
    for (std::size_t steps = 0; steps < opt.max_steps && t < t_max;) {
        dt = std::min(dt, t_max - t);
        if (stepper.try_step(rhs, x, t, dt) == odeint::fail) {
            if (dt < dt_min) {
                std::ostringstream msg;
                msg << "step size collapsed at t=" << t << ", x=(" << x[0] << ", " << x[1] << ")";
                throw StepFailure(msg.str());
            }
            continue;
        }
        ++steps;
        for (double& xi : x) {
            tr.min_coordinate = std::min(tr.min_coordinate, xi);
            if (xi < 0.0 && xi >= clamp_floor) xi = 0.0;
        }
        tr.points.push_back({t, x});
        if (auto l = converged(x)) {
            tr.terminal = Terminal::Converged;
            tr.label = l;
            return tr;
        }
        if (outside(x)) {
            tr.terminal = Terminal::LeftWindow;
            return tr;
        }
    }
    tr.terminal = Terminal::MaxTime;
    return tr;
}

Trajectory integrate(const ReducedSystem& sys, const ParamPoint& mu, const State& x0, Direction dir, double t_max) {
    const EquilibriumSet eqs = find_equilibria(sys, mu);
    IntegrationOptions opt;
    opt.t_max = t_max;
    Box w = portrait_window(eqs);
    w.hi1 = std::max(w.hi1, x0[0]);
    w.hi2 = std::max(w.hi2, x0[1]);
    return integrate(sys, mu, x0, dir, eqs, w, opt);
}

std::vector<Trajectory> separatrices(const ReducedSystem& sys, const ParamPoint& mu, const Equilibrium& saddle,
                                     const EquilibriumSet& eqs, const Box& window, const IntegrationOptions& opt) {
    if (saddle.kind != Kind::Saddle) throw NotApplicable(to_string(saddle.label) + " is not a saddle");
    const double h = 1e-6 * window.scale();
    struct Seed {
        State x;
        Direction dir;
    };
    std::vector<Seed> seeds;
    for (const auto& ev : saddle.eigenvalues) {
        const double lambda = ev.real();
        State v = null_vector(saddle.jacobian, lambda);
        v = (1.0 / norm(v)) * v;
        const Direction dir = lambda < 0.0 ? Direction::Backward : Direction::Forward;
        for (double s : {1.0, -1.0}) {
            const State x = saddle.xi + (s * h) * v;
            if (x[0] < 0.0 || x[1] < 0.0) continue;
            seeds.push_back({x, dir});
        }
    }
    auto out = parallel_map(seeds.size(), [&](std::size_t i) {
        Trajectory tr = integrate(sys, mu, seeds[i].x, seeds[i].dir, eqs, window, opt);
        tr.separatrix = true;
        return tr;
    });
    return out;
}

Portrait portrait(const ReducedSystem& sys, const ParamPoint& mu, int grid_density, const IntegrationOptions& opt) {
    if (grid_density < 1) throw ConfigError("grid density must be positive");
    Portrait p;
    p.mu = mu;
    p.equilibria = find_equilibria(sys, mu);
    p.window = portrait_window(p.equilibria);
    const std::size_t n = static_cast<std::size_t>(grid_density);
    p.trajectories = parallel_map(n * n, [&](std::size_t k) {
        const double w = p.window.scale();
        const State x0{(static_cast<double>(k / n) + 0.5) / grid_density * w,
                       (static_cast<double>(k % n) + 0.5) / grid_density * w};
        return integrate(sys, mu, x0, Direction::Forward, p.equilibria, p.window, opt);
    });
    for (const auto& e : p.equilibria.points) {
        if (!e.proper || e.trivial || e.kind != Kind::Saddle) continue;
        auto s = separatrices(sys, mu, e, p.equilibria, p.window, opt);
        p.separatrices.insert(p.separatrices.end(), s.begin(), s.end());
    }
    return p;
}

} // namespace lvbif
