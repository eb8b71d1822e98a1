#pragma once

#include "lvbif/equilibria.hpp"
#include "lvbif/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lvbif {

enum class Direction { Forward, Backward };
enum class Terminal { Converged, LeftWindow, MaxTime };
std::string to_string(Direction d);
std::string to_string(Terminal t);

/// Axis-aligned box in state space.
struct Box {
    double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
    double scale() const;  // the larger side length
};

struct TrajectoryPoint {
    double t = 0.0;
    State x{};
};

struct Trajectory {
    State x0{};
    Direction direction = Direction::Forward;
    std::vector<TrajectoryPoint> points;
    Terminal terminal = Terminal::MaxTime;
    std::optional<Label> label;  // set when terminal == Converged
    double min_coordinate = 0.0;  // before clamping
    bool separatrix = false;

    /// Label name for Converged, else the terminal name.
    std::string terminal_name() const;
};

struct IntegrationOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double converge_factor = 1e-8;  // times the window scale
    double converge_field = 1e-12;
    double t_max = 0.0;  // 0: default_t_max(eqs)
    std::size_t max_steps = 2000000;
};

/// 50 / |mu|.
double default_t_max(const ParamPoint& mu);

inline constexpr double slow_rate_floor = 0.02;  // times |mu|

/// 50 / rate, where rate is the smallest of |mu| and the real-part magnitudes of the proper
/// equilibria's eigenvalues above slow_rate_floor |mu|.
double default_t_max(const EquilibriumSet& eqs);

/// [0, 3 max proper coordinate]^2, or [0, 3|mu|]^2 when only E0 is proper.
Box portrait_window(const EquilibriumSet& eqs);

/// Adaptive Dormand-Prince 5(4) run from x0. Stops on convergence to a proper equilibrium
/// of eqs, on leaving the window enlarged by its scale, or at t_max. Throws StepFailure
/// when the step size collapses and ConstraintViolation if x0 is outside the closed quadrant.
Trajectory integrate(const ReducedSystem& sys, const ParamPoint& mu, const State& x0, Direction dir,
                     const EquilibriumSet& eqs, const Box& window, const IntegrationOptions& opt = {});
/// Equilibria and window derived from mu; default horizon unless t_max > 0.
Trajectory integrate(const ReducedSystem& sys, const ParamPoint& mu, const State& x0, Direction dir,
                     double t_max = 0.0);

/// Trajectories seeded at saddle +- h (unit eigenvector), h = 1e-6 window scale; stable
/// directions backward, unstable forward; seeds with a negative coordinate are skipped.
std::vector<Trajectory> separatrices(const ReducedSystem& sys, const ParamPoint& mu, const Equilibrium& saddle,
                                     const EquilibriumSet& eqs, const Box& window,
                                     const IntegrationOptions& opt = {});

struct Portrait {
    ParamPoint mu;
    Box window;
    EquilibriumSet equilibria;
    std::vector<Trajectory> trajectories;
    std::vector<Trajectory> separatrices;
};

/// Forward trajectories from the cell centres of an n x n lattice over the window plus the
/// separatrices of every proper, non-trivial saddle.
Portrait portrait(const ReducedSystem& sys, const ParamPoint& mu, int grid_density,
                  const IntegrationOptions& opt = {});

} // namespace lvbif
