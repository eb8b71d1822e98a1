#pragma once

#include "lvbif/bifurcation.hpp"
#include "lvbif/dynamics.hpp"

#include <string>
#include <vector>

namespace lvbif {

/// Fixed-format number with 17 significant digits.
std::string format_double(double x);

/// Columns t, xi1, xi2, trajectory_id, terminal. Grid trajectories first, then separatrices.
std::string trajectories_csv(const Portrait& p);

/// Columns kind, branch, mu1, mu2, residual.
std::string curves_csv(const std::vector<BifurcationCurve>& curves);

/// Phase portrait: trajectories coloured by terminal, separatrices bold, equilibria marked by type.
std::string portrait_svg(const Portrait& p);

/// Curve samples in the (mu1, mu2) plane, one colour per curve kind.
std::string diagram_svg(const std::vector<BifurcationCurve>& curves);

} // namespace lvbif
