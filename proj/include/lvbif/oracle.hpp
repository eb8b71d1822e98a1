#pragma once

#include "lvbif/dynamics.hpp"
#include "lvbif/model.hpp"
#include "lvbif/regions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lvbif {

/// Roots of the field in the window from sign changes on an n x n lattice: the origin,
/// 1-D scans of the axis factors and 2-D cells where both interior factors change sign,
/// refined by bisection/quadrisection to 1e-12. A seed adds a jittered second lattice.
/// Requires 1 <= n <= 2000.
std::vector<State> grid_equilibria(const ReducedSystem& sys, const ParamPoint& mu, const Box& window, int n,
                                   std::optional<std::uint32_t> seed = std::nullopt);

/// Central differences with step 1e-6 (1 + |xi|).
Mat2 fd_jacobian(const ReducedSystem& sys, const ParamPoint& mu, const State& xi);

struct ScanEntry {
    double angle = 0.0;
    std::string signature;
};

struct ScanBlock {
    double angle_lo = 0.0, angle_hi = 0.0;  // first and last sampled angle of the block
    std::string signature;
};

struct SignScan {
    double radius = 0.0;
    std::vector<ScanEntry> entries;  // sorted by angle in [0, 2 pi)
    std::vector<ScanBlock> blocks;   // run-length encoding, wrap-around merged
};

/// n_angles uniform directions on |mu| = r (offset by half a step) plus a logarithmic
/// cluster of offsets in [1e-6, 10^-1.5] on both sides of each axis angle, where the
/// degenerate classes place their parabola-like curves. Requires r > 0 and n_angles >= 720.
SignScan sign_scan(const ReducedSystem& sys, double r, int n_angles, int axis_samples = 200);

struct ScanComparison {
    bool ok = false;
    std::vector<std::string> issues;
};

/// Same number of blocks as sectors, every scanned angle inside a sector carries the
/// sector's signature, and each block boundary lies next to a sector boundary.
ScanComparison compare_scan(const SignScan& scan, const Decomposition& dec);

struct RootComparison {
    bool ok = false;
    double max_distance = 0.0;
    std::vector<std::string> issues;
};

/// Matches the equilibria of find_equilibria that lie in the window against oracle roots.
RootComparison compare_roots(const EquilibriumSet& eqs, const std::vector<State>& roots, const Box& window,
                             double tol);

} // namespace lvbif
