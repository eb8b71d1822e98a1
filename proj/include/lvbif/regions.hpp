#pragma once

#include "lvbif/bifurcation.hpp"
#include "lvbif/equilibria.hpp"
#include "lvbif/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace lvbif {

struct CaseDescriptor {
    Degeneracy degeneracy = Degeneracy::NonDegenerate;
    /// NonDegenerate: (theta, delta, theta*delta - 1)
    /// DeltaZero: (theta, delta1, gamma*delta1 - P, gamma*delta1 - 2P)
    /// ThetaZero: (delta, theta2, theta2 - N*gamma, theta2 - 2N*gamma)
    std::vector<int> signs;
    std::string label;  // "I".."VIII" for the degenerate classes
    std::vector<std::string> hypotheses;
    bool table_supported = true;
    std::vector<std::string> notes;

    std::string sign_string() const;  // e.g. "+,-,-"
};

/// Throws UnsupportedCase for the doubly degenerate class and for vanishing
/// quantities the case split depends on.
CaseDescriptor select_case(const ReducedSystem& sys);

/// Row labels of the type tables for a class.
const std::vector<Label>& row_labels(Degeneracy d);

/// One letter per row label: s, a, r, or '-' when absent, virtual or trivial.
std::string signature_of(const EquilibriumSet& eqs, Degeneracy d);
std::string signature_at(const ReducedSystem& sys, const ParamPoint& mu);

struct BoundaryAngle {
    double angle = 0.0;
    CurveKind kind = CurveKind::Xplus;
};

struct RegionReport {
    int sector_id = 0;
    double angle_lo = 0.0, angle_hi = 0.0;  // angle_hi may exceed 2 pi for the wrapping sector
    ParamPoint representative;
    std::string signature;
    CurveKind lo_curve = CurveKind::Xplus, hi_curve = CurveKind::Xplus;
};

struct Decomposition {
    double radius = 0.0;
    std::vector<RegionReport> sectors;
    std::vector<BoundaryAngle> boundaries;  // sector boundaries, sorted
    std::vector<BoundaryAngle> passive;     // traced curves across which no type changes
    std::vector<std::string> notes;
};

inline constexpr double sep_tol_factor = 1e-3;  // angular separation = factor * r

/// Sectors of the circle |mu| = r between the traced bifurcation curves, starting at angle 0.
/// Adjacent candidate sectors with equal signatures are merged.
Decomposition decompose(const ReducedSystem& sys, const CaseDescriptor& c, double r);

/// Reference columns of the type tables (one string per column, rows as in row_labels).
const std::vector<std::string>& reference_table(Degeneracy d);
std::size_t expected_region_count(Degeneracy d);

struct Fixture {
    std::string name;
    ReducedSystem sys;
    std::string declared_family;
    std::string declared_signs;
};

struct DiagramReport {
    std::string fixture;
    std::string declared_signs;
    std::string computed_signs;
    std::string case_label;
    bool case_match = false;
    std::string error;
    Decomposition decomposition;
};

struct VerificationReport {
    Degeneracy family = Degeneracy::NonDegenerate;
    double radius = 0.0;
    std::vector<DiagramReport> diagrams;
    std::vector<std::string> computed;  // distinct signatures
    std::vector<std::string> matched;
    std::vector<std::string> unmatched_computed;
    std::vector<std::string> unmatched_table;
    std::map<std::string, std::vector<std::string>> shared;  // signature -> diagrams, when >1
    std::size_t total_regions = 0;
    std::size_t expected_total = 0;

    bool success() const;
};

VerificationReport verify_tables(Degeneracy family, const std::vector<Fixture>& fixtures, double r);

/// Enclosing sector at radius |mu| plus the signature at mu itself. Throws OnCurve
/// within the angular separation of a boundary.
RegionReport region_membership(const ReducedSystem& sys, const ParamPoint& mu);

} // namespace lvbif
