#pragma once

#include "lvbif/equilibria.hpp"
#include "lvbif/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lvbif {

enum class CurveKind { T1, T2, T3, T3plus, T4, T4plus, D_branch_neg, D_branch_pos, H, Xplus, Xminus, Yplus, Yminus };

std::string to_string(CurveKind k);
CurveKind parse_curve_kind(const std::string& s);

bool admissible(Degeneracy d, CurveKind k);
/// Every admissible kind for the class, axes first.
std::vector<CurveKind> admissible_kinds(Degeneracy d);

struct CurveSample {
    ParamPoint mu;
    double radius = 0.0;
    double angle = 0.0;  // in [0, 2 pi)
    double residual = 0.0;
};

struct BifurcationCurve {
    CurveKind kind = CurveKind::T1;
    std::string branch;      // e.g. "mu1<0"
    std::string constraint;  // half-line condition, e.g. "theta*mu1<0"
    std::string leading_form;  // "mu2/mu1", "mu2/mu1^2" or "mu1/mu2^2"
    double predicted_leading = 0.0;
    double fitted_leading = 0.0;
    std::vector<CurveSample> samples;
    std::vector<std::string> notes;
};

inline constexpr double curve_tol = 1e-12;  // times (1 + |mu|)

/// Scalar whose zero set is the curve (e.g. the xi2-coordinate of E3 for T1).
double curve_residual(const ReducedSystem& sys, CurveKind kind, const ParamPoint& mu);

/// Half-line / branch condition of the curve at mu.
bool satisfies_constraint(const ReducedSystem& sys, CurveKind kind, const ParamPoint& mu);

/// Leading-order point of the curve at radius r.
ParamPoint leading_point(const ReducedSystem& sys, CurveKind kind, double r);

/// Ratio of the curve's leading form at mu (e.g. mu2/mu1^2 for the deltazero parabolas).
double leading_ratio(const ReducedSystem& sys, CurveKind kind, const ParamPoint& mu);
double predicted_leading(const ReducedSystem& sys, CurveKind kind);

/// Point of the curve on the circle |mu| = r near seed_angle. Throws ConstraintViolation if
/// the root violates the half-line condition and NoRoot if the residual does not change sign.
CurveSample solve_on_circle(const ReducedSystem& sys, CurveKind kind, double r, double seed_angle);
CurveSample solve_on_circle(const ReducedSystem& sys, CurveKind kind, double r);

/// Parabola-like curves as graphs: for deltazero D/T3 kinds returns mu2 at the given mu1,
/// for thetazero D/T4 kinds returns mu1 at the given mu2.
double solve_on_graph(const ReducedSystem& sys, CurveKind kind, double abscissa);

/// NotApplicable for an inadmissible kind; a curve without root comes back empty with a note.
BifurcationCurve trace_curve(const ReducedSystem& sys, CurveKind kind, const std::vector<double>& radii);

enum class Verdict { SaddleNode, Transcritical, Inconclusive };
std::string to_string(Verdict v);

struct SotomayorReport {
    CurveKind curve_kind = CurveKind::D_branch_neg;
    ParamPoint mu0;
    State xi0{};
    Label collision_label = Label::E0;
    int parameter = 2;  // index of the bifurcation parameter mu_k
    State v{}, w{};     // unit null vectors of A and A^T
    double residual_v = 0.0, residual_w = 0.0;
    double C1 = 0.0, C2 = 0.0, C3 = 0.0;
    /// Same quantities with v and w scaled so that one designated component is 1.
    double C1_scaled = 0.0, C2_scaled = 0.0, C3_scaled = 0.0;
    std::optional<double> C1_pred, C2_pred, C3_pred;  // scaled normalisation
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> notes;
};

/// mu0 on D (deltazero: double root on the xi2-axis, parameter mu2; thetazero: xi1-axis, mu1).
SotomayorReport sotomayor_saddle_node(const ReducedSystem& sys, const ParamPoint& mu0);

/// mu0 on T3 (deltazero) or T4 (thetazero); the other transcritical kinds (T1, T2, axes)
/// are accepted through the overload with an explicit kind.
SotomayorReport sotomayor_transcritical(const ReducedSystem& sys, const ParamPoint& mu0);
SotomayorReport sotomayor_transcritical(const ReducedSystem& sys, const ParamPoint& mu0, CurveKind kind);

struct CollisionSample {
    ParamPoint mu;
    Label first = Label::E0, second = Label::E0;
    double distance = 0.0;
    double zero_eigenvalue = 0.0;     // the eigenvalue expected to vanish
    double other_eigenvalue = 0.0;    // the eigenvalue with a predicted sign (0 if none)
    bool zero_ok = false;
    bool sign_ok = true;
    std::optional<Label> companion;
    bool companion_proper = false;
    std::optional<Kind> companion_kind;
    bool companion_ok = true;

    bool ok() const { return zero_ok && sign_ok && companion_ok; }
};

struct CollisionReport {
    CurveKind kind = CurveKind::T1;
    std::vector<CollisionSample> samples;
    bool ok() const;
};

/// Throws CollisionMismatch when the expected pair does not collide at a sample.
CollisionReport collision_check(const ReducedSystem& sys, const BifurcationCurve& curve,
                                const Tolerances& tol = {});

struct SuiteEntry {
    CurveKind kind = CurveKind::T1;
    ParamPoint mu;
    Verdict expected = Verdict::Inconclusive;
    std::optional<Verdict> verdict;
    std::string error;
    bool ok() const { return verdict && *verdict == expected; }
};

/// Traces every admissible curve except H at the radii and runs the saddle-node test on
/// D samples and the transcritical test on all others.
std::vector<SuiteEntry> sotomayor_suite(const ReducedSystem& sys, const std::vector<double>& radii);

} // namespace lvbif
