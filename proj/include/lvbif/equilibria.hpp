#pragma once

#include "lvbif/model.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lvbif {

enum class Label { E0, E1, E2, E3, E11, E12, E21, E22 };
enum class Kind { Saddle, AttractorNode, AttractorFocus, RepellerNode, RepellerFocus, Degenerate };

std::string to_string(Label l);
std::string to_string(Kind k);
Label parse_label(const std::string& s);

/// 's', 'a', 'r' or '?' for Degenerate.
char type_letter(Kind k);
bool is_attractor(Kind k);
bool is_repeller(Kind k);

struct Tolerances {
    double proper = 1e-9;   // times |mu|
    double collide = 1e-7;  // times |mu|
    double eig = 1e-9;      // times |mu|
    int newton_max_iter = 25;
    double newton_tol = 1e-13;  // times (1 + |mu|)
    double epsilon_disk = 1e-2;  // bound on max(|mu1|, |mu2|)
};

struct Equilibrium {
    Label label = Label::E0;
    State xi{0.0, 0.0};
    /// For axis points: (along the axis, transverse). Otherwise sorted by real part.
    std::array<std::complex<double>, 2> eigenvalues{};
    Kind kind = Kind::Degenerate;
    bool proper = true;
    bool trivial = false;
    bool boundary = false;  // a free coordinate lies inside the properness band
    Mat2 jacobian{};
};

struct Note {
    std::string kind;  // DegenerateCase, NewtonDivergence, AmbiguousLabel, BoundaryCase
    std::string message;
};

struct EquilibriumSet {
    ParamPoint mu;
    std::vector<Equilibrium> points;
    std::vector<Note> notes;
    int newton_iterations = 0;

    const Equilibrium* find(Label l) const;
    /// Proper, non-trivial points only.
    std::vector<const Equilibrium*> visible() const;
};

struct Classification {
    std::array<std::complex<double>, 2> eigenvalues;
    Kind kind;
    double half_trace;
    double det;
};

Classification classify(const ReducedSystem& sys, const ParamPoint& mu, const State& xi,
                        const Tolerances& tol = {});
Kind kind_from_eigenvalues(const std::array<std::complex<double>, 2>& ev, double tol_eig);

/// Leading-order coordinates of E3 for the system's degeneracy class.
State e3_seed(const ReducedSystem& sys, const ParamPoint& mu);

/// Roots of a x^2 + b x + c = 0 with stable pairing; empty when complex.
/// A vanishing quadratic coefficient degrades to the linear root.
std::vector<double> quadratic_roots(double a, double b, double c);

struct NewtonResult {
    State xi;
    bool converged;
    int iterations;
    double residual;
};

/// Damped Newton on the interior equations g(xi) = 0.
NewtonResult refine_interior(const ReducedSystem& sys, const ParamPoint& mu, State seed,
                             const Tolerances& tol = {});

EquilibriumSet find_equilibria(const ReducedSystem& sys, const ParamPoint& mu, const Tolerances& tol = {});

struct CharPolyCheck {
    double p_formula;
    double det_L_formula;
    double half_trace_direct;
    double det_direct;
};

/// Half trace and determinant at an interior equilibrium from the closed forms in
/// the coefficients, next to the same quantities from the Jacobian.
CharPolyCheck char_poly_identities(const ReducedSystem& sys, const ParamPoint& mu, const Equilibrium& e3);

/// Discriminants of the axis quadratics: delta^2 - 4 mu2 P and theta^2 - 4 mu1 N.
double axis_discriminant_xi2(const ReducedSystem& sys, const ParamPoint& mu);
double axis_discriminant_xi1(const ReducedSystem& sys, const ParamPoint& mu);

} // namespace lvbif
