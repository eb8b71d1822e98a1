#pragma once

#include "lvbif/linalg.hpp"
#include "lvbif/poly.hpp"

#include <array>
#include <string>

namespace lvbif {

enum class Degeneracy { NonDegenerate, DeltaZero, ThetaZero, DoublyDegenerate };

std::string to_string(Degeneracy d);

/// Classification tolerance for theta(0), delta(0) and other "is zero" tests on
/// coefficient values at the origin.
inline constexpr double zero_tol = 1e-12;

/// dx/dtau = 2x(mu1 + p11 x + p12 y + p13 xy + p14 x^2 + p15 y^2)
/// dy/dtau = 2y(mu2 + p21 x + p22 y + p23 xy + p24 x^2 + p25 y^2)
class RawSystem {
public:
    /// first[k] is p1(k+1), second[k] is p2(k+1). Rejects p12(0) = 0 or p21(0) = 0.
    RawSystem(std::array<CoefficientPoly, 5> first, std::array<CoefficientPoly, 5> second);

    /// row in {1, 2}, col in {1..5}
    const CoefficientPoly& p(int row, int col) const;

    State field(const ParamPoint& mu, const State& xy) const;

private:
    std::array<CoefficientPoly, 5> p1_;
    std::array<CoefficientPoly, 5> p2_;
};

/// Coefficient values at a fixed mu.
struct CoeffValues {
    double theta, gamma, delta, M, N, L, S, P, R;
};

struct ReducedSystem {
    CoefficientPoly theta, gamma, delta, M, N, L, S, P, R;
    Degeneracy degeneracy = Degeneracy::NonDegenerate;
    /// Set by reduce_negative: the polynomials are in nu = -mu and time is reversed.
    bool parameter_negated = false;

    /// Builds and classifies; throws ConfigError if gamma(0) <= 0.
    static ReducedSystem make(CoefficientPoly theta, CoefficientPoly gamma, CoefficientPoly delta,
                              CoefficientPoly M, CoefficientPoly N, CoefficientPoly L,
                              CoefficientPoly S, CoefficientPoly P, CoefficientPoly R);

    CoeffValues at(const ParamPoint& mu) const;
    CoeffValues at_origin() const { return at(ParamPoint{}); }

    /// Same theta, gamma, delta values at the origin, constant in mu, with the
    /// cubic coefficients zeroed: the quadratic Lotka-Volterra truncation.
    ReducedSystem truncated() const;

    const CoefficientPoly& field_by_name(const std::string& name) const;
    CoefficientPoly& field_by_name(const std::string& name);
    static const std::array<const char*, 9>& field_names();
};

Degeneracy classify_degeneracy(double theta0, double delta0);

ReducedSystem reduce(const RawSystem& raw, int degree = 2);
ReducedSystem reduce_negative(const RawSystem& raw, int degree = 2);

// Factored field f = (xi1 g1, xi2 g2).
State eval_g(const CoeffValues& c, const ParamPoint& mu, const State& xi);
Mat2 eval_g_jacobian(const CoeffValues& c, const State& xi);

State eval_field(const ReducedSystem& sys, const ParamPoint& mu, const State& xi);
State eval_field(const CoeffValues& c, const ParamPoint& mu, const State& xi);
Mat2 eval_jacobian(const ReducedSystem& sys, const ParamPoint& mu, const State& xi);
Mat2 eval_jacobian(const CoeffValues& c, const ParamPoint& mu, const State& xi);

/// Second derivative bilinear form D^2 f(u, v), exact for the cubic field.
State eval_second(const CoeffValues& c, const State& xi, const State& u, const State& v);

} // namespace lvbif
