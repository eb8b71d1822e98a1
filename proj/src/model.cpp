#include "lvbif/model.hpp"

#include "lvbif/errors.hpp"

#include <cmath>

namespace lvbif {

std::string to_string(Degeneracy d) {
    switch (d) {
    case Degeneracy::NonDegenerate: return "nondegenerate";
    case Degeneracy::DeltaZero: return "deltazero";
    case Degeneracy::ThetaZero: return "thetazero";
    case Degeneracy::DoublyDegenerate: return "doublydegenerate";
    }
    return "unknown";
}

RawSystem::RawSystem(std::array<CoefficientPoly, 5> first, std::array<CoefficientPoly, 5> second)
    : p1_(std::move(first)), p2_(std::move(second)) {
    if (std::abs(p1_[1].at_origin()) < CoefficientPoly::division_floor)
        throw ConfigError("p12(0) must be nonzero");
    if (std::abs(p2_[0].at_origin()) < CoefficientPoly::division_floor)
        throw ConfigError("p21(0) must be nonzero");
}

const CoefficientPoly& RawSystem::p(int row, int col) const {
    if (col < 1 || col > 5 || (row != 1 && row != 2)) throw ConfigError("raw coefficient index out of range");
    return row == 1 ? p1_[col - 1] : p2_[col - 1];
}

State RawSystem::field(const ParamPoint& mu, const State& xy) const {
    const double x = xy[0], y = xy[1];
    auto bracket = [&](const std::array<CoefficientPoly, 5>& p, double m) {
        return m + p[0](mu) * x + p[1](mu) * y + p[2](mu) * x * y + p[3](mu) * x * x + p[4](mu) * y * y;
    };
    return {2.0 * x * bracket(p1_, mu.mu1), 2.0 * y * bracket(p2_, mu.mu2)};
}

Degeneracy classify_degeneracy(double theta0, double delta0) {
    const bool tz = std::abs(theta0) < zero_tol;
    const bool dz = std::abs(delta0) < zero_tol;
    if (tz && dz) return Degeneracy::DoublyDegenerate;
    if (tz) return Degeneracy::ThetaZero;
    if (dz) return Degeneracy::DeltaZero;
    return Degeneracy::NonDegenerate;
}

ReducedSystem ReducedSystem::make(CoefficientPoly theta, CoefficientPoly gamma, CoefficientPoly delta,
                                  CoefficientPoly M, CoefficientPoly N, CoefficientPoly L,
                                  CoefficientPoly S, CoefficientPoly P, CoefficientPoly R) {
    if (!(gamma.at_origin() > 0.0)) throw ConfigError("gamma(0) must be positive");
    ReducedSystem s{std::move(theta), std::move(gamma), std::move(delta), std::move(M), std::move(N),
                    std::move(L),     std::move(S),     std::move(P),     std::move(R)};
    s.degeneracy = classify_degeneracy(s.theta.at_origin(), s.delta.at_origin());
    return s;
}

CoeffValues ReducedSystem::at(const ParamPoint& mu) const {
    return {theta(mu), gamma(mu), delta(mu), M(mu), N(mu), L(mu), S(mu), P(mu), R(mu)};
}

ReducedSystem ReducedSystem::truncated() const {
    const int d = theta.degree();
    const CoefficientPoly zero(d);
    return make(CoefficientPoly::constant(theta.at_origin(), d), CoefficientPoly::constant(gamma.at_origin(), d),
                CoefficientPoly::constant(delta.at_origin(), d), zero, zero, zero, zero, zero, zero);
}

const std::array<const char*, 9>& ReducedSystem::field_names() {
    static const std::array<const char*, 9> names{"theta", "gamma", "delta", "M", "N", "L", "S", "P", "R"};
    return names;
}

const CoefficientPoly& ReducedSystem::field_by_name(const std::string& name) const {
    return const_cast<ReducedSystem*>(this)->field_by_name(name);
}

CoefficientPoly& ReducedSystem::field_by_name(const std::string& name) {
    if (name == "theta") return theta;
    if (name == "gamma") return gamma;
    if (name == "delta") return delta;
    if (name == "M") return M;
    if (name == "N") return N;
    if (name == "L") return L;
    if (name == "S") return S;
    if (name == "P") return P;
    if (name == "R") return R;
    throw ConfigError("unknown coefficient field '" + name + "'");
}

namespace {

struct Ratios {
    CoefficientPoly theta, gamma, delta, M, N, L, S, P, R;
};

Ratios ratios(const RawSystem& raw, int degree) {
    auto p = [&](int r, int c) { return raw.p(r, c).with_degree(degree); };
    const CoefficientPoly p12 = p(1, 2), p21 = p(2, 1);
    const CoefficientPoly p12sq = p12 * p12, p21sq = p21 * p21, prod = p12 * p21;
    return {p(1, 1).divide(p12), p12.divide(p21),   p(2, 2).divide(p21),
            p(1, 3).divide(prod), p(1, 4).divide(p12sq), p(1, 5).divide(p21sq),
            p(2, 3).divide(prod), p(2, 5).divide(p21sq), p(2, 4).divide(p12sq)};
}

} // namespace

ReducedSystem reduce(const RawSystem& raw, int degree) {
    const double a = raw.p(1, 2).at_origin(), b = raw.p(2, 1).at_origin();
    if (!(a > 0.0) || !(b > 0.0))
        throw SignError("reduce requires p12(0) > 0 and p21(0) > 0; use the negative-pair reduction for (-,-)");
    Ratios q = ratios(raw, degree);
    return ReducedSystem::make(q.theta, q.gamma, q.delta, q.M, q.N, q.L, q.S, q.P, q.R);
}

ReducedSystem reduce_negative(const RawSystem& raw, int degree) {
    const double a = raw.p(1, 2).at_origin(), b = raw.p(2, 1).at_origin();
    if (!(a < 0.0) || !(b < 0.0)) throw SignError("negative-pair reduction requires p12(0) < 0 and p21(0) < 0");
    Ratios q = ratios(raw, degree);
    // Re-expressed in nu = -mu; the cubic coefficients change sign with time reversal.
    ReducedSystem s = ReducedSystem::make(q.theta.reflect(), q.gamma.reflect(), q.delta.reflect(),
                                          -q.M.reflect(), -q.N.reflect(), -q.L.reflect(),
                                          -q.S.reflect(), -q.P.reflect(), -q.R.reflect());
    s.parameter_negated = true;
    return s;
}

State eval_g(const CoeffValues& c, const ParamPoint& mu, const State& xi) {
    const double x = xi[0], y = xi[1];
    return {mu.mu1 + c.theta * x + c.gamma * y + c.M * x * y + c.N * x * x + c.L * y * y,
            mu.mu2 + x / c.gamma + c.delta * y + c.S * x * y + c.P * y * y + c.R * x * x};
}

Mat2 eval_g_jacobian(const CoeffValues& c, const State& xi) {
    const double x = xi[0], y = xi[1];
    return {c.theta + c.M * y + 2.0 * c.N * x, c.gamma + c.M * x + 2.0 * c.L * y,
            1.0 / c.gamma + c.S * y + 2.0 * c.R * x, c.delta + c.S * x + 2.0 * c.P * y};
}

State eval_field(const CoeffValues& c, const ParamPoint& mu, const State& xi) {
    const State g = eval_g(c, mu, xi);
    return {xi[0] * g[0], xi[1] * g[1]};
}

State eval_field(const ReducedSystem& sys, const ParamPoint& mu, const State& xi) {
    return eval_field(sys.at(mu), mu, xi);
}

Mat2 eval_jacobian(const CoeffValues& c, const ParamPoint& mu, const State& xi) {
    const State g = eval_g(c, mu, xi);
    const Mat2 dg = eval_g_jacobian(c, xi);
    return {g[0] + xi[0] * dg.a, xi[0] * dg.b, xi[1] * dg.c, g[1] + xi[1] * dg.d};
}

Mat2 eval_jacobian(const ReducedSystem& sys, const ParamPoint& mu, const State& xi) {
    return eval_jacobian(sys.at(mu), mu, xi);
}

State eval_second(const CoeffValues& c, const State& xi, const State& u, const State& v) {
    const double x = xi[0], y = xi[1];
    const double a11 = 2.0 * c.theta + 2.0 * c.M * y + 6.0 * c.N * x;
    const double a12 = c.gamma + 2.0 * c.M * x + 2.0 * c.L * y;
    const double a22 = 2.0 * c.L * x;
    const double b11 = 2.0 * c.R * y;
    const double b12 = 1.0 / c.gamma + 2.0 * c.S * y + 2.0 * c.R * x;
    const double b22 = 2.0 * c.delta + 2.0 * c.S * x + 6.0 * c.P * y;
    const double cross = u[0] * v[1] + u[1] * v[0];
    return {a11 * u[0] * v[0] + a12 * cross + a22 * u[1] * v[1],
            b11 * u[0] * v[0] + b12 * cross + b22 * u[1] * v[1]};
}

} // namespace lvbif
