#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lvbif/bifurcation.hpp"
#include "lvbif/errors.hpp"

#include <cmath>

using namespace lvbif;
using lvbif::test::Coeffs;

namespace {

CoefficientPoly k(double v) { return CoefficientPoly::constant(v); }
CoefficientPoly aff(double c0, double c1, double c2) { return CoefficientPoly::affine(c0, c1, c2); }

// delta(mu) = delta1 mu1 + delta2 mu2, constant theta, gamma, P.
ReducedSystem delta_zero(double theta, CoefficientPoly gamma, double d1, double d2, double P) {
    return ReducedSystem::make(k(theta), gamma, aff(0, d1, d2), k(0), k(0), k(0), k(0), k(P), k(0));
}

// theta(mu) = theta1 mu1 + theta2 mu2, constant delta, gamma, N.
ReducedSystem theta_zero(double delta, CoefficientPoly gamma, double t1, double t2, double N) {
    return ReducedSystem::make(aff(0, t1, t2), gamma, k(delta), k(0), k(N), k(0), k(0), k(0), k(0));
}

bool within(double value, double expected, double rel) { return std::abs(value - expected) <= rel * std::abs(expected); }

} // namespace

TEST_CASE("saddle-node parabola with exact discriminant") {
    const ReducedSystem sys = delta_zero(1.0, k(1.0), 1.0, 0.0, 1.0);
    CHECK(solve_on_graph(sys, CurveKind::D_branch_neg, -0.01) == doctest::Approx(0.000025).epsilon(1e-9));
    const BifurcationCurve d = trace_curve(sys, CurveKind::D_branch_neg, {1e-3, 1e-4});
    REQUIRE(d.samples.size() == 2);
    CHECK(d.predicted_leading == doctest::Approx(0.25));
    CHECK(within(d.fitted_leading, 0.25, 0.02));
}

TEST_CASE("interior trace line slope") {
    const ReducedSystem sys = test::constant_system(Coeffs{2.0, 1.0, -1.0});
    const BifurcationCurve h = trace_curve(sys, CurveKind::H, {1e-3, 1e-4});
    CHECK(h.predicted_leading == doctest::Approx(-0.25));
    REQUIRE_FALSE(h.samples.empty());
    CHECK(within(h.fitted_leading, -0.25, 0.05));
}

TEST_CASE("axis collision line respects its half-line") {
    const ReducedSystem sys = test::constant_system(Coeffs{1.0, 1.0, 0.5});
    CHECK_FALSE(satisfies_constraint(sys, CurveKind::T1, {1e-3, 1e-3}));
    CHECK(satisfies_constraint(sys, CurveKind::T1, {-1e-3, -1e-3}));
    CHECK_THROWS_AS(solve_on_circle(sys, CurveKind::T1, 1e-3, std::atan2(1.0, 1.0)), ConstraintViolation);
    const CurveSample s = solve_on_circle(sys, CurveKind::T1, 1e-3);
    CHECK(s.mu.mu1 < 0.0);
    CHECK(s.mu.mu1 == doctest::Approx(s.mu.mu2).epsilon(1e-9));
}

TEST_CASE("inadmissible kinds") {
    const ReducedSystem sys = test::constant_system(Coeffs{1.0, 1.0, 0.5});
    CHECK_THROWS_AS(trace_curve(sys, CurveKind::T3, {1e-3}), NotApplicable);
    CHECK_FALSE(admissible(Degeneracy::NonDegenerate, CurveKind::D_branch_neg));
    CHECK(admissible(Degeneracy::DeltaZero, CurveKind::T3));
    CHECK_FALSE(admissible(Degeneracy::DeltaZero, CurveKind::T4));
    CHECK(admissible(Degeneracy::ThetaZero, CurveKind::T4plus));
}

TEST_CASE("curve names round-trip") {
    for (CurveKind kind : {CurveKind::T1, CurveKind::T2, CurveKind::T3, CurveKind::T3plus, CurveKind::T4,
                           CurveKind::T4plus, CurveKind::D_branch_neg, CurveKind::D_branch_pos, CurveKind::H,
                           CurveKind::Xplus, CurveKind::Xminus, CurveKind::Yplus, CurveKind::Yminus})
        CHECK(parse_curve_kind(to_string(kind)) == kind);
}

TEST_CASE("saddle-node test on the discriminant parabola") {
    const ReducedSystem sys = delta_zero(1.0, k(1.0), 1.0, 1.0, 1.0);
    const double m1 = -0.001;
    const ParamPoint mu0{m1, solve_on_graph(sys, CurveKind::D_branch_neg, m1)};
    const SotomayorReport rep = sotomayor_saddle_node(sys, mu0);
    CHECK(rep.verdict == Verdict::SaddleNode);
    REQUIRE(rep.C1_pred);
    REQUIRE(rep.C3_pred);
    CHECK(*rep.C1_pred == doctest::Approx(5e-4));
    CHECK(*rep.C3_pred == doctest::Approx(1e-3));
    CHECK(within(rep.C1_scaled, 5e-4, 0.05));
    CHECK(within(rep.C3_scaled, 1e-3, 0.05));
    CHECK(std::hypot(rep.v[0], rep.v[1]) == doctest::Approx(1.0));
    CHECK(std::hypot(rep.w[0], rep.w[1]) == doctest::Approx(1.0));
    CHECK(rep.residual_v < 1e-12);
    CHECK(rep.residual_w < 1e-12);
}

TEST_CASE("saddle-node test in the mirrored class") {
    const ReducedSystem sys = theta_zero(1.0, k(1.0), 1.0, 3.0, 1.0);
    const double m2 = 0.001;
    const ParamPoint mu0{solve_on_graph(sys, CurveKind::D_branch_pos, m2), m2};
    const SotomayorReport rep = sotomayor_saddle_node(sys, mu0);
    CHECK(rep.verdict == Verdict::SaddleNode);
    CHECK(within(rep.C1_scaled, 5e-4, 0.05));
    CHECK(within(rep.C3_scaled, 1e-3, 0.05));
}

TEST_CASE("saddle-node hypothesis failure is inconclusive") {
    // 2P = delta1 gamma
    const ReducedSystem sys = delta_zero(1.0, k(1.0), 2.0, 1.0, 1.0);
    const double m1 = -0.001;
    const ParamPoint mu0{m1, solve_on_graph(sys, CurveKind::D_branch_neg, m1)};
    CHECK(sotomayor_saddle_node(sys, mu0).verdict == Verdict::Inconclusive);
}

TEST_CASE("transcritical test on the delta-zero collision parabola") {
    const ReducedSystem sys = delta_zero(1.0, aff(1.0, 0.0, 1.0), 1.0, 0.0, 1.0);
    const double m1 = -0.001;
    const ParamPoint mu0{m1, solve_on_graph(sys, CurveKind::T3, m1)};
    const SotomayorReport rep = sotomayor_transcritical(sys, mu0);
    CHECK(rep.verdict == Verdict::Transcritical);
    CHECK(rep.collision_label == Label::E21);
    CHECK(std::abs(rep.C1_scaled) < 1e-9 * std::abs(rep.C2_scaled));
    CHECK(within(rep.C2_scaled, -1e-6, 0.05));
    CHECK(within(rep.C3_scaled, -2e-3, 0.05));
}

TEST_CASE("transcritical test on the theta-zero collision parabola") {
    const ReducedSystem sys = theta_zero(1.0, aff(1.0, 1.0, 0.0), 1.0, 3.0, 1.0);
    const double m2 = -0.001;
    const ParamPoint mu0{solve_on_graph(sys, CurveKind::T4, m2), m2};
    const SotomayorReport rep = sotomayor_transcritical(sys, mu0);
    CHECK(rep.verdict == Verdict::Transcritical);
    CHECK(within(rep.C2_scaled, -1e-3, 0.05));
    REQUIRE(rep.C3_pred);
    CHECK(within(rep.C3_scaled, *rep.C3_pred, 0.05));
}

TEST_CASE("transcritical hypothesis violation") {
    const ReducedSystem sys = delta_zero(1.0, k(1.0), 1.0, 0.0, 1.0);
    const double m1 = -0.001;
    const ParamPoint mu0{m1, solve_on_graph(sys, CurveKind::T3, m1)};
    CHECK_THROWS_AS(sotomayor_transcritical(sys, mu0), HypothesisViolation);
}

TEST_CASE("collision assignments on the delta-zero parabola") {
    SUBCASE("gamma delta1 - 2P < 0") {
        const ReducedSystem sys = delta_zero(1.0, aff(1.0, 0.0, 1.0), 1.0, 0.0, 1.0);
        const BifurcationCurve t3 = trace_curve(sys, CurveKind::T3, {1e-4, 1e-3});
        const CollisionReport rep = collision_check(sys, t3);
        REQUIRE(rep.samples.size() == 2);
        for (const auto& s : rep.samples) {
            CHECK(s.first == Label::E21);
            CHECK(s.other_eigenvalue > 0.0);
            REQUIRE(s.companion);
            CHECK(*s.companion == Label::E22);
            CHECK(s.ok());
        }
    }
    SUBCASE("gamma delta1 - 2P > 0") {
        const ReducedSystem sys = delta_zero(1.0, aff(1.0, 0.0, 1.0), 3.0, 0.0, 1.0);
        const CollisionReport rep = collision_check(sys, trace_curve(sys, CurveKind::T3, {1e-4, 1e-3}));
        REQUIRE(rep.samples.size() == 2);
        for (const auto& s : rep.samples) {
            CHECK(s.first == Label::E22);
            CHECK(s.other_eigenvalue < 0.0);
            INFO(s.zero_eigenvalue, " ", s.other_eigenvalue, " ", s.companion_proper, " ", s.companion_kind ? to_string(*s.companion_kind) : "-");
            CHECK(s.ok());
        }
    }
    SUBCASE("axis collision line") {
        const ReducedSystem sys = test::constant_system(Coeffs{1.0, 1.0, 0.5});
        const CollisionReport rep = collision_check(sys, trace_curve(sys, CurveKind::T1, {1e-3}));
        REQUIRE(rep.samples.size() == 1);
        CHECK(rep.samples[0].first == Label::E1);
        CHECK(rep.samples[0].second == Label::E3);
        CHECK(rep.samples[0].distance < 1e-7 * 1e-3);
        CHECK(rep.ok());
    }
}

TEST_CASE("fixture curves: residuals, constraints and leading coefficients") {
    for (Degeneracy d : {Degeneracy::NonDegenerate, Degeneracy::DeltaZero, Degeneracy::ThetaZero})
        for (const auto& f : test::fixtures(d))
            for (CurveKind kind : admissible_kinds(d)) {
                INFO(f.name, " ", to_string(kind));
                const BifurcationCurve c = trace_curve(f.sys, kind, {1e-3, 1e-4});
                for (const auto& s : c.samples) {
                    CHECK(std::abs(curve_residual(f.sys, kind, s.mu)) < curve_tol * (1.0 + s.radius));
                    CHECK(satisfies_constraint(f.sys, kind, s.mu));
                    CHECK(std::hypot(s.mu.mu1, s.mu.mu2) == doctest::Approx(s.radius).epsilon(1e-12));
                }
                if (kind == CurveKind::H || c.samples.size() != 2 || c.leading_form.empty()) continue;
                const double pred = c.predicted_leading;
                const double e_big = std::abs(leading_ratio(f.sys, kind, c.samples[0].mu) - pred);
                const double e_small = std::abs(leading_ratio(f.sys, kind, c.samples[1].mu) - pred);
                CHECK(e_small <= 0.2 * e_big + 1e-9 * (1.0 + std::abs(pred)));
            }
}

TEST_CASE("collision parabola lies under the saddle-node parabola") {
    for (const auto& f : test::fixtures(Degeneracy::DeltaZero)) {
        const CoeffValues c = f.sys.at_origin();
        if ((f.sys.delta.d_mu1() * c.gamma - 2.0 * c.P) * c.P == 0.0) continue;
        for (double m : {1e-4, 3e-4, 1e-3}) {
            const double t3 = solve_on_graph(f.sys, CurveKind::T3, -m);
            const double dn = solve_on_graph(f.sys, CurveKind::D_branch_neg, -m);
            CHECK(t3 < dn);
        }
    }
}

TEST_CASE("no interior trace zero inside the positive quadrant when theta delta > 1") {
    for (const auto& f : test::fixtures(Degeneracy::NonDegenerate)) {
        const CoeffValues c = f.sys.at_origin();
        if (c.theta * c.delta - 1.0 <= 0.0) continue;
        const BifurcationCurve h = trace_curve(f.sys, CurveKind::H, {1e-3, 1e-4});
        for (const auto& s : h.samples) {
            const Equilibrium* e3 = find_equilibria(f.sys, s.mu).find(Label::E3);
            CHECK((e3 == nullptr || !e3->proper || e3->trivial));
        }
    }
}

TEST_CASE("Sotomayor suite over the fixtures") {
    for (Degeneracy d : {Degeneracy::NonDegenerate, Degeneracy::DeltaZero, Degeneracy::ThetaZero})
        for (const auto& f : test::fixtures(d))
            for (const auto& e : sotomayor_suite(f.sys, {1e-4, 1e-3})) {
                INFO(f.name, " ", to_string(e.kind), " ", e.error);
                CHECK(e.ok());
            }
}
