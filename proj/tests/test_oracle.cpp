#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lvbif/errors.hpp"
#include "lvbif/oracle.hpp"

#include <cmath>
#include <random>

using namespace lvbif;
using lvbif::test::Coeffs;

namespace {

const Box unit_window{0.0, 1e-2, 0.0, 1e-2};

}

TEST_CASE("only the origin at mu = 0") {
    const auto roots = grid_equilibria(test::fixture("nondegenerate", "case4").sys, {0.0, 0.0}, unit_window, 200);
    REQUIRE(roots.size() == 1);
    CHECK(norm(roots[0]) < 1e-12);
}

TEST_CASE("grid roots match the primary root finder") {
    const ReducedSystem sys = test::constant_system(Coeffs{-2.0, 1.0, -1.0});
    const ParamPoint mu{1e-3, 1e-3};
    const EquilibriumSet eqs = find_equilibria(sys, mu);
    const auto roots = grid_equilibria(sys, mu, unit_window, 400, 7u);
    const RootComparison rc = compare_roots(eqs, roots, unit_window, 1e-9);
    CHECK(rc.ok);
    CHECK(rc.max_distance < 1e-9);
    CHECK(roots.size() == 4);
}

TEST_CASE("no split-axis roots when the discriminant is negative") {
    const Fixture f = test::fixture("deltazero", "caseI");
    const ParamPoint mu{-1e-3, 1e-3};
    REQUIRE(axis_discriminant_xi2(f.sys, mu) < 0.0);
    for (const State& x : grid_equilibria(f.sys, mu, unit_window, 400))
        CHECK_FALSE((x[0] == 0.0 && x[1] > 0.0));
}

TEST_CASE("finite-difference Jacobian") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 5e-3);
    const ReducedSystem sys = test::fixture("nondegenerate", "case2").sys;
    for (int i = 0; i < 3; ++i) {
        const ParamPoint mu{u(rng) - 2.5e-3, u(rng) - 2.5e-3};
        const State x{u(rng), u(rng)};
        const Mat2 a = eval_jacobian(sys, mu, x);
        const Mat2 b = fd_jacobian(sys, mu, x);
        CHECK(std::abs(a.a - b.a) <= 1e-6 * a.max_abs());
        CHECK(std::abs(a.b - b.b) <= 1e-6 * a.max_abs());
        CHECK(std::abs(a.c - b.c) <= 1e-6 * a.max_abs());
        CHECK(std::abs(a.d - b.d) <= 1e-6 * a.max_abs());
    }
    const Mat2 j0 = fd_jacobian(sys, {1e-3, -2e-3}, {0.0, 0.0});
    CHECK(j0.a == doctest::Approx(1e-3).epsilon(1e-6));
    CHECK(j0.d == doctest::Approx(-2e-3).epsilon(1e-6));
    CHECK(std::abs(j0.b) < 1e-15);
    CHECK(std::abs(j0.c) < 1e-15);
    // On the xi2-axis the first row reduces to (g1, 0).
    const Fixture dz = test::fixture("deltazero", "caseI");
    const ParamPoint mu{-1e-3, 1e-7};
    const Equilibrium* e21 = find_equilibria(dz.sys, mu).find(Label::E21);
    REQUIRE(e21);
    CHECK(std::abs(fd_jacobian(dz.sys, mu, e21->xi).b) < 1e-15);
}

TEST_CASE("scan argument checks") {
    const ReducedSystem sys = test::fixture("nondegenerate", "case1").sys;
    CHECK_THROWS_AS(sign_scan(sys, 0.0, 1440), NotApplicable);
    CHECK_THROWS_AS(sign_scan(sys, 1e-3, 360), NotApplicable);
}

TEST_CASE("scan blocks match the decomposition") {
    for (Degeneracy d : {Degeneracy::NonDegenerate, Degeneracy::DeltaZero, Degeneracy::ThetaZero})
        for (const auto& f : test::fixtures(d)) {
            INFO(f.name);
            const Decomposition dec = decompose(f.sys, select_case(f.sys), 1e-3);
            const SignScan scan = sign_scan(f.sys, 1e-3, 1440);
            CHECK(scan.blocks.size() == dec.sectors.size());
            const ScanComparison cmp = compare_scan(scan, dec);
            for (const auto& issue : cmp.issues) INFO(issue);
            CHECK(cmp.ok);
        }
}

TEST_CASE("thin sliver next to an axis") {
    const Fixture f = test::fixture("deltazero", "caseI");
    const SignScan scan = sign_scan(f.sys, 1e-3, 1440);
    double thinnest = 10.0;
    for (const auto& b : scan.blocks) thinnest = std::min(thinnest, b.angle_hi - b.angle_lo);
    CHECK(thinnest < 1e-2);
}
