#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvbif/errors.hpp"
#include "lvbif/poly.hpp"

using namespace lvbif;

TEST_CASE("evaluation at the origin returns the constant coefficient") {
    CoefficientPoly p = CoefficientPoly::affine(0.3, 2.0, -1.0);
    p.set(2, 0, 5.0);
    CHECK(p.at_origin() == 0.3);
    CHECK(p(0.0, 0.0) == 0.3);
    CHECK(p(0.1, 0.2) == doctest::Approx(0.3 + 0.2 - 0.2 + 0.05));
}

TEST_CASE("exponents above the degree are rejected") {
    CoefficientPoly p(2);
    CHECK_THROWS_AS(p.set(2, 1, 1.0), ConfigError);
    CHECK_NOTHROW(p.set(1, 1, 1.0));
    CHECK(p.coeff(3, 0) == 0.0);
}

TEST_CASE("products are truncated at the degree") {
    const CoefficientPoly a = CoefficientPoly::affine(1.0, 1.0, 0.0);
    const CoefficientPoly sq = a * a * a;  // (1 + mu1)^3 truncated at degree 2
    CHECK(sq.coeff(0, 0) == 1.0);
    CHECK(sq.coeff(1, 0) == 3.0);
    CHECK(sq.coeff(2, 0) == 3.0);
    CHECK(sq.coeff(3, 0) == 0.0);
}

TEST_CASE("truncated division reproduces the Taylor series") {
    const CoefficientPoly num = CoefficientPoly::affine(1.0, 1.0, 0.0, 4);
    const CoefficientPoly den = CoefficientPoly::affine(1.0, -1.0, 0.0, 4);
    const CoefficientPoly q = num.divide(den);  // (1 + x) / (1 - x) = 1 + 2x + 2x^2 + ...
    CHECK(q.coeff(0, 0) == doctest::Approx(1.0));
    for (int i = 1; i <= 4; ++i) CHECK(q.coeff(i, 0) == doctest::Approx(2.0));
    const CoefficientPoly back = q * den;
    CHECK(back.coeff(1, 0) == doctest::Approx(1.0));
    CHECK(back.coeff(2, 0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("division by a vanishing constant term fails") {
    const CoefficientPoly num = CoefficientPoly::constant(1.0);
    CHECK_THROWS_AS(num.divide(CoefficientPoly::affine(0.0, 1.0, 0.0)), DivisionError);
    CHECK_THROWS_AS(num.divide(CoefficientPoly::constant(1e-13)), DivisionError);
}

TEST_CASE("mixed terms divide correctly") {
    CoefficientPoly den = CoefficientPoly::affine(2.0, 0.5, -0.25, 3);
    den.set(1, 1, 0.3);
    CoefficientPoly num = CoefficientPoly::affine(-1.0, 0.2, 0.7, 3);
    num.set(0, 2, 0.4);
    const CoefficientPoly q = num.divide(den);
    for (double m : {1e-3, 1e-4}) {
        const double a = m, b = -0.5 * m;
        CHECK(q(a, b) == doctest::Approx(num(a, b) / den(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("reflection negates odd total degrees") {
    CoefficientPoly p = CoefficientPoly::affine(1.0, 2.0, 3.0);
    p.set(1, 1, 4.0);
    const CoefficientPoly r = p.reflect();
    CHECK(r(0.1, 0.2) == doctest::Approx(p(-0.1, -0.2)));
    CHECK(r.coeff(1, 1) == 4.0);
    CHECK(r.coeff(0, 1) == -3.0);
}

TEST_CASE("partial derivatives") {
    CoefficientPoly p = CoefficientPoly::affine(1.0, 2.0, 3.0);
    p.set(2, 0, 5.0);
    p.set(1, 1, 7.0);
    CHECK(p.d_mu1() == 2.0);
    CHECK(p.d_mu2() == 3.0);
    const CoefficientPoly d1 = p.derivative(1);
    CHECK(d1.coeff(0, 0) == 2.0);
    CHECK(d1.coeff(1, 0) == 10.0);
    CHECK(d1.coeff(0, 1) == 7.0);
    const CoefficientPoly d2 = p.derivative(2);
    CHECK(d2.coeff(0, 0) == 3.0);
    CHECK(d2.coeff(1, 0) == 7.0);
}

TEST_CASE("degree change keeps low-order terms") {
    CoefficientPoly p = CoefficientPoly::affine(1.0, 2.0, 3.0);
    p.set(2, 0, 5.0);
    const CoefficientPoly low = p.with_degree(1);
    CHECK(low.degree() == 1);
    CHECK(low.coeff(1, 0) == 2.0);
    CHECK(low.coeff(2, 0) == 0.0);
    CHECK(p.with_degree(4).with_degree(2) == p);
}
