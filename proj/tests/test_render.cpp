#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lvbif/render.hpp"

#include <cstdlib>
#include <sstream>

using namespace lvbif;
using lvbif::test::Coeffs;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("numbers round-trip with 17 digits") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-7, 1e300, 0.0}) CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("trajectory CSV layout") {
    const ReducedSystem sys = test::constant_system(Coeffs{-2.0, 1.0, -1.0});
    const Portrait p = portrait(sys, {1e-3, 1e-3}, 3);
    const auto ls = lines(trajectories_csv(p));
    REQUIRE(ls.size() > 1);
    CHECK(ls[0] == "t,xi1,xi2,trajectory_id,terminal");
    std::size_t rows = 0;
    for (const auto* set : {&p.trajectories, &p.separatrices})
        for (const auto& t : *set) rows += t.points.size();
    CHECK(ls.size() == rows + 1);
    CHECK(ls.back().substr(ls.back().rfind(',') + 1) == p.separatrices.back().terminal_name());
}

TEST_CASE("curve CSV layout") {
    const ReducedSystem sys = test::constant_system(Coeffs{1.0, 1.0, 0.5});
    const std::vector<BifurcationCurve> curves{trace_curve(sys, CurveKind::T1, {1e-3, 1e-4}),
                                               trace_curve(sys, CurveKind::T2, {1e-3})};
    const auto ls = lines(curves_csv(curves));
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "kind,branch,mu1,mu2,residual");
    CHECK(ls[1].rfind("T1,theta*mu1<0,", 0) == 0);
    CHECK(ls[3].rfind("T2,", 0) == 0);
}

TEST_CASE("deterministic output") {
    const ReducedSystem sys = test::fixture("nondegenerate", "case3").sys;
    const ParamPoint mu{-4e-4, 9e-4};
    const Portrait a = portrait(sys, mu, 4);
    const Portrait b = portrait(sys, mu, 4);
    CHECK(portrait_svg(a) == portrait_svg(b));
    CHECK(trajectories_csv(a) == trajectories_csv(b));
    const std::vector<BifurcationCurve> curves{trace_curve(sys, CurveKind::T1, {1e-3}), trace_curve(sys, CurveKind::H, {1e-3})};
    CHECK(diagram_svg(curves) == diagram_svg(curves));
    const std::string svg = portrait_svg(a);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}
