#pragma once

#include "lvbif/config.hpp"
#include "lvbif/model.hpp"

#include <random>
#include <string>

namespace lvbif::test {

struct Coeffs {
    double theta = 0.0, gamma = 1.0, delta = 0.0, M = 0.0, N = 0.0, L = 0.0, S = 0.0, P = 0.0, R = 0.0;
};

inline ReducedSystem constant_system(const Coeffs& c, int degree = 2) {
    auto k = [&](double v) { return CoefficientPoly::constant(v, degree); };
    return ReducedSystem::make(k(c.theta), k(c.gamma), k(c.delta), k(c.M), k(c.N), k(c.L), k(c.S), k(c.P), k(c.R));
}

inline Fixture fixture(const std::string& family, const std::string& name) {
    return fixture_from_json(read_json(std::string(LVBIF_FIXTURES_DIR) + "/" + family + "/" + name + ".json"));
}

inline std::vector<Fixture> fixtures(Degeneracy d) { return load_fixtures(LVBIF_FIXTURES_DIR, d); }

/// Random affine coefficient c0 + c1 mu1 + c2 mu2 with |c0| in [lo, hi] and random sign.
inline CoefficientPoly random_affine(std::mt19937& rng, double lo, double hi, bool positive = false) {
    std::uniform_real_distribution<double> mag(lo, hi), slope(-0.5, 0.5);
    std::bernoulli_distribution sign(0.5);
    const double c0 = (positive || sign(rng) ? 1.0 : -1.0) * mag(rng);
    return CoefficientPoly::affine(c0, slope(rng), slope(rng));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace lvbif::test
