#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace lvbif {

using State = std::array<double, 2>;

inline double norm(const State& v) { return std::hypot(v[0], v[1]); }
inline State operator+(const State& a, const State& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline State operator-(const State& a, const State& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline State operator*(double s, const State& a) { return {s * a[0], s * a[1]}; }
inline double dot(const State& a, const State& b) { return a[0] * b[0] + a[1] * b[1]; }

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    State operator*(const State& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
    double max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }
};

/// Solves m x = rhs by Cramer's rule; caller guards against det == 0.
inline State solve(const Mat2& m, const State& rhs) {
    const double det = m.det();
    return {(rhs[0] * m.d - m.b * rhs[1]) / det, (m.a * rhs[1] - m.c * rhs[0]) / det};
}

/// Eigenvalues of a real 2x2 matrix. Real pairs are sorted descending.
inline std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
    const double p = 0.5 * m.trace();
    const double q = m.det();
    const double disc = p * p - q;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        // Stable pairing: the larger-magnitude root first, the other from the product.
        const double big = p >= 0.0 ? p + s : p - s;
        const double small = big != 0.0 ? q / big : 0.0;
        const double hi = std::max(big, small), lo = std::min(big, small);
        return {std::complex<double>(hi, 0.0), std::complex<double>(lo, 0.0)};
    }
    const double s = std::sqrt(-disc);
    return {std::complex<double>(p, s), std::complex<double>(p, -s)};
}

/// Null vector of the singular-ish matrix m - lambda I, built from its larger row
/// (r1, r2) as (-r2, r1). Rows with exact zeros give exact structural zeros.
inline State null_vector(const Mat2& m, double lambda) {
    const double a = m.a - lambda, b = m.b, c = m.c, d = m.d - lambda;
    const double n1 = std::hypot(a, b), n2 = std::hypot(c, d);
    State v = n1 >= n2 ? State{-b, a} : State{-d, c};
    if (v[0] == 0.0 && v[1] == 0.0) v = {1.0, 0.0};
    return v;
}

} // namespace lvbif
