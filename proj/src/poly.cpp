#include "lvbif/poly.hpp"

#include "lvbif/errors.hpp"

#include <algorithm>
#include <string>

namespace lvbif {

CoefficientPoly::CoefficientPoly(int degree) : degree_(degree) {
    if (degree < 0 || degree > 16) throw ConfigError("polynomial degree must be in [0, 16]");
    c_.assign(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), 0.0);
}

CoefficientPoly CoefficientPoly::constant(double c, int degree) {
    CoefficientPoly p(degree);
    p.c_[0] = c;
    return p;
}

CoefficientPoly CoefficientPoly::affine(double c0, double c1, double c2, int degree) {
    CoefficientPoly p(degree);
    p.set(0, 0, c0);
    if (degree >= 1) {
        p.set(1, 0, c1);
        p.set(0, 1, c2);
    }
    return p;
}

double CoefficientPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > degree_) return 0.0;
    return c_[index(i, j)];
}

void CoefficientPoly::set(int i, int j, double value) {
    if (i < 0 || j < 0 || i + j > degree_)
        throw ConfigError("exponent (" + std::to_string(i) + "," + std::to_string(j) +
                          ") exceeds degree " + std::to_string(degree_));
    c_[index(i, j)] = value;
}

double CoefficientPoly::operator()(const ParamPoint& mu) const {
    // Horner in mu2 for each power of mu1.
    double total = 0.0;
    double p1 = 1.0;
    for (int i = 0; i <= degree_; ++i) {
        double inner = 0.0;
        for (int j = degree_ - i; j >= 0; --j) inner = inner * mu.mu2 + c_[index(i, j)];
        total += p1 * inner;
        p1 *= mu.mu1;
    }
    return total;
}

CoefficientPoly CoefficientPoly::derivative(int k) const {
    CoefficientPoly d(degree_);
    for (int i = 0; i <= degree_; ++i)
        for (int j = 0; i + j <= degree_; ++j) {
            if (k == 1 && i > 0) d.set(i - 1, j, i * coeff(i, j));
            if (k == 2 && j > 0) d.set(i, j - 1, j * coeff(i, j));
        }
    return d;
}

CoefficientPoly CoefficientPoly::operator+(const CoefficientPoly& o) const {
    CoefficientPoly r(std::max(degree_, o.degree_));
    for (int i = 0; i <= r.degree_; ++i)
        for (int j = 0; i + j <= r.degree_; ++j) r.set(i, j, coeff(i, j) + o.coeff(i, j));
    return r;
}

CoefficientPoly CoefficientPoly::operator-(const CoefficientPoly& o) const { return *this + (-o); }

CoefficientPoly CoefficientPoly::operator*(const CoefficientPoly& o) const {
    CoefficientPoly r(std::max(degree_, o.degree_));
    const int d = r.degree_;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
            double s = 0.0;
            for (int k = 0; k <= i; ++k)
                for (int l = 0; l <= j; ++l) s += coeff(k, l) * o.coeff(i - k, j - l);
            r.set(i, j, s);
        }
    return r;
}

CoefficientPoly CoefficientPoly::operator*(double s) const {
    CoefficientPoly r = *this;
    for (double& v : r.c_) v *= s;
    return r;
}

CoefficientPoly CoefficientPoly::divide(const CoefficientPoly& den) const {
    const double b0 = den.at_origin();
    if (std::abs(b0) < division_floor) throw DivisionError("division by a coefficient vanishing at mu = 0");
    CoefficientPoly q(std::max(degree_, den.degree_));
    const int d = q.degree_;
    // Coefficients in order of total degree, so every lower-order term is known.
    for (int n = 0; n <= d; ++n)
        for (int i = n; i >= 0; --i) {
            const int j = n - i;
            double s = coeff(i, j);
            for (int k = 0; k <= i; ++k)
                for (int l = 0; l <= j; ++l) {
                    if (k == i && l == j) continue;
                    s -= q.coeff(k, l) * den.coeff(i - k, j - l);
                }
            q.set(i, j, s / b0);
        }
    return q;
}

CoefficientPoly CoefficientPoly::reflect() const {
    CoefficientPoly r = *this;
    for (int i = 0; i <= degree_; ++i)
        for (int j = 0; i + j <= degree_; ++j)
            if ((i + j) % 2 == 1) r.set(i, j, -coeff(i, j));
    return r;
}

CoefficientPoly CoefficientPoly::with_degree(int degree) const {
    CoefficientPoly r(degree);
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) r.set(i, j, coeff(i, j));
    return r;
}

bool CoefficientPoly::operator==(const CoefficientPoly& o) const {
    const int d = std::max(degree_, o.degree_);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j)
            if (coeff(i, j) != o.coeff(i, j)) return false;
    return true;
}

} // namespace lvbif
