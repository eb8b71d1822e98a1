#pragma once

#include <cmath>
#include <vector>

namespace lvbif {

struct ParamPoint {
    double mu1 = 0.0;
    double mu2 = 0.0;

    double norm() const { return std::hypot(mu1, mu2); }
};

/// Truncated bivariate polynomial in (mu1, mu2), total degree <= degree().
/// Terms above the degree are discarded by every arithmetic operation.
class CoefficientPoly {
public:
    CoefficientPoly() : CoefficientPoly(2) {}
    explicit CoefficientPoly(int degree);

    static CoefficientPoly constant(double c, int degree = 2);
    /// c0 + c1*mu1 + c2*mu2
    static CoefficientPoly affine(double c0, double c1, double c2, int degree = 2);

    int degree() const { return degree_; }
    double coeff(int i, int j) const;
    void set(int i, int j, double value);

    double operator()(const ParamPoint& mu) const;
    double operator()(double mu1, double mu2) const { return (*this)(ParamPoint{mu1, mu2}); }

    double at_origin() const { return c_[0]; }
    double d_mu1() const { return coeff(1, 0); }
    double d_mu2() const { return coeff(0, 1); }

    /// Partial derivative polynomial with respect to mu1 (k = 1) or mu2 (k = 2).
    CoefficientPoly derivative(int k) const;

    CoefficientPoly operator+(const CoefficientPoly& o) const;
    CoefficientPoly operator-(const CoefficientPoly& o) const;
    CoefficientPoly operator*(const CoefficientPoly& o) const;
    CoefficientPoly operator*(double s) const;
    CoefficientPoly operator-() const { return (*this) * -1.0; }

    /// Truncated Taylor series of this / den. Throws DivisionError when den(0) is
    /// below the floor.
    CoefficientPoly divide(const CoefficientPoly& den) const;

    /// q(mu) = p(-mu)
    CoefficientPoly reflect() const;

    CoefficientPoly with_degree(int degree) const;

    bool operator==(const CoefficientPoly& o) const;

    static constexpr double division_floor = 1e-12;

private:
    static int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

    int degree_;
    std::vector<double> c_;
};

} // namespace lvbif
