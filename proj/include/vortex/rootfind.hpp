#pragma once

#include <functional>
#include <vector>

// Small real-rootfinding toolkit: dense polynomials in ascending-coefficient
// form plus safeguarded scalar iteration. Everything here returns real roots
// only, sorted ascending.

namespace vortex {

// coeffs[k] multiplies x^k. Coefficients whose magnitude falls below
// 1e-13 * max|coeff| are treated as zero when reporting the degree, so nearly
// degenerate leading terms do not masquerade as genuine higher-degree terms.
struct RealPolynomial {
    std::vector<double> coeffs;

    int degree() const;
    double eval(double x) const;
    double deriv_eval(double x) const;
};

// Roots of a x^2 + b x + c. Falls back to the linear root when a underflows
// relative to the other coefficients; throws std::domain_error when all three
// vanish. Uses the sign-aware formula so subtractive cancellation cannot
// destroy the smaller root.
std::vector<double> quadratic_real_roots(double a, double b, double c);

// Real roots of a x^3 + b x^2 + c x + d, each polished by a few Newton steps.
// Requires genuine degree 3; throws std::domain_error when a underflows
// relative to the other coefficients.
std::vector<double> cubic_real_roots(double a, double b, double c, double d);

// One root of f in [lo, hi]; requires a sign change. Secant-accelerated
// bisection: the bracket never widens, so convergence is guaranteed to the
// requested interval width.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      double tol = 1e-14);

// All sign-change roots of p on [lo, hi] found by uniform scan, refined by
// bracketed_root and Newton-polished; roots closer together than 1e-10 are
// merged. Tangential (even-order) roots are invisible to the scan by design.
std::vector<double> real_roots_by_scan(const RealPolynomial& p, double lo, double hi,
                                       int grid = 4096);

}  // namespace vortex
