#include "vortex/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vortex {

int RealPolynomial::degree() const {
    double biggest = 0.0;
    for (double c : coeffs) biggest = std::max(biggest, std::abs(c));
    if (biggest == 0.0) return -1;
    double cutoff = 1e-13 * biggest;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        if (std::abs(coeffs[k]) > cutoff) return k;
    }
    return -1;
}

double RealPolynomial::eval(double x) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

double RealPolynomial::deriv_eval(double x) const {
    double v = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) v = v * x + k * coeffs[k];
    return v;
}

std::vector<double> quadratic_real_roots(double a, double b, double c) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) throw std::domain_error("identically zero quadratic");
    if (std::abs(a) <= 1e-13 * scale) {
        if (std::abs(b) <= 1e-13 * scale) return {};  // constant, nonzero
        return {-c / b};
    }
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    double sq = std::sqrt(disc);
    // q = -(b + sign(b) sqrt(disc))/2 keeps both quotients free of cancellation.
    double q = (b >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    std::vector<double> roots;
    if (q == 0.0) {
        roots = {0.0, -b / a};
    } else {
        roots = {q / a, c / q};
    }
    std::sort(roots.begin(), roots.end());
    if (disc == 0.0) roots.pop_back();
    return roots;
}

namespace {

double polish_cubic(double a, double b, double c, double d, double x) {
    for (int it = 0; it < 8; ++it) {
        double f = ((a * x + b) * x + c) * x + d;
        double fp = (3.0 * a * x + 2.0 * b) * x + c;
        if (fp == 0.0) break;
        double step = f / fp;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

}  // namespace

std::vector<double> cubic_real_roots(double a, double b, double c, double d) {
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (scale == 0.0 || std::abs(a) <= 1e-13 * scale)
        throw std::domain_error("cubic_real_roots: degenerate leading coefficient");

    // Depressed form t^3 + p t + q with x = t - b/(3a).
    double shift = b / (3.0 * a);
    double p = c / a - 3.0 * shift * shift;
    double q = 2.0 * shift * shift * shift - shift * c / a + d / a;
    double disc = -(4.0 * p * p * p + 27.0 * q * q);

    std::vector<double> roots;
    if (disc > 0.0) {
        // Three distinct real roots: trigonometric form, p < 0 here.
        double rho = 2.0 * std::sqrt(-p / 3.0);
        double arg = std::clamp(3.0 * q / (p * rho), -1.0, 1.0);
        double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(rho * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    } else {
        // One real root (or a repeated pair): Cardano with stable cube roots.
        double half_q = 0.5 * q;
        double inner = half_q * half_q + p * p * p / 27.0;
        if (inner >= 0.0) {
            double s = std::sqrt(inner);
            double u = std::cbrt(-half_q + s);
            double v = std::cbrt(-half_q - s);
            roots.push_back(u + v - shift);
            if (inner == 0.0 && (u + v) != 0.0) roots.push_back(-0.5 * (u + v) - shift);
        } else {
            // Rounding pushed a triple-root discriminant slightly negative.
            roots.push_back(std::cbrt(-q) - shift);
        }
    }
    for (double& r : roots) r = polish_cubic(a, b, c, d, r);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double u, double v) {
                                return std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(u));
                            }),
                roots.end());
    return roots;
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bracketed_root: no sign change on [lo, hi]");

    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        // Secant candidate, accepted only if it lands safely inside.
        double mid = 0.5 * (lo + hi);
        double x = mid;
        double denom = fhi - flo;
        if (denom != 0.0) {
            double sec = lo - flo * (hi - lo) / denom;
            double margin = 0.01 * (hi - lo);
            if (sec > lo + margin && sec < hi - margin) x = sec;
        }
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> real_roots_by_scan(const RealPolynomial& p, double lo, double hi, int grid) {
    if (grid < 2) throw std::invalid_argument("real_roots_by_scan: grid must be at least 2");
    auto f = [&p](double x) { return p.eval(x); };
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    for (int k = 1; k <= grid; ++k) {
        double x = lo + (hi - lo) * k / grid;
        double fx = f(x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (fx != 0.0 && (prev_f > 0.0) != (fx > 0.0)) {
            roots.push_back(bracketed_root(f, prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    if (prev_f == 0.0) roots.push_back(prev_x);

    // Newton clean-up; bounded steps so a root cannot leave its scan cell.
    double cell = (hi - lo) / grid;
    for (double& r : roots) {
        for (int it = 0; it < 50; ++it) {
            double fr = p.eval(r);
            double fp = p.deriv_eval(r);
            if (fp == 0.0) break;
            double step = fr / fp;
            if (std::abs(step) > cell) break;
            r -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double u, double v) { return std::abs(u - v) <= 1e-10; }),
                roots.end());
    return roots;
}

}  // namespace vortex
