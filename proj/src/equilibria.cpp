#include "vortex/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "vortex/rootfind.hpp"

namespace vortex {

namespace {

// omega and omega*c recovered from the first two defining equations, which
// are linear in that pair once (x3, x4) are fixed. Valid off x3, x4 = +-1.
struct RotationPair {
    double omega;
    double moment;  // omega * c
};

RotationPair solve_rotation(double x3, double x4, double m) {
    double d3 = x3 * x3 - 1.0;
    double d4 = x4 * x4 - 1.0;
    return {0.5 * (1.0 - 2.0 / d3 - 2.0 * m / d4), x3 / d3 + m * x4 / d4};
}

// Residuals of equations 3 and 4 with (omega, omega c) substituted from
// equations 1-2; under that substitution the first two vanish identically,
// so these two carry all the remaining information.
std::array<double, 2> tail_residuals(double x3, double x4, double m) {
    auto [w, wc] = solve_rotation(x3, x4, m);
    double res3 = w * x3 - wc - 1.0 / (x3 + 1.0) - 1.0 / (x3 - 1.0) + m / (x4 - x3);
    double res4 = w * x4 - wc - 1.0 / (x4 + 1.0) - 1.0 / (x4 - 1.0) - 1.0 / (x4 - x3);
    return {res3, res4};
}

double tail_norm(double x3, double x4, double m) {
    auto f = tail_residuals(x3, x4, m);
    if (!std::isfinite(f[0]) || !std::isfinite(f[1]))
        return std::numeric_limits<double>::infinity();
    return std::max(std::abs(f[0]), std::abs(f[1]));
}

// Two-variable Newton on (res3, res4) with a finite-difference Jacobian.
// Starts are symmetry images of near-exact solutions, so a handful of steps
// reaches the rounding floor; steps are only accepted while they shrink the
// residual, which keeps the polish deterministic at that floor.
void polish_pair(double& x3, double& x4, double m) {
    double best = tail_norm(x3, x4, m);
    for (int it = 0; it < 25 && best > 0.0; ++it) {
        auto f = tail_residuals(x3, x4, m);
        double h3 = 1e-7 * std::max(1.0, std::abs(x3));
        double h4 = 1e-7 * std::max(1.0, std::abs(x4));
        auto fp3 = tail_residuals(x3 + h3, x4, m);
        auto fm3 = tail_residuals(x3 - h3, x4, m);
        auto fp4 = tail_residuals(x3, x4 + h4, m);
        auto fm4 = tail_residuals(x3, x4 - h4, m);
        double j00 = (fp3[0] - fm3[0]) / (2.0 * h3), j01 = (fp4[0] - fm4[0]) / (2.0 * h4);
        double j10 = (fp3[1] - fm3[1]) / (2.0 * h3), j11 = (fp4[1] - fm4[1]) / (2.0 * h4);
        double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det)) break;
        double n3 = x3 - (f[0] * j11 - f[1] * j01) / det;
        double n4 = x4 - (j00 * f[1] - j10 * f[0]) / det;
        double cand = tail_norm(n3, n4, m);
        if (!(cand < best)) break;
        x3 = n3;
        x4 = n4;
        best = cand;
    }
}

Configuration assemble(double x3, double x4, double m) {
    Circulations circ(m);
    Configuration cfg;
    cfg.x = {-1.0, 1.0, x3, x4};
    cfg.c = center_of_vorticity(cfg.x, circ);
    cfg.omega = solve_rotation(x3, x4, m).omega;
    return cfg;
}

}  // namespace

SymmetryElement compose(SymmetryElement g, SymmetryElement h) {
    using SE = SymmetryElement;
    // Row g, column h in declaration order E, R, RS, SR, S, S2.
    static constexpr SE table[6][6] = {
        {SE::E, SE::R, SE::RS, SE::SR, SE::S, SE::S2},
        {SE::R, SE::E, SE::S, SE::S2, SE::RS, SE::SR},
        {SE::RS, SE::S2, SE::E, SE::S, SE::SR, SE::R},
        {SE::SR, SE::S, SE::S2, SE::E, SE::R, SE::RS},
        {SE::S, SE::SR, SE::R, SE::RS, SE::S2, SE::E},
        {SE::S2, SE::RS, SE::SR, SE::R, SE::E, SE::S},
    };
    return table[static_cast<int>(g)][static_cast<int>(h)];
}

std::vector<RhoRoot> p1_roots(double m) {
    if (m == 0.0) return {RhoRoot{0.0, 0.0, 4}};
    double a = (m + 1.0) * (2.0 * m + 1.0) * (m + 2.0) * (m + 2.0);
    double b = -m * m * (((32.0 * m + 152.0) * m + 239.0) * m + 117.0);
    double c = 54.0 * m * m * m * m;

    std::vector<RhoRoot> out;
    for (double xi : quadratic_real_roots(a, b, c)) {
        if (xi <= 0.0) continue;
        double r = std::sqrt(xi);
        out.push_back({-r, m, 1});
        out.push_back({r, m, 1});
    }
    std::sort(out.begin(), out.end(),
              [](const RhoRoot& u, const RhoRoot& v) { return u.rho < v.rho; });
    return out;
}

std::array<double, 3> p2_roots(double rho) {
    auto p2 = [rho](double x) { return ((x + rho) * x - 9.0) * x - rho; };
    double r1;
    if (rho == 0.0) {
        r1 = 3.0;
    } else if (rho > 0.0) {
        // p2(1) = -8, p2(3) = 8 rho > 0.
        r1 = bracketed_root(p2, 1.0, 3.0, 1e-15);
    } else {
        // p2(3) = 8 rho < 0 and p2 grows without bound.
        double hi = 6.0;
        while (p2(hi) <= 0.0) hi *= 2.0;
        r1 = bracketed_root(p2, 3.0, hi, 1e-15);
    }
    for (int it = 0; it < 4; ++it) {
        double fp = (3.0 * r1 + 2.0 * rho) * r1 - 9.0;
        if (fp == 0.0) break;
        r1 -= p2(r1) / fp;
    }
    // r1 > 1 strictly in every case, so neither companion formula degenerates.
    return {r1, (r1 - 3.0) / (r1 + 1.0), (3.0 + r1) / (1.0 - r1)};
}

std::vector<double> eliminate_x4(double x3, double m) {
    if (std::abs(m + 3.0) < collision_tol)
        throw std::domain_error("total circulation vanishes (m = -3)");
    if (std::abs(x3 - 1.0) < collision_tol || std::abs(x3 + 1.0) < collision_tol)
        throw std::domain_error("x3 collides with a unit-strength vortex");

    double d3 = x3 * x3 - 1.0;
    if (m == 0.0) {
        // The third equation loses its x4 dependence, so clear the fourth:
        // (u1 x4 - u2)(x4^2 - 1)(x4 - x3) - 2 x4 (x4 - x3) - (x4^2 - 1) = 0,
        // a quartic with u1 = omega, u2 = omega c functions of x3 alone.
        double u1 = 0.5 * (1.0 - 2.0 / d3);
        double u2 = x3 / d3;
        RealPolynomial quartic{{1.0 - u2 * x3, u1 * x3 + u2 + 2.0 * x3, u2 * x3 - u1 - 3.0,
                                -(u1 * x3 + u2), u1}};
        double span = 0.0;
        for (int k = 0; k < 4; ++k) span = std::max(span, std::abs(quartic.coeffs[k]));
        double bound = 1.0 + span / std::abs(quartic.coeffs[4]);
        return real_roots_by_scan(quartic, -bound, bound, 8192);
    }

    // Substituting (u1, u2) into the third equation and clearing
    // (x4^2 - 1)(x4 - x3) leaves alpha (x4^2 - 1)(x4 - x3) + m (x3^2 - 1) = 0.
    double alpha = 0.5 * x3 - 4.0 * x3 / d3;
    return cubic_real_roots(alpha, -alpha * x3, -alpha, alpha * x3 + m * d3);
}

Configuration extend_solution(double x3, double m) {
    if (m == 0.0)
        throw std::invalid_argument("extend_solution: m = 0 follows the closed-form path");
    Circulations circ(m);
    std::vector<Configuration> survivors;
    for (double x4 : eliminate_x4(x3, m)) {
        if (std::abs(x4 - x3) < collision_tol || std::abs(x4 - 1.0) < collision_tol ||
            std::abs(x4 + 1.0) < collision_tol)
            continue;
        auto rot = solve_rotation(x3, x4, m);
        if (!std::isfinite(rot.omega) || std::abs(rot.omega) < 1e-12) continue;
        // Close cubic root pairs (near the fold at m = -1/2 the cleared cubic
        // carries two roots separated by a few 1e-3 against a ~1e2 scale)
        // leave the closed-form candidate with enough rounding to miss the
        // gate, so candidates are polished before the gate decides. A
        // candidate that wanders to a different x3 is not an extension of
        // this one and is dropped.
        double p3 = x3, p4 = x4;
        polish_pair(p3, p4, m);
        if (std::abs(p3 - x3) > 1e-6 * std::max(1.0, std::abs(x3))) continue;
        Configuration cfg = assemble(p3, p4, m);
        if (residual_norm(cfg, circ) < 1e-9) survivors.push_back(cfg);
    }
    // Two raw candidates may polish into the same solution; they count once.
    std::vector<Configuration> distinct;
    for (const Configuration& cfg : survivors) {
        bool seen = false;
        for (const Configuration& u : distinct)
            if (std::abs(cfg.x[3] - u.x[3]) < 1e-7 * std::max(1.0, std::abs(u.x[3]))) seen = true;
        if (!seen) distinct.push_back(cfg);
    }
    if (distinct.empty())
        throw std::runtime_error("extend_solution: no x4 candidate satisfies the full system");
    if (distinct.size() > 1)
        throw std::runtime_error("extend_solution: several x4 candidates satisfy the full system");
    return distinct.front();
}

std::pair<double, double> apply_symmetry(SymmetryElement g, double x3, double x4) {
    double a = x3, b = x4;
    auto checked = [](double num_a, double num_b, double den) -> std::pair<double, double> {
        if (std::abs(den) < collision_tol)
            throw std::domain_error("symmetry image singular: x3 at a fixed point of the map");
        return {num_a / den, num_b / den};
    };
    switch (g) {
        case SymmetryElement::E:
            return {a, b};
        case SymmetryElement::R:
            return {-a, -b};
        case SymmetryElement::RS:
            return checked(a + 3.0, -2.0 * b + a + 1.0, a - 1.0);
        case SymmetryElement::SR:
            return checked(3.0 - a, 2.0 * b - a + 1.0, a + 1.0);
        case SymmetryElement::S:
            return checked(3.0 + a, -2.0 * b + a + 1.0, 1.0 - a);
        case SymmetryElement::S2:
            return checked(a - 3.0, -2.0 * b + a - 1.0, a + 1.0);
    }
    throw std::logic_error("apply_symmetry: unknown element");
}

Ordering ordering_of(const Configuration& config) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(),
              [&config](int i, int j) { return config.x[i] < config.x[j]; });
    for (int k = 0; k + 1 < 4; ++k) {
        if (config.x[idx[k + 1]] - config.x[idx[k]] < collision_tol)
            throw std::domain_error("ordering undefined: positions tie within collision tolerance");
    }
    Ordering ord;
    for (int k = 0; k < 4; ++k) ord.perm[k] = idx[k] + 1;
    ord.group = (ord.perm[0] == 4 || ord.perm[3] == 4) ? Group::I : Group::II;
    return ord;
}

SymmetricFunctions symmetric_functions(const std::array<double, 3>& roots) {
    double r1 = roots[0], r2 = roots[1], r3 = roots[2];
    return {r1 + r2 + r3, r1 * r2 + r1 * r3 + r2 * r3, r1 * r2 * r3};
}

SolutionSet solve_all(double m) {
    if (std::abs(m + 3.0) < collision_tol)
        throw std::domain_error("total circulation vanishes (m = -3)");
    Circulations circ(m);
    std::map<std::string, std::pair<Configuration, Ordering>> found;

    auto admit = [&](double x3, double x4) {
        polish_pair(x3, x4, m);
        Configuration cfg = assemble(x3, x4, m);
        if (residual_norm(cfg, circ) >= 1e-9)
            throw std::logic_error("solve_all: symmetry image failed the residual gate");
        Ordering ord = ordering_of(cfg);
        auto [it, inserted] = found.emplace(ord.label(), std::make_pair(cfg, ord));
        if (!inserted) {
            // Same ordering reached twice (the +-rho orbits coincide); the
            // configurations must agree.
            const Configuration& prev = it->second.first;
            for (int k = 2; k < 4; ++k) {
                if (std::abs(prev.x[k] - cfg.x[k]) > 1e-7 * std::max(1.0, std::abs(prev.x[k])))
                    throw std::logic_error("solve_all: conflicting solutions for one ordering");
            }
        }
    };

    if (m == 0.0) {
        // Restricted case: x3 is pinned to a root of x^3 - 9x and every real
        // root of the cleared quartic extends it.
        for (double x3 : p2_roots(0.0)) {
            for (double x4 : eliminate_x4(x3, 0.0)) admit(x3, x4);
        }
    } else {
        for (const RhoRoot& rr : p1_roots(m)) {
            Configuration base = extend_solution(p2_roots(rr.rho)[0], m);
            for (SymmetryElement g : {SymmetryElement::E, SymmetryElement::R, SymmetryElement::RS,
                                      SymmetryElement::SR, SymmetryElement::S, SymmetryElement::S2}) {
                auto [a, b] = apply_symmetry(g, base.x[2], base.x[3]);
                admit(a, b);
            }
        }
    }

    int expected = (m <= -1.0) ? 0 : (m <= -0.5 ? 6 : 12);
    if (m == 0.0) expected = 12;
    if (static_cast<int>(found.size()) != expected)
        throw std::logic_error("solve_all: solution count disagrees with the classification");

    SolutionSet out;
    out.m = m;
    for (auto& [label, pair] : found) out.solutions.push_back(std::move(pair));
    out.count = static_cast<int>(out.solutions.size());
    return out;
}

}  // namespace vortex
