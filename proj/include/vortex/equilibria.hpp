#pragma once

#include <array>
#include <utility>
#include <vector>

#include "vortex/model.hpp"

// Solution pipeline for the collinear relative equilibria: roots of the
// quartic P1 in rho, the structured cubic P2 in x3, elimination for x4,
// unique extension to (c, omega), the six-element symmetry action on
// (x3, x4), ordering classification, and the complete solution set per m.

namespace vortex {

// A root rho of P1(rho; m); rho is also the product of the associated P2
// root triple. multiplicity is 1 except at degenerations (4 at m = 0).
struct RhoRoot {
    double rho;
    double m;
    int multiplicity = 1;
};

// The symmetry group of the defining system, isomorphic to S3. Tags name
// compositions of the reflection R and the 3-cycle S; X followed by Y in
// a tag means "apply Y first" (ordinary composition).
enum class SymmetryElement { E, R, RS, SR, S, S2 };

// g . h in composition order: apply h first, then g.
SymmetryElement compose(SymmetryElement g, SymmetryElement h);

// Elementary symmetric functions of a cubic's root triple. For any triple
// produced by p2_roots: sigma + rho = 0 and tau = -9.
struct SymmetricFunctions {
    double sigma;  // r1 + r2 + r3
    double tau;    // r1 r2 + r1 r3 + r2 r3
    double rho;    // r1 r2 r3
};

struct SolutionSet {
    double m;
    std::vector<std::pair<Configuration, Ordering>> solutions;
    int count = 0;
};

// All real roots of
//   P1 = (m+1)(2m+1)(m+2)^2 rho^4 - m^2 (32m^3+152m^2+239m+117) rho^2 + 54 m^4,
// ascending. Solved as a quadratic in xi = rho^2; only xi > 0 contributes.
// The quartic degree drops to a quadratic at m = -1/2 and to the single
// quadruple root 0 at m = 0.
std::vector<RhoRoot> p1_roots(double m);

// The three real roots of P2 = x^3 + rho x^2 - 9x - rho, always distinct.
// Returned as (r1, r2, r3) with r1 the largest, located in its bracket
// (rho > 0: 1 < r1 < 3; rho < 0: r1 > 3; rho = 0: r1 = 3), and
// r2 = (r1 - 3)/(r1 + 1), r3 = (3 + r1)/(1 - r1).
std::array<double, 3> p2_roots(double rho);

// Real candidates for x4 given x3: the first two equations of the defining
// system are linear in (omega, omega c); substituting their solution into the
// third and clearing (x4^2 - 1)(x4 - x3) leaves a cubic in x4. At m = 0 the
// third equation loses its x4 dependence, so the fourth is cleared instead,
// giving a quartic. Throws on x3 = +-1 or m = -3.
std::vector<double> eliminate_x4(double x3, double m);

// Unique full configuration over a root x3 of the solvability polynomial:
// the eliminate_x4 candidate whose complete residual passes the 1e-9 gate,
// with c and omega from the recovered (omega, omega c). Exactly one candidate
// may survive; zero survivors or several raise std::runtime_error. m = 0 has
// its own closed-form path in solve_all and is rejected here.
Configuration extend_solution(double x3, double m);

// Image of (x3, x4) under a symmetry element. R negates both coordinates;
// S-containing elements are Moebius maps singular at x3 = +-1 (those inputs
// correspond to collisions and throw).
std::pair<double, double> apply_symmetry(SymmetryElement g, double x3, double x4);

// Left-to-right arrangement of the four vortices with Group I/II label
// (Group I: vortex 4 exterior). Throws if two positions tie within the
// collision tolerance.
Ordering ordering_of(const Configuration& config);

// sigma, tau, rho of a root triple by direct symmetric sums.
SymmetricFunctions symmetric_functions(const std::array<double, 3>& roots);

// Every collinear relative equilibrium at circulation ratio m, one per
// admissible ordering: 12 for m > -1/2, 6 (Group I) for -1 < m <= -1/2,
// none for m <= -1. Each P1 root is taken through p2_roots/extend_solution
// and its five symmetry images are regenerated and re-validated; solutions
// are sorted by ordering label. Throws on m = -3.
SolutionSet solve_all(double m);

}  // namespace vortex
