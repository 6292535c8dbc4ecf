#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "vortex/model.hpp"
#include "vortex/rootfind.hpp"

// Linear-stability machinery for collinear relative equilibria: the scaled
// interaction matrix A, the 2x2 restriction C of A to its nontrivial
// invariant subspace, the trace/determinant pair (T, D), trace-determinant
// classification, the bifurcation polynomial Psi, and the asymptotic series
// for the extreme circulation regimes.

namespace vortex {

// Trace-determinant chart cells (see classify for the exact predicates).
enum class Region { StableRegion, RegionII, RegionIII, RegionIV, BoundaryRepeated, BoundaryZero };

enum class Verdict { LinearlyStable, SpectrallyStable, Unstable, Degenerate };

const char* region_name(Region region);
const char* verdict_name(Verdict verdict);

struct Classification {
    Region region;
    Verdict verdict;
};

struct StabilityReport {
    double T = 0.0;
    double D = 0.0;
    double delta = 0.0;
    std::complex<double> mu1, mu2;
    // Normalized nontrivial eigenvalues as +-pairs: {+l1, -l1, +l2, -l2},
    // canonical representative first (nonnegative real part, then
    // nonnegative imaginary part).
    std::array<std::complex<double>, 4> lambdas;
    Region region = Region::StableRegion;
    Verdict verdict = Verdict::LinearlyStable;
};

// 4x4 matrix A with A_ij = -omega^-1 Gamma_j / r_ij^2 off the diagonal and
// rows summing to zero. At a relative equilibrium its spectrum is
// {0, 1, mu1, mu2} with eigenvectors including [1,1,1,1] and x itself.
// Throws on collision or omega = 0.
Eigen::Matrix4d a_matrix(const Configuration& config, const Circulations& circ);

// The explicit basis (w1, w2) of the A-invariant complement of
// span{[1,1,1,1], x}; both vectors are M-orthogonal to that span but not to
// each other.
std::pair<Eigen::Vector4d, Eigen::Vector4d> restriction_basis(const Configuration& config,
                                                              const Circulations& circ);

// Restriction of A to span{w1, w2} in the (w1, w2) basis, via the printed
// closed-form entries.
Eigen::Matrix2d c_matrix(const Configuration& config, const Circulations& circ);

// T = omega^-1 sum_{i<j} (Gamma_i + Gamma_j)/r_ij^2 - 1; equals tr C.
double trace_T(const Configuration& config, const Circulations& circ);

// The pair/triple interaction sum entering the determinant; depends only on
// circulations and mutual distances.
double delta_functional(const Configuration& config, const Circulations& circ);

// D = -T + omega^-2 delta; equals det C.
double det_D(const Configuration& config, const Circulations& circ);

// mu1, mu2 as the roots of mu^2 - T mu + D (mu1 the one with the larger real
// part, then nonnegative imaginary part), plus the four normalized
// eigenvalues lambda = +-sqrt(mu^2 - 1) ordered {+l1, -l1, +l2, -l2}.
struct NontrivialEigenvalues {
    std::complex<double> mu1, mu2;
    std::array<std::complex<double>, 4> lambdas;
};
NontrivialEigenvalues nontrivial_eigenvalues(double T, double D);

// Trace-determinant chart placement. Boundary bands are 1e-9 wide: the lines
// D = T - 1 and D = -T - 1 (a zero eigenvalue pair) classify as BoundaryZero/
// Degenerate, the parabola D = T^2/4 as BoundaryRepeated (SpectrallyStable
// when |T| < 2). Above the parabola the eigenvalues form a complex
// quartuplet (RegionIV, unstable) except on the T = 0, D > 0 axis, where the
// spectrum is pure imaginary and the verdict is LinearlyStable. Below it both
// mu are real: none outside [-1, 1] is the stable region, one is RegionIII,
// both is RegionII.
Classification classify(double T, double D);

// Psi as an ascending-coefficient polynomial in m; its two roots in (-1, 0)
// are the bifurcation values m_star < m_c where the Group I trace-determinant
// curve touches the repeated-eigenvalue parabola.
RealPolynomial psi_polynomial();

struct BifurcationRoots {
    double m_star;
    double m_c;
    std::vector<double> all;
};

// All real roots of Psi located by scan over [-10, 0]; exactly four exist,
// all negative. Throws std::runtime_error if the scan disagrees.
BifurcationRoots psi_bifurcation_roots();

// Full per-solution stability summary.
StabilityReport stability_report(double m, const Configuration& solution);

// Asymptotic expansions in the small parameter eps, stored exactly as
// printed: m = -1/2 + eps^2 (Group II), m = -1 + eps^2 (Group I), and
// m = 1/eps^2 (both groups). kappa = 1/rho exists only in the first regime.
enum class SeriesRegime {
    GroupII_near_minus_half,
    GroupI_near_minus_one,
    GroupI_large_m,
    GroupII_large_m,
};

enum class SeriesQuantity { x3, x4, T, D, kappa };

struct SeriesExpansion {
    SeriesRegime regime;
    SeriesQuantity quantity;
    std::vector<std::pair<int, double>> coefficients;  // (power of eps, coefficient)
};

// Lookup of a stored expansion; throws std::invalid_argument for pairs the
// source never prints (kappa outside its regime).
const SeriesExpansion& series(SeriesRegime regime, SeriesQuantity quantity);

// Truncated Laurent evaluation sum coeff * eps^power (negative powers occur
// in the Group II T and D expansions near m = -1/2).
double series_eval(const SeriesExpansion& expansion, double eps);

}  // namespace vortex
