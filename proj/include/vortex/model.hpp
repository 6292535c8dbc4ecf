#pragma once

#include <array>
#include <string>

// Core domain types for the collinear four-vortex problem with circulations
// (1, 1, 1, m), normalized so the first two vortices sit at x = -1 and x = +1,
// plus the physical functionals defined on such configurations.

namespace vortex {

// Any pairwise distance below this is treated as a collision; the defining
// equations are singular there.
inline constexpr double collision_tol = 1e-9;

// Circulation strengths (1, 1, 1, m) together with the derived totals.
// total = Gamma = 3 + m, momentum = L = sum_{i<j} Gamma_i Gamma_j = 3 + 3m.
struct Circulations {
    double m;
    std::array<double, 4> gamma;
    double total;
    double momentum;

    explicit Circulations(double m_)
        : m(m_), gamma{1.0, 1.0, 1.0, m_}, total(3.0 + m_), momentum(3.0 + 3.0 * m_) {}
};

// A collinear configuration x = (-1, 1, x3, x4) with its center of vorticity c
// and angular velocity omega. Positions are stored explicitly so shifted or
// scaled copies can be built for invariance tests.
struct Configuration {
    std::array<double, 4> x;
    double c = 0.0;
    double omega = 0.0;
};

enum class Group { I, II };

// Left-to-right arrangement of the vortex labels on the line. perm[k] is the
// label (1-based) of the k-th vortex from the left. Group I places vortex 4
// exterior to the three equal-strength vortices (first or last position).
struct Ordering {
    std::array<int, 4> perm;
    Group group;

    // Digit-string form, e.g. "1243".
    std::string label() const;
};

bool operator==(const Ordering& a, const Ordering& b);

// Distances (r12, r13, r14, r23, r24, r34) for arbitrary positions.
std::array<double, 6> pairwise_distances(const std::array<double, 4>& x);
std::array<double, 6> pairwise_distances(const Configuration& config);

// H = -sum_{i<j} Gamma_i Gamma_j ln r_ij. Throws std::domain_error on collision.
double hamiltonian(const std::array<double, 4>& x, const Circulations& circ);
double hamiltonian(const Configuration& config, const Circulations& circ);

// I = sum_i Gamma_i (x_i - c)^2 = (1/Gamma) sum_{i<j} Gamma_i Gamma_j r_ij^2.
// The mutual-distance form is returned; the two agree to rounding whenever
// c is the center of vorticity. Throws std::domain_error when Gamma = 0.
double angular_impulse(const std::array<double, 4>& x, const Circulations& circ);
double angular_impulse(const Configuration& config, const Circulations& circ);

// omega = L / I. Throws std::domain_error when Gamma = 0 or I = 0.
double angular_velocity(const std::array<double, 4>& x, const Circulations& circ);
double angular_velocity(const Configuration& config, const Circulations& circ);

// c = (1/Gamma) sum_i Gamma_i x_i; with the normalization this reduces to
// (x3 + m x4)/(m + 3). Throws std::domain_error when Gamma = 0 (m = -3).
double center_of_vorticity(const std::array<double, 4>& x, const Circulations& circ);

// Left-hand sides of the defining system, one per vortex:
//   res_i = omega (x_i - c) + sum_{j != i} Gamma_j / (x_j - x_i).
// Evaluated exactly as written (no clearing of denominators), so a valid
// relative equilibrium yields a max-norm below the acceptance gate.
// The explicit (x, c, omega) overload exists so translated copies can be
// evaluated without rebuilding a normalized Configuration.
std::array<double, 4> residuals(const std::array<double, 4>& x, double c, double omega,
                                const Circulations& circ);
std::array<double, 4> residuals(const Configuration& config, const Circulations& circ);

// Max-norm convenience used by the solution gates.
double residual_norm(const Configuration& config, const Circulations& circ);

}  // namespace vortex
