#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "vortex/model.hpp"

// Independent verification layer: the full planar n-vortex flow, conservation
// diagnostics, the analytic Hessian of the Hamiltonian, the scaled stability
// matrix with its dense spectrum, rigid-rotation checks against the analytic
// eigenvalues, and the projected-Hessian Morse index.

namespace vortex {

// General planar n-vortex state; positions and strengths kept side by side.
struct PlanarState {
    std::vector<double> gamma;
    std::vector<Eigen::Vector2d> z;

    int size() const { return static_cast<int>(z.size()); }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<PlanarState> states;
    bool aborted = false;  // set when a near-collision stopped the run early
};

// Embed a collinear configuration on the horizontal axis.
PlanarState planar_from_collinear(const Configuration& config, const Circulations& circ);

// dz_i/dt = J sum_{j != i} Gamma_j (z_j - z_i)/r_ij^2 with J = [[0,1],[-1,0]].
// Throws on collision.
std::vector<Eigen::Vector2d> ode_rhs(const PlanarState& state);

// H = -sum_{i<j} Gamma_i Gamma_j ln r_ij for a planar state.
double planar_hamiltonian(const PlanarState& state);

// Angular impulse about the origin, sum Gamma_i |z_i|^2; a first integral of
// the flow regardless of where the center of vorticity sits.
double planar_angular_impulse(const PlanarState& state);

// Adaptive Dormand-Prince 5(4) integration to t_end with `samples` evenly
// spaced output states (absolute and relative local tolerance `tol`). H and
// the angular impulse are conserved to about 10*tol relative over the run.
// Approaching a collision (min r_ij < 1e-6) aborts with a partial trajectory.
Trajectory integrate(const PlanarState& state0, double t_end, double tol, int samples = 200);

// Exact 2n x 2n Hessian of H in interleaved (x1, y1, x2, y2, ...) coordinates.
// Anti-commutes with the block rotation K.
Eigen::MatrixXd hessian_H(const PlanarState& state);

// K(omega^-1 M^-1 D2H + Id). Requires the center of vorticity at the origin
// (within 1e-8) so the trivial kernel directions come out exactly.
Eigen::MatrixXd scaled_stability_matrix(const PlanarState& z0, double omega);

// All eigenvalues of a dense real matrix (n <= 16 vortices, so at most
// 32 x 32). Throws if the eigensolver fails to converge.
Eigen::VectorXcd dense_eigenvalues(const Eigen::MatrixXd& mat);

struct VerificationRecord {
    double period_return = 0.0;      // max position deviation after one period
    double h_drift = 0.0;            // max relative Hamiltonian drift
    double i_drift = 0.0;            // max relative angular-impulse drift
    std::vector<std::complex<double>> spectrum;  // eigenvalues of omega^-1 B
    double trivial_deviation = 0.0;  // {0, 0, +-i} presence: the defective zero
                                     // pair via its sum and product, +-i directly
    double spectrum_mismatch = 0.0;  // nontrivial spectrum vs analytic lambdas
    bool aborted = false;

    bool ok() const {
        return !aborted && period_return < 1e-6 && h_drift < 1e-8 && i_drift < 1e-8 &&
               trivial_deviation < 1e-7 && spectrum_mismatch < 1e-6;
    }
};

// Integrates `periods` full revolutions (deviations are only meaningful for
// integer counts), checks conservation and rigid rotation, and compares the
// dense spectrum of omega^-1 B with the analytic normalized eigenvalues.
VerificationRecord verify_relative_equilibrium(const Configuration& solution,
                                               const Circulations& circ, double periods = 1.0,
                                               double tol = 1e-10);

// Number of negative eigenvalues (below -1e-8) of D2H + (omega/2) D2I
// restricted to the complement of span{grad I, translations, K z0}, where I
// is taken about the center of vorticity so translations are exact null
// directions. Throws when the projection basis degenerates or Gamma or the
// vorticity momentum L vanishes.
int morse_index(const Configuration& solution, const Circulations& circ);

}  // namespace vortex
