#include "vortex/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vortex/stability.hpp"

namespace vortex {

namespace {

Eigen::VectorXd flatten(const PlanarState& s) {
    Eigen::VectorXd y(2 * s.size());
    for (int i = 0; i < s.size(); ++i) {
        y[2 * i] = s.z[i].x();
        y[2 * i + 1] = s.z[i].y();
    }
    return y;
}

PlanarState unflatten(const Eigen::VectorXd& y, const std::vector<double>& gamma) {
    PlanarState s;
    s.gamma = gamma;
    s.z.resize(gamma.size());
    for (size_t i = 0; i < gamma.size(); ++i)
        s.z[i] = Eigen::Vector2d(y[2 * i], y[2 * i + 1]);
    return s;
}

double min_separation(const Eigen::VectorXd& y, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dx = y[2 * j] - y[2 * i];
            double dy = y[2 * j + 1] - y[2 * i + 1];
            best = std::min(best, std::hypot(dx, dy));
        }
    }
    return best;
}

Eigen::VectorXd rhs_flat(const Eigen::VectorXd& y, const std::vector<double>& gamma) {
    int n = static_cast<int>(gamma.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double dx = y[2 * j] - y[2 * i];
            double dy = y[2 * j + 1] - y[2 * i + 1];
            double r2 = dx * dx + dy * dy;
            // J (dx, dy) = (dy, -dx)
            out[2 * i] += gamma[j] * dy / r2;
            out[2 * i + 1] -= gamma[j] * dx / r2;
        }
    }
    return out;
}

}  // namespace

PlanarState planar_from_collinear(const Configuration& config, const Circulations& circ) {
    PlanarState s;
    s.gamma.assign(circ.gamma.begin(), circ.gamma.end());
    for (double x : config.x) s.z.emplace_back(x, 0.0);
    return s;
}

std::vector<Eigen::Vector2d> ode_rhs(const PlanarState& state) {
    Eigen::VectorXd y = flatten(state);
    if (min_separation(y, state.size()) < collision_tol)
        throw std::domain_error("vortex collision: coincident positions");
    Eigen::VectorXd v = rhs_flat(y, state.gamma);
    std::vector<Eigen::Vector2d> out(state.size());
    for (int i = 0; i < state.size(); ++i) out[i] = Eigen::Vector2d(v[2 * i], v[2 * i + 1]);
    return out;
}

double planar_hamiltonian(const PlanarState& state) {
    double h = 0.0;
    for (int i = 0; i < state.size(); ++i) {
        for (int j = i + 1; j < state.size(); ++j) {
            double r = (state.z[j] - state.z[i]).norm();
            if (r < collision_tol)
                throw std::domain_error("vortex collision: coincident positions");
            h -= state.gamma[i] * state.gamma[j] * std::log(r);
        }
    }
    return h;
}

double planar_angular_impulse(const PlanarState& state) {
    double s = 0.0;
    for (int i = 0; i < state.size(); ++i) s += state.gamma[i] * state.z[i].squaredNorm();
    return s;
}

Trajectory integrate(const PlanarState& state0, double t_end, double tol, int samples) {
    if (samples < 1) throw std::invalid_argument("integrate: samples must be positive");
    if (tol <= 0.0) throw std::invalid_argument("integrate: tolerance must be positive");
    constexpr double collision_cut = 1e-6;

    // Dormand-Prince 5(4) tableau.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                     e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

    int n = state0.size();
    Eigen::VectorXd y = flatten(state0);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(state0);
    if (t_end <= 0.0) return traj;
    if (min_separation(y, n) < collision_cut) {
        traj.aborted = true;
        return traj;
    }

    auto f = [&state0](const Eigen::VectorXd& v) { return rhs_flat(v, state0.gamma); };
    double t = 0.0;
    double h = t_end / (10.0 * samples);
    Eigen::VectorXd k1 = f(y);
    long attempts = 0;

    for (int s = 1; s <= samples && !traj.aborted; ++s) {
        double ts = t_end * s / samples;
        while (t < ts) {
            if (++attempts > 2'000'000) throw std::runtime_error("integrate: step limit exceeded");
            if (h < 1e-15 * t_end) throw std::runtime_error("integrate: step size underflow");
            double step = std::min(h, ts - t);

            Eigen::VectorXd k2 = f(y + step * (a21 * k1));
            Eigen::VectorXd k3 = f(y + step * (a31 * k1 + a32 * k2));
            Eigen::VectorXd k4 = f(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            Eigen::VectorXd k5 = f(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            Eigen::VectorXd k6 =
                f(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            Eigen::VectorXd y5 = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            Eigen::VectorXd k7 = f(y5);
            Eigen::VectorXd y4 =
                y + step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double err = 0.0;
            for (int c = 0; c < 2 * n; ++c) {
                double scale = tol + tol * std::max(std::abs(y[c]), std::abs(y5[c]));
                err = std::max(err, std::abs(y5[c] - y4[c]) / scale);
            }
            if (!std::isfinite(err)) {
                h *= 0.2;
                continue;
            }
            if (err <= 1.0) {
                t += step;
                y = y5;
                k1 = k7;  // first-same-as-last
                if (min_separation(y, n) < collision_cut) {
                    traj.aborted = true;
                    traj.times.push_back(t);
                    traj.states.push_back(unflatten(y, state0.gamma));
                    break;
                }
                if (step == h)
                    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(err + 1e-300, -0.2)));
            } else {
                h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
            }
        }
        if (!traj.aborted) {
            traj.times.push_back(ts);
            traj.states.push_back(unflatten(y, state0.gamma));
            t = ts;
        }
    }
    return traj;
}

Eigen::MatrixXd hessian_H(const PlanarState& state) {
    int n = state.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Eigen::Vector2d d = state.z[i] - state.z[j];
            double r2 = d.squaredNorm();
            if (r2 < collision_tol * collision_tol)
                throw std::domain_error("vortex collision: coincident positions");
            Eigen::Matrix2d blk =
                (Eigen::Matrix2d::Identity() / r2 - 2.0 * (d * d.transpose()) / (r2 * r2)) *
                (state.gamma[i] * state.gamma[j]);
            h.block<2, 2>(2 * i, 2 * i) -= blk;
            h.block<2, 2>(2 * j, 2 * j) -= blk;
            h.block<2, 2>(2 * i, 2 * j) += blk;
            h.block<2, 2>(2 * j, 2 * i) += blk;
        }
    }
    return h;
}

Eigen::MatrixXd scaled_stability_matrix(const PlanarState& z0, double omega) {
    if (omega == 0.0) throw std::domain_error("scaled_stability_matrix: omega = 0");
    int n = z0.size();
    double gsum = 0.0;
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) {
        if (std::abs(z0.gamma[i]) < 1e-12)
            throw std::domain_error("scaled_stability_matrix: zero circulation makes M singular");
        gsum += z0.gamma[i];
        center += z0.gamma[i] * z0.z[i];
    }
    if (std::abs(gsum) < 1e-12)
        throw std::domain_error("scaled_stability_matrix: total circulation vanishes");
    if ((center / gsum).norm() > 1e-8)
        throw std::domain_error("scaled_stability_matrix: center of vorticity not at the origin");

    Eigen::MatrixXd inner = hessian_H(z0);
    for (int i = 0; i < n; ++i) {
        inner.row(2 * i) /= omega * z0.gamma[i];
        inner.row(2 * i + 1) /= omega * z0.gamma[i];
    }
    inner += Eigen::MatrixXd::Identity(2 * n, 2 * n);

    // Left-multiply by K = blockdiag([[0, 1], [-1, 0]]).
    Eigen::MatrixXd b(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        b.row(2 * i) = inner.row(2 * i + 1);
        b.row(2 * i + 1) = -inner.row(2 * i);
    }
    return b;
}

Eigen::VectorXcd dense_eigenvalues(const Eigen::MatrixXd& mat) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("dense_eigenvalues: square input");
    if (mat.rows() > 32)
        throw std::invalid_argument("dense_eigenvalues: at most 16 vortices supported");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(mat, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_eigenvalues: eigensolver failed to converge");
    return solver.eigenvalues();
}

VerificationRecord verify_relative_equilibrium(const Configuration& solution,
                                               const Circulations& circ, double periods,
                                               double tol) {
    if (residual_norm(solution, circ) >= 1e-9)
        throw std::invalid_argument("verify_relative_equilibrium: fails the residual gate");
    if (periods <= 0.0) throw std::invalid_argument("verify_relative_equilibrium: periods > 0");
    VerificationRecord rec;

    PlanarState s0 = planar_from_collinear(solution, circ);
    double period = 2.0 * std::numbers::pi / std::abs(solution.omega);
    int samples = static_cast<int>(std::ceil(200.0 * periods));
    Trajectory traj = integrate(s0, periods * period, tol, samples);
    rec.aborted = traj.aborted;

    double h0 = planar_hamiltonian(s0);
    double i0 = planar_angular_impulse(s0);
    for (const PlanarState& st : traj.states) {
        rec.h_drift = std::max(rec.h_drift, std::abs(planar_hamiltonian(st) - h0) / std::abs(h0));
        rec.i_drift =
            std::max(rec.i_drift, std::abs(planar_angular_impulse(st) - i0) / std::abs(i0));
    }
    if (traj.aborted) {
        rec.period_return = std::numeric_limits<double>::infinity();
    } else {
        const PlanarState& last = traj.states.back();
        for (int i = 0; i < s0.size(); ++i)
            rec.period_return = std::max(rec.period_return, (last.z[i] - s0.z[i]).norm());
    }

    // Spectrum of the scaled stability matrix about the centered configuration.
    double c = center_of_vorticity(solution.x, circ);
    PlanarState centered = s0;
    for (auto& z : centered.z) z.x() -= c;
    Eigen::VectorXcd eig = dense_eigenvalues(scaled_stability_matrix(centered, solution.omega));
    rec.spectrum.assign(eig.data(), eig.data() + eig.size());

    // Pull out the trivial quadruple {0, 0, +-i}, greedily nearest-first.
    // The zero eigenvalue lives in a single Jordan block, so rounding splits
    // the computed pair at square-root scale no matter how the spectrum is
    // obtained; the pair's sum and product stay first-order accurate and are
    // what the deviation measures. The simple +-i eigenvalues are matched
    // directly.
    std::vector<bool> used(rec.spectrum.size(), false);
    auto take_nearest = [&](std::complex<double> target) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < rec.spectrum.size(); ++k) {
            if (used[k]) continue;
            double d = std::abs(rec.spectrum[k] - target);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(k);
            }
        }
        used[best] = true;
        return rec.spectrum[best];
    };
    const std::complex<double> zero_a = take_nearest({0.0, 0.0});
    const std::complex<double> zero_b = take_nearest({0.0, 0.0});
    rec.trivial_deviation = std::max(std::abs(zero_a + zero_b), std::abs(zero_a * zero_b));
    for (const std::complex<double> target : {std::complex<double>{0.0, 1.0},
                                              std::complex<double>{0.0, -1.0}})
        rec.trivial_deviation =
            std::max(rec.trivial_deviation, std::abs(take_nearest(target) - target));

    // The remaining eigenvalues must reproduce the analytic normalized ones.
    auto analytic = nontrivial_eigenvalues(trace_T(solution, circ), det_D(solution, circ));
    for (const auto& lambda : analytic.lambdas) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < rec.spectrum.size(); ++k) {
            if (used[k]) continue;
            double d = std::abs(rec.spectrum[k] - lambda);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(k);
            }
        }
        used[best] = true;
        rec.spectrum_mismatch = std::max(rec.spectrum_mismatch, best_d);
    }
    return rec;
}

int morse_index(const Configuration& solution, const Circulations& circ) {
    if (std::abs(circ.total) < 1e-12)
        throw std::domain_error("morse_index: total circulation vanishes");
    if (std::abs(circ.momentum) < 1e-12)
        throw std::domain_error("morse_index: vorticity momentum L vanishes");

    PlanarState s = planar_from_collinear(solution, circ);
    double c = center_of_vorticity(solution.x, circ);
    for (auto& z : s.z) z.x() -= c;
    const int dim = 2 * s.size();

    Eigen::MatrixXd g = hessian_H(s);
    // Hessian of I taken about the center of vorticity: 2M minus the rank-two
    // correction that makes translations exact null directions.
    Eigen::VectorXd gx = Eigen::VectorXd::Zero(dim), gy = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < s.size(); ++i) {
        gx[2 * i] = s.gamma[i];
        gy[2 * i + 1] = s.gamma[i];
    }
    Eigen::MatrixXd d2i = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < s.size(); ++i) {
        d2i(2 * i, 2 * i) = 2.0 * s.gamma[i];
        d2i(2 * i + 1, 2 * i + 1) = 2.0 * s.gamma[i];
    }
    d2i -= (2.0 / circ.total) * (gx * gx.transpose() + gy * gy.transpose());
    g += 0.5 * solution.omega * d2i;

    // Directions to project out: grad I (prop. to M z), both translations,
    // and the rotation direction K z.
    Eigen::VectorXd z = flatten(s);
    Eigen::VectorXd mz(dim), kz(dim);
    for (int i = 0; i < s.size(); ++i) {
        mz[2 * i] = s.gamma[i] * z[2 * i];
        mz[2 * i + 1] = s.gamma[i] * z[2 * i + 1];
        kz[2 * i] = z[2 * i + 1];
        kz[2 * i + 1] = -z[2 * i];
    }
    Eigen::VectorXd tx = Eigen::VectorXd::Zero(dim), ty = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < s.size(); ++i) {
        tx[2 * i] = 1.0;
        ty[2 * i + 1] = 1.0;
    }

    std::vector<Eigen::VectorXd> basis;
    for (Eigen::VectorXd v : {mz, tx, ty, kz}) {
        double original = v.norm();
        for (const auto& q : basis) v -= q.dot(v) * q;
        if (v.norm() < 1e-10 * std::max(1.0, original))
            throw std::runtime_error("morse_index: degenerate projection basis");
        basis.push_back(v.normalized());
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(dim, dim);
    for (const auto& q : basis) p -= q * q.transpose();

    Eigen::MatrixXd restricted = p.transpose() * g * p;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(restricted);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("morse_index: eigensolver failed to converge");
    int count = 0;
    for (int k = 0; k < dim; ++k) {
        if (solver.eigenvalues()[k] < -1e-8) ++count;
    }
    return count;
}

}  // namespace vortex
