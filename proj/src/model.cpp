#include "vortex/model.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

std::string Ordering::label() const {
    std::string s;
    for (int p : perm) s.push_back(static_cast<char>('0' + p));
    return s;
}

bool operator==(const Ordering& a, const Ordering& b) {
    return a.perm == b.perm && a.group == b.group;
}

namespace {

// Indices (i, j) for the fixed pair order (12, 13, 14, 23, 24, 34).
constexpr int pair_i[6] = {0, 0, 0, 1, 1, 2};
constexpr int pair_j[6] = {1, 2, 3, 2, 3, 3};

void require_no_collision(const std::array<double, 6>& r) {
    for (double d : r) {
        if (d < collision_tol) throw std::domain_error("vortex collision: coincident positions");
    }
}

}  // namespace

std::array<double, 6> pairwise_distances(const std::array<double, 4>& x) {
    std::array<double, 6> r;
    for (int k = 0; k < 6; ++k) r[k] = std::abs(x[pair_j[k]] - x[pair_i[k]]);
    return r;
}

std::array<double, 6> pairwise_distances(const Configuration& config) {
    return pairwise_distances(config.x);
}

double hamiltonian(const std::array<double, 4>& x, const Circulations& circ) {
    auto r = pairwise_distances(x);
    require_no_collision(r);
    double h = 0.0;
    for (int k = 0; k < 6; ++k) h -= circ.gamma[pair_i[k]] * circ.gamma[pair_j[k]] * std::log(r[k]);
    return h;
}

double hamiltonian(const Configuration& config, const Circulations& circ) {
    return hamiltonian(config.x, circ);
}

double angular_impulse(const std::array<double, 4>& x, const Circulations& circ) {
    if (std::abs(circ.total) < collision_tol)
        throw std::domain_error("total circulation vanishes (m = -3)");
    auto r = pairwise_distances(x);
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += circ.gamma[pair_i[k]] * circ.gamma[pair_j[k]] * r[k] * r[k];
    return s / circ.total;
}

double angular_impulse(const Configuration& config, const Circulations& circ) {
    return angular_impulse(config.x, circ);
}

double angular_velocity(const std::array<double, 4>& x, const Circulations& circ) {
    double impulse = angular_impulse(x, circ);
    if (std::abs(impulse) < 1e-300) throw std::domain_error("angular impulse vanishes");
    return circ.momentum / impulse;
}

double angular_velocity(const Configuration& config, const Circulations& circ) {
    return angular_velocity(config.x, circ);
}

double center_of_vorticity(const std::array<double, 4>& x, const Circulations& circ) {
    if (std::abs(circ.total) < collision_tol)
        throw std::domain_error("total circulation vanishes (m = -3)");
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += circ.gamma[i] * x[i];
    return s / circ.total;
}

std::array<double, 4> residuals(const std::array<double, 4>& x, double c, double omega,
                                const Circulations& circ) {
    require_no_collision(pairwise_distances(x));
    std::array<double, 4> res;
    for (int i = 0; i < 4; ++i) {
        double s = omega * (x[i] - c);
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            s += circ.gamma[j] / (x[j] - x[i]);
        }
        res[i] = s;
    }
    return res;
}

std::array<double, 4> residuals(const Configuration& config, const Circulations& circ) {
    return residuals(config.x, config.c, config.omega, circ);
}

double residual_norm(const Configuration& config, const Circulations& circ) {
    auto res = residuals(config, circ);
    double worst = 0.0;
    for (double v : res) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace vortex
