#include "vortex/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

const char* region_name(Region region) {
    switch (region) {
        case Region::StableRegion: return "stable";
        case Region::RegionII: return "region-II";
        case Region::RegionIII: return "region-III";
        case Region::RegionIV: return "region-IV";
        case Region::BoundaryRepeated: return "boundary-repeated";
        case Region::BoundaryZero: return "boundary-zero";
    }
    return "unknown";
}

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::LinearlyStable: return "linearly-stable";
        case Verdict::SpectrallyStable: return "spectrally-stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Degenerate: return "degenerate";
    }
    return "unknown";
}

namespace {

void require_valid(const Configuration& config, const Circulations& circ) {
    for (double r : pairwise_distances(config)) {
        if (r < collision_tol) throw std::domain_error("vortex collision: coincident positions");
    }
    if (config.omega == 0.0) throw std::domain_error("angular velocity vanishes");
    (void)circ;
}

}  // namespace

Eigen::Matrix4d a_matrix(const Configuration& config, const Circulations& circ) {
    require_valid(config, circ);
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            double d = config.x[j] - config.x[i];
            a(i, j) = -circ.gamma[j] / (config.omega * d * d);
            a(i, i) -= a(i, j);
        }
    }
    return a;
}

std::pair<Eigen::Vector4d, Eigen::Vector4d> restriction_basis(const Configuration& config,
                                                              const Circulations& circ) {
    const auto& g = circ.gamma;
    const auto& x = config.x;
    Eigen::Vector4d w1{g[1] * g[2] * (x[2] - x[1]), g[0] * g[2] * (x[0] - x[2]),
                       g[0] * g[1] * (x[1] - x[0]), 0.0};
    Eigen::Vector4d w2{g[1] * g[3] * (x[3] - x[1]), g[0] * g[3] * (x[0] - x[3]), 0.0,
                       g[0] * g[1] * (x[1] - x[0])};
    return {w1, w2};
}

Eigen::Matrix2d c_matrix(const Configuration& config, const Circulations& circ) {
    require_valid(config, circ);
    const auto& g = circ.gamma;
    const auto& x = config.x;
    auto sq = [](double v) { return v * v; };
    double r13 = sq(x[2] - x[0]), r14 = sq(x[3] - x[0]);
    double r23 = sq(x[2] - x[1]), r24 = sq(x[3] - x[1]), r34 = sq(x[3] - x[2]);
    double winv = 1.0 / config.omega;

    Eigen::Matrix2d c;
    c(0, 0) = winv * ((g[0] + g[2]) / r13 + (g[1] + g[2]) / r23 + g[3] / r34 +
                      g[2] / ((x[2] - x[0]) * (x[2] - x[1])));
    c(1, 1) = winv * ((g[0] + g[3]) / r14 + (g[1] + g[3]) / r24 + g[2] / r34 +
                      g[3] / ((x[3] - x[0]) * (x[3] - x[1])));
    c(1, 0) = -winv * g[2] / (x[1] - x[0]) *
              ((x[2] - x[1]) / r14 + (x[0] - x[2]) / r24 + (x[1] - x[0]) / r34);
    c(0, 1) = -winv * g[3] / (x[1] - x[0]) *
              ((x[3] - x[1]) / r13 + (x[0] - x[3]) / r23 + (x[1] - x[0]) / r34);
    return c;
}

double trace_T(const Configuration& config, const Circulations& circ) {
    require_valid(config, circ);
    const auto& g = circ.gamma;
    const auto& x = config.x;
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            double d = x[j] - x[i];
            s += (g[i] + g[j]) / (d * d);
        }
    }
    return s / config.omega - 1.0;
}

double delta_functional(const Configuration& config, const Circulations& circ) {
    const auto& g = circ.gamma;
    const auto& x = config.x;
    auto r2 = [&x](int i, int j) {
        double d = x[j] - x[i];
        return d * d;
    };
    double s = (g[0] + g[1]) * (g[2] + g[3]) / (r2(0, 1) * r2(2, 3)) +
               (g[0] + g[2]) * (g[1] + g[3]) / (r2(0, 2) * r2(1, 3)) +
               (g[0] + g[3]) * (g[1] + g[2]) / (r2(0, 3) * r2(1, 2));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            for (int k = j + 1; k < 4; ++k) {
                if (k == i) continue;
                s += g[i] * (g[i] + g[j] + g[k]) / (r2(i, j) * r2(i, k));
            }
        }
    }
    return s;
}

double det_D(const Configuration& config, const Circulations& circ) {
    double t = trace_T(config, circ);
    double winv = 1.0 / config.omega;
    return -t + winv * winv * delta_functional(config, circ);
}

NontrivialEigenvalues nontrivial_eigenvalues(double T, double D) {
    std::complex<double> sq = std::sqrt(std::complex<double>(0.25 * T * T - D, 0.0));
    std::complex<double> mu1 = 0.5 * T + sq;  // larger real part, then +imag
    std::complex<double> mu2 = 0.5 * T - sq;
    auto canonical_lambda = [](std::complex<double> mu) {
        std::complex<double> l = std::sqrt(mu * mu - 1.0);
        if (l.real() < 0.0 || (l.real() == 0.0 && l.imag() < 0.0)) l = -l;
        return l;
    };
    std::complex<double> l1 = canonical_lambda(mu1);
    std::complex<double> l2 = canonical_lambda(mu2);
    return {mu1, mu2, {l1, -l1, l2, -l2}};
}

Classification classify(double T, double D) {
    constexpr double band = 1e-9;
    // The lines D = T - 1 and D = -T - 1 carry a mu = +-1 eigenvalue, hence
    // a zero normalized eigenvalue; they take precedence over everything.
    if (std::abs(D - (T - 1.0)) <= band || std::abs(D + T + 1.0) <= band)
        return {Region::BoundaryZero, Verdict::Degenerate};
    double gap = D - 0.25 * T * T;
    if (std::abs(gap) <= band)
        return {Region::BoundaryRepeated,
                std::abs(T) < 2.0 ? Verdict::SpectrallyStable : Verdict::Unstable};
    if (gap > 0.0) {
        // Complex mu pair. On the T = 0 axis all lambda are pure imaginary.
        if (std::abs(T) <= band) return {Region::StableRegion, Verdict::LinearlyStable};
        return {Region::RegionIV, Verdict::Unstable};
    }
    double sq = std::sqrt(-gap);
    int outside = (std::abs(0.5 * T + sq) > 1.0 ? 1 : 0) + (std::abs(0.5 * T - sq) > 1.0 ? 1 : 0);
    if (outside == 2) return {Region::RegionII, Verdict::Unstable};
    if (outside == 1) return {Region::RegionIII, Verdict::Unstable};
    return {Region::StableRegion, Verdict::LinearlyStable};
}

RealPolynomial psi_polynomial() {
    return RealPolynomial{{9.0, 522.0, 505.0, -220.0, 96.0, 320.0, 64.0}};
}

BifurcationRoots psi_bifurcation_roots() {
    auto roots = real_roots_by_scan(psi_polynomial(), -10.0, 0.0, 100000);
    if (roots.size() != 4)
        throw std::runtime_error("psi_bifurcation_roots: expected four real roots");
    for (double r : roots) {
        if (r >= 0.0) throw std::runtime_error("psi_bifurcation_roots: nonnegative root found");
    }
    double m_star = roots[2], m_c = roots[3];
    if (!(-1.0 < m_star && m_star < m_c && m_c < 0.0))
        throw std::runtime_error("psi_bifurcation_roots: roots in (-1, 0) misplaced");
    return {m_star, m_c, roots};
}

StabilityReport stability_report(double m, const Configuration& solution) {
    Circulations circ(m);
    if (residual_norm(solution, circ) >= 1e-9)
        throw std::invalid_argument("stability_report: configuration fails the residual gate");
    StabilityReport rep;
    rep.T = trace_T(solution, circ);
    rep.D = det_D(solution, circ);
    rep.delta = delta_functional(solution, circ);
    auto ev = nontrivial_eigenvalues(rep.T, rep.D);
    rep.mu1 = ev.mu1;
    rep.mu2 = ev.mu2;
    rep.lambdas = ev.lambdas;
    auto cls = classify(rep.T, rep.D);
    rep.region = cls.region;
    rep.verdict = cls.verdict;
    return rep;
}

namespace {

std::vector<SeriesExpansion> build_series_table() {
    using R = SeriesRegime;
    using Q = SeriesQuantity;
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s14 = std::sqrt(14.0);
    std::vector<SeriesExpansion> t;

    // m = -1/2 + eps^2, ordering <1 2 4 3>. kappa is the reciprocal of the
    // unbounded P1 root in this limit.
    t.push_back({R::GroupII_near_minus_half, Q::kappa,
                 {{1, s14 / 7.0}, {3, 289.0 / 1029.0 * s14}, {5, 24373.0 / 43218.0 * s14}}});
    t.push_back({R::GroupII_near_minus_half, Q::x3,
                 {{0, 1.0},
                  {1, 4.0 / 7.0 * s14},
                  {2, 8.0 / 7.0},
                  {3, -20.0 / 1029.0 * s14},
                  {4, -416.0 / 1029.0}}});
    t.push_back({R::GroupII_near_minus_half, Q::x4,
                 {{0, 1.0},
                  {1, 2.0 / 7.0 * s14},
                  {2, 4.0 / 7.0},
                  {3, -10.0 / 1029.0 * s14},
                  {4, -320.0 / 1029.0}}});
    t.push_back({R::GroupII_near_minus_half, Q::T, {{-2, 21.0 / 10.0}, {0, 578.0 / 175.0}}});
    t.push_back({R::GroupII_near_minus_half, Q::D, {{-2, 189.0 / 50.0}, {0, 3459.0 / 875.0}}});

    // m = -1 + eps^2, ordering <1 3 2 4> (eps > 0).
    t.push_back({R::GroupI_near_minus_one, Q::x3,
                 {{0, -1.0}, {1, 2.0 * s2}, {2, -2.0}, {3, -3.0 * s2}, {4, 7.0}}});
    t.push_back({R::GroupI_near_minus_one, Q::x4,
                 {{0, 1.0}, {2, 2.0}, {3, -s2}, {4, -5.0}, {5, 4.5 * s2}}});
    t.push_back({R::GroupI_near_minus_one, Q::T,
                 {{0, 1.0}, {2, 6.0}, {4, -12.0}, {6, 60.0}, {8, -426.0}}});
    t.push_back({R::GroupI_near_minus_one, Q::D,
                 {{2, 6.0}, {4, -12.0}, {6, 78.0}, {8, -588.0}, {10, 9453.0 / 2.0}}});

    // m = 1/eps^2, ordering <1 2 3 4>.
    t.push_back({R::GroupI_large_m, Q::x3,
                 {{0, 3.0},
                  {1, -s3 / 3.0},
                  {2, 1.0 / 12.0},
                  {3, 1025.0 / 1296.0 * s3},
                  {4, -2059.0 / 5184.0}}});
    t.push_back({R::GroupI_large_m, Q::x4,
                 {{-1, 4.0 / 3.0 * s3}, {0, 2.0 / 3.0}, {1, 35.0 / 27.0 * s3}, {2, 307.0 / 648.0}}});
    t.push_back({R::GroupI_large_m, Q::T, {{0, 8.0}, {2, -45.0 / 4.0}}});
    t.push_back({R::GroupI_large_m, Q::D, {{0, 15.0}, {2, -171.0 / 4.0}}});

    // m = 1/eps^2, ordering <1 4 3 2>.
    t.push_back({R::GroupII_large_m, Q::x3,
                 {{0, 1.0}, {1, -1.0}, {2, 0.25}, {3, 1.0 / 16.0}, {4, -3.0 / 64.0}}});
    t.push_back({R::GroupII_large_m, Q::x4, {{1, -0.25}, {2, -3.0 / 8.0}, {3, 1.0 / 8.0}}});
    t.push_back({R::GroupII_large_m, Q::T, {{0, 4.0}, {2, 0.75}}});
    t.push_back({R::GroupII_large_m, Q::D, {{0, 3.0}, {2, 21.0 / 4.0}}});
    return t;
}

}  // namespace

const SeriesExpansion& series(SeriesRegime regime, SeriesQuantity quantity) {
    static const std::vector<SeriesExpansion> table = build_series_table();
    for (const auto& s : table) {
        if (s.regime == regime && s.quantity == quantity) return s;
    }
    throw std::invalid_argument("series: no stored expansion for that regime/quantity pair");
}

double series_eval(const SeriesExpansion& expansion, double eps) {
    double v = 0.0;
    for (auto [power, coeff] : expansion.coefficients) v += coeff * std::pow(eps, power);
    return v;
}

}  // namespace vortex
