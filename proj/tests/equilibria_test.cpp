#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "vortex/equilibria.hpp"
#include "vortex/model.hpp"

using namespace vortex;

namespace {

const Configuration* find_label(const SolutionSet& set, const std::string& label) {
    for (const auto& [cfg, ord] : set.solutions)
        if (ord.label() == label) return &cfg;
    return nullptr;
}

std::set<std::string> labels_of(const SolutionSet& set) {
    std::set<std::string> out;
    for (const auto& [cfg, ord] : set.solutions) out.insert(ord.label());
    return out;
}

const std::set<std::string> group1_labels = {"1234", "4312", "4123", "1324", "3124", "4132"};
const std::set<std::string> group2_labels = {"1243", "3412", "1423", "1342", "3142", "1432"};

std::set<std::string> all_labels() {
    std::set<std::string> out = group1_labels;
    out.insert(group2_labels.begin(), group2_labels.end());
    return out;
}

}  // namespace

TEST_CASE("rho quartic at unit ratio gives the four radical roots") {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    const auto roots = p1_roots(1.0);
    REQUIRE(roots.size() == 4);
    const double expect[4] = {-s3 - s2, -(s3 - s2), s3 - s2, s3 + s2};
    for (int i = 0; i < 4; ++i) {
        CHECK(roots[i].rho == doctest::Approx(expect[i]).epsilon(1e-12));
        CHECK(roots[i].multiplicity == 1);
    }
}

TEST_CASE("rho quartic degenerations") {
    // quadratic regime: single positive xi = 3/7
    const auto at_half = p1_roots(-0.5);
    REQUIRE(at_half.size() == 2);
    CHECK(at_half[0].rho == doctest::Approx(-std::sqrt(3.0 / 7.0)).epsilon(1e-12));
    CHECK(at_half[1].rho == doctest::Approx(std::sqrt(3.0 / 7.0)).epsilon(1e-12));

    // quadruple root at the vanishing-circulation ratio
    const auto at_zero = p1_roots(0.0);
    REQUIRE(at_zero.size() == 1);
    CHECK(at_zero[0].rho == 0.0);
    CHECK(at_zero[0].multiplicity == 4);

    CHECK(p1_roots(-1.2).empty());
    CHECK(p1_roots(-2.0).empty());
    CHECK(p1_roots(-5.0).empty());
}

TEST_CASE("structured cubic roots and their closed-form companions") {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    const auto r = p2_roots(s3 - s2);
    CHECK(r[0] == doctest::Approx(-1.0 + s2 + s6).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(1.0 + s2 - s6).epsilon(1e-12));
    CHECK(r[2] == doctest::Approx(-s3 - s2).epsilon(1e-12));

    const auto at_zero = p2_roots(0.0);
    CHECK(at_zero[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(at_zero[1] == doctest::Approx(0.0));
    CHECK(at_zero[2] == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("structured cubic symmetric functions over random rho") {
    std::mt19937 rng(90210u);
    std::uniform_real_distribution<double> draw(-30.0, 30.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double rho = draw(rng);
        const auto r = p2_roots(rho);
        // r1 is the largest and always exceeds 1
        CHECK(r[0] > 1.0);
        CHECK(r[0] >= r[1]);
        CHECK(r[0] >= r[2]);
        const auto sf = symmetric_functions(r);
        const double scale2 = std::max(1.0, rho * rho);
        CHECK(std::abs(sf.sigma + rho) <= 1e-9 * std::max(1.0, std::abs(rho)));
        CHECK(std::abs(sf.tau + 9.0) <= 1e-9 * scale2);
        CHECK(std::abs(sf.rho - rho) <= 1e-9 * scale2);
        // each value is a genuine root of x^3 + rho x^2 - 9x - rho
        for (double x : r) {
            const double p = ((x + rho) * x - 9.0) * x - rho;
            CHECK(std::abs(p) <= 1e-9 * std::max(1.0, std::abs(rho)) * std::max(1.0, x * x));
        }
    }
}

TEST_CASE("x4 elimination recovers the partner coordinate at unit ratio") {
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    const double x3 = -1.0 + s2 + s6, x4 = 1.0 + s2 + s6;
    const auto candidates = eliminate_x4(x3, 1.0);
    REQUIRE(!candidates.empty());
    bool hit = false;
    for (double c : candidates)
        if (std::abs(c - x4) < 1e-10) hit = true;
    CHECK(hit);
}

TEST_CASE("x4 elimination rejects singular inputs") {
    CHECK_THROWS_AS(eliminate_x4(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(eliminate_x4(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(eliminate_x4(2.0, -3.0), std::domain_error);
}

TEST_CASE("x4 elimination at vanishing fourth circulation is a quartic") {
    // the third equation drops x4, so four candidates appear over x3 = 3
    const double s57 = std::sqrt(57.0);
    const auto candidates = eliminate_x4(3.0, 0.0);
    REQUIRE(candidates.size() == 4);
    std::array<double, 4> expect = {
        1.0 - std::sqrt(54.0 + 6.0 * s57) / 3.0,
        1.0 - std::sqrt(54.0 - 6.0 * s57) / 3.0,
        1.0 + std::sqrt(54.0 - 6.0 * s57) / 3.0,
        1.0 + std::sqrt(54.0 + 6.0 * s57) / 3.0,
    };
    for (int i = 0; i < 4; ++i)
        CHECK(candidates[i] == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("extension produces a validated configuration") {
    const auto roots = p1_roots(1.0);
    const auto triple = p2_roots(roots.back().rho);
    const Configuration cfg = extend_solution(triple[0], 1.0);
    CHECK(residual_norm(cfg, Circulations(1.0)) < 1e-9);
    CHECK(cfg.x[0] == -1.0);
    CHECK(cfg.x[1] == 1.0);
    CHECK_THROWS_AS(extend_solution(3.0, 0.0), std::invalid_argument);
}

TEST_CASE("symmetry images match hand-computed values") {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    const double a = -1.0 + s2 + s6, b = 1.0 + s2 + s6;

    const auto [ea, eb] = apply_symmetry(SymmetryElement::E, a, b);
    CHECK(ea == a);
    CHECK(eb == b);

    const auto [ra, rb] = apply_symmetry(SymmetryElement::R, a, b);
    CHECK(ra == doctest::Approx(-a).epsilon(1e-14));
    CHECK(rb == doctest::Approx(-b).epsilon(1e-14));

    const auto [sa, sb] = apply_symmetry(SymmetryElement::S, a, b);
    CHECK(sa == doctest::Approx((3.0 + a) / (1.0 - a)).epsilon(1e-14));
    CHECK(sb == doctest::Approx(s3 + s2).epsilon(1e-12));

    CHECK_THROWS_AS(apply_symmetry(SymmetryElement::S, 1.0, 2.0), std::domain_error);
}

TEST_CASE("composition table forms a group acting on coordinate pairs") {
    const SymmetryElement all[6] = {SymmetryElement::E,  SymmetryElement::R,
                                    SymmetryElement::RS, SymmetryElement::SR,
                                    SymmetryElement::S,  SymmetryElement::S2};
    // identity, an involution, and the 3-cycle relations
    for (auto g : all) {
        CHECK(compose(SymmetryElement::E, g) == g);
        CHECK(compose(g, SymmetryElement::E) == g);
    }
    CHECK(compose(SymmetryElement::R, SymmetryElement::R) == SymmetryElement::E);
    CHECK(compose(SymmetryElement::S, SymmetryElement::S) == SymmetryElement::S2);
    CHECK(compose(SymmetryElement::S, SymmetryElement::S2) == SymmetryElement::E);
    CHECK(compose(SymmetryElement::S2, SymmetryElement::S) == SymmetryElement::E);

    // every row and column is a permutation of the six elements
    for (auto g : all) {
        std::set<SymmetryElement> row, col;
        for (auto h : all) {
            row.insert(compose(g, h));
            col.insert(compose(h, g));
        }
        CHECK(row.size() == 6);
        CHECK(col.size() == 6);
    }

    // action property: applying h then g equals applying g.h
    std::mt19937 rng(31415u);
    std::uniform_real_distribution<double> draw(-6.0, 6.0);
    int checked = 0;
    for (int trial = 0; checked < 1000; ++trial) {
        REQUIRE(trial < 100000);
        const double a = draw(rng), b = draw(rng);
        if (std::abs(a - 1.0) < 0.05 || std::abs(a + 1.0) < 0.05) continue;
        bool usable = true;
        for (auto h : all) {
            try {
                const auto [ha, hb] = apply_symmetry(h, a, b);
                if (std::abs(ha - 1.0) < 0.05 || std::abs(ha + 1.0) < 0.05 ||
                    std::abs(ha) > 1e3 || std::abs(hb) > 1e3)
                    usable = false;
            } catch (const std::domain_error&) {
                usable = false;
            }
            if (!usable) break;
        }
        if (!usable) continue;
        for (auto g : all) {
            for (auto h : all) {
                const auto [ha, hb] = apply_symmetry(h, a, b);
                const auto [gha, ghb] = apply_symmetry(g, ha, hb);
                const auto [ca, cb] = apply_symmetry(compose(g, h), a, b);
                const double scale = std::max({1.0, std::abs(gha), std::abs(ghb)});
                CHECK(std::abs(gha - ca) <= 1e-9 * scale);
                CHECK(std::abs(ghb - cb) <= 1e-9 * scale);
            }
        }
        ++checked;
    }
}

TEST_CASE("ordering classification") {
    Configuration cfg;
    cfg.x = {-1.0, 1.0, 3.0, 5.0};
    const Ordering ord = ordering_of(cfg);
    CHECK(ord.label() == "1234");
    CHECK(ord.group == Group::I);

    cfg.x = {-1.0, 1.0, 2.0, 0.5};
    const Ordering mid = ordering_of(cfg);
    CHECK(mid.label() == "1423");
    CHECK(mid.group == Group::II);

    cfg.x = {-1.0, 1.0, 1.0 + 1e-12, 5.0};
    CHECK_THROWS_AS(ordering_of(cfg), std::domain_error);
}

TEST_CASE("solution sets carry the predicted counts and orderings") {
    CHECK(solve_all(-2.0).count == 0);
    CHECK(solve_all(-1.0).count == 0);

    const auto six = solve_all(-0.75);
    CHECK(six.count == 6);
    CHECK(labels_of(six) == group1_labels);

    const auto twelve = solve_all(1.0);
    CHECK(twelve.count == 12);
    CHECK(labels_of(twelve) == all_labels());

    CHECK_THROWS_AS(solve_all(-3.0), std::domain_error);
}

TEST_CASE("unit-ratio solution matches its radical closed form") {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    const auto set = solve_all(1.0);
    const Configuration* cfg = find_label(set, "1234");
    REQUIRE(cfg != nullptr);
    CHECK(cfg->x[2] == doctest::Approx(-1.0 + s2 + s6).epsilon(1e-12));
    CHECK(cfg->x[3] == doctest::Approx(1.0 + s2 + s6).epsilon(1e-12));
    CHECK(cfg->c == doctest::Approx((s2 + s6) / 2.0).epsilon(1e-12));
    CHECK(cfg->omega == doctest::Approx(3.0 / (6.0 + 2.0 * s3)).epsilon(1e-12));
}

TEST_CASE("vanishing fourth circulation covers all twelve orderings") {
    const auto set = solve_all(0.0);
    CHECK(set.count == 12);
    CHECK(labels_of(set) == all_labels());
    // x3 sits at a root of x^3 - 9x and four partners hang over each
    int over[3] = {0, 0, 0};
    for (const auto& [cfg, ord] : set.solutions) {
        const double x3 = cfg.x[2];
        if (std::abs(x3 - 3.0) < 1e-9)
            ++over[0];
        else if (std::abs(x3) < 1e-9)
            ++over[1];
        else if (std::abs(x3 + 3.0) < 1e-9)
            ++over[2];
    }
    CHECK(over[0] == 4);
    CHECK(over[1] == 4);
    CHECK(over[2] == 4);
}

TEST_CASE("every returned solution passes the residual gate") {
    std::mt19937 rng(55057u);
    std::uniform_real_distribution<double> draw(-1.0, 3.0);
    for (int trial = 0; trial < 60; ++trial) {
        double m = draw(rng);
        if (m <= -1.0 + 0.02 || std::abs(m + 0.5) < 0.02) continue;
        const auto set = solve_all(m);
        for (const auto& [cfg, ord] : set.solutions) {
            CHECK(residual_norm(cfg, Circulations(m)) < 1e-9);
            CHECK(std::abs(cfg.x[2] - cfg.x[3]) > 1e-6);
        }
    }
}
