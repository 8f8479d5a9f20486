#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pacsim/pacs.hpp"
#include "pacsim/stellar.hpp"

#include <cmath>

using namespace pacsim;

namespace {

// 2-D grid oracle with two refinement passes: best fidelity of
// (a|0> + |1>)/sqrt(1+a^2) with a displaced squeezed vacuum over real
// displacement and signed squeezing.
double grid_oracle_n1(double a, double& b_best, double& r_best) {
    constexpr int kDim = 260;  // corner of the grid (b = 2.5, r = 1.5) has slow tails
    Vec target = Vec::Zero(kDim);
    target[0] = a;
    target[1] = 1.0;
    target /= target.norm();
    auto fidelity = [&](double b, double r) {
        GaussianParams g{Complex(b, 0.0), std::abs(r), r >= 0.0 ? 0.0 : M_PI};
        FockVector psi = gaussian_fock_expansion(g, kDim);
        return std::norm(psi.amps.dot(target));
    };
    double lob = -0.2, hib = 2.5, lor = -1.5, hir = 1.5;
    double best = -1.0;
    for (int pass = 0; pass < 4; ++pass) {
        const int steps = 61;
        double bb = b_best, rb = r_best;
        for (int i = 0; i < steps; ++i)
            for (int j = 0; j < steps; ++j) {
                double b = lob + (hib - lob) * i / (steps - 1.0);
                double r = lor + (hir - lor) * j / (steps - 1.0);
                double f = fidelity(b, r);
                if (f > best) best = f, bb = b, rb = r;
            }
        b_best = bb;
        r_best = rb;
        double wb = (hib - lob) / steps * 2.0, wr = (hir - lor) / steps * 2.0;
        lob = bb - wb;
        hib = bb + wb;
        lor = rb - wr;
        hir = rb + wr;
    }
    return best;
}

}  // namespace

TEST_CASE("gaussian expansion agrees with operator route") {
    for (double b : {0.0, 0.5, 1.1})
        for (double r : {0.0, 0.3, 0.8})
            for (double theta : {0.0, 1.2}) {
                int dim = 160;  // the dense reference needs extra tail room
                GaussianParams g{Complex(b, 0.2 * b), r, theta};
                FockVector fast = gaussian_fock_expansion(g, dim);
                Mat op =
                    displacement_exp(g.beta, dim).elems * squeeze(r, theta, dim).elems;
                Vec ref = op.col(0);
                CHECK((fast.amps - ref).norm() < 1e-7);
            }
}

TEST_CASE("a = 0 closed form") {
    GaussianFidelityResult res = gaussian_fidelity_n1(0.0);
    double r = std::atanh(0.5);
    double expected = std::exp(r - 1.0) / (std::cosh(r) * std::cosh(r));
    CHECK(res.f_max == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(res.f_max - 0.4779) < 1e-4);
    CHECK(res.r_opt == doctest::Approx(r).epsilon(1e-12));
    CHECK(res.b_opt == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("cubic solution matches the 2-D grid oracle") {
    for (double a : {0.3, 0.7, 1.0, 1.5, 2.0}) {
        GaussianFidelityResult res = gaussian_fidelity_n1(a);
        double b = 1.0, r = 0.2;
        double oracle = grid_oracle_n1(a, b, r);
        CHECK(std::abs(res.f_max - oracle) < 1e-6);
    }
}

TEST_CASE("pacs core state displaces to the PACS") {
    for (double a : {0.5, 1.0, 1.6})
        for (int n : {1, 2, 3}) {
            int base = pacs_dim({Complex(a, 0.0), n});
            int dim = 2 * (base + default_dim(a * a));  // displacement headroom
            FockVector core = pacs_core_state(a, n, dim);
            // support is |0..n>
            for (int m = n + 1; m < dim; ++m) CHECK(std::abs(core.amps[m]) < 1e-12);
            Vec displaced = displacement_exp(Complex(a, 0.0), dim).elems * core.amps;
            FockVector target = pacs_state({Complex(a, 0.0), n}, dim);
            CHECK(std::abs(target.amps.dot(displaced)) ==
                  doctest::Approx(1.0).epsilon(1e-8));
        }
}

TEST_CASE("rank-k fidelity optimizer") {
    SUBCASE("Gaussian input saturates k = 1") {
        FockVector g = gaussian_fock_expansion({Complex(0.6, 0.0), 0.25, 0.0}, 30);
        CHECK(max_rank_k_fidelity(g, 1) == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("|1> against k = 1 reproduces the cubic value") {
        FockVector one = fock_state(1, 30);
        double expected = gaussian_fidelity_n1(0.0).f_max;
        CHECK(max_rank_k_fidelity(one, 1) == doctest::Approx(expected).epsilon(1e-5));
    }
    SUBCASE("k = 2 span contains |1> exactly") {
        FockVector one = fock_state(1, 30);
        CHECK(max_rank_k_fidelity(one, 2) == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK_THROWS_AS(max_rank_k_fidelity(fock_state(0, 10), 0), UnsupportedRank);
}

TEST_CASE("threshold curves and witness") {
    std::vector<double> grid = {0.2, 0.6, 1.0, 1.4, 1.8};
    ThresholdCurve k1 = threshold_curve(1, 1, grid);
    CHECK_FALSE(k1.lower_bound);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(k1.f_th[i] > k1.f_th[i - 1]);
    // n = 1 threshold at alpha equals the cubic at a = alpha
    CHECK(k1.f_th[2] == doctest::Approx(gaussian_fidelity_n1(1.0).f_max).epsilon(1e-9));

    ThresholdCurve k2 = threshold_curve(2, 2, {0.6, 1.0});
    CHECK(k2.lower_bound);
    CHECK(k2.rank == 2);

    SUBCASE("witness interpolation and bounds") {
        CHECK(witness(k1.f_th[2] + 0.02, {k1}, 1.0) == 1);
        CHECK(witness(k1.f_th[2] - 0.02, {k1}, 1.0) == 0);
        double mid = 0.5 * (k1.f_th[1] + k1.f_th[2]);
        CHECK(witness(mid + 0.02, {k1}, 0.8) == 1);
        CHECK_THROWS_AS(witness(0.9, {k1}, 5.0), OutOfGrid);
    }
}
