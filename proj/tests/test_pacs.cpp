#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pacsim/pacs.hpp"

#include <cmath>

using namespace pacsim;

TEST_CASE("pacs_state routes agree") {
    for (double a : {0.0, 0.4, 1.0, 2.0})
        for (int n : {0, 1, 2, 3}) {
            PacsSpec spec{Complex(a, 0.3 * a), n};
            int dim = pacs_dim(spec);
            FockVector direct = pacs_state(spec, dim);
            FockVector displaced = pacs_state_displaced(spec, dim);
            CHECK(pure_fidelity(direct, displaced) == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("normalization matches brute force") {
    for (double a : {0.2, 0.7, 1.3, 2.0})
        for (int n : {1, 2, 3}) {
            PacsSpec spec{Complex(a, 0.0), n};
            int dim = pacs_dim(spec) + 8;
            Complex alpha(a, 0.0);
            double brute = 1.0 / oracles::unnormalized_pacs(alpha, n, dim).norm();
            CHECK(normalization(spec) == doctest::Approx(brute).epsilon(1e-9));
        }
}

TEST_CASE("gain fixtures") {
    CHECK(gain({Complex(1.0, 0.0), 1}) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(gain({Complex(1.0, 0.0), 2}) == doctest::Approx(13.0 / 7.0).epsilon(1e-12));
    CHECK(gain({Complex(1e-8, 0.0), 1}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gain({Complex(1e-8, 0.0), 2}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(gain({Complex(0.0, 0.0), 1}), UndefinedGain);
}

TEST_CASE("gain matches brute force") {
    for (double a : {0.3, 0.8, 1.5})
        for (int n : {1, 2, 3}) {
            PacsSpec spec{Complex(a, 0.0), n};
            auto brute = oracles::brute_stats(spec.alpha, n, pacs_dim(spec) + 8);
            CHECK(gain(spec) == doctest::Approx(brute.gain).epsilon(1e-9));
        }
}

TEST_CASE("quadrature statistics") {
    SUBCASE("alpha=0 limit is Fock: V = 2n+1") {
        for (int n : {0, 1, 2, 3}) {
            QuadStats qs = quad_stats({Complex(0.0, 0.0), n});
            CHECK(qs.vx == doctest::Approx(2.0 * n + 1.0).epsilon(1e-12));
            CHECK(qs.vp == doctest::Approx(2.0 * n + 1.0).epsilon(1e-12));
        }
    }
    SUBCASE("paper point Vx(alpha=2, n=1) = 0.76") {
        QuadStats qs = quad_stats({Complex(2.0, 0.0), 1});
        CHECK(qs.vx < 1.0);
        CHECK(std::abs(qs.vx - 0.76) < 5e-3);
    }
    SUBCASE("matches brute force and cov vanishes") {
        for (double a : {0.3, 1.0, 2.0})
            for (int n : {1, 2, 3}) {
                PacsSpec spec{Complex(a, 0.0), n};
                auto brute = oracles::brute_stats(spec.alpha, n, pacs_dim(spec) + 8);
                QuadStats qs = quad_stats(spec);
                CHECK(qs.vx == doctest::Approx(brute.vx).epsilon(1e-8));
                CHECK(qs.vp == doctest::Approx(brute.vp).epsilon(1e-8));
                CHECK(qs.mean_x == doctest::Approx(brute.mean_x).epsilon(1e-8));
                CHECK(qs.cov_xp == doctest::Approx(0.0).scale(1.0));
            }
    }
    SUBCASE("phase covariance: rotating alpha rotates the frame") {
        PacsSpec real_spec{Complex(1.1, 0.0), 2};
        PacsSpec rot_spec{Complex(1.1, 0.0) * std::exp(Complex(0, 0.7)), 2};
        QuadStats a = quad_stats(real_spec), b = quad_stats(rot_spec);
        CHECK(a.vx == doctest::Approx(b.vx).epsilon(1e-12));
        CHECK(a.vp == doctest::Approx(b.vp).epsilon(1e-12));
    }
}

TEST_CASE("deterministic amplifier benchmark") {
    CHECK(deterministic_amp_variance(1.0) == doctest::Approx(1.0));
    CHECK(deterministic_amp_variance(2.0) == doctest::Approx(7.0));
}

TEST_CASE("Fano factor") {
    CHECK(fano({Complex(1.0, 0.0), 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(fano({Complex(0.0, 0.0), 0}), UndefinedFano);
    for (double a : {0.4, 1.0, 1.8})
        for (int n : {1, 2}) {
            PacsSpec spec{Complex(a, 0.0), n};
            auto brute = oracles::brute_stats(spec.alpha, n, pacs_dim(spec) + 8);
            CHECK(fano(spec) == doctest::Approx(brute.var_n / brute.mean_n).epsilon(1e-8));
        }
}

TEST_CASE("antinormal moments vs dense operators") {
    Complex alpha(0.8, -0.3);
    int dim = 40;
    auto [a, adag] = ladder_ops(dim);
    Vec coh = coherent_state(alpha, dim).amps;
    for (int m : {0, 1, 2, 3})
        for (int n : {0, 1, 2, 3}) {
            Mat op = Mat::Identity(dim, dim);
            for (int j = 0; j < m; ++j) op = a.elems * op;
            Mat full = op;
            for (int j = 0; j < n; ++j) full = full * adag.elems;
            // <alpha| a^m a^dag^n |alpha>
            Complex brute = (coh.adjoint() * (full * coh).matrix())(0, 0);
            Complex analytic = antinormal_moment(m, n, alpha);
            CHECK(std::abs(analytic - brute) < 1e-9);
        }
}

TEST_CASE("coherent fidelity and beta_opt") {
    PacsSpec spec{Complex(1.0, 0.0), 1};
    int dim = pacs_dim(spec) + 5;
    FockVector psi = pacs_state(spec, dim);
    for (double b : {0.5, 1.0, 1.6}) {
        double brute = pure_fidelity(psi, coherent_state(Complex(b, 0.0), dim));
        CHECK(coherent_fidelity(spec, Complex(b, 0.0)) ==
              doctest::Approx(brute).epsilon(1e-9));
    }
    // beta_opt = alpha/2 (1 + sqrt(1 + 4n/|alpha|^2))
    Complex bo = beta_opt(spec);
    CHECK(bo.real() == doctest::Approx(0.5 * (1.0 + std::sqrt(5.0))).epsilon(1e-12));
    // stationarity: F at beta_opt beats nearby betas
    double f0 = coherent_fidelity(spec, bo);
    CHECK(f0 > coherent_fidelity(spec, bo + Complex(0.01, 0.0)));
    CHECK(f0 > coherent_fidelity(spec, bo - Complex(0.01, 0.0)));
    // alpha -> 0 limit: |beta_opt| -> sqrt(n)
    CHECK(std::abs(beta_opt({Complex(1e-9, 0.0), 4})) ==
          doctest::Approx(2.0).epsilon(1e-6));
}
