#include <doctest.h>

#include <cmath>

#include "core/params.hpp"
#include "core/vibronic.hpp"

using namespace nvshelf;

TEST_CASE("derive_coupling_F") {
    CHECK(derive_coupling_F(0.0, 66.1, 0.9) == doctest::Approx(0.0));
    CHECK(derive_coupling_F(316.0, 66.1, 1.0) == doctest::Approx(102.19).epsilon(1e-3));
    CHECK(derive_coupling_F(316.0, 66.1, 0.9) == doctest::Approx(107.57).epsilon(1e-3));
    CHECK_THROWS_AS(derive_coupling_F(-1.0, 66.1, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(derive_coupling_F(316.0, 0.0, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(derive_coupling_F(316.0, 66.1, 1.5), std::invalid_argument);

    // exact inverse of the Jahn-Teller energy expression
    for (double e_jt : {10.0, 100.0, 316.0, 500.0}) {
        for (double c2 : {0.0, 0.5, 0.9, 1.0}) {
            const double f = derive_coupling_F(e_jt, 66.1, c2);
            const double total = c2 * 2.0 * f + (1.0 - c2) * f;
            const double back = total * total / (2.0 * 66.1);
            CHECK(back == doctest::Approx(e_jt).epsilon(1e-9));
        }
    }
}

TEST_CASE("derive_correlation_C2") {
    CHECK(derive_correlation_C2(0.0, 1.0) == doctest::Approx(1.0));
    CHECK(derive_correlation_C2(std::sqrt(0.5), std::sqrt(0.5)) == doctest::Approx(0.5));
    // 2 p^2 s^2 = 0.1 with p^2 + s^2 = 1
    const double s2 = 0.0527864045, p2 = 0.9472135955;
    CHECK(derive_correlation_C2(std::sqrt(s2), std::sqrt(p2)) ==
          doctest::Approx(0.9).epsilon(1e-6));
    CHECK_THROWS_AS(derive_correlation_C2(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("huang_rhys_factor") {
    CHECK(huang_rhys_factor(0.0) == doctest::Approx(0.0));
    CHECK(huang_rhys_factor(std::sqrt(2.0)) == doctest::Approx(1.0));
    CHECK(huang_rhys_factor(1.3) == doctest::Approx(0.845));
    CHECK_THROWS_AS(huang_rhys_factor(-1.0), std::invalid_argument);
}

TEST_CASE("fit_electronic_gap uncoupled limit") {
    ModelParams p;
    p.F = 0.0;
    p.n_max = 6;
    const FitResult fit = fit_electronic_gap(1190.0, p);
    CHECK(fit.lambda_e == doctest::Approx(1190.0).epsilon(1e-4));
    CHECK(fit.zpl == doctest::Approx(1190.0).epsilon(1e-4));
}

TEST_CASE("fit_electronic_gap brackets and is idempotent") {
    ModelParams p;
    p.F = 20.0;
    p.n_max = 8;
    const FitResult fit = fit_electronic_gap(1190.0, p);

    // independent bisection oracle: the ZPL map brackets the target around
    // the fitted gap
    auto zpl_at = [&](double lambda_e) {
        ModelParams q = p;
        q.Lambda_e = lambda_e;
        return zpl_energy(solve_model(q));
    };
    CHECK(zpl_at(fit.lambda_e - 2.0) < 1190.0);
    CHECK(zpl_at(fit.lambda_e + 2.0) > 1190.0);

    const FitResult again = fit_electronic_gap(1190.0, p);
    CHECK(again.lambda_e == doctest::Approx(fit.lambda_e).epsilon(1e-6));
}

TEST_CASE("ZPL is strictly increasing in Lambda_e") {
    ModelParams p;  // reference couplings
    p.n_max = 8;
    double prev = -1.0;
    for (double lambda_e : {900.0, 1100.0, 1300.0}) {
        ModelParams q = p;
        q.Lambda_e = lambda_e;
        const double zpl = zpl_energy(solve_model(q));
        CHECK(zpl > prev);
        prev = zpl;
    }
}

TEST_CASE("parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.C2 = 1.2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.hbar_omega_E = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.n_max = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
