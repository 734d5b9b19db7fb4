#include <catch_amalgamated.hpp>

#include <cmath>

#include "ocb/bounds.hpp"
#include "support/quad.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using ocb::ConstraintSpec;

TEST_CASE("case dispatch", "[bounds]") {
    CHECK(ocb::case_of(ConstraintSpec::peak_and_average(1.0, 0.3, 1.0)) == ocb::CaseTag::I);
    CHECK(ocb::case_of(ConstraintSpec::peak_and_average(1.0, 0.9, 1.0)) == ocb::CaseTag::II);
    CHECK(ocb::case_of(ConstraintSpec::average_only(1.0, 1.0)) == ocb::CaseTag::III);
    // the boundary ratio belongs to the symmetric regime
    CHECK(ocb::case_of(ConstraintSpec::peak_and_average(2.0, 1.0, 1.0)) == ocb::CaseTag::II);
    CHECK_THROWS_AS(ConstraintSpec::peak_and_average(1.0, 1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(ConstraintSpec::peak_and_average(1.0, 0.5, 0.0), std::domain_error);
}

TEST_CASE("case I lower bound", "[bounds]") {
    CHECK(ocb::lower_case1(0.0, 1.0, 0.1).nats == 0.0);
    CHECK(ocb::lower_case1(1e-12, 1.0, 0.1).nats < 1e-20);

    SECTION("joins the uniform-input bound at the regime boundary") {
        const double a = 0.5 - 1e-7;
        CHECK_THAT(ocb::lower_case1(4.0, 1.0, a).nats, WithinAbs(ocb::lower_case2(4.0, 1.0).nats, 1e-6));
    }
    SECTION("agrees with quadrature entropy pushed through the entropy-power floor") {
        const double A = std::pow(10.0, 1.05), alpha = 0.1;
        const double ms = ocb::solve_mu_star(alpha).mu;
        const double norm = ms / (-std::expm1(-ms)) / A;
        const double h = testsupport::integrate(
            [&](double x) {
                const double p = norm * std::exp(-ms * x / A);
                return -p * std::log(p);
            },
            0.0, A);
        const double floor_nats =
            0.5 * std::log1p(std::exp(2.0 * h) / (2.0 * ocb::detail::kPi * ocb::detail::kE));
        CHECK_THAT(ocb::lower_case1(A, 1.0, alpha).nats, WithinRel(floor_nats, 1e-9));
    }
}

TEST_CASE("case I moment upper bound", "[bounds]") {
    CHECK(ocb::upper_case1_gauss(0.0, 1.0, 0.1).nats == 0.0);
    CHECK_THAT(ocb::upper_case1_gauss(1.0, 1.0, 0.1).nats, WithinRel(0.5 * std::log(1.09), 1e-14));
    CHECK_THAT(ocb::upper_case1_gauss(3.0, 1.0, 0.5).nats,
               WithinRel(ocb::upper_case2_gauss(3.0, 1.0).nats, 1e-14));
}

TEST_CASE("case I dual upper bound", "[bounds]") {
    const double A = std::pow(10.0, 1.05), alpha = 0.1;
    const auto p = ocb::default_params_case1(A, 1.0, alpha);

    SECTION("sandwich against the lower bound") {
        const double up = ocb::upper_case1_dual(A, 1.0, alpha, p.delta, p.mu).nats;
        CHECK(std::isfinite(up));
        CHECK(up >= ocb::lower_case1(A, 1.0, alpha).nats);
    }
    SECTION("large-peak offset limit") {
        const double ms = ocb::solve_mu_star(alpha).mu;
        const double limit = std::log(-std::expm1(-ms) / (ocb::detail::kSqrt2Pi * ms)) - 0.5 + ms * alpha;
        CHECK_THAT(limit, WithinRel(-2.7215691306653325, 1e-12));
        const double A8 = 1e8;
        const auto p8 = ocb::default_params_case1(A8, 1.0, alpha);
        const double v = ocb::upper_case1_dual(A8, 1.0, alpha, p8.delta, p8.mu).nats;
        CHECK_THAT(v - std::log(A8), WithinAbs(limit, 1e-4));
    }
    SECTION("domain") {
        CHECK_THROWS_AS(ocb::upper_case1_dual(A, 1.0, alpha, 0.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(ocb::upper_case1_dual(A, 1.0, alpha, 1.0, -1.0), std::domain_error);
        CHECK_THROWS_AS(ocb::upper_case1_dual(A, 1.0, 0.6, 1.0, 1.0), std::domain_error);
    }
}

TEST_CASE("case II bounds", "[bounds]") {
    CHECK(ocb::lower_case2(0.0, 1.0).nats == 0.0);
    CHECK_THAT(ocb::lower_case2(std::sqrt(2.0 * ocb::detail::kPi * ocb::detail::kE), 1.0).nats,
               WithinRel(0.5 * std::log(2.0), 1e-13));
    CHECK_THAT(ocb::upper_case2_gauss(2.0, 1.0).nats, WithinRel(0.5 * std::log(2.0), 1e-14));
    CHECK(ocb::upper_case2_gauss(0.0, 1.0).nats == 0.0);

    SECTION("moment bound dominates the uniform-input bound everywhere") {
        for (double db = -30.0; db <= 60.0; db += 1.5) {
            const double A = ocb::ratio_from_db(db);
            CHECK(ocb::upper_case2_gauss(A, 1.0).nats > ocb::lower_case2(A, 1.0).nats);
        }
    }
    SECTION("dual bound: log factor nonnegative and the high-peak limit") {
        for (double db = -20.0; db <= 60.0; db += 2.5) {
            const double A = ocb::ratio_from_db(db);
            const double d = ocb::default_delta_case2(A, 1.0);
            const double lf = std::log(A + 2.0 * d) - std::log(ocb::detail::kSqrt2Pi) - ocb::log1m2q(d);
            CHECK(lf >= 0.0);
            CHECK(ocb::upper_case2_dual(A, 1.0, d).nats >= ocb::lower_case2(A, 1.0).nats);
        }
        const double A8 = 1e8;
        const double v = ocb::upper_case2_dual(A8, 1.0, ocb::default_delta_case2(A8, 1.0)).nats;
        CHECK_THAT(v - std::log(A8), WithinAbs(-1.4189385332046727, 1e-4));
    }
    CHECK_THROWS_AS(ocb::upper_case2_dual(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("case III lower bound", "[bounds]") {
    CHECK(ocb::lower_case3(0.0, 1.0).nats == 0.0);
    CHECK_THAT(ocb::lower_case3(std::sqrt(2.0 * ocb::detail::kPi / ocb::detail::kE), 1.0).nats,
               WithinRel(0.5 * std::log(2.0), 1e-13));
    const double E = 1e8;
    CHECK_THAT(ocb::lower_case3(E, 1.0).nats - std::log(E), WithinAbs(-0.41893853320467274, 1e-6));
}

TEST_CASE("case III dual upper bound, negative offset", "[bounds]") {
    SECTION("sandwich over a parameter grid") {
        for (const double e : {0.05, 0.2, 0.5, 0.9}) {
            for (const double dfac : {1.0, 1.8, 3.0}) {
                const double delta = ocb::kCase3DeltaLimitFactor * dfac;
                for (const double beta : {0.5, 2.0, 20.0}) {
                    CHECK(ocb::upper_case3_low(e, 1.0, delta, beta).nats >=
                          ocb::lower_case3(e, 1.0).nats);
                }
            }
        }
    }
    SECTION("defaults at a tenth of the noise level") {
        const double E = 0.1;
        const auto p = ocb::default_params_case3_low(E, 1.0);
        const double v = ocb::upper_case3_low(E, 1.0, p.delta, p.beta).nats;
        const double law = E * std::sqrt(std::log(1.0 / E));
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
        // frozen from an independent high-precision evaluation of the formula
        CHECK_THAT(v, WithinRel(0.395935, 1e-4));
        CHECK(v / law < 2.7);
    }
    SECTION("default-parameter value approaches twice the scaling law from above") {
        double prev = 1e9;
        for (const double e : {1e-2, 1e-3, 1e-4, 1e-6}) {
            const auto p = ocb::default_params_case3_low(e, 1.0);
            const double ratio = ocb::upper_case3_low(e, 1.0, p.delta, p.beta).nats /
                                 (e * std::sqrt(std::log(1.0 / e)));
            CHECK(ratio > 2.0);
            CHECK(ratio < prev);
            prev = ratio;
        }
        CHECK(prev < 2.25);  // frozen: 2.214663 at -60 dB
    }
    CHECK_THROWS_AS(ocb::upper_case3_low(1.0, 1.0, -0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(ocb::upper_case3_low(1.0, 1.0, -1.0, 0.0), std::domain_error);
}

TEST_CASE("case III dual upper bound, nonnegative offset", "[bounds]") {
    SECTION("finite at the offset boundary") {
        const double E = 1.0;
        const double v = ocb::upper_case3_high(E, 1.0, 0.0, E + 1.0 / ocb::detail::kSqrt2Pi).nats;
        CHECK(std::isfinite(v));
    }
    SECTION("sandwich over a parameter grid") {
        for (const double e : {0.1, 1.0, 10.0, 100.0})
            for (const double delta : {0.0, 0.5, 2.0})
                for (const double beta : {0.5, 5.0, 50.0})
                    CHECK(ocb::upper_case3_high(e, 1.0, delta, beta).nats >=
                          ocb::lower_case3(e, 1.0).nats);
    }
    SECTION("high-power limit with the mean as the tail scale") {
        const double E = 1e10;
        const double v = ocb::upper_case3_high(E, 1.0, std::sqrt(std::log(E)), E).nats;
        CHECK_THAT(v - std::log(E), WithinAbs(-0.41893853320467274, 1e-4));
    }
    CHECK_THROWS_AS(ocb::upper_case3_high(1.0, 1.0, -0.1, 1.0), std::domain_error);
}

TEST_CASE("degenerate instances evaluate to zero", "[bounds]") {
    CHECK(ocb::lower_case1(0.0, 1.0, 0.2).nats == 0.0);
    CHECK(ocb::upper_case1_dual(0.0, 1.0, 0.2, 1.0, 1.0).nats == 0.0);
    CHECK(ocb::upper_case2_dual(0.0, 1.0, 1.0).nats == 0.0);
    CHECK(ocb::lower_case3(0.0, 1.0).nats == 0.0);
    CHECK(ocb::upper_case3_high(0.0, 1.0, 1.0, 1.0).nats == 0.0);
}

TEST_CASE("formula tagging", "[bounds]") {
    CHECK(ocb::lower_case1(1.0, 1.0, 0.2).formula == 26);
    CHECK(ocb::upper_case1_gauss(1.0, 1.0, 0.2).formula == 27);
    CHECK(ocb::upper_case1_dual(1.0, 1.0, 0.2, 1.0, 1.0).formula == 28);
    CHECK(ocb::lower_case2(1.0, 1.0).formula == 38);
    CHECK(ocb::upper_case2_gauss(1.0, 1.0).formula == 39);
    CHECK(ocb::upper_case2_dual(1.0, 1.0, 1.0).formula == 40);
    CHECK(ocb::lower_case3(1.0, 1.0).formula == 46);
    CHECK(ocb::upper_case3_low(0.5, 1.0, -1.0, 1.0).formula == 47);
    CHECK(ocb::upper_case3_high(1.0, 1.0, 0.5, 1.0).formula == 48);
    CHECK(ocb::lower_case2(1.0, 1.0).side == ocb::Side::lower);
    CHECK(ocb::upper_case2_gauss(1.0, 1.0).side == ocb::Side::upper);
}

TEST_CASE("bounds survive extreme ratios", "[bounds]") {
    // 120 dB and -120 dB must stay finite in every formula
    for (const double A : {1e-12, 1e12}) {
        CHECK(std::isfinite(ocb::lower_case1(A, 1.0, 0.1).nats));
        const auto p = ocb::default_params_case1(A, 1.0, 0.1);
        CHECK(std::isfinite(ocb::upper_case1_dual(A, 1.0, 0.1, p.delta, p.mu).nats));
        CHECK(std::isfinite(ocb::upper_case2_dual(A, 1.0, ocb::default_delta_case2(A, 1.0)).nats));
        const auto ph = ocb::default_params_case3_high(A, 1.0);
        CHECK(std::isfinite(ocb::upper_case3_high(A, 1.0, ph.delta, ph.beta).nats));
    }
}
