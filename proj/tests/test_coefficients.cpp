#include <doctest.h>

#include <cmath>
#include <random>

#include "homog/coefficients.hpp"
#include "homog/errors.hpp"

using namespace homog;

TEST_CASE("constant family evaluates to the normalized base matrix") {
    const auto f = CoefficientField::constant(SymMatrix2::identity());
    const SymMatrix2 a = f.evaluate({0.3, 0.7});
    CHECK(a.a11 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.a12 == 0.0);
    CHECK(a.a22 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("laminate normalization peaks at one") {
    const auto f = CoefficientField::laminate(0.5);
    // profile maximum at y1 = 0: (1 + mu)/(1 + mu) = 1
    const SymMatrix2 a = f.evaluate({0.0, 0.37});
    CHECK(a.a11 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.a22 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.normalization() == doctest::Approx(1.5));
}

TEST_CASE("trig product at the quarter point") {
    const auto f = CoefficientField::trig_product(0.5);
    // (1 + 0.5 sin(pi/2) sin(pi/2)) / 1.5 = 1
    const SymMatrix2 a = f.evaluate({0.25, 0.25});
    CHECK(a.a11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.a12 == 0.0);
}

TEST_CASE("validate reports exact extremes for the built-in families") {
    SUBCASE("constant identity") {
        const auto rep = CoefficientField::constant(SymMatrix2::identity()).validate(32);
        CHECK(rep.lambda_min == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rep.lambda_max == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rep.lipschitz_estimate == 0.0);
        CHECK(rep.periodicity_residual == 0.0);
    }
    SUBCASE("trig product mu = 0.5") {
        const auto rep = CoefficientField::trig_product(0.5).validate(64);
        CHECK(rep.lambda_min == doctest::Approx(1.0 / 3.0).epsilon(0.02));
        CHECK(rep.lambda_max <= 1.0 + 1e-12);
        CHECK(rep.elliptic());
    }
    SUBCASE("laminate mu = 0.5") {
        const auto rep = CoefficientField::laminate(0.5).validate(64);
        CHECK(rep.lambda_min == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(rep.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("every family validates elliptic with tiny periodicity residual") {
    const CoefficientField fields[] = {
        CoefficientField::constant({0.8, 0.1, 0.6}),
        CoefficientField::laminate(0.9),
        CoefficientField::trig_product(0.7),
        CoefficientField::rotated_laminate(0.5, std::atan2(1.0, 1.0)),
    };
    for (const auto& f : fields) {
        const auto rep = f.validate(32);
        CHECK(rep.lambda_min > 0.0);
        CHECK(rep.periodicity_residual <= 1e-12);
        CHECK(rep.lambda_max <= 1.0 + 1e-12);
    }
}

TEST_CASE("evaluate is bitwise 1-periodic on dyadic points") {
    // dyadic-rational sample points keep y + z exactly representable, so the
    // periodicity must hold to the last bit
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> lattice(0, (1 << 20) - 1);
    std::uniform_int_distribution<int> shift(-7, 7);
    const CoefficientField fields[] = {
        CoefficientField::laminate(0.5),
        CoefficientField::trig_product(0.5),
        CoefficientField::rotated_laminate(0.3, std::atan2(1.0, 2.0)),
    };
    for (const auto& f : fields) {
        for (int t = 0; t < 200; ++t) {
            const Point2 y{lattice(rng) / double(1 << 20), lattice(rng) / double(1 << 20)};
            const Point2 z{double(shift(rng)), double(shift(rng))};
            const SymMatrix2 a = f.evaluate(y);
            const SymMatrix2 b = f.evaluate(y + z);
            CHECK(a.a11 == b.a11);
            CHECK(a.a12 == b.a12);
            CHECK(a.a22 == b.a22);
        }
    }
}

TEST_CASE("normalization factor recovers the raw formula") {
    const double mu = 0.5;
    const auto lam = CoefficientField::laminate(mu);
    const auto trig = CoefficientField::trig_product(mu);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const Point2 y{unif(rng), unif(rng)};
        const double raw_lam = 1.0 + mu * std::cos(2.0 * M_PI * y.x);
        CHECK(lam.evaluate(y).a11 * lam.normalization() == doctest::Approx(raw_lam).epsilon(1e-14));
        const double raw_trig =
            1.0 + mu * std::sin(2.0 * M_PI * y.x) * std::sin(2.0 * M_PI * y.y);
        CHECK(trig.evaluate(y).a11 * trig.normalization() ==
              doctest::Approx(raw_trig).epsilon(1e-14));
    }
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(CoefficientField::laminate(1.0), precondition_error);
    CHECK_THROWS_AS(CoefficientField::trig_product(-0.1), precondition_error);
    CHECK_THROWS_AS(CoefficientField::rotated_laminate(0.5, 0.123456), precondition_error);
    CHECK_THROWS_AS(CoefficientField::constant({1.0, 2.0, 1.0}), precondition_error);
    const auto f = CoefficientField::laminate(0.5);
    CHECK_THROWS_AS(f.validate(8), precondition_error);
}
