#include <catch2/catch_amalgamated.hpp>

#include "fdiv/means.hpp"
#include "fdiv/rng.hpp"

using namespace fdv;

TEST_CASE("weighted means match hand arithmetic") {
    CHECK(mean_value(MeanKind::Harmonic, 0.5, 2.0, 8.0) == Catch::Approx(3.2).epsilon(1e-12));
    CHECK(mean_value(MeanKind::Geometric, 0.5, 2.0, 8.0) == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(mean_value(MeanKind::Arithmetic, 0.5, 2.0, 8.0) == Catch::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("idempotence at equal arguments") {
    for (MeanKind k : {MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic})
        for (double alpha : {0.0, 0.3, 0.5, 1.0})
            for (double c : {1e-6, 0.5, 7.0, 1e6})
                CHECK(mean_value(k, alpha, c, c) == Catch::Approx(c).epsilon(1e-15));
}

TEST_CASE("boundary weights select an argument") {
    for (MeanKind k : {MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic}) {
        CHECK(mean_value(k, 1.0, 3.0, 11.0) == Catch::Approx(3.0).epsilon(1e-12));
        CHECK(mean_value(k, 0.0, 3.0, 11.0) == Catch::Approx(11.0).epsilon(1e-12));
    }
}

TEST_CASE("alpha outside [0,1] is rejected") {
    CHECK_THROWS_AS(WeightedMean(MeanKind::Arithmetic, 1.5), std::domain_error);
    CHECK_THROWS_AS(WeightedMean(MeanKind::Harmonic, -0.1), std::domain_error);
}

TEST_CASE("nonpositive arguments rejected for G and H") {
    CHECK_THROWS_AS(mean_value(MeanKind::Geometric, 0.5, -1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(mean_value(MeanKind::Harmonic, 0.5, 0.0, 2.0), std::domain_error);
    CHECK(mean_value(MeanKind::Arithmetic, 0.5, 0.0, 2.0) == Catch::Approx(1.0));
}

TEST_CASE("agh ordering examples") {
    auto t = agh_ordering_check(0.5, 2.0, 8.0);
    CHECK(t.harmonic == Catch::Approx(3.2));
    CHECK(t.geometric == Catch::Approx(4.0));
    CHECK(t.arithmetic == Catch::Approx(5.0));
    CHECK(t.ordered);

    auto eq = agh_ordering_check(0.3, 7.0, 7.0);
    CHECK(eq.harmonic == Catch::Approx(7.0));
    CHECK(eq.ordered);

    auto w0 = agh_ordering_check(0.0, 1.0, 9.0);
    CHECK(w0.harmonic == Catch::Approx(9.0));
    CHECK(w0.geometric == Catch::Approx(9.0));
    CHECK(w0.arithmetic == Catch::Approx(9.0));
    CHECK(w0.ordered);
}

TEST_CASE("randomized AGH chain and monotonicity") {
    for (std::uint64_t i = 0; i < 2000; ++i) {
        auto rng = trial_rng(101, i);
        double x = sample_log_uniform(rng, 1e-6, 1e6);
        double y = sample_log_uniform(rng, 1e-6, 1e6);
        double alpha = sample_uniform(rng, 0.0, 1.0);
        auto t = agh_ordering_check(alpha, x, y);
        CHECK(t.harmonic <= t.geometric + 1e-12 * t.geometric);
        CHECK(t.geometric <= t.arithmetic + 1e-12 * t.arithmetic);

        // monotonicity: scaling an argument up never decreases the mean
        for (MeanKind k : {MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic}) {
            double base = mean_value(k, alpha, x, y);
            CHECK(base <= mean_value(k, alpha, x * 1.5, y) + 1e-12 * base);
            CHECK(base <= mean_value(k, alpha, x, y * 2.0) + 1e-12 * base);
        }
    }
}

TEST_CASE("n-point means reduce to two-point form") {
    double xs[] = {2.0, 8.0};
    double w[] = {0.5, 0.5};
    CHECK(n_point_mean(MeanKind::Harmonic, xs, w) == Catch::Approx(3.2));
    CHECK(n_point_mean(MeanKind::Geometric, xs, w) == Catch::Approx(4.0));
    CHECK(n_point_mean(MeanKind::Arithmetic, xs, w) == Catch::Approx(5.0));
}
