#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fdiv/matrix_suites.hpp"
#include "fdiv/perspective_checks.hpp"

using namespace fdv;

TEST_CASE("the AH counterexample matches its closed forms") {
    auto c = fixed_counterexample();
    CHECK(c.lhs == Catch::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(c.rhs ==
          Catch::Approx(16.0 * std::sqrt(2.0) / (4.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(c.violated);

    // recompute both sides from the primitives: g(1,3) = 3 f(1/3) and the
    // harmonic mean of g(1,2) = 2*sqrt(2) and g(1,4) = 8
    auto f = catalog_lookup("inv_sqrt");
    CHECK(perspective(f, 1.0, 3.0) == Catch::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
    double h = mean_value(MeanKind::Harmonic, 0.5, 2.0 * std::sqrt(2.0), 8.0);
    CHECK(h == Catch::Approx(c.rhs).epsilon(1e-12));

    // the gap is macroscopic: stable down to coarse tolerances
    CHECK(c.lhs - c.rhs > 1.0);
}

TEST_CASE("transfer inequalities collapse to equality at a=b, x=y") {
    auto f = catalog_lookup("inv_sqrt");
    for (Thm23Part part : {Thm23Part::I, Thm23Part::II, Thm23Part::III, Thm23Part::IV}) {
        auto r = check_thm23(f, part, 2.0, 2.0, 5.0, 5.0, 0.3);
        CHECK(r.lhs == Catch::Approx(r.rhs).epsilon(1e-12));
        CHECK(r.holds);
    }
}

TEST_CASE("transfer inequality hand-checked points") {
    // part iv with the HH-convex core sqrt(t)
    auto sq = catalog_lookup("power_r", 0.5);
    auto r = check_thm23(sq, Thm23Part::IV, 1.0, 4.0, 2.0, 3.0, 0.3);
    double ha = mean_value(MeanKind::Harmonic, 0.3, 1.0, 4.0);
    double hx = mean_value(MeanKind::Harmonic, 0.3, 2.0, 3.0);
    CHECK(r.lhs == Catch::Approx(std::sqrt(ha * hx)).epsilon(1e-12));
    CHECK(r.rhs == Catch::Approx(mean_value(MeanKind::Harmonic, 0.3, std::sqrt(2.0),
                                            std::sqrt(12.0))).epsilon(1e-12));
    CHECK(r.holds);

    // part i with inv_sqrt
    auto f = catalog_lookup("inv_sqrt");
    auto ri = check_thm23(f, Thm23Part::I, 1.0, 2.0, 3.0, 4.0, 0.5);
    CHECK(ri.holds);
}

TEST_CASE("the hellinger core fails the joint-GG transfer") {
    // The source material pairs the hellinger core with the GG transfer, but
    // its ln f(e^s) is strictly concave, so the hypothesis is false and the
    // conclusion fails at concrete points; this one is (1,2,3,4), alpha=1/2.
    auto hell = catalog_lookup("hellinger");
    auto r = check_thm23(hell, Thm23Part::III, 1.0, 2.0, 3.0, 4.0, 0.5);
    CHECK(r.lhs == Catch::Approx(0.9031749974191261).epsilon(1e-9));
    CHECK(r.rhs == Catch::Approx(0.857650869455343).epsilon(1e-9));
    CHECK(!r.holds);
}

TEST_CASE("GH-convex cores also pass the joint-GG transfer") {
    auto f = catalog_lookup("inv_sqrt_log");
    for (std::uint64_t t = 0; t < 2000; ++t) {
        auto rng = trial_rng(31, t);
        double a = sample_log_uniform(rng, 100.0, 1000.0);
        double b = sample_log_uniform(rng, 100.0, 1000.0);
        double x = sample_log_uniform(rng, 1.0, 2.0);
        double y = sample_log_uniform(rng, 1.0, 2.0);
        double alpha = sample_uniform(rng, 0.0, 1.0);
        CHECK(check_thm23(f, Thm23Part::III, a, b, x, y, alpha).holds);
        CHECK(check_thm23(f, Thm23Part::V, a, b, x, y, alpha).holds);
    }
}

TEST_CASE("sum-inequality chain for the AH-convex core") {
    auto f = catalog_lookup("inv_sqrt");
    PositiveTuple a(std::vector<double>{1.0, 2.0}), b(std::vector<double>{2.0, 1.0});
    auto chain = check_thm24(f, Thm24Part::I, a, b);
    REQUIRE(chain.links.size() == 2);
    CHECK(chain.all_hold());

    // abar = bbar = 3 here, so the middle term is 9 / I_{1/f}(a,b)
    double g33 = perspective(f, 3.0, 3.0);
    double i_recip = csiszar_divergence(transform_reciprocal_value(f), a, b).value;
    double i_f = csiszar_divergence(f, a, b).value;
    CHECK(chain.links[0].lhs == Catch::Approx(g33).epsilon(1e-14));
    CHECK(chain.links[0].rhs == Catch::Approx(9.0 / i_recip).epsilon(1e-14));
    CHECK(chain.links[1].rhs == Catch::Approx(i_f).epsilon(1e-14));
}

TEST_CASE("displayed abar^2 coefficient breaks the chain; bbar^2 repairs it") {
    // The display multiplies by abar^2, but the derivation sums b_k, which
    // forces bbar^2; this asymmetric pair separates the two readings.
    auto f = catalog_lookup("inv_sqrt");
    PositiveTuple a(std::vector<double>{1.0, 2.0}), b(std::vector<double>{1.0, 1.0});
    double abar = 3.0, bbar = 2.0;
    double i_recip = csiszar_divergence(transform_reciprocal_value(f), a, b).value;
    double i_f = csiszar_divergence(f, a, b).value;
    CHECK(abar * abar / i_recip > i_f);  // the printed form is false here
    CHECK(bbar * bbar / i_recip <= i_f); // the derived form holds
    CHECK(check_thm24(f, Thm24Part::I, a, b).all_hold());
}

TEST_CASE("sum-inequality chain for the AG-convex core") {
    auto f = catalog_lookup("power_r", -1.0);
    PositiveTuple a(std::vector<double>{1.0, 3.0}), b(std::vector<double>{2.0, 2.0});
    auto chain = check_thm24(f, Thm24Part::II, a, b);
    CHECK(chain.all_hold());
    double ilog = csiszar_divergence(transform_log_compose(f), a, b).value;
    CHECK(chain.links[0].rhs == Catch::Approx(4.0 * std::exp(ilog / 4.0)).epsilon(1e-14));
}

TEST_CASE("equality prefix of the HA-convex chain") {
    auto f = catalog_lookup("power_r", 0.5);
    PositiveTuple a(std::vector<double>{1.0, 2.0}), b(std::vector<double>{3.0, 4.0});
    auto chain = check_thm24(f, Thm24Part::III, a, b);
    REQUIRE(chain.links.size() == 4);
    // two algebraic equalities up front, then the inequality, then the
    // divergence identity I_phi(b,a) = I_{t f(t)}(a,b)
    CHECK(chain.links[0].is_equality);
    CHECK(chain.links[1].is_equality);
    CHECK(!chain.links[2].is_equality);
    CHECK(chain.links[3].is_equality);
    for (const auto& link : chain.links) {
        INFO(link.label);
        CHECK(link.holds);
    }
    CHECK(chain.links[0].lhs == Catch::Approx(chain.links[0].rhs).epsilon(1e-12));
    CHECK(chain.links[3].lhs == Catch::Approx(chain.links[3].rhs).epsilon(1e-12));
}

TEST_CASE("increasing GA-convex chain") {
    auto f = catalog_lookup("log1p");
    CHECK(sampled_increasing(f, {0.1, 10.0}, 1000, 5));
    PositiveTuple a(std::vector<double>{0.5, 1.5, 2.0}), b(std::vector<double>{1.0, 1.0, 2.0});
    auto chain = check_thm24(f, Thm24Part::IV, a, b);
    CHECK(chain.all_hold());
}

TEST_CASE("chain rejects invalid tuples") {
    auto f = catalog_lookup("inv_sqrt");
    PositiveTuple a(std::vector<double>{1.0, 2.0});
    PositiveTuple short_b(std::vector<double>{1.0});
    CHECK_THROWS_AS(check_thm24(f, Thm24Part::I, a, short_b), std::invalid_argument);
    PositiveTuple with_zero(std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS(check_thm24(f, Thm24Part::I, a, with_zero), std::domain_error);
}

TEST_CASE("randomized suites find no violations on matched pairings") {
    auto r23 = randomized_suite_thm23(default_thm23_pairings(), 2000, 42);
    CHECK(r23.checks_run == 2000 * default_thm23_pairings().size());
    CHECK(r23.violations.empty());

    auto r24 = randomized_suite_thm24(default_thm24_pairings(), 500, 42);
    CHECK(r24.violations.empty());

    auto empty = randomized_suite_thm23({}, 100, 42);
    CHECK(empty.checks_run == 0);
    CHECK(empty.violations.empty());
}

TEST_CASE("suite reports are deterministic under the seed") {
    // force a violating pairing so the witness stream is nonempty
    std::vector<Thm23Pairing> bad = {{catalog_lookup("hellinger"), Thm23Part::III, {0.1, 10.0}}};
    auto a = randomized_suite_thm23(bad, 50, 9);
    auto b = randomized_suite_thm23(bad, 50, 9);
    REQUIRE(!a.violations.empty());
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        CHECK(a.violations[i].point == b.violations[i].point);
        CHECK(a.violations[i].lhs == b.violations[i].lhs);
        CHECK(a.violations[i].rhs == b.violations[i].rhs);
    }
}
