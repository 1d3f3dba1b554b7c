#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fdiv/catalog.hpp"
#include "fdiv/convexity.hpp"

using namespace fdv;

namespace {
const Interval kWide{0.01, 100.0};
constexpr std::uint64_t kTrials = 4000;
constexpr std::uint64_t kSeed = 17;

Verdict verdict_for(const CoreFunction& f, MeanPair pair, Interval iv) {
    return check_mn_convexity(f, pair, iv, kTrials, kSeed).verdict;
}
} // namespace

TEST_CASE("declared catalog facts hold on samples") {
    struct Fact {
        const char* name;
        std::optional<double> param;
        const char* pair;
        Interval iv;
    };
    const Fact facts[] = {
        {"inv_sqrt", {}, "AH", kWide},
        {"exp", {}, "AG", kWide},
        {"exp", {}, "GG", kWide},
        {"power_r", -2.0, "AG", kWide},
        {"power_r", 0.5, "HH", kWide},
        {"log1p", {}, "GA", kWide},
        {"geom_series", {}, "GG", {0.01, 0.99}},
        {"mobius", {}, "GG", {0.01, 0.99}},
        {"inv_sqrt_log", {}, "GH", {1.5, 100.0}},
        {"exp_power", -1.0, "HG", kWide},
        {"t_over_lnt", {}, "HH", {1.5, 100.0}},
        {"kl", {}, "AA", kWide},
        {"tv", {}, "AA", kWide},
        {"chi2", {}, "AA", kWide},
        {"hellinger", {}, "AA", kWide},
    };
    for (const auto& fact : facts) {
        auto f = catalog_lookup(fact.name, fact.param);
        INFO(fact.name << "/" << fact.pair);
        CHECK(verdict_for(f, mean_pair_from(fact.pair), fact.iv) == Verdict::HoldsOnSamples);
    }
}

TEST_CASE("the multiplicative-convexity claim for the hellinger core is false") {
    // ln f(e^s) is strictly concave for f(t) = 2(sqrt(t)-1)^2, so GG fails;
    // the catalog still records the assertion, and sampling refutes it.
    auto hell = catalog_lookup("hellinger");
    auto report = check_mn_convexity(hell, mean_pair_from("GG"), kWide, kTrials, kSeed);
    REQUIRE(report.verdict == Verdict::Fails);
    REQUIRE(report.witness.has_value());
    // replay the witness: a genuine violation, not sampling noise
    double lhs = hell(mean_value(MeanKind::Geometric, report.witness->alpha, report.witness->x,
                                 report.witness->y));
    double rhs = mean_value(MeanKind::Geometric, report.witness->alpha, hell(report.witness->x),
                            hell(report.witness->y));
    CHECK(lhs > rhs + 1e-9 * std::max({lhs, rhs, 1.0}));

    // fixed-point refutation: x=4, y=16, alpha=1/2
    double l = hell(8.0);                   // f(G(4,16)) = 2(2*sqrt(2)-1)^2
    double r = std::sqrt(hell(4.0) * hell(16.0));
    CHECK(l == Catch::Approx(6.686291501015239).epsilon(1e-12));
    CHECK(r == Catch::Approx(6.0).epsilon(1e-12));
    CHECK(l > r);
}

TEST_CASE("t^2 is not AH-convex and the witness replays bitwise") {
    auto f = catalog_lookup("power_r", 2.0);
    auto a = check_mn_convexity(f, mean_pair_from("AH"), {0.5, 4.0}, kTrials, kSeed);
    auto b = check_mn_convexity(f, mean_pair_from("AH"), {0.5, 4.0}, kTrials, kSeed);
    REQUIRE(a.verdict == Verdict::Fails);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(a.witness->x == b.witness->x);
    CHECK(a.witness->y == b.witness->y);
    CHECK(a.witness->alpha == b.witness->alpha);
    CHECK(a.witness->lhs == b.witness->lhs);
    CHECK(a.witness->rhs == b.witness->rhs);
}

TEST_CASE("negative values skip the positivity-requiring pairs") {
    // t ln t < 0 on (0,1), so geometric/harmonic value means are undefined there
    auto kl = catalog_lookup("kl");
    CHECK(verdict_for(kl, mean_pair_from("AG"), {0.1, 0.9}) == Verdict::SkippedDomain);
    CHECK(verdict_for(kl, mean_pair_from("GH"), {0.1, 0.9}) == Verdict::SkippedDomain);
}

TEST_CASE("classification covers all nine pairs") {
    auto reports = classify(catalog_lookup("exp"), kWide, 500, kSeed);
    REQUIRE(reports.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) CHECK(reports[i].pair == kAllMeanPairs[i]);
}

TEST_CASE("argument validation") {
    auto f = catalog_lookup("kl");
    CHECK_THROWS_AS(check_mn_convexity(f, mean_pair_from("AA"), kWide, 0, kSeed),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_mn_convexity(catalog_lookup("geom_series"), mean_pair_from("AA"),
                                       {0.5, 2.0}, 100, kSeed),
                    std::domain_error);
    CHECK_THROWS_AS(mean_pair_from("XX"), std::invalid_argument);
}

TEST_CASE("characterization crosschecks agree with the direct verdicts") {
    struct Probe {
        const char* name;
        std::optional<double> param;
        Interval iv;
    };
    const Probe probes[] = {
        {"exp", {}, {0.1, 5.0}},
        {"inv_sqrt", {}, {0.1, 5.0}},
        {"hellinger", {}, {0.1, 5.0}},
        {"power_r", 0.5, {0.1, 5.0}},
        {"mobius", {}, {0.05, 0.95}},
    };
    for (const auto& pb : probes) {
        auto f = catalog_lookup(pb.name, pb.param);
        auto checks = crosscheck_lemma_equivalences(f, pb.iv, 2000, kSeed);
        CHECK(checks.size() >= 6);
        for (const auto& c : checks) {
            INFO(pb.name << " item " << c.item);
            CHECK(c.consistent);
        }
    }
}

TEST_CASE("n-point Jensen hand examples") {
    std::vector<double> xs{1.0, 4.0};
    WeightVector w(std::vector<double>{0.5, 0.5});

    auto sqrt_core = catalog_lookup("power_r", 0.5);
    auto hh = jensen_n_point(sqrt_core, mean_pair_from("HH"), xs, w);
    CHECK(hh.lhs == Catch::Approx(1.2649110640673518).epsilon(1e-12)); // sqrt(1.6)
    CHECK(hh.rhs == Catch::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(hh.holds);

    auto chi2 = catalog_lookup("chi2");
    auto aa = jensen_n_point(chi2, mean_pair_from("AA"), xs, w);
    CHECK(aa.lhs == Catch::Approx(2.25).epsilon(1e-12)); // f(2.5)
    CHECK(aa.rhs == Catch::Approx(4.5).epsilon(1e-12));  // (0 + 9)/2
    CHECK(aa.holds);
}

TEST_CASE("two-point Jensen agrees with the mean machinery at n = 2") {
    auto f = catalog_lookup("exp");
    std::vector<double> xs{0.7, 2.3};
    for (double alpha : {0.0, 0.25, 0.6, 1.0}) {
        WeightVector w(std::vector<double>{alpha, 1.0 - alpha});
        for (const char* pair : {"AA", "AG", "GG", "HG"}) {
            auto r = jensen_n_point(f, mean_pair_from(pair), xs, w);
            MeanPair mp = mean_pair_from(pair);
            double lhs = f(mean_value(mp.arg_mean, alpha, xs[0], xs[1]));
            double rhs = mean_value(mp.val_mean, alpha, f(xs[0]), f(xs[1]));
            CHECK(r.lhs == Catch::Approx(lhs).margin(1e-15));
            CHECK(r.rhs == Catch::Approx(rhs).margin(1e-15));
        }
    }
}

TEST_CASE("weight vector validation") {
    CHECK_THROWS_AS(WeightVector(std::vector<double>{0.5, 0.6}), std::domain_error);
    CHECK_THROWS_AS(WeightVector(std::vector<double>{-0.5, 1.5}), std::domain_error);
    CHECK_THROWS_AS(WeightVector(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(
        jensen_n_point(catalog_lookup("exp"), mean_pair_from("AA"), std::vector<double>{1.0, 2.0},
                       WeightVector(std::vector<double>{1.0})),
        std::invalid_argument);
}

TEST_CASE("plain convexity falsifier on signed intervals") {
    CHECK(check_plain_convexity([](double t) { return t * t; }, {-3.0, 3.0}, 2000, kSeed,
                                Direction::Convex) == Verdict::HoldsOnSamples);
    CHECK(check_plain_convexity([](double t) { return std::sin(t); }, {0.0, 3.0}, 2000, kSeed,
                                Direction::Convex) == Verdict::Fails);
    CHECK(check_plain_convexity([](double t) { return std::log(1.0 + std::exp(t)); }, {-5.0, 5.0},
                                2000, kSeed, Direction::Convex) == Verdict::HoldsOnSamples);
}
