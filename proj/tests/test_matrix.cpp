#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fdiv/matrix.hpp"
#include "fdiv/matrix_suites.hpp"

using namespace fdv;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

} // namespace

TEST_CASE("eigendecompose diagonal and near-trivial matrices") {
    auto d = eigendecompose(SymMatrix::diagonal({3.0, 1.0}));
    CHECK(d.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(d.eigenvalues[1] == Catch::Approx(3.0).margin(1e-12));
    CHECK(d.eigenvectors(1, 0) == Catch::Approx(1.0).margin(1e-12)); // e2 then e1
    CHECK(d.eigenvectors(0, 1) == Catch::Approx(1.0).margin(1e-12));

    auto t = eigendecompose(SymMatrix(mat2(2.0, 1.0, 1.0, 2.0)));
    CHECK(t.eigenvalues[0] == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(t.eigenvalues[1] == Catch::Approx(3.0).epsilon(1e-12));
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::fabs(t.eigenvectors(0, 0)) == Catch::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(std::fabs(t.eigenvectors(1, 0)) == Catch::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(t.eigenvectors(0, 0) * t.eigenvectors(1, 0) < 0.0); // (1,-1) direction

    // identity: one degenerate cluster, reconstruction still binds
    auto id = eigendecompose(SymMatrix(Matrix::identity(4)));
    CHECK(id.clusters.size() == 1);
    CHECK(id.clusters[0].multiplicity == 4);
    CHECK(max_abs_diff(id.reconstruct(), Matrix::identity(4)) < 1e-12);
}

TEST_CASE("spectral invariants on random symmetric matrices") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = trial_rng(55, i);
        std::uniform_int_distribution<std::size_t> nd(1, 16);
        std::size_t n = nd(rng);
        std::normal_distribution<double> gauss(0.0, 2.0);
        Matrix g(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c) g(r, c) = g(c, r) = gauss(rng);
        SymMatrix a(g);
        auto sf = eigendecompose(a);

        double lam_scale = std::max(std::fabs(sf.eigenvalues.front()),
                                    std::fabs(sf.eigenvalues.back()));
        CHECK(max_abs_diff(sf.reconstruct(), a.raw()) <= 1e-9 * std::max(lam_scale, 1.0));

        // orthonormality of the eigenvector basis
        Matrix vtv(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t k = 0; k < n; ++k)
                    vtv(r, c) += sf.eigenvectors(k, r) * sf.eigenvectors(k, c);
        CHECK(max_abs_diff(vtv, Matrix::identity(n)) <= 1e-10);

        // completeness of the cluster projections
        Matrix sum(n, n);
        for (const auto& c : sf.clusters) sum += c.projection;
        CHECK(max_abs_diff(sum, Matrix::identity(n)) <= 1e-10);

        // ascending order
        for (std::size_t k = 1; k < n; ++k)
            CHECK(sf.eigenvalues[k - 1] <= sf.eigenvalues[k] + 1e-12);
    }
}

TEST_CASE("matrix functions agree with direct algebra") {
    SymMatrix a(mat2(2.0, 1.0, 1.0, 2.0));
    auto sq = matrix_function(catalog_lookup("power_r", 2.0), a);
    CHECK(max_abs_diff(sq.raw(), mat2(5.0, 4.0, 4.0, 5.0)) < 1e-12);

    auto same = matrix_function(catalog_lookup("power_r", 1.0), a);
    CHECK(max_abs_diff(same.raw(), a.raw()) < 1e-12);

    auto e = matrix_function(catalog_lookup("exp"), SymMatrix::diagonal({1e-12, std::log(2.0)}));
    CHECK(e(0, 0) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(e(1, 1) == Catch::Approx(2.0).epsilon(1e-12));

    // random A: f(A) = A*A for f = t^2
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto rng = trial_rng(56, i);
        SymMatrix r = random_sym_matrix_in(rng, 5, {0.5, 3.0});
        auto fa = matrix_function(catalog_lookup("power_r", 2.0), r);
        Matrix aa = r.raw() * r.raw();
        CHECK(max_abs_diff(fa.raw(), aa) <= 1e-9 * std::max(aa.max_abs(), 1.0));
    }
}

TEST_CASE("spectrum outside the domain is rejected with detail") {
    SymMatrix a = SymMatrix::diagonal({-1.0, 2.0});
    CHECK_THROWS_AS(matrix_function(catalog_lookup("kl"), a), SpectrumDomainError);
    CHECK_THROWS_AS(matrix_function(catalog_lookup("geom_series"), SymMatrix::diagonal({0.5, 2.0})),
                    SpectrumDomainError);
}

TEST_CASE("two-variable calculus on product functions") {
    SymMatrix a = SymMatrix::diagonal({1.0, 2.0});
    SymMatrix b = SymMatrix::diagonal({3.0, 4.0});
    TwoVarFunction prod{"t*s", [](double t, double s) { return t * s; }};
    auto ab = two_variable_matrix_function(prod, a, b);
    CHECK(max_abs_diff(ab.raw(), kronecker(a.raw(), b.raw())) < 1e-12);

    TwoVarFunction one{"1", [](double, double) { return 1.0; }};
    auto id = two_variable_matrix_function(one, a, b);
    CHECK(max_abs_diff(id.raw(), Matrix::identity(4)) < 1e-12);

    // perspective of sqrt: s f(t/s) = sqrt(t s)
    auto g = perspective_two_var(catalog_lookup("power_r", 0.5));
    auto gm = two_variable_matrix_function(g, SymMatrix::diagonal({1.0, 4.0}),
                                           SymMatrix::diagonal({1.0, 1.0}));
    Matrix expect(4, 4);
    expect(0, 0) = expect(1, 1) = 1.0;
    expect(2, 2) = expect(3, 3) = 2.0;
    CHECK(max_abs_diff(gm.raw(), expect) < 1e-12);

    // t*s on random matrices equals the Kronecker product
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto rng = trial_rng(57, i);
        SymMatrix ra = random_sym_matrix_in(rng, 3, {0.2, 4.0});
        SymMatrix rb = random_sym_matrix_in(rng, 4, {0.2, 4.0});
        auto m = two_variable_matrix_function(prod, ra, rb);
        CHECK(max_abs_diff(m.raw(), kronecker(ra.raw(), rb.raw())) <= 1e-9);
    }
}

TEST_CASE("one-matrix Jensen hand examples") {
    SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
    UnitVector eta = UnitVector::normalized({1.0, 1.0});

    auto aa = jensen_scalar_form(catalog_lookup("power_r", 2.0), mean_pair_from("AA"), a, eta);
    CHECK(aa.lhs == Catch::Approx(6.25).epsilon(1e-12));
    CHECK(aa.rhs == Catch::Approx(8.5).epsilon(1e-12));
    CHECK(aa.holds);

    auto hh = jensen_scalar_form(catalog_lookup("power_r", 0.5), mean_pair_from("HH"), a, eta);
    CHECK(hh.lhs == Catch::Approx(1.2649110640673518).epsilon(1e-12)); // sqrt(1.6)
    CHECK(hh.rhs == Catch::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(hh.holds);

    // an eigenvector collapses both sides
    UnitVector e1 = UnitVector::normalized({1.0, 0.0});
    auto gg = jensen_scalar_form(catalog_lookup("exp"), mean_pair_from("GG"),
                                 SymMatrix::diagonal({0.5, 2.0}), e1);
    CHECK(gg.lhs == Catch::Approx(gg.rhs).epsilon(1e-12));
}

TEST_CASE("spectral weights behave like scalar weights") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = trial_rng(58, i);
        SymMatrix a = random_sym_matrix_in(rng, 6, {0.2, 5.0});
        UnitVector eta = random_unit_vector(rng, 6);
        auto sf = eigendecompose(a);

        double wsum = 0.0, geo = 0.0;
        for (const auto& c : sf.clusters) {
            double w = detail::inner(c.projection, eta);
            wsum += w;
            geo += w * std::log(c.value);
        }
        CHECK(wsum == Catch::Approx(1.0).margin(1e-10));
        double gside = detail::matrix_mean_side(MeanKind::Geometric, a, eta);
        CHECK(gside == Catch::Approx(std::exp(geo)).margin(1e-10));
    }
}

TEST_CASE("f(A) is invariant under degenerate-basis rotation") {
    // a matrix with a double eigenvalue, expressed in two different bases
    SymMatrix d = SymMatrix::diagonal({2.0, 2.0, 5.0});
    double c = std::cos(0.7), s = std::sin(0.7);
    Matrix r(3, 3);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    r(2, 2) = 1.0;
    // R d R^T leaves d unchanged because the rotation acts inside the
    // degenerate eigenspace
    Matrix rd = r * d.raw();
    Matrix rt(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) rt(i, j) = r(j, i);
    SymMatrix rotated((rd * rt));
    auto fa = matrix_function(catalog_lookup("kl"), d);
    auto fb = matrix_function(catalog_lookup("kl"), rotated);
    CHECK(max_abs_diff(fa.raw(), fb.raw()) <= 1e-8);
    CHECK(eigendecompose(rotated).clusters.size() == 2);
}

TEST_CASE("two-variable Jensen hand examples") {
    UnitVector half = UnitVector::normalized({1.0, 1.0});
    TwoVarFunction sqdiff{"(t-s)^2", [](double t, double s) { return (t - s) * (t - s); }};
    auto r = jensen_two_variable(sqdiff, TwoVarHypothesis::SeparatelyConvex,
                                 SymMatrix::diagonal({0.0, 1.0}), SymMatrix::diagonal({0.0, 1.0}),
                                 half, half);
    REQUIRE(r.links.size() == 1);
    CHECK(r.links[0].lhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(r.links[0].rhs == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(r.all_hold());

    // scalar second factor collapses the HH form to equality in that slot
    auto g = perspective_two_var(catalog_lookup("power_r", 0.5));
    auto hh = jensen_two_variable(g, TwoVarHypothesis::SeparatelyHH,
                                  SymMatrix::diagonal({1.0, 4.0}), SymMatrix::diagonal({2.0, 2.0}),
                                  half, half);
    CHECK(hh.all_hold());
}

TEST_CASE("tensor product-power inequality hand example") {
    SymMatrix a = SymMatrix::diagonal({1.0, 4.0});
    UnitVector half = UnitVector::normalized({1.0, 1.0});
    auto r = remark_scalar_product_case(0.5, a, a, half, half);
    CHECK(r.lhs == Catch::Approx(1.6).epsilon(1e-12));  // <A^{-1}>^{-1} both sides
    CHECK(r.rhs == Catch::Approx(2.25).epsilon(1e-12)); // <A^{1/2}>^2 = 1.5^2
    CHECK(r.holds);

    // identity matrices give equality
    SymMatrix id(Matrix::identity(3));
    UnitVector v = UnitVector::normalized({1.0, 2.0, -1.0});
    auto req = remark_scalar_product_case(0.5, id, id, v, v);
    CHECK(req.lhs == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(req.rhs == Catch::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(remark_scalar_product_case(1.5, a, a, half, half), std::domain_error);
}

TEST_CASE("validation of matrix inputs") {
    Matrix bad(2, 2);
    bad(0, 1) = 1.0; // asymmetric
    CHECK_THROWS_AS(SymMatrix(bad), std::domain_error);
    CHECK_THROWS_AS(SymMatrix(Matrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(UnitVector({0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(UnitVector(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(jensen_scalar_form(catalog_lookup("exp"), mean_pair_from("AA"),
                                       SymMatrix::diagonal({1.0, 2.0}),
                                       UnitVector::normalized({1.0, 0.0, 0.0})),
                    std::invalid_argument);
    // harmonic side needs an invertible positive matrix
    CHECK_THROWS_AS(jensen_scalar_form(catalog_lookup("exp"), mean_pair_from("AH"),
                                       SymMatrix::diagonal({0.0, 2.0}),
                                       UnitVector::normalized({1.0, 1.0})),
                    SpectrumDomainError);
}

TEST_CASE("randomized matrix suites are clean and deterministic") {
    auto p = run_prop31_suite(60, 11);
    CHECK(p.violations.empty());
    auto p2 = run_prop31_suite(60, 11);
    CHECK(p2.checks_run == p.checks_run);

    auto t = run_thm32_suite(40, 11);
    CHECK(t.violations.empty());
}
