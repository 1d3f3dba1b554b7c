#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdiv/catalog.hpp"
#include "fdiv/convexity.hpp"
#include "fdiv/matrix.hpp"
#include "fdiv/perspective_checks.hpp"
#include "fdiv/rng.hpp"

namespace fdv {

// Random symmetric matrix with spectrum remapped affinely into (lo, hi):
// symmetrized Gaussian entries, decomposed, eigenvalues replaced.
inline SymMatrix random_sym_matrix_in(std::mt19937_64& rng, std::size_t n, Interval spectrum) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = gauss(rng);
            g(i, j) = v;
            g(j, i) = v;
        }
    SpectralForm sf = eigendecompose(SymMatrix(g));
    double lo = sf.eigenvalues.front(), hi = sf.eigenvalues.back();
    double span = hi > lo ? hi - lo : 1.0;
    Matrix out(n, n);
    // jitter keeps remapped spectra away from exact degeneracy
    std::uniform_real_distribution<double> jitter(0.05, 0.95);
    for (std::size_t k = 0; k < n; ++k) {
        double u = n == 1 ? jitter(rng) : (sf.eigenvalues[k] - lo) / span * 0.9 + 0.05;
        double lambda = spectrum.lo + u * (spectrum.hi - spectrum.lo);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s)
                out(r, s) += lambda * sf.eigenvectors(r, k) * sf.eigenvectors(s, k);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double m = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = out(j, i) = m;
        }
    return SymMatrix(std::move(out));
}

inline UnitVector random_unit_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& x : v) {
            x = gauss(rng);
            norm += x * x;
        }
    } while (norm < 1e-12);
    return UnitVector::normalized(std::move(v));
}

struct Prop31Case {
    std::string label;
    CoreFunction core;
    MeanPair variant;
    Interval spectrum;
};

// Hypothesis-matched (core, variant) pairs for the one-matrix Jensen forms,
// including the plain AA case.
inline std::vector<Prop31Case> prop31_cases() {
    return {
        {"AA/kl", catalog_lookup("kl"), {MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.2, 5.0}},
        {"AA/chi2", catalog_lookup("chi2"), {MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.2, 5.0}},
        {"AA/hellinger", catalog_lookup("hellinger"), {MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.2, 5.0}},
        {"i:AH/inv_sqrt", catalog_lookup("inv_sqrt"), {MeanKind::Arithmetic, MeanKind::Harmonic}, {0.2, 5.0}},
        {"ii:AG/exp", catalog_lookup("exp"), {MeanKind::Arithmetic, MeanKind::Geometric}, {0.1, 4.0}},
        {"iii:GA/log1p", catalog_lookup("log1p"), {MeanKind::Geometric, MeanKind::Arithmetic}, {0.2, 5.0}},
        {"iv:GG/exp", catalog_lookup("exp"), {MeanKind::Geometric, MeanKind::Geometric}, {0.1, 4.0}},
        {"v:GH/inv_sqrt_log", catalog_lookup("inv_sqrt_log"), {MeanKind::Geometric, MeanKind::Harmonic}, {1.5, 20.0}},
        {"vi:HG/exp_power", catalog_lookup("exp_power", -1.0), {MeanKind::Harmonic, MeanKind::Geometric}, {0.3, 4.0}},
        {"vii:HH/power_r(0.5)", catalog_lookup("power_r", 0.5), {MeanKind::Harmonic, MeanKind::Harmonic}, {0.2, 5.0}},
    };
}

inline SuiteReport run_prop31_suite(std::uint64_t instances, std::uint64_t seed,
                                    std::size_t max_dim = 6, double rel_tol = 1e-9) {
    SuiteReport report;
    report.trials = instances;
    auto cases = prop31_cases();
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const auto& c = cases[ci];
        for (std::uint64_t t = 0; t < instances; ++t) {
            auto rng = trial_rng(seed ^ (ci + 3) * 0xc2b2ULL, t);
            std::uniform_int_distribution<std::size_t> nd(2, max_dim);
            std::size_t n = nd(rng);
            SymMatrix a = random_sym_matrix_in(rng, n, c.spectrum);
            UnitVector eta = random_unit_vector(rng, n);
            auto r = jensen_scalar_form(c.core, c.variant, a, eta, rel_tol);
            ++report.checks_run;
            if (!r.holds) report.violations.push_back({"prop31/" + c.label, {}, r.lhs, r.rhs});
        }
    }
    return report;
}

struct Thm32Case {
    std::string label;
    TwoVarFunction h;
    TwoVarHypothesis hypothesis;
    Interval spectrum_a;
    Interval spectrum_b;
};

inline std::vector<Thm32Case> thm32_cases() {
    CoreFunction chi2 = catalog_lookup("chi2");
    CoreFunction exp_core = catalog_lookup("exp");
    CoreFunction sqrt_core = catalog_lookup("power_r", 0.5);
    CoreFunction pow03 = catalog_lookup("power_r", 0.3);
    CoreFunction inv_sqrt = catalog_lookup("inv_sqrt");
    return {
        {"3.9:separately_convex/(t-s)^2",
         {"(t-s)^2", [](double t, double s) { double d = t - s; return d * d; }},
         TwoVarHypothesis::SeparatelyConvex, {-2.0, 2.0}, {-2.0, 2.0}},
        {"3.9:separately_convex/perspective(chi2)",
         perspective_two_var(chi2), TwoVarHypothesis::SeparatelyConvex, {0.2, 4.0}, {0.2, 4.0}},
        {"3.10:separately_HH/perspective(sqrt)",
         perspective_two_var(sqrt_core), TwoVarHypothesis::SeparatelyHH, {0.2, 4.0}, {0.2, 4.0}},
        {"3.10:separately_HH/perspective(t^0.3)",
         perspective_two_var(pow03), TwoVarHypothesis::SeparatelyHH, {0.2, 4.0}, {0.2, 4.0}},
        {"3.11:separately_GG/perspective(exp)",
         perspective_two_var(exp_core), TwoVarHypothesis::SeparatelyGG, {0.2, 4.0}, {0.2, 4.0}},
        {"remark2:AH_first/perspective(inv_sqrt)",
         perspective_two_var(inv_sqrt), TwoVarHypothesis::AHFirstConvexSecond, {0.2, 4.0}, {0.2, 4.0}},
    };
}

inline SuiteReport run_thm32_suite(std::uint64_t instances, std::uint64_t seed,
                                   std::size_t max_dim = 6, double rel_tol = 1e-9) {
    SuiteReport report;
    report.trials = instances;
    auto cases = thm32_cases();
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const auto& c = cases[ci];
        for (std::uint64_t t = 0; t < instances; ++t) {
            auto rng = trial_rng(seed ^ (ci + 11) * 0x27d4ULL, t);
            std::uniform_int_distribution<std::size_t> nd(2, max_dim);
            std::size_t n = nd(rng), m = nd(rng);
            SymMatrix a = random_sym_matrix_in(rng, n, c.spectrum_a);
            SymMatrix b = random_sym_matrix_in(rng, m, c.spectrum_b);
            UnitVector eta = random_unit_vector(rng, n);
            UnitVector zeta = random_unit_vector(rng, m);
            auto r = jensen_two_variable(c.h, c.hypothesis, a, b, eta, zeta, rel_tol);
            ++report.checks_run;
            for (const auto& link : r.links)
                if (!link.holds)
                    report.violations.push_back({"thm32/" + c.label + " " + link.label, {}, link.lhs,
                                                 link.rhs});
        }
    }
    // remark 1: the A^r (x) B^{1-r} product case
    for (std::uint64_t t = 0; t < instances; ++t) {
        auto rng = trial_rng(seed ^ 0x5151ULL, t);
        std::uniform_int_distribution<std::size_t> nd(2, max_dim);
        std::size_t n = nd(rng), m = nd(rng);
        double r = sample_uniform(rng, 0.0, 1.0);
        SymMatrix a = random_sym_matrix_in(rng, n, {0.2, 4.0});
        SymMatrix b = random_sym_matrix_in(rng, m, {0.2, 4.0});
        UnitVector eta = random_unit_vector(rng, n);
        UnitVector zeta = random_unit_vector(rng, m);
        auto res = remark_scalar_product_case(r, a, b, eta, zeta, rel_tol);
        ++report.checks_run;
        if (!res.holds) report.violations.push_back({"thm32/remark1 r=" + std::to_string(r), {r}, res.lhs, res.rhs});
    }
    return report;
}

// Default hypothesis-matched pairings for the scalar perspective suites. The
// hellinger/GG pairing asserted in the source material fails classification
// (see the convexity tests) and is therefore not part of the default set.
inline std::vector<Thm23Pairing> default_thm23_pairings() {
    return {
        {catalog_lookup("inv_sqrt"), Thm23Part::I, {0.1, 10.0}},
        {catalog_lookup("exp"), Thm23Part::II, {0.1, 10.0}},
        {catalog_lookup("exp"), Thm23Part::III, {0.2, 5.0}},
        {catalog_lookup("power_r", 0.5), Thm23Part::IV, {0.1, 10.0}},
        {catalog_lookup("inv_sqrt_log"), Thm23Part::V, {100.0, 1000.0}, Interval{1.0, 2.0}},
    };
}

inline std::vector<Thm24Pairing> default_thm24_pairings() {
    return {
        {catalog_lookup("inv_sqrt"), Thm24Part::I, {0.1, 10.0}},
        {catalog_lookup("power_r", -1.0), Thm24Part::II, {0.1, 10.0}},
        {catalog_lookup("power_r", 0.5), Thm24Part::III, {0.1, 10.0}},
        {catalog_lookup("log1p"), Thm24Part::IV, {0.1, 10.0}, 4},
    };
}

} // namespace fdv
