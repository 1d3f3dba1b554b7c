#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdiv/convexity.hpp"
#include "fdiv/core_function.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/means.hpp"
#include "fdiv/rng.hpp"
#include "fdiv/tolerance.hpp"

namespace fdv {

struct InequalityResult {
    double lhs;
    double rhs;
    bool holds;
};

inline InequalityResult make_result(double lhs, double rhs, double rel_tol) {
    double margin = rel_tol * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
    return {lhs, rhs, lhs <= rhs + margin};
}

enum class Thm23Part { I, II, III, IV, V };

inline Thm23Part thm23_part_from(const std::string& s) {
    if (s == "i") return Thm23Part::I;
    if (s == "ii") return Thm23Part::II;
    if (s == "iii") return Thm23Part::III;
    if (s == "iv") return Thm23Part::IV;
    if (s == "v") return Thm23Part::V;
    throw std::invalid_argument("theorem part must be one of i..v");
}

// Required core-function hypothesis per part: AH, AG, GG, HH, GH.
inline MeanPair thm23_hypothesis(Thm23Part part) {
    switch (part) {
    case Thm23Part::I: return {MeanKind::Arithmetic, MeanKind::Harmonic};
    case Thm23Part::II: return {MeanKind::Arithmetic, MeanKind::Geometric};
    case Thm23Part::III: return {MeanKind::Geometric, MeanKind::Geometric};
    case Thm23Part::IV: return {MeanKind::Harmonic, MeanKind::Harmonic};
    case Thm23Part::V: return {MeanKind::Geometric, MeanKind::Harmonic};
    }
    throw std::logic_error("unreachable");
}

// Evaluates both sides of the part's perspective-transfer inequality at one
// point (a, b, x, y, alpha). Hypothesis verification is the caller's business;
// the checker only evaluates the displayed inequality.
inline InequalityResult check_thm23(const CoreFunction& f, Thm23Part part, double a, double b,
                                    double x, double y, double alpha,
                                    double rel_tol = kDefaultRelTol) {
    auto g = [&f](double u, double v) { return perspective(f, u, v); };
    auto M = [&](MeanKind k, double u, double v) { return mean_value(k, alpha, u, v); };
    using MK = MeanKind;
    switch (part) {
    case Thm23Part::I:
        return make_result(g(M(MK::Arithmetic, a, b), M(MK::Arithmetic, x, y)),
                           M(MK::Harmonic, M(MK::Arithmetic, g(a, x), g(a, y)),
                             M(MK::Arithmetic, g(b, x), g(b, y))),
                           rel_tol);
    case Thm23Part::II:
        return make_result(g(M(MK::Arithmetic, a, b), M(MK::Arithmetic, x, y)),
                           M(MK::Geometric, M(MK::Arithmetic, g(a, x), g(a, y)),
                             M(MK::Arithmetic, g(b, x), g(b, y))),
                           rel_tol);
    case Thm23Part::III:
        return make_result(g(M(MK::Geometric, a, b), M(MK::Geometric, x, y)),
                           M(MK::Geometric, g(a, x), g(b, y)), rel_tol);
    case Thm23Part::IV:
        return make_result(g(M(MK::Harmonic, a, b), M(MK::Harmonic, x, y)),
                           M(MK::Harmonic, g(a, x), g(b, y)), rel_tol);
    case Thm23Part::V:
        return make_result(g(M(MK::Geometric, a, b), M(MK::Geometric, x, y)),
                           M(MK::Harmonic, M(MK::Geometric, g(a, x), g(a, y)),
                             M(MK::Geometric, g(b, x), g(b, y))),
                           rel_tol);
    }
    throw std::logic_error("unreachable");
}

struct CounterexampleResult {
    double lhs; // g(a, A_{1/2}(x,y)) = 3*sqrt(3)
    double rhs; // H_{1/2}(g(a,x), g(a,y)) = 16*sqrt(2)/(4+sqrt(2))
    bool violated;
};

// The fixed witness showing the perspective of an AH-convex core is not
// AH-convex in its second coordinate: f(t) = 1/sqrt(t), a = 1, x = 2, y = 4,
// alpha = 1/2.
inline CounterexampleResult fixed_counterexample() {
    CoreFunction f = catalog_lookup("inv_sqrt");
    double a = 1.0, x = 2.0, y = 4.0, alpha = 0.5;
    double lhs = perspective(f, a, mean_value(MeanKind::Arithmetic, alpha, x, y));
    double rhs = mean_value(MeanKind::Harmonic, alpha, perspective(f, a, x), perspective(f, a, y));
    return {lhs, rhs, lhs > rhs};
}

enum class Thm24Part { I, II, III, IV };

inline Thm24Part thm24_part_from(const std::string& s) {
    if (s == "i") return Thm24Part::I;
    if (s == "ii") return Thm24Part::II;
    if (s == "iii") return Thm24Part::III;
    if (s == "iv") return Thm24Part::IV;
    throw std::invalid_argument("theorem part must be one of i..iv");
}

struct ChainLink {
    std::string label;
    double lhs;
    double rhs;
    bool is_equality; // equality links compare with `close`, not `leq`
    bool holds;
};

struct ChainResult {
    std::vector<ChainLink> links;

    bool all_hold() const {
        for (const auto& l : links)
            if (!l.holds) return false;
        return true;
    }
};

namespace detail {

inline ChainLink ineq_link(std::string label, double lhs, double rhs, double rel_tol) {
    auto r = make_result(lhs, rhs, rel_tol);
    return {std::move(label), lhs, rhs, false, r.holds};
}

inline ChainLink eq_link(std::string label, double lhs, double rhs, double rel_tol) {
    double margin = rel_tol * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
    return {std::move(label), lhs, rhs, true, std::fabs(lhs - rhs) <= margin};
}

} // namespace detail

// Sum inequalities with transformed cores. Tuple bars are sums: abar = sum a_i.
// Part hypotheses: (i) AH-convex, (ii) AG-convex, (iii) HA-convex,
// (iv) increasing GA-convex.
inline ChainResult check_thm24(const CoreFunction& f, Thm24Part part, const PositiveTuple& a,
                               const PositiveTuple& b, double rel_tol = kDefaultRelTol,
                               double eq_rel_tol = 1e-10) {
    if (a.size() != b.size()) throw std::invalid_argument("check_thm24: length mismatch");
    if (!a.strictly_positive() || !b.strictly_positive())
        throw std::domain_error("check_thm24: tuples must be strictly positive");
    double abar = tuple_sum(a), bbar = tuple_sum(b);
    double g_ab = perspective(f, abar, bbar);
    ChainResult out;
    switch (part) {
    case Thm24Part::I: {
        // The displayed coefficient is abar^2, but the derivation multiplies by
        // (sum b_k)^2; only bbar^2 makes the second link true. See the tests.
        double mid = bbar * bbar / csiszar_divergence(transform_reciprocal_value(f), a, b).value;
        double If = csiszar_divergence(f, a, b).value;
        out.links.push_back(detail::ineq_link("g(abar,bbar) <= bbar^2/I_{1/f}(a,b)", g_ab, mid, rel_tol));
        out.links.push_back(detail::ineq_link("bbar^2/I_{1/f}(a,b) <= I_f(a,b)", mid, If, rel_tol));
        return out;
    }
    case Thm24Part::II: {
        double ilogf = csiszar_divergence(transform_log_compose(f), a, b).value;
        double mid = bbar * std::exp(ilogf / bbar);
        double If = csiszar_divergence(f, a, b).value;
        out.links.push_back(
            detail::ineq_link("g(abar,bbar) <= bbar*exp(I_{log f}(a,b)/bbar)", g_ab, mid, rel_tol));
        out.links.push_back(detail::ineq_link("bbar*exp(I_{log f}/bbar) <= I_f(a,b)", mid, If, rel_tol));
        return out;
    }
    case Thm24Part::III: {
        CoreFunction phi = transform_arg_reciprocal(f); // f(1/t)
        CoreFunction tf = transform_mul_t(f);           // t f(t)
        double ratio = bbar / abar;
        double g_phi = perspective(phi, bbar, abar);
        double g_tf = perspective(tf, abar, bbar);
        double i_phi = csiszar_divergence(phi, b, a).value;
        double i_tf = csiszar_divergence(tf, a, b).value;
        out.links.push_back(
            detail::eq_link("g(abar,bbar) = (bbar/abar)*g_phi(bbar,abar)", g_ab, ratio * g_phi, eq_rel_tol));
        out.links.push_back(detail::eq_link("(bbar/abar)*g_phi(bbar,abar) = (bbar/abar)*g_tf(abar,bbar)",
                                            ratio * g_phi, ratio * g_tf, eq_rel_tol));
        out.links.push_back(detail::ineq_link("g(abar,bbar) <= (bbar/abar)*I_phi(b,a)", g_ab,
                                              ratio * i_phi, rel_tol));
        out.links.push_back(
            detail::eq_link("I_phi(b,a) = I_{t f(t)}(a,b)", i_phi, i_tf, eq_rel_tol));
        return out;
    }
    case Thm24Part::IV: {
        CoreFunction fexp = transform_compose_exp(f);
        double g_fexp = bbar * fexp(abar / bbar);
        detail::Accumulator acc;
        for (std::size_t i = 0; i < a.size(); ++i) acc.add(b[i] * fexp(a[i] / b[i]));
        double i_fexp = acc.total();
        out.links.push_back(detail::ineq_link("g(abar,bbar) <= g_{f.exp}(abar,bbar)", g_ab, g_fexp, rel_tol));
        out.links.push_back(
            detail::ineq_link("g_{f.exp}(abar,bbar) <= I_{f.exp}(a,b)", g_fexp, i_fexp, rel_tol));
        return out;
    }
    }
    throw std::logic_error("unreachable");
}

// Sampled monotonicity precondition for the increasing-core chain variant.
inline bool sampled_increasing(const CoreFunction& f, Interval interval, std::uint64_t pairs,
                               std::uint64_t seed, double rel_tol = kDefaultRelTol) {
    for (std::uint64_t i = 0; i < pairs; ++i) {
        auto rng = trial_rng(seed, i);
        double x = sample_log_uniform(rng, interval.lo, interval.hi);
        double y = sample_log_uniform(rng, interval.lo, interval.hi);
        if (x > y) std::swap(x, y);
        double fx = f(x), fy = f(y);
        if (fx > fy + rel_tol * std::max({std::fabs(fx), std::fabs(fy), 1.0})) return false;
    }
    return true;
}

struct SuiteViolation {
    std::string where;
    std::vector<double> point;
    double lhs;
    double rhs;
};

struct SuiteReport {
    std::uint64_t trials = 0;
    std::uint64_t checks_run = 0;
    std::vector<SuiteViolation> violations;
};

struct Thm23Pairing {
    CoreFunction core;
    Thm23Part part;
    Interval sample_interval;              // (a, b) range
    std::optional<Interval> xy_interval{}; // (x, y) range, defaults to sample_interval
};

struct Thm24Pairing {
    CoreFunction core;
    Thm24Part part;
    Interval sample_interval;
    std::size_t max_len = 8;
};

inline SuiteReport randomized_suite_thm23(const std::vector<Thm23Pairing>& pairings,
                                          std::uint64_t trials, std::uint64_t seed,
                                          double rel_tol = kDefaultRelTol) {
    SuiteReport report;
    report.trials = trials;
    for (std::size_t pi = 0; pi < pairings.size(); ++pi) {
        const auto& pr = pairings[pi];
        for (std::uint64_t t = 0; t < trials; ++t) {
            auto rng = trial_rng(seed ^ (pi + 1) * 0x9e37ULL, t);
            Interval xy = pr.xy_interval.value_or(pr.sample_interval);
            double a = sample_log_uniform(rng, pr.sample_interval.lo, pr.sample_interval.hi);
            double b = sample_log_uniform(rng, pr.sample_interval.lo, pr.sample_interval.hi);
            double x = sample_log_uniform(rng, xy.lo, xy.hi);
            double y = sample_log_uniform(rng, xy.lo, xy.hi);
            double alpha = sample_uniform(rng, 0.0, 1.0);
            auto res = check_thm23(pr.core, pr.part, a, b, x, y, alpha, rel_tol);
            ++report.checks_run;
            if (!res.holds)
                report.violations.push_back(
                    {pr.core.name() + "/thm23", {a, b, x, y, alpha}, res.lhs, res.rhs});
        }
    }
    return report;
}

inline SuiteReport randomized_suite_thm24(const std::vector<Thm24Pairing>& pairings,
                                          std::uint64_t trials, std::uint64_t seed,
                                          double rel_tol = kDefaultRelTol) {
    SuiteReport report;
    report.trials = trials;
    for (std::size_t pi = 0; pi < pairings.size(); ++pi) {
        const auto& pr = pairings[pi];
        for (std::uint64_t t = 0; t < trials; ++t) {
            auto rng = trial_rng(seed ^ (pi + 7) * 0x85ebULL, t);
            std::uniform_int_distribution<std::size_t> len_dist(2, pr.max_len);
            std::size_t n = len_dist(rng);
            std::vector<double> av(n), bv(n);
            for (std::size_t i = 0; i < n; ++i) {
                av[i] = sample_log_uniform(rng, pr.sample_interval.lo, pr.sample_interval.hi);
                bv[i] = sample_log_uniform(rng, pr.sample_interval.lo, pr.sample_interval.hi);
            }
            auto chain = check_thm24(pr.core, pr.part, PositiveTuple(av), PositiveTuple(bv), rel_tol);
            ++report.checks_run;
            for (const auto& link : chain.links)
                if (!link.holds)
                    report.violations.push_back({pr.core.name() + "/thm24 " + link.label, av, link.lhs,
                                                 link.rhs});
        }
    }
    return report;
}

} // namespace fdv
