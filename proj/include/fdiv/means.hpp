#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>

namespace fdv {

enum class MeanKind { Arithmetic, Geometric, Harmonic };

inline char mean_symbol(MeanKind k) {
    switch (k) {
    case MeanKind::Arithmetic: return 'A';
    case MeanKind::Geometric: return 'G';
    case MeanKind::Harmonic: return 'H';
    }
    return '?';
}

inline MeanKind mean_from_symbol(char c) {
    switch (c) {
    case 'A': return MeanKind::Arithmetic;
    case 'G': return MeanKind::Geometric;
    case 'H': return MeanKind::Harmonic;
    }
    throw std::invalid_argument(std::string("unknown mean symbol: ") + c);
}

// Two-point weighted mean with weight alpha on the first argument.
struct WeightedMean {
    MeanKind kind;
    double alpha;

    WeightedMean(MeanKind k, double a) : kind(k), alpha(a) {
        if (!(a >= 0.0 && a <= 1.0))
            throw std::domain_error("weight alpha must lie in [0,1]");
    }
};

inline double evaluate(const WeightedMean& m, double x, double y) {
    const double a = m.alpha;
    switch (m.kind) {
    case MeanKind::Arithmetic:
        if (x < 0.0 || y < 0.0)
            throw std::domain_error("arithmetic mean: negative argument");
        return a * x + (1.0 - a) * y;
    case MeanKind::Geometric:
        if (!(x > 0.0) || !(y > 0.0))
            throw std::domain_error("geometric mean: nonpositive argument");
        // exp/log form keeps x^a finite for large x.
        return std::exp(a * std::log(x) + (1.0 - a) * std::log(y));
    case MeanKind::Harmonic:
        if (!(x > 0.0) || !(y > 0.0))
            throw std::domain_error("harmonic mean: nonpositive argument");
        if (a == 0.0) return y; // avoid 0 * (1/x) noise at the boundary
        if (a == 1.0) return x;
        return 1.0 / (a / x + (1.0 - a) / y);
    }
    throw std::logic_error("unreachable mean kind");
}

inline double mean_value(MeanKind k, double alpha, double x, double y) {
    return evaluate(WeightedMean(k, alpha), x, y);
}

// (M, N) pair: M averages arguments, N averages values.
struct MeanPair {
    MeanKind arg_mean;
    MeanKind val_mean;

    bool operator==(const MeanPair&) const = default;
    std::string str() const { return std::string{mean_symbol(arg_mean), mean_symbol(val_mean)}; }
};

inline MeanPair mean_pair_from(const std::string& s) {
    if (s.size() != 2) throw std::invalid_argument("mean pair must be two of A/G/H, e.g. \"AG\"");
    return MeanPair{mean_from_symbol(s[0]), mean_from_symbol(s[1])};
}

inline const MeanPair kAllMeanPairs[9] = {
    {MeanKind::Arithmetic, MeanKind::Arithmetic}, {MeanKind::Arithmetic, MeanKind::Geometric},
    {MeanKind::Arithmetic, MeanKind::Harmonic},   {MeanKind::Geometric, MeanKind::Arithmetic},
    {MeanKind::Geometric, MeanKind::Geometric},   {MeanKind::Geometric, MeanKind::Harmonic},
    {MeanKind::Harmonic, MeanKind::Arithmetic},   {MeanKind::Harmonic, MeanKind::Geometric},
    {MeanKind::Harmonic, MeanKind::Harmonic}};

struct AghTriple {
    double harmonic;
    double geometric;
    double arithmetic;
    bool ordered; // H <= G <= A within tolerance
};

// Self-test surface for the H <= G <= A chain.
inline AghTriple agh_ordering_check(double alpha, double x, double y, double tol = 1e-12) {
    AghTriple t{};
    t.harmonic = mean_value(MeanKind::Harmonic, alpha, x, y);
    t.geometric = mean_value(MeanKind::Geometric, alpha, x, y);
    t.arithmetic = mean_value(MeanKind::Arithmetic, alpha, x, y);
    t.ordered = t.harmonic <= t.geometric + tol && t.geometric <= t.arithmetic + tol;
    return t;
}

// n-point weighted mean; weights are assumed to sum to 1.
inline double n_point_mean(MeanKind k, std::span<const double> xs, std::span<const double> w) {
    if (xs.size() != w.size())
        throw std::invalid_argument("n_point_mean: length mismatch");
    double acc = 0.0;
    switch (k) {
    case MeanKind::Arithmetic:
        for (std::size_t i = 0; i < xs.size(); ++i) acc += w[i] * xs[i];
        return acc;
    case MeanKind::Geometric:
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (w[i] == 0.0) continue;
            if (!(xs[i] > 0.0))
                throw std::domain_error("geometric mean: nonpositive argument");
            acc += w[i] * std::log(xs[i]);
        }
        return std::exp(acc);
    case MeanKind::Harmonic:
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (w[i] == 0.0) continue;
            if (!(xs[i] > 0.0))
                throw std::domain_error("harmonic mean: nonpositive argument");
            acc += w[i] / xs[i];
        }
        return 1.0 / acc;
    }
    throw std::logic_error("unreachable mean kind");
}

} // namespace fdv
