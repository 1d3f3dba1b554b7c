#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdiv/catalog.hpp"
#include "fdiv/core_function.hpp"

namespace fdv {

// n-tuple of nonnegative reals; at least one entry positive unless the caller
// explicitly allows an all-zero tuple.
class PositiveTuple {
public:
    explicit PositiveTuple(std::vector<double> values, bool allow_all_zero = false)
        : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("tuple must have length >= 1");
        bool any_positive = false;
        for (double v : values_) {
            if (v < 0.0 || std::isnan(v)) throw std::domain_error("tuple entries must be >= 0");
            any_positive = any_positive || v > 0.0;
        }
        if (!any_positive && !allow_all_zero)
            throw std::domain_error("tuple must contain a positive entry");
    }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    bool strictly_positive() const {
        for (double v : values_)
            if (!(v > 0.0)) return false;
        return true;
    }

private:
    std::vector<double> values_;
};

inline double tuple_sum(const PositiveTuple& p) {
    double sum = 0.0, c = 0.0;
    for (double v : p.values()) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

struct ConventionFlags {
    bool used_zero_over_zero = false; // q_j = 0 and p_j = 0
    bool used_p_over_zero = false;    // q_j = 0 and p_j > 0
};

struct DivergenceValue {
    extended_real value;
    ConventionFlags flags;
};

struct IndeterminateFormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Kahan accumulator with absorbing infinities; +inf combined with -inf is an
// error, never a NaN.
class Accumulator {
public:
    void add(double term) {
        if (std::isinf(term)) {
            if (term > 0) pos_inf_ = true;
            else neg_inf_ = true;
            if (pos_inf_ && neg_inf_)
                throw IndeterminateFormError("divergence sum mixes +inf and -inf contributions");
            return;
        }
        double y = term - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    extended_real total() const {
        if (pos_inf_) return kPlusInf;
        if (neg_inf_) return kMinusInf;
        return sum_;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    bool pos_inf_ = false;
    bool neg_inf_ = false;
};

inline double require_declared(extended_real v, const std::string& what) {
    if (!is_declared(v)) throw std::domain_error(what + " is not declared for this core function");
    return v;
}

} // namespace detail

// I_f(p, q) = sum_j q_j f(p_j / q_j), with the limit conventions:
//   q_j = 0, p_j = 0  ->  0
//   q_j = 0, p_j > 0  ->  p_j * lim f(t)/t
//   q_j > 0, p_j = 0  ->  q_j * f(0+)
inline DivergenceValue csiszar_divergence(const CoreFunction& f, const PositiveTuple& p,
                                          const PositiveTuple& q) {
    if (p.size() != q.size()) throw std::invalid_argument("csiszar_divergence: length mismatch");
    detail::Accumulator acc;
    ConventionFlags flags;
    for (std::size_t j = 0; j < p.size(); ++j) {
        double pj = p[j], qj = q[j];
        if (qj == 0.0) {
            if (pj == 0.0) {
                flags.used_zero_over_zero = true;
            } else {
                flags.used_p_over_zero = true;
                acc.add(pj * detail::require_declared(f.slope_at_infinity(), "slope at infinity"));
            }
        } else if (pj == 0.0) {
            acc.add(qj * detail::require_declared(f.limit_at_zero(), "limit at zero"));
        } else {
            acc.add(qj * f(pj / qj));
        }
    }
    return {acc.total(), flags};
}

// Perspective g(x, y) = y f(x/y) under the same conventions; g(0,0) = 0.
inline extended_real perspective(const CoreFunction& f, double x, double y) {
    if (x < 0.0 || y < 0.0) throw std::domain_error("perspective: arguments must be >= 0");
    if (y == 0.0) {
        if (x == 0.0) return 0.0;
        return x * detail::require_declared(f.slope_at_infinity(), "slope at infinity");
    }
    if (x == 0.0) return y * detail::require_declared(f.limit_at_zero(), "limit at zero");
    return y * f(x / y);
}

// rho_alpha(p, q) = sum p_j^alpha q_j^(1-alpha), the Renyi power sum.
inline DivergenceValue renyi_rho(const PositiveTuple& p, const PositiveTuple& q, double alpha) {
    return csiszar_divergence(catalog_lookup("power_r", alpha), p, q);
}

// R_alpha = ln(rho_alpha) / (alpha (alpha - 1)), alpha outside {0, 1}.
inline DivergenceValue renyi_divergence(const PositiveTuple& p, const PositiveTuple& q, double alpha) {
    if (alpha == 0.0 || alpha == 1.0)
        throw std::domain_error("renyi_R: alpha must lie outside {0, 1}");
    DivergenceValue rho = renyi_rho(p, q, alpha);
    if (!(rho.value > 0.0)) throw std::domain_error("renyi_R: rho_alpha must be positive");
    return {std::log(rho.value) / (alpha * (alpha - 1.0)), rho.flags};
}

// Named-divergence convenience layer over the catalog cores.
inline DivergenceValue named_divergence(const std::string& name, const PositiveTuple& p,
                                        const PositiveTuple& q, std::optional<double> alpha = {}) {
    if (name == "renyi_rho") {
        if (!alpha) throw std::invalid_argument("renyi_rho requires alpha");
        return renyi_rho(p, q, *alpha);
    }
    if (name == "renyi_R") {
        if (!alpha) throw std::invalid_argument("renyi_R requires alpha");
        return renyi_divergence(p, q, *alpha);
    }
    if (name == "kl" || name == "tv" || name == "hellinger" || name == "chi2")
        return csiszar_divergence(catalog_lookup(name), p, q);
    throw UnknownCoreError("unknown named divergence: " + name);
}

} // namespace fdv
