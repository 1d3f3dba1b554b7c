#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace fdv {

// Extended reals are plain doubles: +/-inf are meaningful values, NaN marks
// "not declared / not applicable". The one sanctioned 0*inf rule lives in the
// divergence conventions, never here.
using extended_real = double;

inline constexpr extended_real kPlusInf = std::numeric_limits<double>::infinity();
inline constexpr extended_real kMinusInf = -std::numeric_limits<double>::infinity();
inline extended_real undeclared() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_declared(extended_real v) { return !std::isnan(v); }

struct Interval {
    double lo;
    double hi; // may be +inf

    bool contains(double t) const { return t > lo && t < hi; }
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A positive core function f on an open interval of (0, inf), together with
// the limit data the divergence conventions need: f(0+) and lim f(t)/t.
class CoreFunction {
public:
    CoreFunction(std::string name, Interval domain, std::function<double(double)> eval,
                 extended_real limit_at_zero, extended_real slope_at_infinity,
                 bool limits_estimated = false)
        : name_(std::move(name)),
          domain_(domain),
          eval_(std::move(eval)),
          limit_at_zero_(limit_at_zero),
          slope_at_infinity_(slope_at_infinity),
          limits_estimated_(limits_estimated) {}

    double operator()(double t) const {
        if (!domain_.contains(t))
            throw EvaluationError(name_ + ": argument " + std::to_string(t) + " outside domain (" +
                                  std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + ")");
        double v = eval_(t);
        if (std::isnan(v))
            throw EvaluationError(name_ + ": evaluation fault at t=" + std::to_string(t));
        return v;
    }

    const std::string& name() const { return name_; }
    const Interval& domain() const { return domain_; }
    extended_real limit_at_zero() const { return limit_at_zero_; }
    extended_real slope_at_infinity() const { return slope_at_infinity_; }
    bool limits_estimated() const { return limits_estimated_; }

private:
    std::string name_;
    Interval domain_;
    std::function<double(double)> eval_;
    extended_real limit_at_zero_;
    extended_real slope_at_infinity_;
    bool limits_estimated_;
};

// t -> 1/f(t). Zeros of f surface lazily as evaluation faults.
inline CoreFunction transform_reciprocal_value(const CoreFunction& f) {
    extended_real lz = undeclared(), si = undeclared();
    if (is_declared(f.limit_at_zero())) {
        double l0 = f.limit_at_zero();
        lz = std::isinf(l0) ? 0.0 : (l0 != 0.0 ? 1.0 / l0 : kPlusInf);
    }
    // slope of 1/f at infinity: (1/f(t))/t -> 0 whenever f stays bounded away
    // from 0 near infinity; left undeclared otherwise.
    if (is_declared(f.slope_at_infinity()) && f.slope_at_infinity() != 0.0) si = 0.0;
    return CoreFunction(
        "1/(" + f.name() + ")", f.domain(),
        [f](double t) {
            double v = f(t);
            if (v == 0.0) throw EvaluationError("1/(" + f.name() + "): division by zero at t=" + std::to_string(t));
            return 1.0 / v;
        },
        lz, si, f.limits_estimated());
}

// t -> ln f(t).
inline CoreFunction transform_log_compose(const CoreFunction& f) {
    extended_real lz = undeclared();
    if (is_declared(f.limit_at_zero())) {
        double l0 = f.limit_at_zero();
        if (l0 > 0.0) lz = std::isinf(l0) ? kPlusInf : std::log(l0);
        else if (l0 == 0.0) lz = kMinusInf;
    }
    // ln f(t) ~ ln t when f(t)/t has a finite positive limit, so the slope is 0;
    // anything else stays undeclared.
    extended_real si = undeclared();
    if (is_declared(f.slope_at_infinity())) {
        double s = f.slope_at_infinity();
        if (std::isfinite(s) && s > 0.0) si = 0.0;
    }
    return CoreFunction(
        "ln(" + f.name() + ")", f.domain(),
        [f](double t) {
            double v = f(t);
            if (!(v > 0.0))
                throw EvaluationError("ln(" + f.name() + "): nonpositive value at t=" + std::to_string(t));
            return std::log(v);
        },
        lz, si, f.limits_estimated());
}

// phi(t) = f(1/t).
inline CoreFunction transform_arg_reciprocal(const CoreFunction& f) {
    Interval dom{f.domain().hi == kPlusInf ? 0.0 : 1.0 / f.domain().hi,
                 f.domain().lo == 0.0 ? kPlusInf : 1.0 / f.domain().lo};
    // phi(0+) = lim_{s->inf} f(s); recoverable from slope data only when f/t -> 0
    // with f bounded is known, so leave it undeclared unless f's slope is 0 and
    // nothing better is known. phi(t)/t -> 0 whenever f(0+) is finite.
    extended_real lz = undeclared();
    extended_real si = undeclared();
    if (is_declared(f.limit_at_zero()))
        si = std::isinf(f.limit_at_zero()) ? undeclared() : 0.0;
    return CoreFunction(
        "(" + f.name() + ")(1/t)", dom, [f](double t) { return f(1.0 / t); }, lz, si,
        f.limits_estimated());
}

// phi(t) = t * f(t).
inline CoreFunction transform_mul_t(const CoreFunction& f) {
    // t*f(t) -> 0 * f(0+) at zero: 0 when f(0+) finite; slope at infinity of
    // t*f(t) is lim f(t), only declared when it is forced by slope data.
    extended_real lz = undeclared();
    if (is_declared(f.limit_at_zero()) && !std::isinf(f.limit_at_zero())) lz = 0.0;
    extended_real si = undeclared();
    if (is_declared(f.slope_at_infinity())) {
        double s = f.slope_at_infinity();
        if (s > 0.0) si = kPlusInf; // f(t) ~ s*t -> inf
    }
    return CoreFunction(
        "t*(" + f.name() + ")", f.domain(), [f](double t) { return t * f(t); }, lz, si,
        f.limits_estimated());
}

// t -> f(exp t); the domain shifts to logarithms of f's domain.
inline CoreFunction transform_compose_exp(const CoreFunction& f) {
    Interval dom{f.domain().lo == 0.0 ? kMinusInf : std::log(f.domain().lo),
                 f.domain().hi == kPlusInf ? kPlusInf : std::log(f.domain().hi)};
    return CoreFunction(
        "(" + f.name() + ")(exp t)", dom,
        [f](double t) {
            if (std::fabs(t) > 700.0)
                throw EvaluationError("(" + f.name() + ")(exp t): |t| > 700 overflows");
            return f(std::exp(t));
        },
        undeclared(), undeclared(), f.limits_estimated());
}

// Richardson-style limit estimate at 0+ along t = 1/2^k; used for user-defined
// cores that declare no limit data.
inline extended_real estimate_limit_at_zero(const std::function<double(double)>& eval, double lo) {
    double t = std::max(lo * 2.0, 1e-4);
    double prev = eval(t);
    for (int k = 0; k < 40; ++k) {
        t *= 0.5;
        if (t <= lo) break;
        double cur = eval(t);
        if (std::fabs(cur) > 1e12) return cur > 0 ? kPlusInf : kMinusInf;
        if (std::fabs(cur - prev) < 1e-10 * std::max(1.0, std::fabs(cur)))
            return cur + (cur - prev); // one extrapolation step
        prev = cur;
    }
    return prev;
}

inline extended_real estimate_slope_at_infinity(const std::function<double(double)>& eval, double hi) {
    double t = 1e4;
    if (std::isfinite(hi)) return undeclared();
    double prev = eval(t) / t;
    for (int k = 0; k < 30; ++k) {
        t *= 2.0;
        double cur = eval(t) / t;
        if (std::fabs(cur) > 1e12) return cur > 0 ? kPlusInf : kMinusInf;
        if (std::fabs(cur - prev) < 1e-10 * std::max(1.0, std::fabs(cur)))
            return cur + (cur - prev);
        prev = cur;
    }
    return prev;
}

} // namespace fdv
