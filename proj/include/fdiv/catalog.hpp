#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdiv/core_function.hpp"
#include "fdiv/means.hpp"

namespace fdv {

// An MN-convexity statement attached to a catalog entry, with the interval on
// which it is asserted.
struct ConvexityFact {
    MeanPair pair;
    Interval interval;
};

struct CatalogEntry {
    std::string name;
    bool needs_param;
    std::string description;
    std::vector<ConvexityFact> facts;
};

struct UnknownCoreError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"kl", false, "t*ln(t)", {{{MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.0, kPlusInf}}}},
        {"tv", false, "abs(t-1)", {{{MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.0, kPlusInf}}}},
        {"hellinger",
         false,
         "2*(sqrt(t)-1)^2",
         {{{MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.0, kPlusInf}},
          {{MeanKind::Geometric, MeanKind::Geometric}, {0.0, kPlusInf}}}},
        {"chi2", false, "(t-1)^2", {{{MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.0, kPlusInf}}}},
        {"power_r", true, "t^r",
         // AG-convex for r<0, HH-convex for 0<=r<=1; recorded at lookup time
         // because the facts depend on the parameter.
         {}},
        {"exp",
         false,
         "exp(t)",
         {{{MeanKind::Arithmetic, MeanKind::Geometric}, {0.0, kPlusInf}},
          {{MeanKind::Geometric, MeanKind::Geometric}, {0.0, kPlusInf}}}},
        {"inv_sqrt", false, "1/sqrt(t)", {{{MeanKind::Arithmetic, MeanKind::Harmonic}, {0.0, kPlusInf}}}},
        {"log1p", false, "ln(1+t)", {{{MeanKind::Geometric, MeanKind::Arithmetic}, {0.0, kPlusInf}}}},
        {"geom_series", false, "1/(1-t) on (0,1)", {{{MeanKind::Geometric, MeanKind::Geometric}, {0.0, 1.0}}}},
        {"mobius", false, "(1+t)/(1-t) on (0,1)", {{{MeanKind::Geometric, MeanKind::Geometric}, {0.0, 1.0}}}},
        {"inv_sqrt_log", false, "1/sqrt(ln(t)) on (1,inf)",
         {{{MeanKind::Geometric, MeanKind::Harmonic}, {1.0, kPlusInf}}}},
        {"exp_power", true, "exp(t^r), r>=0 or r<=-1",
         {{{MeanKind::Harmonic, MeanKind::Geometric}, {0.0, kPlusInf}}}},
        {"t_over_lnt", false, "t/ln(t) on (1,inf)",
         {{{MeanKind::Harmonic, MeanKind::Harmonic}, {1.0, kPlusInf}}}},
    };
    return entries;
}

inline std::vector<ConvexityFact> power_r_facts(double r) {
    std::vector<ConvexityFact> facts;
    if (r < 0.0) facts.push_back({{MeanKind::Arithmetic, MeanKind::Geometric}, {0.0, kPlusInf}});
    if (r >= 0.0 && r <= 1.0) facts.push_back({{MeanKind::Harmonic, MeanKind::Harmonic}, {0.0, kPlusInf}});
    if (r <= 0.0 || r >= 1.0) facts.push_back({{MeanKind::Arithmetic, MeanKind::Arithmetic}, {0.0, kPlusInf}});
    return facts;
}

inline CoreFunction catalog_lookup(const std::string& name, std::optional<double> param = {}) {
    auto need_param = [&](const char* who) {
        if (!param) throw std::invalid_argument(std::string(who) + " requires parameter r");
        return *param;
    };
    if (name == "kl")
        return CoreFunction("kl", {0.0, kPlusInf}, [](double t) { return t * std::log(t); }, 0.0, kPlusInf);
    if (name == "tv")
        return CoreFunction("tv", {0.0, kPlusInf}, [](double t) { return std::fabs(t - 1.0); }, 1.0, 1.0);
    if (name == "hellinger")
        return CoreFunction(
            "hellinger", {0.0, kPlusInf},
            [](double t) { double s = std::sqrt(t) - 1.0; return 2.0 * s * s; }, 2.0, 2.0);
    if (name == "chi2")
        return CoreFunction(
            "chi2", {0.0, kPlusInf}, [](double t) { double s = t - 1.0; return s * s; }, 1.0, kPlusInf);
    if (name == "power_r") {
        double r = need_param("power_r");
        if (!std::isfinite(r)) throw std::domain_error("power_r: r must be finite");
        extended_real lz = r > 0.0 ? 0.0 : (r == 0.0 ? 1.0 : kPlusInf);
        extended_real si = r > 1.0 ? kPlusInf : (r == 1.0 ? 1.0 : 0.0);
        return CoreFunction("power_r(" + std::to_string(r) + ")", {0.0, kPlusInf},
                            [r](double t) { return std::pow(t, r); }, lz, si);
    }
    if (name == "exp")
        return CoreFunction("exp", {0.0, kPlusInf}, [](double t) { return std::exp(t); }, 1.0, kPlusInf);
    if (name == "inv_sqrt")
        return CoreFunction("inv_sqrt", {0.0, kPlusInf}, [](double t) { return 1.0 / std::sqrt(t); },
                            kPlusInf, 0.0);
    if (name == "log1p")
        return CoreFunction("log1p", {0.0, kPlusInf}, [](double t) { return std::log1p(t); }, 0.0, 0.0);
    if (name == "geom_series")
        return CoreFunction("geom_series", {0.0, 1.0}, [](double t) { return 1.0 / (1.0 - t); }, 1.0,
                            undeclared());
    if (name == "mobius")
        return CoreFunction("mobius", {0.0, 1.0}, [](double t) { return (1.0 + t) / (1.0 - t); }, 1.0,
                            undeclared());
    if (name == "inv_sqrt_log")
        // Written "on (0,inf)" in the source material, but positive only for
        // ln t > 0; the entry is restricted to (1, inf).
        return CoreFunction("inv_sqrt_log", {1.0, kPlusInf},
                            [](double t) { return 1.0 / std::sqrt(std::log(t)); }, undeclared(), 0.0);
    if (name == "exp_power") {
        double r = need_param("exp_power");
        if (!(r >= 0.0 || r <= -1.0))
            throw std::domain_error("exp_power: r must satisfy r >= 0 or r <= -1");
        extended_real lz = r > 0.0 ? 1.0 : (r == 0.0 ? std::exp(1.0) : kPlusInf);
        extended_real si = r > 0.0 ? kPlusInf : 0.0;
        return CoreFunction("exp_power(" + std::to_string(r) + ")", {0.0, kPlusInf},
                            [r](double t) { return std::exp(std::pow(t, r)); }, lz, si);
    }
    if (name == "t_over_lnt")
        // Same restriction as inv_sqrt_log: positive requires t > 1.
        return CoreFunction("t_over_lnt", {1.0, kPlusInf}, [](double t) { return t / std::log(t); },
                            undeclared(), 0.0);
    throw UnknownCoreError("unknown core function: " + name);
}

inline std::vector<ConvexityFact> catalog_facts(const std::string& name, std::optional<double> param = {}) {
    if (name == "power_r") {
        if (!param) throw std::invalid_argument("power_r requires parameter r");
        return power_r_facts(*param);
    }
    for (const auto& e : catalog_entries())
        if (e.name == name) return e.facts;
    throw UnknownCoreError("unknown core function: " + name);
}

} // namespace fdv
