#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdiv/convexity.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/perspective_checks.hpp"

namespace fdv {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::json;

// Reproducibility header every emitted report carries.
inline json report_header(std::uint64_t seed, std::uint64_t trials, double tolerance) {
    return json{{"tool_version", kToolVersion},
                {"seed", seed},
                {"trials", trials},
                {"tolerance", tolerance}};
}

inline json to_json(const Witness& w) {
    return json{{"x", w.x}, {"y", w.y}, {"alpha", w.alpha}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

inline json to_json(const ConvexityReport& r) {
    json j{{"pair", r.pair.str()},
           {"interval", {r.interval.lo, r.interval.hi}},
           {"verdict", verdict_name(r.verdict)},
           {"trials", r.trials},
           {"tolerance", r.tolerance}};
    if (r.witness) j["witness"] = to_json(*r.witness);
    return j;
}

inline json to_json(const DivergenceValue& v) {
    json j;
    if (std::isinf(v.value)) j["value"] = v.value > 0 ? "+inf" : "-inf";
    else j["value"] = v.value;
    json flags = json::array();
    if (v.flags.used_zero_over_zero) flags.push_back("0/0");
    if (v.flags.used_p_over_zero) flags.push_back("p/0");
    j["conventions"] = flags;
    return j;
}

inline json to_json(const SuiteReport& r) {
    json viols = json::array();
    for (const auto& v : r.violations)
        viols.push_back(json{{"where", v.where}, {"point", v.point}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    return json{{"trials", r.trials}, {"checks_run", r.checks_run}, {"violations", viols}};
}

} // namespace fdv
