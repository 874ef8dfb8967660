#pragma once

// JSON forms of the library's values. Counts above 2^64 - 1 are written as
// decimal strings.

#include <string>

#include <json.hpp>

#include "fsrcycle/cycletype.hpp"
#include "fsrcycle/gf2poly.hpp"
#include "fsrcycle/wide.hpp"

namespace fsrcycle {

inline nlohmann::json count_json(u128 v) {
    if (v <= UINT64_MAX) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

inline nlohmann::json to_json(const CycleType& ct) {
    auto out = nlohmann::json::array();
    for (const auto& [len, cnt] : ct.entries()) out.push_back({{"length", len}, {"count", count_json(cnt)}});
    return out;
}

inline nlohmann::json to_json(const Factorization& fac) {
    auto out = nlohmann::json::array();
    for (const auto& [q, e] : fac.factors) out.push_back({{"poly", q.to_string()}, {"exponent", e}});
    return out;
}

} // namespace fsrcycle
