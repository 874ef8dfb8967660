#pragma once

// 128-bit unsigned helpers: checked arithmetic, decimal conversion and a few
// power-of-two utilities shared by the other headers.

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "fsrcycle/error.hpp"

namespace fsrcycle {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);

inline u128 checked_add(u128 a, u128 b) {
    if (a > kU128Max - b) throw overflow_error("128-bit count overflow in addition");
    return a + b;
}

inline u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > kU128Max / a) throw overflow_error("128-bit count overflow in multiplication");
    return a * b;
}

inline std::uint64_t checked_mul64(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) throw overflow_error("64-bit length overflow in multiplication");
    return a * b;
}

inline u128 pow2_128(unsigned k) {
    if (k >= 128) throw overflow_error("2^" + std::to_string(k) + " does not fit in 128 bits");
    return static_cast<u128>(1) << k;
}

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

inline u128 parse_u128(std::string_view text) {
    if (text.empty()) throw input_error("empty integer");
    u128 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw input_error("not a decimal integer: '" + std::string(text) + "'");
        v = checked_add(checked_mul(v, 10), static_cast<u128>(c - '0'));
    }
    return v;
}

constexpr bool is_pow2(std::uint64_t v) { return std::has_single_bit(v); }

// floor(log2 v) for v >= 1.
constexpr unsigned floor_log2(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)) - 1; }

// ceil(log2 v) for v >= 1; ceil_log2(1) == 0.
constexpr unsigned ceil_log2(std::uint64_t v) {
    return v <= 1 ? 0 : static_cast<unsigned>(std::bit_width(v - 1));
}

} // namespace fsrcycle
