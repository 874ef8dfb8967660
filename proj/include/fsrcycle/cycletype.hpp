#pragma once

// Cycle types of finite permutations as monomials x_1^e_1 x_2^e_2 ..., with
// the disjoint-union product, the Wei-Xu product (componentwise action on a
// Cartesian product), blow-ups and iterates.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>

#include "fsrcycle/error.hpp"
#include "fsrcycle/wide.hpp"

namespace fsrcycle {

class CycleType {
  public:
    using Entries = std::map<std::uint64_t, u128>;

    CycleType() = default;

    static CycleType single(std::uint64_t length, u128 count = 1) {
        CycleType ct;
        ct.add(length, count);
        return ct;
    }

    // x_1^points: the identity on `points` points.
    static CycleType identity(u128 points) { return single(1, points); }

    void add(std::uint64_t length, u128 count) {
        if (length == 0) throw input_error("cycle length must be positive");
        if (count == 0) return;
        auto& slot = entries_[length];
        slot = checked_add(slot, count);
    }

    const Entries& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    u128 count(std::uint64_t length) const {
        auto it = entries_.find(length);
        return it == entries_.end() ? 0 : it->second;
    }

    std::uint64_t max_length() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
    std::uint64_t min_length() const { return entries_.empty() ? 0 : entries_.begin()->first; }

    friend bool operator==(const CycleType&, const CycleType&) = default;

    // "x4 x28", "x8^16 x56^16"; the empty monomial prints as "1".
    std::string to_string() const {
        if (entries_.empty()) return "1";
        std::string out;
        for (const auto& [len, cnt] : entries_) {
            if (!out.empty()) out += ' ';
            out += 'x' + std::to_string(len);
            if (cnt != 1) out += '^' + fsrcycle::to_string(cnt);
        }
        return out;
    }

    static CycleType parse(std::string_view text) {
        CycleType ct;
        std::size_t i = 0;
        auto skip_space = [&] {
            while (i < text.size() && (text[i] == ' ' || text[i] == '*')) ++i;
        };
        auto number = [&]() -> std::string_view {
            const std::size_t start = i;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
            if (start == i) throw input_error("malformed cycle type \"" + std::string(text) + "\"");
            return text.substr(start, i - start);
        };
        skip_space();
        if (text.substr(i) == "1") return ct;
        while (i < text.size()) {
            if (text[i] != 'x') throw input_error("malformed cycle type \"" + std::string(text) + "\"");
            ++i;
            if (i < text.size() && text[i] == '_') ++i;
            const u128 len = parse_u128(number());
            u128 cnt = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                cnt = parse_u128(number());
            }
            if (len > UINT64_MAX) throw overflow_error("cycle length exceeds 64 bits");
            ct.add(static_cast<std::uint64_t>(len), cnt);
            skip_space();
        }
        return ct;
    }

  private:
    Entries entries_;
};

/// Disjoint union: counts add pointwise.
inline CycleType ct_mul(const CycleType& a, const CycleType& b) {
    CycleType out = a;
    for (const auto& [len, cnt] : b.entries()) out.add(len, cnt);
    return out;
}

/// Wei-Xu product: x_i^e * x_j^f -> x_lcm(i,j)^(e f gcd(i,j)).
inline CycleType weixu(const CycleType& a, const CycleType& b) {
    CycleType out;
    for (const auto& [i, e] : a.entries()) {
        for (const auto& [j, f] : b.entries()) {
            const std::uint64_t g = std::gcd(i, j);
            const std::uint64_t l = checked_mul64(i / g, j);
            out.add(l, checked_mul(checked_mul(e, f), g));
        }
    }
    return out;
}

/// l-blow-up: x_n -> x_(l n).
inline CycleType blowup(std::uint64_t l, const CycleType& a) {
    if (l == 0) throw input_error("blow-up factor must be positive");
    CycleType out;
    for (const auto& [len, cnt] : a.entries()) out.add(checked_mul64(len, l), cnt);
    return out;
}

/// Cycle type of sigma^t given CT(sigma): x_l^e -> x_(l/g)^(e g), g = gcd(l, t).
inline CycleType iterate_ct(std::uint64_t t, const CycleType& a) {
    CycleType out;
    for (const auto& [len, cnt] : a.entries()) {
        const std::uint64_t g = std::gcd(len, t);
        out.add(len / g, checked_mul(cnt, g));
    }
    return out;
}

inline u128 total_points(const CycleType& a) {
    u128 total = 0;
    for (const auto& [len, cnt] : a.entries()) total = checked_add(total, checked_mul(len, cnt));
    return total;
}

/// lcm of the cycle lengths.
inline std::uint64_t permutation_order(const CycleType& a) {
    if (a.empty()) throw input_error("permutation_order of an empty cycle type");
    std::uint64_t order = 1;
    for (const auto& [len, cnt] : a.entries()) order = checked_mul64(order / std::gcd(order, len), len);
    return order;
}

} // namespace fsrcycle
