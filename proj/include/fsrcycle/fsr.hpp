#pragma once

// Binary feedback shift registers given by truth tables of their update
// function, and cascades of two of them.
//
// State encoding: stage x0 (the output stage) is bit 0 of the state index.
// A step shifts right and writes f1(state) into stage n-1. A cascade state
// holds the driven register's m bits low and the driving register's n bits
// high.

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsrcycle/error.hpp"
#include "fsrcycle/gf2poly.hpp"

namespace fsrcycle {

struct FsrLimits {
    unsigned max_stages = 20;
    std::uint64_t max_cascade_states = std::uint64_t{1} << 28;
};

class FsrSpec {
  public:
    FsrSpec() = default;

    // Zero update function on n stages.
    explicit FsrSpec(unsigned n, const FsrLimits& limits = {}) : n_(n) {
        if (n == 0) throw input_error("an FSR needs at least one stage");
        if (n > limits.max_stages)
            throw cap_exceeded(std::to_string(n) + " stages exceeds the cap of " + std::to_string(limits.max_stages));
        w_.assign(((std::size_t{1} << n) + 63) / 64, 0);
    }

    template <class F>
    static FsrSpec from_function(unsigned n, F&& f1, const FsrLimits& limits = {}) {
        FsrSpec s(n, limits);
        for (std::uint64_t x = 0; x < s.size(); ++x) s.set(x, f1(x));
        return s;
    }

    // Periodic register with f1 = x0 + f0(x1, ..., x_{n-1}); bit j of f0_table
    // is f0 at (x1, ...) = j.
    static FsrSpec from_f0(unsigned n, const std::vector<bool>& f0_table, const FsrLimits& limits = {}) {
        if (f0_table.size() != (std::size_t{1} << (n - 1)))
            throw input_error("f0 table must have 2^(n-1) entries");
        return from_function(
            n, [&](std::uint64_t x) { return ((x & 1U) != 0) != f0_table[x >> 1]; }, limits);
    }

    // "[n:]HEX", optional 0x; bit i of the number is f1 at state i. Without
    // the n: prefix, n is read off the digit count (one digit means n = 2).
    static FsrSpec parse(std::string_view text, const FsrLimits& limits = {});

    // A cyclic sequence of length 2^n whose n-bit windows are all distinct.
    static FsrSpec from_sequence(std::string_view bits, const FsrLimits& limits = {});

    unsigned n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }

    bool bit(std::uint64_t state) const { return ((w_[state / 64] >> (state % 64)) & 1U) != 0; }
    void set(std::uint64_t state, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (state % 64);
        if (v)
            w_[state / 64] |= mask;
        else
            w_[state / 64] &= ~mask;
    }

    // "n:HEX" with 2^n/4 digits (at least one).
    std::string to_string() const {
        static constexpr char digits[] = "0123456789abcdef";
        const std::uint64_t ndigits = size() < 4 ? 1 : size() / 4;
        std::string hex(ndigits, '0');
        for (std::uint64_t d = 0; d < ndigits; ++d) {
            unsigned v = 0;
            for (unsigned b = 0; b < 4 && 4 * d + b < size(); ++b)
                if (bit(4 * d + b)) v |= 1U << b;
            hex[ndigits - 1 - d] = digits[v];
        }
        return std::to_string(n_) + ":" + hex;
    }

    friend bool operator==(const FsrSpec&, const FsrSpec&) = default;

  private:
    unsigned n_ = 0;
    std::vector<std::uint64_t> w_;
};

inline FsrSpec FsrSpec::parse(std::string_view text, const FsrLimits& limits) {
    const std::string original(text);
    std::optional<unsigned> n;
    if (auto colon = text.find(':'); colon != std::string_view::npos) {
        unsigned v = 0;
        if (colon == 0) throw input_error("truth table \"" + original + "\": missing stage count before ':'");
        for (char c : text.substr(0, colon)) {
            if (c < '0' || c > '9' || v > 1000)
                throw input_error("truth table \"" + original + "\": bad stage count");
            v = 10 * v + static_cast<unsigned>(c - '0');
        }
        n = v;
        text.remove_prefix(colon + 1);
    }
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.empty()) throw input_error("truth table \"" + original + "\": no hex digits");

    std::vector<unsigned> nibbles; // least significant first
    for (std::size_t i = text.size(); i-- > 0;) {
        const char c = text[i];
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = static_cast<unsigned>(c - 'A' + 10);
        else
            throw input_error("truth table \"" + original + "\": bad hex digit '" + std::string(1, c) + "' at column " +
                              std::to_string(original.size() - text.size() + i + 1));
        nibbles.push_back(v);
    }
    if (!n) {
        const std::uint64_t bits = 4 * nibbles.size();
        if (!std::has_single_bit(bits))
            throw input_error("truth table \"" + original + "\": " + std::to_string(nibbles.size()) +
                              " hex digits is not 2^n bits; use the n:HEX form");
        n = static_cast<unsigned>(std::countr_zero(bits));
    }
    FsrSpec s(*n, limits);
    for (std::size_t d = 0; d < nibbles.size(); ++d) {
        for (unsigned b = 0; b < 4; ++b) {
            if (((nibbles[d] >> b) & 1U) == 0) continue;
            const std::uint64_t idx = 4 * d + b;
            if (idx >= s.size())
                throw input_error("truth table \"" + original + "\" has bits beyond 2^" + std::to_string(*n));
            s.set(idx, true);
        }
    }
    return s;
}

inline FsrSpec FsrSpec::from_sequence(std::string_view bits, const FsrLimits& limits) {
    const std::uint64_t len = bits.size();
    if (len < 2 || !std::has_single_bit(len))
        throw input_error("De Bruijn sequence length " + std::to_string(len) + " is not a power of 2 >= 2");
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] != '0' && bits[i] != '1')
            throw input_error("De Bruijn sequence: bad character '" + std::string(1, bits[i]) + "' at column " +
                              std::to_string(i + 1));
    const auto n = static_cast<unsigned>(std::countr_zero(len));
    FsrSpec s(n, limits);
    std::vector<bool> seen(len, false);
    auto at = [&](std::uint64_t k) { return bits[k % len] == '1'; };
    for (std::uint64_t k = 0; k < len; ++k) {
        std::uint64_t window = 0;
        for (unsigned j = 0; j < n; ++j)
            if (at(k + j)) window |= std::uint64_t{1} << j;
        if (seen[window])
            throw input_error("sequence \"" + std::string(bits) + "\" repeats the window starting at position " +
                              std::to_string(k + 1));
        seen[window] = true;
        s.set(window, at(k + n));
    }
    return s;
}

inline std::uint64_t transition(const FsrSpec& spec, std::uint64_t state) {
    if (state >= spec.size())
        throw input_error("state " + std::to_string(state) + " out of range for " + std::to_string(spec.n()) +
                          " stages");
    return (state >> 1) | (static_cast<std::uint64_t>(spec.bit(state)) << (spec.n() - 1));
}

inline bool is_periodic(const FsrSpec& spec) {
    for (std::uint64_t s = 0; s < spec.size(); s += 2)
        if (spec.bit(s) == spec.bit(s + 1)) return false;
    return true;
}

inline bool is_debruijn(const FsrSpec& spec) {
    if (!is_periodic(spec)) return false;
    std::uint64_t s = 0;
    for (std::uint64_t k = 1; k < spec.size(); ++k) {
        s = transition(spec, s);
        if (s == 0) return false;
    }
    return transition(spec, s) == 0;
}

struct TransitionPerm {
    unsigned k = 0;
    std::vector<std::uint32_t> images;
};

inline TransitionPerm transition_perm(const FsrSpec& spec) {
    TransitionPerm p{spec.n(), std::vector<std::uint32_t>(spec.size())};
    for (std::uint64_t s = 0; s < spec.size(); ++s) p.images[s] = static_cast<std::uint32_t>(transition(spec, s));
    return p;
}

/// Cascade of the driving register f (n stages) into the driven register g
/// (m stages).
struct CascadeSpec {
    FsrSpec f;
    FsrSpec g;

    unsigned n() const { return f.n(); }
    unsigned m() const { return g.n(); }
};

inline std::uint64_t cascade_step(const CascadeSpec& spec, std::uint64_t state) {
    const unsigned m = spec.m();
    const std::uint64_t x = state & ((std::uint64_t{1} << m) - 1);
    const std::uint64_t y = state >> m;
    const std::uint64_t nx = transition(spec.g, x) ^ ((y & 1U) << (m - 1));
    return nx | (transition(spec.f, y) << m);
}

namespace detail {

inline void require_periodic(const FsrSpec& spec, const char* which) {
    if (!is_periodic(spec))
        throw input_error(std::string(which) +
                          " register is not periodic: f1 must satisfy f1(s) != f1(s xor 1) for every state s");
}

inline std::uint64_t cascade_states(const CascadeSpec& spec, const FsrLimits& limits) {
    const unsigned k = spec.m() + spec.n();
    if (k >= 64 || (std::uint64_t{1} << k) > limits.max_cascade_states || k > 32)
        throw cap_exceeded("cascade with " + std::to_string(k) + " stages exceeds the brute-force cap of " +
                           std::to_string(limits.max_cascade_states) + " states");
    return std::uint64_t{1} << k;
}

} // namespace detail

inline TransitionPerm cascade_transition(const CascadeSpec& spec, const FsrLimits& limits = {}) {
    detail::require_periodic(spec.f, "driving");
    detail::require_periodic(spec.g, "driven");
    const std::uint64_t states = detail::cascade_states(spec, limits);
    TransitionPerm p{spec.m() + spec.n(), std::vector<std::uint32_t>(states)};
    for (std::uint64_t s = 0; s < states; ++s) p.images[s] = static_cast<std::uint32_t>(cascade_step(spec, s));
    return p;
}

// The map the cascade applies to the driven register while the driving
// register sits in block y: g then, if bit 0 of y is set, + t with
// t = (0, ..., 0, 1).
struct BlockMap {
    bool translate = false;
    std::uint64_t translation = 0;

    std::uint64_t apply(const FsrSpec& g, std::uint64_t x) const {
        return transition(g, x) ^ (translate ? translation : 0);
    }
};

inline BlockMap wreath_view(const CascadeSpec& spec, std::uint64_t y) {
    if (y >= spec.f.size()) throw input_error("block index " + std::to_string(y) + " out of range");
    return {(y & 1U) != 0, std::uint64_t{1} << (spec.m() - 1)};
}

/// chi_f: the bits x0 read along the De Bruijn cycle from state 0, the k-th
/// one as the coefficient of X^(2^n - 1 - k).
inline Poly2 chi_poly(const FsrSpec& spec) {
    if (!is_debruijn(spec)) throw input_error("chi_poly requires a De Bruijn register");
    const std::uint64_t len = spec.size();
    Poly2 chi;
    std::uint64_t s = 0;
    for (std::uint64_t k = 0; k < len; ++k) {
        if ((s & 1U) != 0) chi.set_coeff(len - 1 - k, true);
        s = transition(spec, s);
    }
    return chi;
}

/// Greedy prefer-one De Bruijn sequence starting from 0^n.
inline FsrSpec debruijn_prefer_one(unsigned n, const FsrLimits& limits = {}) {
    if (n == 0 || n > limits.max_stages)
        throw cap_exceeded("debruijn_prefer_one: stage count " + std::to_string(n) + " out of range");
    const std::uint64_t len = std::uint64_t{1} << n;
    const std::uint64_t mask = len - 1;
    std::vector<bool> seen(len, false);
    std::string seq(n, '0');
    seen[0] = true;
    std::uint64_t window = 0; // newest bit highest
    while (seq.size() < len + n - 1) {
        const std::uint64_t with_one = (window >> 1) | (std::uint64_t{1} << (n - 1));
        const std::uint64_t with_zero = window >> 1;
        if (!seen[with_one & mask]) {
            window = with_one;
            seq.push_back('1');
        } else if (!seen[with_zero & mask]) {
            window = with_zero;
            seq.push_back('0');
        } else {
            break;
        }
        seen[window] = true;
    }
    seq.resize(len);
    return FsrSpec::from_sequence(seq, limits);
}

/// Every De Bruijn update function on n <= 4 stages.
inline std::vector<FsrSpec> all_debruijn(unsigned n) {
    if (n == 0 || n > 4) throw cap_exceeded("all_debruijn supports 1 <= n <= 4, got " + std::to_string(n));
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    std::vector<FsrSpec> out;
    for (std::uint64_t f0 = 0; f0 < (std::uint64_t{1} << half); ++f0) {
        FsrSpec s = FsrSpec::from_function(n, [&](std::uint64_t x) { return ((x ^ (f0 >> (x >> 1))) & 1U) != 0; });
        if (is_debruijn(s)) out.push_back(std::move(s));
    }
    return out;
}

/// Linear register for P = X^m + sum c_i X^i: f1 = sum c_i x_i.
inline FsrSpec lfsr_spec(const Poly2& p, const FsrLimits& limits = {}) {
    const int m = p.degree();
    if (m < 1) throw input_error("lfsr_spec needs degree >= 1, got " + p.to_string());
    if (!p.eval_at_zero()) throw input_error("lfsr_spec: " + p.to_string() + " has zero constant term (not periodic)");
    if (static_cast<unsigned>(m) > limits.max_stages)
        throw cap_exceeded("degree " + std::to_string(m) + " exceeds the stage cap of " +
                           std::to_string(limits.max_stages));
    std::uint64_t taps = 0;
    for (int i = 0; i < m; ++i)
        if (p.coeff(static_cast<std::size_t>(i))) taps |= std::uint64_t{1} << i;
    return FsrSpec::from_function(
        static_cast<unsigned>(m), [&](std::uint64_t x) { return (std::popcount(x & taps) & 1) != 0; }, limits);
}

/// Inverse of lfsr_spec.
inline Poly2 connection_poly(const FsrSpec& spec) {
    std::uint64_t taps = 0;
    for (unsigned i = 0; i < spec.n(); ++i)
        if (spec.bit(std::uint64_t{1} << i)) taps |= std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < spec.size(); ++s)
        if (spec.bit(s) != ((std::popcount(s & taps) & 1) != 0))
            throw input_error("update function " + spec.to_string() + " is not linear (fails at state " +
                              std::to_string(s) + ")");
    if ((taps & 1U) == 0) throw input_error("linear update function does not use x0, so it is not periodic");
    Poly2 p = Poly2::monomial(spec.n());
    for (unsigned i = 0; i < spec.n(); ++i)
        if (((taps >> i) & 1U) != 0) p.set_coeff(i, true);
    return p;
}

/// Length of the cascade cycle through `initial`.
inline std::uint64_t output_period(const CascadeSpec& spec, std::uint64_t initial, const FsrLimits& limits = {}) {
    detail::require_periodic(spec.f, "driving");
    detail::require_periodic(spec.g, "driven");
    const std::uint64_t states = detail::cascade_states(spec, limits);
    if (initial >= states) throw input_error("initial state " + std::to_string(initial) + " out of range");
    std::uint64_t s = cascade_step(spec, initial);
    std::uint64_t period = 1;
    while (s != initial) {
        s = cascade_step(spec, s);
        ++period;
    }
    return period;
}

/// Periodic register with a uniformly random f0.
template <class Rng>
FsrSpec random_periodic(unsigned n, Rng& rng, const FsrLimits& limits = {}) {
    if (n == 0) throw input_error("an FSR needs at least one stage");
    std::bernoulli_distribution coin;
    std::vector<bool> f0(std::size_t{1} << (n - 1));
    for (std::size_t i = 0; i < f0.size(); ++i) f0[i] = coin(rng);
    return FsrSpec::from_f0(n, f0, limits);
}

/// Uniformly random De Bruijn register: a random spanning in-tree of the
/// order n-1 De Bruijn graph (Wilson's algorithm) fixes the last exit from
/// every vertex, and the Euler circuit that leaves each vertex by its other
/// edge first spells the sequence.
template <class Rng>
FsrSpec random_debruijn(unsigned n, Rng& rng, const FsrLimits& limits = {}) {
    if (n == 0 || n > limits.max_stages)
        throw cap_exceeded("random_debruijn: stage count " + std::to_string(n) + " out of range");
    if (n == 1) return FsrSpec::from_sequence("01", limits);

    // Vertices are the last n-1 bits, newest highest; following bit b leads to
    // (v >> 1) | b << (n-2).
    const std::uint64_t vertices = std::uint64_t{1} << (n - 1);
    auto next = [&](std::uint64_t v, unsigned b) { return (v >> 1) | (std::uint64_t{b} << (n - 2)); };
    std::uniform_int_distribution<std::uint64_t> pick_vertex(0, vertices - 1);
    std::bernoulli_distribution coin;

    const std::uint64_t root = pick_vertex(rng);
    std::vector<bool> in_tree(vertices, false);
    std::vector<std::uint8_t> tree_bit(vertices, 0);
    in_tree[root] = true;
    for (std::uint64_t i = 0; i < vertices; ++i) {
        for (std::uint64_t u = i; !in_tree[u];) {
            tree_bit[u] = coin(rng) ? 1 : 0;
            u = next(u, tree_bit[u]);
        }
        for (std::uint64_t u = i; !in_tree[u]; u = next(u, tree_bit[u])) in_tree[u] = true;
    }

    const unsigned root_first = coin(rng) ? 1U : 0U;
    std::vector<std::uint8_t> exits(vertices, 0);
    std::string seq;
    seq.reserve(2 * vertices);
    std::uint64_t v = root;
    for (std::uint64_t k = 0; k < 2 * vertices; ++k) {
        unsigned b;
        if (v == root)
            b = exits[v] == 0 ? root_first : 1U - root_first;
        else
            b = exits[v] == 0 ? 1U - tree_bit[v] : tree_bit[v];
        ++exits[v];
        seq.push_back(b != 0 ? '1' : '0');
        v = next(v, b);
    }
    return FsrSpec::from_sequence(seq, limits);
}

} // namespace fsrcycle
