#pragma once

// Univariate polynomials over F2: arithmetic, factorization into irreducibles,
// multiplicative orders and minimal polynomials of powers of roots.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsrcycle/error.hpp"
#include "fsrcycle/wide.hpp"

namespace fsrcycle {

struct Gf2Limits {
    unsigned max_degree = 64;       // inputs to factor()
    unsigned max_order_degree = 32; // poly_order() factors 2^d - 1 by trial division; at most 64
};

inline constexpr int kZeroDegree = -1;
inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

/// A polynomial over F2, stored as a packed coefficient mask: bit i of the
/// word sequence is the coefficient of X^i. The representation is always
/// normalized (no trailing zero words), so equality is word equality.
class Poly2 {
  public:
    Poly2() = default;

    explicit Poly2(std::vector<std::uint64_t> words) : w_(std::move(words)) { normalize(); }

    static Poly2 from_mask(std::uint64_t mask) { return Poly2(std::vector<std::uint64_t>{mask}); }

    static Poly2 monomial(std::size_t k) {
        Poly2 p;
        p.set_coeff(k, true);
        return p;
    }

    static Poly2 one() { return from_mask(1); }
    static Poly2 x() { return from_mask(2); }
    static Poly2 x_plus_one() { return from_mask(3); }

    int degree() const {
        if (w_.empty()) return kZeroDegree;
        return static_cast<int>(64 * (w_.size() - 1)) + static_cast<int>(std::bit_width(w_.back())) - 1;
    }

    bool is_zero() const { return w_.empty(); }
    bool is_one() const { return w_.size() == 1 && w_[0] == 1; }

    bool coeff(std::size_t i) const {
        const std::size_t word = i / 64;
        return word < w_.size() && ((w_[word] >> (i % 64)) & 1U) != 0;
    }

    void set_coeff(std::size_t i, bool value) {
        const std::size_t word = i / 64;
        if (word >= w_.size()) {
            if (!value) return;
            w_.resize(word + 1, 0);
        }
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (value)
            w_[word] |= bit;
        else
            w_[word] &= ~bit;
        normalize();
    }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (auto w : w_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    // Value at X = 1 is the parity of the number of terms.
    bool eval_at_one() const { return (term_count() & 1U) != 0; }
    bool eval_at_zero() const { return coeff(0); }

    std::span<const std::uint64_t> words() const { return w_; }

    bool fits_u64() const { return w_.size() <= 1; }
    std::uint64_t to_u64() const {
        if (!fits_u64()) throw overflow_error("polynomial of degree " + std::to_string(degree()) + " exceeds 64 bits");
        return w_.empty() ? 0 : w_[0];
    }

    friend bool operator==(const Poly2&, const Poly2&) = default;

    // Total order by (degree, coefficient value).
    friend std::strong_ordering operator<=>(const Poly2& a, const Poly2& b) {
        if (a.w_.size() != b.w_.size()) return a.w_.size() <=> b.w_.size();
        for (std::size_t i = a.w_.size(); i-- > 0;)
            if (a.w_[i] != b.w_[i]) return a.w_[i] <=> b.w_[i];
        return std::strong_ordering::equal;
    }

    // this += b * X^shift
    void add_shifted(const Poly2& b, std::size_t shift) {
        if (b.is_zero()) return;
        const std::size_t word_shift = shift / 64;
        const unsigned bit_shift = static_cast<unsigned>(shift % 64);
        const std::size_t needed = b.w_.size() + word_shift + 1;
        if (w_.size() < needed) w_.resize(needed, 0);
        for (std::size_t i = 0; i < b.w_.size(); ++i) {
            w_[i + word_shift] ^= b.w_[i] << bit_shift;
            if (bit_shift != 0) w_[i + word_shift + 1] ^= b.w_[i] >> (64 - bit_shift);
        }
        normalize();
    }

    Poly2& operator+=(const Poly2& b) {
        add_shifted(b, 0);
        return *this;
    }

    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }

    Poly2 shifted(std::size_t k) const {
        Poly2 r;
        r.add_shifted(*this, k);
        return r;
    }

    // Canonical text: decreasing degree, "x^k", "x", "1", joined by '+'.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (!coeff(static_cast<std::size_t>(i))) continue;
            if (!out.empty()) out += '+';
            if (i == 0)
                out += '1';
            else if (i == 1)
                out += 'x';
            else
                out += "x^" + std::to_string(i);
        }
        return out;
    }

    // Accepts the canonical form (whitespace and upper-case X tolerated,
    // repeated terms cancel) or a hex coefficient mask "0x2B".
    static Poly2 parse(std::string_view text);

  private:
    void normalize() {
        while (!w_.empty() && w_.back() == 0) w_.pop_back();
    }

    std::vector<std::uint64_t> w_;
};

inline Poly2 Poly2::parse(std::string_view text) {
    auto fail = [&](std::size_t pos, const std::string& what) -> Poly2 {
        throw input_error("cannot parse polynomial \"" + std::string(text) + "\" at column " + std::to_string(pos + 1) +
                          ": " + what);
    };
    std::string s;
    std::vector<std::size_t> column;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == ' ' || text[i] == '\t') continue;
        s += text[i];
        column.push_back(i);
    }
    if (s.empty()) return fail(0, "empty input");

    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X') &&
        s.find_first_not_of("0123456789abcdefABCDEF", 2) == std::string::npos) {
        std::vector<std::uint64_t> words((s.size() - 2 + 15) / 16, 0);
        std::size_t bit = 0;
        for (std::size_t i = s.size(); i-- > 2; bit += 4) {
            const char c = s[i];
            const std::uint64_t nibble = c <= '9' ? static_cast<std::uint64_t>(c - '0')
                                                  : static_cast<std::uint64_t>((c | 0x20) - 'a' + 10);
            words[bit / 64] |= nibble << (bit % 64);
        }
        return Poly2(std::move(words));
    }

    Poly2 result;
    std::size_t i = 0;
    while (true) {
        if (i >= s.size()) return fail(column.empty() ? 0 : column.back() + 1, "expected a term");
        const std::size_t at = column[i];
        if (s[i] == '0' || s[i] == '1') {
            if (i + 1 < s.size() && s[i + 1] != '+') return fail(column[i + 1], "unexpected character after constant");
            if (s[i] == '1') result += Poly2::one();
            ++i;
        } else if (s[i] == 'x' || s[i] == 'X') {
            ++i;
            std::size_t exponent = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || s[i] < '0' || s[i] > '9')
                    return fail(i < s.size() ? column[i] : at + 2, "expected an exponent after '^'");
                exponent = 0;
                while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
                    exponent = exponent * 10 + static_cast<std::size_t>(s[i] - '0');
                    if (exponent > (std::size_t{1} << 30)) return fail(at, "exponent too large");
                    ++i;
                }
            }
            result += Poly2::monomial(exponent);
        } else {
            return fail(at, std::string("unexpected character '") + s[i] + "'");
        }
        if (i == s.size()) break;
        if (s[i] != '+') return fail(column[i], std::string("expected '+' but found '") + s[i] + "'");
        ++i;
    }
    return result;
}

inline Poly2 add(const Poly2& a, const Poly2& b) { return a + b; }

/// Carry-less product.
inline Poly2 mul(const Poly2& a, const Poly2& b) {
    Poly2 r;
    if (a.is_zero() || b.is_zero()) return r;
    const Poly2& small = a.term_count() <= b.term_count() ? a : b;
    const Poly2& large = &small == &a ? b : a;
    const auto words = small.words();
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        std::uint64_t w = words[wi];
        while (w != 0) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(w));
            w &= w - 1;
            r.add_shifted(large, wi * 64 + bit);
        }
    }
    return r;
}

inline Poly2 operator*(const Poly2& a, const Poly2& b) { return mul(a, b); }

struct DivRem {
    Poly2 quotient;
    Poly2 remainder;
};

inline DivRem divrem(const Poly2& a, const Poly2& b) {
    if (b.is_zero()) throw input_error("polynomial division by zero");
    DivRem out{Poly2(), a};
    const int db = b.degree();
    for (int d = out.remainder.degree(); d >= db; d = out.remainder.degree()) {
        const auto shift = static_cast<std::size_t>(d - db);
        out.remainder.add_shifted(b, shift);
        out.quotient.set_coeff(shift, true);
    }
    return out;
}

inline Poly2 mod(const Poly2& a, const Poly2& m) {
    if (m.is_zero()) throw input_error("polynomial reduction modulo zero");
    Poly2 r = a;
    const int dm = m.degree();
    for (int d = r.degree(); d >= dm; d = r.degree()) r.add_shifted(m, static_cast<std::size_t>(d - dm));
    return r;
}

inline Poly2 exact_div(const Poly2& a, const Poly2& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::logic_error("exact_div: " + b.to_string() + " does not divide " + a.to_string());
    return q;
}

/// Monic (over F2: nonzero) greatest common divisor.
inline Poly2 gcd(Poly2 a, Poly2 b) {
    if (a.is_zero() && b.is_zero()) throw input_error("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

inline Poly2 lcm(const Poly2& a, const Poly2& b) { return exact_div(a * b, gcd(a, b)); }

inline Poly2 derivative(const Poly2& a) {
    Poly2 r;
    for (int i = 1; i <= a.degree(); i += 2)
        if (a.coeff(static_cast<std::size_t>(i))) r.set_coeff(static_cast<std::size_t>(i - 1), true);
    return r;
}

inline Poly2 mul_mod(const Poly2& a, const Poly2& b, const Poly2& m) { return mod(a * b, m); }

inline Poly2 pow_mod(Poly2 base, std::uint64_t k, const Poly2& m) {
    if (m.degree() < 1) throw input_error("modulus " + m.to_string() + " must have degree at least 1");
    Poly2 result = Poly2::one();
    base = mod(base, m);
    while (k != 0) {
        if ((k & 1U) != 0) result = mul_mod(result, base, m);
        k >>= 1;
        if (k != 0) base = mul_mod(base, base, m);
    }
    return result;
}

/// X^k mod m by square-and-multiply.
inline Poly2 x_pow_mod(std::uint64_t k, const Poly2& m) { return pow_mod(Poly2::x(), k, m); }

/// Square root in characteristic 2; only valid when every exponent is even.
inline Poly2 square_root(const Poly2& a) {
    Poly2 r;
    for (int i = 0; i <= a.degree(); ++i) {
        if (!a.coeff(static_cast<std::size_t>(i))) continue;
        if (i % 2 != 0) throw std::logic_error("square_root of a non-square " + a.to_string());
        r.set_coeff(static_cast<std::size_t>(i / 2), true);
    }
    return r;
}

/// c(X + 1): the coefficients of the (X+1)-adic expansion of c.
inline Poly2 substitute_x_plus_one(const Poly2& c) {
    Poly2 r;
    for (int i = c.degree(); i >= 0; --i) {
        r = r.shifted(1) + r;
        if (c.coeff(static_cast<std::size_t>(i))) r += Poly2::one();
    }
    return r;
}

inline bool is_irreducible(const Poly2& a) {
    const int d = a.degree();
    if (d < 1) throw input_error("is_irreducible requires degree >= 1, got " + a.to_string());
    // No irreducible factor of degree i <= d/2 divides a iff gcd(a, X^(2^i) - X) = 1.
    Poly2 h = mod(Poly2::x(), a);
    for (int i = 1; 2 * i <= d; ++i) {
        h = mul_mod(h, h, a);
        if (!gcd(a, h + Poly2::x()).is_one()) return false;
    }
    return true;
}

struct FactorPower {
    Poly2 factor;
    unsigned multiplicity = 0;

    friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

struct Factorization {
    // Sorted by (degree, coefficient value) of the irreducible factor.
    std::vector<FactorPower> factors;

    Poly2 product() const {
        Poly2 p = Poly2::one();
        for (const auto& [q, e] : factors)
            for (unsigned i = 0; i < e; ++i) p = p * q;
        return p;
    }

    std::string to_string() const {
        std::string out;
        for (const auto& [q, e] : factors) {
            out += "(" + q.to_string() + ")";
            if (e != 1) out += "^" + std::to_string(e);
        }
        return out;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

using FactorMap = std::map<Poly2, unsigned>;

// f is a product of distinct irreducibles all of degree d.
inline void equal_degree_split(const Poly2& f, int d, unsigned multiplicity, FactorMap& out) {
    const int n = f.degree();
    if (n == d) {
        out[f] += multiplicity;
        return;
    }
    // The trace maps T(a) = a + a^2 + ... + a^(2^(d-1)) are F2-linear, so some
    // basis monomial X^j separates any two CRT components.
    for (int j = 0; j < n; ++j) {
        const Poly2 a = mod(Poly2::monomial(static_cast<std::size_t>(j)), f);
        Poly2 trace = a;
        Poly2 power = a;
        for (int k = 1; k < d; ++k) {
            power = mul_mod(power, power, f);
            trace += power;
        }
        const Poly2 g = gcd(f, trace);
        if (g.degree() > 0 && g.degree() < n) {
            equal_degree_split(g, d, multiplicity, out);
            equal_degree_split(exact_div(f, g), d, multiplicity, out);
            return;
        }
    }
    throw std::logic_error("equal-degree splitting failed on " + f.to_string());
}

inline void distinct_degree_split(const Poly2& g, unsigned multiplicity, FactorMap& out) {
    Poly2 rest = g;
    Poly2 h = mod(Poly2::x(), rest);
    for (int i = 1; rest.degree() >= 2 * i; ++i) {
        h = mul_mod(h, h, rest);
        const Poly2 t = gcd(rest, h + Poly2::x());
        if (!t.is_one()) {
            equal_degree_split(t, i, multiplicity, out);
            rest = exact_div(rest, t);
            h = mod(h, rest);
        }
    }
    if (rest.degree() > 0) out[rest] += multiplicity;
}

inline void square_free_split(const Poly2& f, unsigned multiplicity, FactorMap& out) {
    const Poly2 df = derivative(f);
    if (df.is_zero()) {
        square_free_split(square_root(f), 2 * multiplicity, out);
        return;
    }
    Poly2 c = gcd(f, df);
    Poly2 w = exact_div(f, c);
    for (unsigned i = 1; !w.is_one(); ++i) {
        const Poly2 y = gcd(w, c);
        const Poly2 part = exact_div(w, y);
        if (!part.is_one()) distinct_degree_split(part, i * multiplicity, out);
        w = y;
        c = exact_div(c, y);
    }
    if (!c.is_one()) square_free_split(square_root(c), 2 * multiplicity, out);
}

// Trial-division factorization of a positive integer.
inline std::vector<std::pair<u128, unsigned>> factor_integer(u128 n) {
    std::vector<std::pair<u128, unsigned>> out;
    auto pull = [&](u128 p) {
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k != 0) out.emplace_back(p, k);
    };
    pull(2);
    for (u128 p = 3; p * p <= n; p += 2) pull(p);
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline void require_irreducible_not_x(const Poly2& q, const char* what) {
    if (q.degree() < 1 || !is_irreducible(q))
        throw input_error(std::string(what) + ": " + q.to_string() + " is not irreducible");
    if (q == Poly2::x()) throw input_error(std::string(what) + ": the polynomial x is excluded");
}

} // namespace detail

/// Complete factorization into monic irreducibles: square-free decomposition,
/// then distinct-degree and deterministic equal-degree splitting.
inline Factorization factor(const Poly2& a, const Gf2Limits& limits = {}) {
    if (a.degree() < 1) throw input_error("factor requires a non-constant polynomial, got " + a.to_string());
    if (a.degree() > static_cast<int>(limits.max_degree))
        throw cap_exceeded("degree " + std::to_string(a.degree()) + " exceeds the factorization cap of " +
                           std::to_string(limits.max_degree));
    detail::FactorMap found;
    detail::square_free_split(a, 1, found);
    Factorization out;
    for (auto& [q, e] : found) out.factors.push_back({q, e});
    return out;
}

/// Multiplicative order of X modulo an irreducible q != X.
inline std::uint64_t poly_order(const Poly2& q, const Gf2Limits& limits = {}) {
    if (q.degree() > static_cast<int>(std::min(limits.max_order_degree, 64U)))
        throw cap_exceeded("order computation limited to degree " +
                           std::to_string(std::min(limits.max_order_degree, 64U)) + ", got degree " +
                           std::to_string(q.degree()));
    detail::require_irreducible_not_x(q, "poly_order");
    const unsigned d = static_cast<unsigned>(q.degree());
    const u128 group_order = pow2_128(d) - 1;
    auto order = static_cast<std::uint64_t>(group_order);
    for (const auto& [p, k] : detail::factor_integer(group_order)) {
        const auto prime = static_cast<std::uint64_t>(p);
        for (unsigned i = 0; i < k; ++i) {
            if (!x_pow_mod(order / prime, q).is_one()) break;
            order /= prime;
        }
    }
    return order;
}

/// ord(q^e) = ord(q) * 2^ceil(log2 e).
inline std::uint64_t prime_power_order(const Poly2& q, unsigned e, const Gf2Limits& limits = {}) {
    if (e == 0) throw input_error("prime_power_order requires a positive exponent");
    const unsigned shift = ceil_log2(e);
    if (shift >= 64) throw overflow_error("ord(q^e) overflows 64 bits");
    return checked_mul64(poly_order(q, limits), std::uint64_t{1} << shift);
}

/// Minimal polynomial over F2 of xi^l for a root xi of the irreducible q.
inline Poly2 pow_min_poly(const Poly2& q, std::uint64_t l) {
    detail::require_irreducible_not_x(q, "pow_min_poly");
    if (l == 0) throw input_error("pow_min_poly requires a positive exponent");
    const Poly2 beta = x_pow_mod(l, q);

    // Incremental elimination over the vectors beta^0, beta^1, ...; each
    // reduced row remembers which powers it combines.
    struct Row {
        int pivot;
        Poly2 vec;
        Poly2 combo;
    };
    std::vector<Row> rows;
    Poly2 power = Poly2::one();
    for (std::size_t k = 0;; ++k) {
        Poly2 vec = power;
        Poly2 combo = Poly2::monomial(k);
        for (const auto& row : rows) {
            if (vec.coeff(static_cast<std::size_t>(row.pivot))) {
                vec += row.vec;
                combo += row.combo;
            }
        }
        if (vec.is_zero()) return combo;
        const int pivot = vec.degree();
        rows.push_back({pivot, std::move(vec), std::move(combo)});
        power = mul_mod(power, beta, q);
    }
}

/// deg q / deg pow_l(q).
inline unsigned pow_index(const Poly2& q, std::uint64_t l) {
    const Poly2 p = pow_min_poly(q, l);
    return static_cast<unsigned>(q.degree() / p.degree());
}

/// Largest v with q^v | p; kInfiniteValuation for p = 0.
inline unsigned valuation(const Poly2& q, const Poly2& p) {
    if (q.degree() < 1 || !is_irreducible(q)) throw input_error("valuation: " + q.to_string() + " is not irreducible");
    if (p.is_zero()) return kInfiniteValuation;
    unsigned v = 0;
    Poly2 rest = p;
    while (true) {
        auto [quot, rem] = divrem(rest, q);
        if (!rem.is_zero()) return v;
        rest = std::move(quot);
        ++v;
    }
}

} // namespace fsrcycle
