#pragma once

// Cycle types of the affine maps R -> X^L R + c on F2[X]/(P), built from the
// primary pieces F2[X]/(Q^e), and the block structure of powers of
// multiplication by X on such a piece.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsrcycle/cycletype.hpp"
#include "fsrcycle/error.hpp"
#include "fsrcycle/gf2poly.hpp"
#include "fsrcycle/wide.hpp"

namespace fsrcycle {

// Counts are u128, so a primary piece may have at most 2^127 residues.
inline constexpr unsigned kMaxAffineDimension = 127;

class AffineModulus {
  public:
    AffineModulus(Poly2 q, unsigned e) : q_(std::move(q)), e_(e) {
        detail::require_irreducible_not_x(q_, "affine modulus");
        if (e_ == 0) throw input_error("affine modulus exponent must be positive");
    }

    const Poly2& q() const { return q_; }
    unsigned e() const { return e_; }
    unsigned dimension() const { return e_ * static_cast<unsigned>(q_.degree()); }

    Poly2 modulus() const {
        Poly2 p = Poly2::one();
        for (unsigned i = 0; i < e_; ++i) p = p * q_;
        return p;
    }

  private:
    Poly2 q_;
    unsigned e_;
};

// R -> X^L R + c on F2[X]/(P).
class AffineMapModP {
  public:
    AffineMapModP(Poly2 modulus, std::uint64_t multiplier_exponent, const Poly2& translation)
        : modulus_(std::move(modulus)), l_(multiplier_exponent) {
        if (modulus_.degree() < 1) throw input_error("affine map modulus must have degree >= 1");
        if (!modulus_.eval_at_zero())
            throw input_error("affine map modulus " + modulus_.to_string() + " is divisible by x");
        translation_ = mod(translation, modulus_);
    }

    const Poly2& modulus() const { return modulus_; }
    std::uint64_t multiplier_exponent() const { return l_; }
    const Poly2& translation() const { return translation_; }

    Poly2 apply(const Poly2& r) const { return mul_mod(r, x_pow_mod(l_, modulus_), modulus_) + translation_; }

  private:
    Poly2 modulus_;
    std::uint64_t l_;
    Poly2 translation_;
};

namespace detail {

inline u128 exact_quotient(u128 num, u128 den) {
    if (den == 0 || num % den != 0) throw std::logic_error("cycle count is not an integer");
    return num / den;
}

inline void require_affine_dimension(unsigned dim) {
    if (dim > kMaxAffineDimension)
        throw cap_exceeded("affine piece of dimension " + std::to_string(dim) + " exceeds the cap of " +
                           std::to_string(kMaxAffineDimension));
}

} // namespace detail

/// Cycle type of R -> RX + u on F2[X]/(Q^e).
inline CycleType ct_lambda_primary(const AffineModulus& m, const Poly2& u, const Gf2Limits& limits = {}) {
    const unsigned d = static_cast<unsigned>(m.q().degree());
    const unsigned e = m.e();
    const unsigned dim = m.dimension();
    detail::require_affine_dimension(dim);
    if (u.degree() >= static_cast<int>(dim))
        throw input_error("translation " + u.to_string() + " is not reduced modulo " + m.modulus().to_string());

    const unsigned c = ceil_log2(e);
    CycleType ct;

    if (m.q() == Poly2::x_plus_one() && u.eval_at_one()) {
        const std::uint64_t len = std::uint64_t{1} << (floor_log2(e) + 1);
        ct.add(len, detail::exact_quotient(pow2_128(e), len));
        return ct;
    }

    // Linear part has order o * 2^c; for Q = X+1 with a non-unit translation
    // the map is conjugate to the linear one and o = 1.
    const std::uint64_t o = poly_order(m.q(), limits);
    if (m.q() == Poly2::x_plus_one()) {
        ct.add(1, 2);
    } else {
        ct.add(1, 1);
        ct.add(o, detail::exact_quotient(pow2_128(d) - 1, o));
    }
    for (unsigned a = 1; a < c; ++a) {
        const unsigned h = (1U << (a - 1)) * d;
        const u128 num = checked_mul(pow2_128(h), pow2_128(h) - 1);
        ct.add(checked_mul64(o, std::uint64_t{1} << a), detail::exact_quotient(num, checked_mul(pow2_128(a), o)));
    }
    if (c >= 1) {
        const unsigned h = (1U << (c - 1)) * d;
        const u128 num = checked_mul(pow2_128(h), pow2_128(dim - h) - 1);
        ct.add(checked_mul64(o, std::uint64_t{1} << c), detail::exact_quotient(num, checked_mul(pow2_128(c), o)));
    }
    return ct;
}

/// Cycle type of multiplication by X on F2[X]/(p).
inline CycleType ct_linear_modP(const Poly2& p, const Gf2Limits& limits = {}) {
    if (p.degree() < 1) throw input_error("ct_linear_modP needs degree >= 1, got " + p.to_string());
    if (!p.eval_at_zero()) throw input_error("ct_linear_modP: " + p.to_string() + " is divisible by x");
    CycleType ct = CycleType::identity(1);
    for (const auto& [q, e] : factor(p, limits).factors)
        ct = weixu(ct, ct_lambda_primary(AffineModulus(q, e), Poly2{}, limits));
    return ct;
}

/// Whether u is a unit modulo (X+1)^e, i.e. u(1) = 1.
inline bool is_unipotent_unit(const Poly2& u, unsigned e) {
    if (e == 0) throw input_error("is_unipotent_unit requires a positive exponent");
    return u.eval_at_one();
}

/// Weight of v under multiplication by X mod p, with one primary block per
/// CRT factor. Only the (X+1)-component can contribute.
inline unsigned alpha_weight(const Poly2& p, const Poly2& v) {
    if (p.degree() < 1 || !p.eval_at_zero())
        throw input_error("alpha_weight needs p(0) = 1 and degree >= 1, got " + p.to_string());
    if (v.degree() >= p.degree()) throw input_error("alpha_weight: translation is not reduced modulo p");
    const unsigned e0 = valuation(Poly2::x_plus_one(), p);
    if (e0 == 0) return 0;
    return is_unipotent_unit(v, e0) ? 1 + floor_log2(e0) : 0;
}

namespace detail {

// R -> X^L R + c on F2[X]/(Q^e), c already reduced.
inline CycleType ct_affine_primary(const Poly2& q, unsigned e, std::uint64_t l, const Poly2& c,
                                   const Gf2Limits& limits) {
    const AffineModulus m(q, e);
    const unsigned dim = m.dimension();
    require_affine_dimension(dim);
    const std::uint64_t order = prime_power_order(q, e, limits);

    if (l % order == 0) {
        // X^L is the identity: a pure translation.
        if (c.is_zero()) return CycleType::identity(pow2_128(dim));
        return CycleType::single(2, pow2_128(dim - 1));
    }

    if (q != Poly2::x_plus_one()) {
        // X^L - 1 is invertible here, so the map is conjugate to its linear part.
        if (l % poly_order(q, limits) == 0)
            throw unsupported("x^" + std::to_string(l) + " is unipotent but not the identity modulo (" +
                              q.to_string() + ")^" + std::to_string(e));
        return iterate_ct(l, ct_lambda_primary(m, Poly2{}, limits));
    }

    if (!is_pow2(l))
        throw unsupported("unipotent branch needs a power-of-2 multiplier exponent, got " + std::to_string(l));

    // X^L = (X+1)^L + 1 splits F2[X]/((X+1)^e) into L invariant blocks
    // spanned by (X+1)^(k + jL); block k is a copy of F2[X]/((X+1)^a_k).
    const unsigned blocks = static_cast<unsigned>(l);
    const unsigned a = e / blocks;
    const unsigned b = e % blocks;
    const Poly2 digits = substitute_x_plus_one(c);
    CycleType ct = CycleType::identity(1);
    for (unsigned k = 0; k < blocks; ++k) {
        const unsigned ak = k < b ? a + 1 : a;
        const Poly2 u = digits.coeff(k) ? Poly2::one() : Poly2{};
        ct = weixu(ct, ct_lambda_primary(AffineModulus(q, ak), u, limits));
    }
    return ct;
}

} // namespace detail

/// Cycle type of R -> X^L R + c on F2[X]/(P), by CRT over the primary factors.
inline CycleType ct_affine_modP(const AffineMapModP& map, const Gf2Limits& limits = {}) {
    CycleType ct = CycleType::identity(1);
    for (const auto& [q, e] : factor(map.modulus(), limits).factors) {
        Poly2 qe = Poly2::one();
        for (unsigned i = 0; i < e; ++i) qe = qe * q;
        ct = weixu(ct, detail::ct_affine_primary(q, e, map.multiplier_exponent(), mod(map.translation(), qe), limits));
    }
    return ct;
}

/// Cycle type of the (X+1)^e0 component of the cascade map for a De Bruijn
/// register with n stages and polynomial chi.
inline CycleType gamma_zero_ct(unsigned e0, unsigned n, const Poly2& chi) {
    if (n == 0 || n >= 64) throw input_error("gamma_zero_ct: stage count out of range");
    if (chi.is_zero()) throw input_error("gamma_zero_ct: chi must be nonzero");
    if (static_cast<std::uint64_t>(chi.degree()) >= (std::uint64_t{1} << n))
        throw input_error("gamma_zero_ct: deg chi must be below 2^n");
    if (e0 == 0) return CycleType::identity(1);
    detail::require_affine_dimension(e0);

    auto divisible = [&](unsigned k) { return valuation(Poly2::x_plus_one(), chi) >= k; };

    if (n >= ceil_log2(e0)) {
        if (divisible(e0)) return CycleType::identity(pow2_128(e0));
        return CycleType::single(2, pow2_128(e0 - 1));
    }
    const unsigned block = 1U << n;
    const unsigned a = e0 / block;
    const unsigned b = e0 % block;
    if (!is_pow2(a + 1)) {
        const unsigned k = floor_log2(a) + 1;
        return CycleType::single(std::uint64_t{1} << k, pow2_128(e0 - k));
    }
    if (divisible(b)) return CycleType::single(a + 1, pow2_128(e0) / (a + 1));
    return CycleType::single(2 * (a + 1), pow2_128(e0 - 1) / (a + 1));
}

/// Single primary block of alpha^l when l is prime to the order: its
/// polynomial pow_l(q) and exponent e.
inline std::pair<Poly2, unsigned> rcf_power_coprime(const AffineModulus& m, std::uint64_t l,
                                                    const Gf2Limits& limits = {}) {
    if (l == 0) throw input_error("rcf_power_coprime requires a positive exponent");
    const std::uint64_t order = prime_power_order(m.q(), m.e(), limits);
    if (std::gcd(l, order) != 1)
        throw input_error("rcf_power_coprime: " + std::to_string(l) + " is not prime to the order " +
                          std::to_string(order));
    return {pow_min_poly(m.q(), l), m.e()};
}

struct RcfBlock {
    Poly2 poly;
    unsigned exponent = 0;
    unsigned count = 0;

    friend bool operator==(const RcfBlock&, const RcfBlock&) = default;
};

/// Primary blocks of alpha^l for l a power of 2 dividing the 2-part of the
/// order, largest exponent first.
inline std::vector<RcfBlock> rcf_power_p(const AffineModulus& m, std::uint64_t l) {
    const unsigned e = m.e();
    if (!is_pow2(l) || floor_log2(l) > ceil_log2(e))
        throw input_error("rcf_power_p: " + std::to_string(l) + " must be a power of 2 dividing 2^" +
                          std::to_string(ceil_log2(e)));
    const auto lp = static_cast<unsigned>(std::min<std::uint64_t>(l, e));
    const unsigned a = e / lp;
    const unsigned b = e % lp;
    const Poly2 p = pow_min_poly(m.q(), l);
    std::vector<RcfBlock> out;
    if (b != 0) out.push_back({p, a + 1, b});
    out.push_back({p, a, lp - b});
    return out;
}

struct BlockSplit {
    unsigned blocks = 0;
    Poly2 poly;
    unsigned exponent = 0;

    friend bool operator==(const BlockSplit&, const BlockSplit&) = default;
};

/// alpha^l for l dividing ord(q): ind_l(q) blocks, each with minimal
/// polynomial pow_l(q)^e.
inline BlockSplit block_split_count(const AffineModulus& m, std::uint64_t l, const Gf2Limits& limits = {}) {
    if (l == 0 || poly_order(m.q(), limits) % l != 0)
        throw input_error("block_split_count: " + std::to_string(l) + " does not divide ord(" + m.q().to_string() +
                          ")");
    return {pow_index(m.q(), l), pow_min_poly(m.q(), l), m.e()};
}

} // namespace fsrcycle
