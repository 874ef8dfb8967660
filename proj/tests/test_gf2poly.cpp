#include <gtest/gtest.h>

#include <random>

#include "fsrcycle/gf2poly.hpp"
#include "oracles.hpp"

using namespace fsrcycle;

namespace {

Poly2 P(const char* s) { return Poly2::parse(s); }

} // namespace

TEST(Poly2Parse, CanonicalRoundTrip) {
    for (const char* s : {"x^8+x^7+x^6+x^3+x^2+1", "x+1", "1", "0", "x", "x^64+1", "x^130+x^65+x"})
        EXPECT_EQ(P(s).to_string(), s);
}

TEST(Poly2Parse, HexMask) {
    EXPECT_EQ(P("0x2B"), P("x^5+x^3+x+1"));
    EXPECT_EQ(P("0x0"), Poly2{});
    EXPECT_EQ(P("0x10000000000000001").degree(), 64);
}

TEST(Poly2Parse, ToleratesSpacesAndUpperCase) {
    EXPECT_EQ(P(" X^3 + x + 1 "), P("x^3+x+1"));
    EXPECT_EQ(P("x+x"), Poly2{});
}

TEST(Poly2Parse, ErrorsNameTheColumn) {
    try {
        (void)P("x^3+y+1");
        FAIL();
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
    }
    EXPECT_THROW((void)P(""), input_error);
    EXPECT_THROW((void)P("x^"), input_error);
    EXPECT_THROW((void)P("x+"), input_error);
    EXPECT_THROW((void)P("x3"), input_error);
}

TEST(Poly2, DegreeAndPredicates) {
    EXPECT_EQ(Poly2{}.degree(), kZeroDegree);
    EXPECT_TRUE(Poly2::one().is_one());
    EXPECT_EQ(P("x^3+x+1").term_count(), 3u);
    EXPECT_TRUE(P("x^3+x+1").eval_at_one());
    EXPECT_FALSE(P("x^2+1").eval_at_one());
    EXPECT_LT(P("x^2+1"), P("x^2+x"));
    EXPECT_LT(P("x^2+x+1"), P("x^3"));
}

TEST(Gf2Add, Examples) {
    EXPECT_EQ(add(P("x+1"), P("x+1")), Poly2{});
    EXPECT_EQ(add(P("x^3+x+1"), P("x+1")), P("x^3"));
    EXPECT_EQ(add(Poly2{}, P("x^4+x")), P("x^4+x"));
}

TEST(Gf2Mul, Examples) {
    EXPECT_EQ(mul(P("x^3+x+1"), P("x^2+1")), P("x^5+x^2+x+1"));
    EXPECT_EQ(P("x^3+x+1") * P("x^5+x^4+x+1"), P("x^8+x^7+x^6+x^3+x^2+1"));
    EXPECT_EQ(P("x^7+x") * Poly2::one(), P("x^7+x"));
}

TEST(Gf2Mul, MatchesMaskOracleAcrossWords) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t a = rng() >> 33, b = rng() >> 33;
        EXPECT_EQ(mul(Poly2::from_mask(a), Poly2::from_mask(b)), Poly2::from_mask(oracle::clmul(a, b)));
    }
    // Multi-word: (x^100 + 1)(x^100 + 1) = x^200 + 1.
    const Poly2 big = Poly2::monomial(100) + Poly2::one();
    EXPECT_EQ(big * big, Poly2::monomial(200) + Poly2::one());
}

TEST(Gf2DivRem, Examples) {
    auto [q, r] = divrem(P("x^5+x^2+x+1"), P("x+1"));
    EXPECT_EQ(q, P("x^4+x^3+x^2+1"));
    EXPECT_TRUE(r.is_zero());
    auto [q2, r2] = divrem(P("x+1"), P("x^3+x+1"));
    EXPECT_TRUE(q2.is_zero());
    EXPECT_EQ(r2, P("x+1"));
    auto [q3, r3] = divrem(P("x^9+x^4"), P("x^9+x^4"));
    EXPECT_TRUE(q3.is_one());
    EXPECT_TRUE(r3.is_zero());
    EXPECT_THROW(divrem(P("x"), Poly2{}), input_error);
}

TEST(Gf2DivRem, ReassemblesRandom) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const Poly2 a = Poly2(std::vector<std::uint64_t>{rng(), rng() >> (rng() % 64)});
        const Poly2 b = Poly2::from_mask((rng() >> (rng() % 63)) | 1);
        auto [q, r] = divrem(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Gf2Gcd, Examples) {
    EXPECT_EQ(gcd(P("x^5+x^2+x+1"), P("x^3+x^2+x+1")), P("x^2+1"));
    EXPECT_EQ(gcd(P("x^4+x"), Poly2{}), P("x^4+x"));
    EXPECT_TRUE(gcd(P("x^3+x+1"), P("x+1")).is_one());
    EXPECT_THROW(gcd(Poly2{}, Poly2{}), input_error);
}

TEST(Gf2Derivative, Examples) {
    EXPECT_TRUE(derivative(P("x^2")).is_zero());
    EXPECT_EQ(derivative(P("x^3+x+1")), P("x^2+1"));
    EXPECT_TRUE(derivative(Poly2{}).is_zero());
}

TEST(Gf2XPowMod, Examples) {
    EXPECT_TRUE(x_pow_mod(7, P("x^3+x+1")).is_one());
    EXPECT_TRUE(x_pow_mod(0, P("x^3+x+1")).is_one());
    EXPECT_EQ(x_pow_mod(4, P("x^3+x+1")), P("x^2+x"));
    EXPECT_THROW(x_pow_mod(3, Poly2::one()), input_error);
}

TEST(Gf2XPowMod, MatchesRepeatedMultiplication) {
    for (std::uint64_t m : {0x13ULL, 0x25ULL, 0x1c3ULL, 0x11bULL})
        for (std::uint64_t k = 0; k < 80; ++k)
            EXPECT_EQ(x_pow_mod(k, Poly2::from_mask(m)).to_u64(), oracle::powmod(2, k, m)) << m << " " << k;
}

TEST(Gf2Irreducible, Examples) {
    EXPECT_TRUE(is_irreducible(P("x^3+x+1")));
    EXPECT_FALSE(is_irreducible(P("x^2+1")));
    EXPECT_TRUE(is_irreducible(P("x+1")));
    EXPECT_THROW((void)is_irreducible(Poly2::one()), input_error);
}

TEST(Gf2Irreducible, ExhaustiveAgainstTrialDivision) {
    for (std::uint64_t p = 2; p < (1u << 13); ++p)
        EXPECT_EQ(is_irreducible(Poly2::from_mask(p)), oracle::irreducible(p)) << p;
}

TEST(Gf2Factor, Examples) {
    EXPECT_EQ(factor(P("x^5+x^2+x+1")).to_string(), "(x+1)^2(x^3+x+1)");
    EXPECT_EQ(factor(P("x^8+x^7+x^6+x^3+x^2+1")).to_string(), "(x+1)^5(x^3+x+1)");
    const auto f = factor(P("x^3+x+1"));
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].factor, P("x^3+x+1"));
    EXPECT_EQ(f.factors[0].multiplicity, 1u);
    EXPECT_THROW(factor(Poly2::one()), input_error);
    EXPECT_THROW(factor(Poly2{}), input_error);
}

TEST(Gf2Factor, ExhaustiveUpToDegree12) {
    for (std::uint64_t a = 2; a < (1u << 13); ++a) {
        const Poly2 p = Poly2::from_mask(a);
        const Factorization f = factor(p);
        EXPECT_EQ(f.product(), p) << a;
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            EXPECT_TRUE(oracle::irreducible(f.factors[i].factor.to_u64())) << a;
            if (i > 0) {
                EXPECT_LT(f.factors[i - 1].factor, f.factors[i].factor);
            }
            // multiplicity is exact: one more power does not divide
            const std::uint64_t q = f.factors[i].factor.to_u64();
            const std::uint64_t qe = oracle::ppow(q, f.factors[i].multiplicity);
            EXPECT_EQ(oracle::pmod(a, qe), 0u);
            if (oracle::deg(qe) + oracle::deg(q) <= 62) {
                EXPECT_NE(oracle::pmod(a, oracle::clmul(qe, q)), 0u);
            }
        }
    }
}

TEST(Gf2Factor, LargeDegrees) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        const Poly2 p = Poly2::from_mask(rng() | 1) * Poly2::from_mask((rng() >> 40) | 1);
        if (p.degree() > 64) continue;
        const Factorization f = factor(p);
        EXPECT_EQ(f.product(), p);
        for (const auto& [q, e] : f.factors) EXPECT_TRUE(is_irreducible(q));
    }
    EXPECT_THROW(factor(Poly2::monomial(65) + Poly2::one()), cap_exceeded);
}

TEST(Gf2Order, Examples) {
    EXPECT_EQ(poly_order(P("x^3+x+1")), 7u);
    EXPECT_EQ(poly_order(P("x+1")), 1u);
    EXPECT_EQ(poly_order(P("x^2+x+1")), 3u);
    EXPECT_EQ(poly_order(P("x^4+x^3+x^2+x+1")), 5u);
    EXPECT_THROW(poly_order(P("x^2+1")), input_error);
    EXPECT_THROW(poly_order(P("x")), input_error);
}

TEST(Gf2Order, MatchesSteppingOracle) {
    for (std::uint64_t q : oracle::irreducibles(12)) {
        const std::uint64_t o = poly_order(Poly2::from_mask(q));
        EXPECT_EQ(o, oracle::order_of_x(q)) << q;
        EXPECT_EQ(((std::uint64_t{1} << oracle::deg(q)) - 1) % o, 0u);
    }
}

TEST(Gf2Order, Degree32Primitive) {
    // x^32+x^22+x^2+x+1 is primitive.
    const Poly2 q = P("x^32+x^22+x^2+x+1");
    EXPECT_EQ(poly_order(q), 4294967295ULL);
    EXPECT_THROW(poly_order(P("x^33+x^13+1")), cap_exceeded);
}

TEST(Gf2PrimePowerOrder, Examples) {
    EXPECT_EQ(prime_power_order(P("x+1"), 2), 2u);
    EXPECT_EQ(prime_power_order(P("x^3+x+1"), 1), 7u);
    EXPECT_EQ(prime_power_order(P("x+1"), 5), 8u);
    EXPECT_EQ(prime_power_order(P("x^2+x+1"), 4), 12u);
}

TEST(Gf2PrimePowerOrder, MatchesStepping) {
    for (std::uint64_t q : oracle::irreducibles(4))
        for (unsigned e = 1; oracle::deg(q) * static_cast<int>(e) <= 12; ++e) {
            const std::uint64_t qe = oracle::ppow(q, e);
            std::uint64_t k = 1, r = oracle::pmod(2, qe);
            while (r != 1) {
                r = oracle::mulmod(r, 2, qe);
                ++k;
            }
            EXPECT_EQ(prime_power_order(Poly2::from_mask(q), e), k);
        }
}

TEST(Gf2PowMinPoly, Examples) {
    EXPECT_EQ(pow_min_poly(P("x^3+x+1"), 4), P("x^3+x+1"));
    EXPECT_EQ(pow_min_poly(P("x^4+x^3+1"), 1), P("x^4+x^3+1"));
    EXPECT_EQ(pow_min_poly(P("x^2+x+1"), 3), P("x+1"));
    EXPECT_EQ(pow_min_poly(P("x^3+x+1"), 3), P("x^3+x^2+1"));
    EXPECT_THROW(pow_min_poly(P("x^2+x+1"), 0), input_error);
}

TEST(Gf2PowMinPoly, AnnihilatesAndDividesDegree) {
    for (std::uint64_t q : oracle::irreducibles(6))
        for (std::uint64_t l = 1; l <= 20; ++l) {
            const Poly2 m = pow_min_poly(Poly2::from_mask(q), l);
            EXPECT_EQ(oracle::deg(q) % m.degree(), 0);
            EXPECT_TRUE(oracle::irreducible(m.to_u64()));
            // m(x^l) = 0 mod q
            const std::uint64_t xl = oracle::powmod(2, l, q);
            std::uint64_t acc = 0, pw = 1;
            for (int i = 0; i <= m.degree(); ++i) {
                if (m.coeff(static_cast<std::size_t>(i))) acc ^= pw;
                pw = oracle::mulmod(pw, xl, q);
            }
            EXPECT_EQ(acc, 0u) << q << " " << l;
        }
}

TEST(Gf2PowMinPoly, Composition) {
    for (std::uint64_t q : oracle::irreducibles(6))
        for (std::uint64_t l1 = 1; l1 <= 16; ++l1)
            for (std::uint64_t l2 = 1; l2 <= 16; ++l2) {
                const Poly2 qp = Poly2::from_mask(q);
                EXPECT_EQ(pow_min_poly(pow_min_poly(qp, l2), l1), pow_min_poly(qp, l1 * l2));
            }
}

TEST(Gf2PowIndex, Examples) {
    EXPECT_EQ(pow_index(P("x^2+x+1"), 3), 2u);
    EXPECT_EQ(pow_index(P("x^4+x+1"), 1), 1u);
    EXPECT_EQ(pow_index(P("x^3+x+1"), 2), 1u);
    EXPECT_EQ(pow_index(P("x^4+x^3+x^2+x+1"), 5), 4u);
}

TEST(Gf2Valuation, Examples) {
    EXPECT_EQ(valuation(P("x+1"), P("x^5+x^2+x+1")), 2u);
    EXPECT_EQ(valuation(P("x+1"), P("x+1")), 1u);
    EXPECT_EQ(valuation(P("x+1"), Poly2{}), kInfiniteValuation);
    EXPECT_EQ(valuation(P("x+1"), P("x^8+x^7+x^6+x^3+x^2+1")), 5u);
    EXPECT_THROW(valuation(P("x^2+1"), P("x")), input_error);
}

TEST(Gf2SubstituteXPlusOne, Expansion) {
    // (x+1)-adic digits of c, reassembled, give c back.
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const std::uint64_t c = rng() >> 44;
        const Poly2 d = substitute_x_plus_one(Poly2::from_mask(c));
        std::uint64_t back = 0;
        for (int i = 0; i <= d.degree(); ++i)
            if (d.coeff(static_cast<std::size_t>(i))) back ^= oracle::ppow(3, static_cast<unsigned>(i));
        EXPECT_EQ(back, c);
    }
}
