#include <gtest/gtest.h>

#include "fsrcycle/bitlinalg.hpp"
#include "oracles.hpp"

using namespace fsrcycle;

namespace {

Poly2 P(const char* s) { return Poly2::parse(s); }

Poly2 power(const Poly2& q, unsigned e) {
    Poly2 r = Poly2::one();
    for (unsigned i = 0; i < e; ++i) r = r * q;
    return r;
}

} // namespace

TEST(Companion, Examples) {
    const BitMatrix one = companion(P("x+1"));
    ASSERT_EQ(one.rows(), 1u);
    EXPECT_TRUE(one.get(0, 0));

    const BitMatrix c = companion(P("x^3+x+1"));
    EXPECT_TRUE(c.get(1, 0));
    EXPECT_TRUE(c.get(2, 1));
    EXPECT_TRUE(c.get(0, 2));
    EXPECT_TRUE(c.get(1, 2));
    EXPECT_FALSE(c.get(2, 2));
    EXPECT_FALSE(c.get(0, 0));

    BitMatrix x2(2, 2);
    x2.set(1, 0, true);
    EXPECT_EQ(companion(P("x^2")), x2);
    EXPECT_THROW(companion(Poly2::one()), input_error);
}

TEST(Companion, IsMultiplicationByX) {
    // Column j of Comp(p) is x * x^j mod p.
    for (std::uint64_t p : {0x13ULL, 0x25ULL, 0x11bULL, 0x3ULL, 0x7ULL})
        for (int j = 0; j < oracle::deg(p); ++j) {
            const std::uint64_t col = oracle::mulmod(std::uint64_t{1} << j, 2, p);
            const BitMatrix c = companion(Poly2::from_mask(p));
            for (int i = 0; i < oracle::deg(p); ++i)
                EXPECT_EQ(c.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), ((col >> i) & 1) != 0);
        }
}

TEST(MatPow, Examples) {
    const BitMatrix c = companion(P("x^3+x+1"));
    EXPECT_EQ(mat_pow(c, 7), BitMatrix::identity(3));
    EXPECT_NE(mat_pow(c, 3), BitMatrix::identity(3));
    EXPECT_EQ(mat_pow(c, 0), BitMatrix::identity(3));
    BitVector v(3);
    v.set(1, true);
    EXPECT_EQ(mat_vec(BitMatrix::identity(3), v), v);
    EXPECT_THROW(mat_mul(BitMatrix(2, 3), BitMatrix(2, 3)), input_error);
    EXPECT_THROW(BitMatrix(257, 1), cap_exceeded);
}

TEST(KernelDim, Examples) {
    EXPECT_EQ(kernel_dim(BitMatrix(3, 3)), 3u);
    EXPECT_EQ(kernel_dim(BitMatrix::identity(4)), 0u);
    EXPECT_EQ(kernel_dim(companion(P("x^2"))), 1u);
    EXPECT_THROW(kernel_dim(BitMatrix(2, 3)), input_error);
}

TEST(EvalPoly, Examples) {
    const BitMatrix c = companion(P("x^3+x+1"));
    EXPECT_TRUE(eval_poly_at_matrix(P("x^3+x+1"), c).is_zero());
    EXPECT_EQ(eval_poly_at_matrix(Poly2::one(), c), BitMatrix::identity(3));
    EXPECT_EQ(eval_poly_at_matrix(P("x"), c), c);
}

TEST(MinPoly, Examples) {
    EXPECT_EQ(min_poly(companion(P("x^3+x+1"))), P("x^3+x+1"));
    EXPECT_EQ(min_poly(BitMatrix::identity(4)), P("x+1"));
    EXPECT_EQ(min_poly(mat_pow(companion(power(P("x+1"), 5)), 4)), P("x^2+1"));
}

TEST(MinPoly, AnnihilatesMinimally) {
    for (std::uint64_t q : oracle::irreducibles(4))
        for (unsigned e = 1; e <= 4; ++e)
            for (std::uint64_t l = 1; l <= 9; ++l) {
                const BitMatrix a = mat_pow(companion(power(Poly2::from_mask(q), e)), l);
                const Poly2 m = min_poly(a);
                EXPECT_TRUE(eval_poly_at_matrix(m, a).is_zero());
                for (const auto& [f, mult] : factor(m).factors)
                    EXPECT_FALSE(eval_poly_at_matrix(exact_div(m, f), a).is_zero());
            }
}

TEST(MatPow, OrderOfCompanionPower) {
    for (std::uint64_t q : oracle::irreducibles(4))
        for (unsigned e = 1; e <= 6; ++e) {
            const Poly2 qp = Poly2::from_mask(q);
            const std::uint64_t o = prime_power_order(qp, e);
            const BitMatrix c = companion(power(qp, e));
            EXPECT_EQ(mat_pow(c, o), BitMatrix::identity(c.rows()));
        }
}

TEST(BlockProfile, Examples) {
    const BitMatrix a = mat_pow(companion(power(P("x+1"), 5)), 4);
    EXPECT_EQ(primary_block_profile(a, P("x+1")), (std::vector<BlockCount>{{2, 1}, {1, 3}}));
    EXPECT_EQ(primary_block_profile(companion(P("x^3+x+1")), P("x^3+x+1")), (std::vector<BlockCount>{{1, 1}}));
    EXPECT_EQ(primary_block_profile(BitMatrix::identity(3), P("x+1")), (std::vector<BlockCount>{{1, 3}}));
    EXPECT_TRUE(primary_block_profile(BitMatrix::identity(3), P("x^2+x+1")).empty());
    EXPECT_THROW(primary_block_profile(BitMatrix::identity(2), P("x^2+1")), input_error);
}

TEST(BlockProfile, DimensionsAddUp) {
    for (std::uint64_t q : oracle::irreducibles(3))
        for (unsigned e = 1; e <= 5; ++e)
            for (std::uint64_t l = 1; l <= 8; ++l) {
                const BitMatrix a = mat_pow(companion(power(Poly2::from_mask(q), e)), l);
                std::size_t dim = 0;
                for (const auto& f : factor(min_poly(a)).factors)
                    for (const auto& [j, cnt] : primary_block_profile(a, f.factor))
                        dim += j * cnt * static_cast<std::size_t>(f.factor.degree());
                EXPECT_EQ(dim, a.rows());
            }
}
