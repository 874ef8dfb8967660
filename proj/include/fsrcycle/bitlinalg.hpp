#pragma once

// Dense linear algebra over F2. Used as an oracle for the closed-form block
// structure results: companion matrices, powers, kernels, minimal polynomials
// and primary rational canonical block counts.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsrcycle/error.hpp"
#include "fsrcycle/gf2poly.hpp"

namespace fsrcycle {

inline constexpr std::size_t kMaxMatrixDimension = 256;

class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t length) : length_(length), w_((length + 63) / 64, 0) {}

    static BitVector unit(std::size_t length, std::size_t i) {
        BitVector v(length);
        v.set(i, true);
        return v;
    }

    std::size_t size() const { return length_; }

    bool get(std::size_t i) const { return ((w_[i / 64] >> (i % 64)) & 1U) != 0; }
    void set(std::size_t i, bool value) {
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (value)
            w_[i / 64] |= bit;
        else
            w_[i / 64] &= ~bit;
    }

    bool is_zero() const {
        for (auto w : w_)
            if (w != 0) return false;
        return true;
    }

    // Highest set index, or -1 for the zero vector.
    long highest() const {
        for (std::size_t i = w_.size(); i-- > 0;)
            if (w_[i] != 0) return static_cast<long>(64 * i + static_cast<std::size_t>(std::bit_width(w_[i])) - 1);
        return -1;
    }

    BitVector& operator^=(const BitVector& o) {
        if (o.length_ != length_) throw input_error("vector length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const std::uint64_t> words() const { return w_; }

  private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> w_;
};

class BitMatrix {
  public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols, std::size_t cap = kMaxMatrixDimension)
        : rows_(check_dimension(rows, cap)), cols_(check_dimension(cols, cap)), data_(rows, BitVector(cols)) {}

    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }

    static BitMatrix identity(std::size_t k) {
        BitMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }

    const BitVector& row(std::size_t r) const { return data_[r]; }
    BitVector& row(std::size_t r) { return data_[r]; }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.is_zero()) return false;
        return true;
    }

    BitMatrix& operator+=(const BitMatrix& o) {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw input_error("matrix dimension mismatch in addition");
        for (std::size_t i = 0; i < rows_; ++i) data_[i] ^= o.data_[i];
        return *this;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    static std::size_t check_dimension(std::size_t k, std::size_t cap) {
        if (k > cap)
            throw cap_exceeded("matrix dimension " + std::to_string(k) + " exceeds the cap of " + std::to_string(cap));
        return k;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVector> data_;
};

/// Companion matrix of a monic p: ones on the subdiagonal, last column holds
/// the low coefficients. It is multiplication by X on F2[X]/(p) in the basis
/// 1, X, ..., X^(k-1).
inline BitMatrix companion(const Poly2& p) {
    const int k = p.degree();
    if (k < 1) throw input_error("companion matrix needs degree >= 1, got " + p.to_string());
    const auto n = static_cast<std::size_t>(k);
    BitMatrix m(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) m.set(j + 1, j, true);
    for (std::size_t i = 0; i < n; ++i) m.set(i, n - 1, p.coeff(i));
    return m;
}

inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw input_error("matrix dimension mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                          " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    BitMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) c.row(i) ^= b.row(k);
    return c;
}

inline BitMatrix mat_pow(const BitMatrix& a, std::uint64_t k) {
    if (!a.is_square()) throw input_error("mat_pow requires a square matrix");
    BitMatrix result = BitMatrix::identity(a.rows());
    BitMatrix base = a;
    while (k != 0) {
        if ((k & 1U) != 0) result = mat_mul(result, base);
        k >>= 1;
        if (k != 0) base = mat_mul(base, base);
    }
    return result;
}

inline BitVector mat_vec(const BitMatrix& a, const BitVector& v) {
    if (a.cols() != v.size()) throw input_error("matrix/vector dimension mismatch");
    BitVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto rw = a.row(i).words();
        const auto vw = v.words();
        unsigned parity = 0;
        for (std::size_t w = 0; w < rw.size(); ++w) parity ^= static_cast<unsigned>(std::popcount(rw[w] & vw[w]));
        out.set(i, (parity & 1U) != 0);
    }
    return out;
}

inline std::size_t rank(BitMatrix a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows() && !a.get(pivot, c)) ++pivot;
        if (pivot == a.rows()) continue;
        std::swap(a.row(pivot), a.row(r));
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && a.get(i, c)) a.row(i) ^= a.row(r);
        ++r;
    }
    return r;
}

inline std::size_t kernel_dim(const BitMatrix& a) {
    if (!a.is_square()) throw input_error("kernel_dim requires a square matrix");
    return a.cols() - rank(a);
}

/// p(A) by Horner's rule.
inline BitMatrix eval_poly_at_matrix(const Poly2& p, const BitMatrix& a) {
    if (!a.is_square()) throw input_error("eval_poly_at_matrix requires a square matrix");
    BitMatrix acc = BitMatrix::zero(a.rows(), a.cols());
    const BitMatrix id = BitMatrix::identity(a.rows());
    for (int i = p.degree(); i >= 0; --i) {
        acc = mat_mul(acc, a);
        if (p.coeff(static_cast<std::size_t>(i))) acc += id;
    }
    return acc;
}

/// Minimal polynomial of v under A: the first linear dependency in the Krylov
/// sequence v, Av, A^2 v, ...
inline Poly2 vector_min_poly(const BitMatrix& a, const BitVector& v) {
    struct Row {
        long pivot;
        BitVector vec;
        Poly2 combo;
    };
    std::vector<Row> rows;
    BitVector current = v;
    for (std::size_t k = 0;; ++k) {
        BitVector vec = current;
        Poly2 combo = Poly2::monomial(k);
        for (const auto& row : rows) {
            if (vec.get(static_cast<std::size_t>(row.pivot))) {
                vec ^= row.vec;
                combo += row.combo;
            }
        }
        if (vec.is_zero()) return combo;
        const long pivot = vec.highest();
        rows.push_back({pivot, std::move(vec), std::move(combo)});
        current = mat_vec(a, current);
    }
}

/// Minimal polynomial of A as the lcm of the annihilators of the basis vectors.
inline Poly2 min_poly(const BitMatrix& a) {
    if (!a.is_square()) throw input_error("min_poly requires a square matrix");
    Poly2 m = Poly2::one();
    for (std::size_t i = 0; i < a.rows(); ++i) m = lcm(m, vector_min_poly(a, BitVector::unit(a.rows(), i)));
    return m;
}

struct BlockCount {
    unsigned exponent = 0;
    std::size_t count = 0;

    friend bool operator==(const BlockCount&, const BlockCount&) = default;
};

/// Number of primary rational canonical blocks Comp(q^j) of A for each j,
/// largest exponent first. Recovered from the kernel dimensions of q(A)^j.
inline std::vector<BlockCount> primary_block_profile(const BitMatrix& a, const Poly2& q) {
    if (!a.is_square()) throw input_error("primary_block_profile requires a square matrix");
    if (q.degree() < 1 || !is_irreducible(q))
        throw input_error("primary_block_profile: " + q.to_string() + " is not irreducible");
    const auto d = static_cast<std::size_t>(q.degree());
    const BitMatrix n = eval_poly_at_matrix(q, a);

    // at_least[j-1] = number of blocks with exponent >= j
    std::vector<std::size_t> at_least;
    std::size_t previous = 0;
    BitMatrix power = BitMatrix::identity(a.rows());
    while (true) {
        power = mat_mul(power, n);
        const std::size_t k = kernel_dim(power);
        if (k == previous) break;
        if ((k - previous) % d != 0) throw std::logic_error("kernel growth not a multiple of deg q");
        at_least.push_back((k - previous) / d);
        previous = k;
    }
    std::vector<BlockCount> out;
    for (std::size_t j = at_least.size(); j-- > 0;) {
        const std::size_t next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
        if (at_least[j] > next) out.push_back({static_cast<unsigned>(j + 1), at_least[j] - next});
    }
    return out;
}

} // namespace fsrcycle
