#pragma once

// Cycle types of cascades: brute-force enumeration, the general engine over
// the cycles of the driving register, and the closed form for a De Bruijn
// register driving a linear one.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fsrcycle/affine_cycles.hpp"
#include "fsrcycle/cycletype.hpp"
#include "fsrcycle/error.hpp"
#include "fsrcycle/fsr.hpp"
#include "fsrcycle/gf2poly.hpp"

namespace fsrcycle {

enum class Method { closed_form, fast_path, general_polya, brute_force };

inline const char* method_name(Method m) {
    switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::fast_path: return "fast_path";
    case Method::general_polya: return "general_polya";
    case Method::brute_force: return "brute_force";
    }
    return "unknown";
}

struct CascadeAnalysis {
    CycleType cycle_type;
    Method method = Method::brute_force;
    std::optional<CycleType> gamma_ct;      // forward cycle product over the De Bruijn cycle
    std::optional<CycleType> gamma_zero_ct; // its (x+1)-primary part
    std::optional<CycleType> gamma_plus_ct; // the rest
    std::optional<Poly2> chi;
    std::optional<Factorization> factorization;
};

/// Cycle type of an explicit permutation.
inline CycleType ct_brute(const TransitionPerm& perm) {
    const std::size_t size = perm.images.size();
    if (perm.k >= 64 || size != (std::size_t{1} << perm.k))
        throw input_error("permutation table size does not match 2^" + std::to_string(perm.k));
    std::vector<bool> mark(size, false);
    for (std::size_t s = 0; s < size; ++s) {
        const std::uint32_t t = perm.images[s];
        if (t >= size) throw input_error("image " + std::to_string(t) + " of state " + std::to_string(s) + " out of range");
        if (mark[t])
            throw input_error("not a permutation: state " + std::to_string(t) + " has two preimages");
        mark[t] = true;
    }
    mark.assign(size, false);
    CycleType ct;
    for (std::size_t s = 0; s < size; ++s) {
        if (mark[s]) continue;
        std::uint64_t len = 0;
        for (std::size_t t = s; !mark[t]; t = perm.images[t]) {
            mark[t] = true;
            ++len;
        }
        ct.add(len, 1);
    }
    return ct;
}

/// The map on the driven register after one pass around `cycle`, the block
/// map of cycle[0] applied first.
inline TransitionPerm forward_cycle_product(const CascadeSpec& spec, const std::vector<std::uint64_t>& cycle,
                                            const FsrLimits& limits = {}) {
    if (cycle.empty()) throw input_error("forward_cycle_product: empty cycle");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const std::uint64_t want = cycle[(i + 1) % cycle.size()];
        if (transition(spec.f, cycle[i]) != want)
            throw input_error("forward_cycle_product: state " + std::to_string(cycle[i]) +
                              " is not followed by " + std::to_string(want));
    }
    if (spec.g.size() > limits.max_cascade_states || spec.m() > 32)
        throw cap_exceeded("driven register too large for an explicit block map");
    TransitionPerm p{spec.m(), std::vector<std::uint32_t>(spec.g.size())};
    for (std::uint64_t x = 0; x < spec.g.size(); ++x) p.images[x] = static_cast<std::uint32_t>(x);
    for (const std::uint64_t y : cycle) {
        const BlockMap h = wreath_view(spec, y);
        for (auto& img : p.images) img = static_cast<std::uint32_t>(h.apply(spec.g, img));
    }
    return p;
}

/// Cycles of the driving register, each listed from its smallest state.
inline std::vector<std::vector<std::uint64_t>> fsr_cycles(const FsrSpec& f) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<bool> seen(f.size(), false);
    for (std::uint64_t s = 0; s < f.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::uint64_t> cycle;
        for (std::uint64_t t = s; !seen[t]; t = transition(f, t)) {
            seen[t] = true;
            cycle.push_back(t);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

/// Works for any periodic pair: per driving cycle of length l, the blow-up by
/// l of the forward cycle product's cycle type.
inline CascadeAnalysis ct_polya_general(const CascadeSpec& spec, const FsrLimits& limits = {}) {
    detail::require_periodic(spec.f, "driving");
    detail::require_periodic(spec.g, "driven");
    CascadeAnalysis out;
    out.method = Method::general_polya;
    const auto cycles = fsr_cycles(spec.f);
    for (const auto& cycle : cycles) {
        const CycleType fcp = ct_brute(forward_cycle_product(spec, cycle, limits));
        if (cycles.size() == 1) out.gamma_ct = fcp;
        out.cycle_type = ct_mul(out.cycle_type, blowup(cycle.size(), fcp));
    }
    return out;
}

namespace detail {

inline void require_closed_form_inputs(const FsrSpec& f, const Poly2& p) {
    if (!is_debruijn(f)) throw input_error("driving register " + f.to_string() + " is not a De Bruijn register");
    if (p.degree() < 1) throw input_error("polynomial must have degree >= 1, got " + p.to_string());
    if (!p.eval_at_zero())
        throw input_error("polynomial " + p.to_string() + " has zero constant term, so the register is not periodic");
}

} // namespace detail

/// De Bruijn register f into the linear register with polynomial p, without
/// any enumeration.
inline CascadeAnalysis ct_cascade_closed(const FsrSpec& f, const Poly2& p, const Gf2Limits& limits = {}) {
    detail::require_closed_form_inputs(f, p);
    const unsigned n = f.n();
    const std::uint64_t block = std::uint64_t{1} << n;

    CascadeAnalysis out;
    out.method = Method::closed_form;
    out.chi = chi_poly(f);
    out.factorization = factor(p, limits);

    unsigned e0 = 0;
    CycleType alpha_plus = CycleType::identity(1);
    for (const auto& [q, e] : out.factorization->factors) {
        if (q == Poly2::x_plus_one())
            e0 = e;
        else
            alpha_plus = weixu(alpha_plus, ct_lambda_primary(AffineModulus(q, e), Poly2{}, limits));
    }
    out.gamma_plus_ct = iterate_ct(block, alpha_plus);
    out.gamma_zero_ct = gamma_zero_ct(e0, n, *out.chi);
    out.gamma_ct = weixu(*out.gamma_zero_ct, *out.gamma_plus_ct);
    out.cycle_type = blowup(block, *out.gamma_ct);
    return out;
}

/// Shortcut when p has at most one factor x+1 and n > 1; absent otherwise.
inline std::optional<CascadeAnalysis> ct_cascade_fast(const FsrSpec& f, const Poly2& p,
                                                      const Gf2Limits& limits = {}) {
    detail::require_closed_form_inputs(f, p);
    const unsigned n = f.n();
    if (n <= 1) return std::nullopt;
    Factorization fac = factor(p, limits);
    bool square_free = true;
    for (const auto& [q, e] : fac.factors) {
        if (q == Poly2::x_plus_one() && e > 1) return std::nullopt;
        if (e > 1) square_free = false;
    }
    const std::uint64_t block = std::uint64_t{1} << n;
    CascadeAnalysis out;
    out.method = Method::fast_path;
    const CycleType linear = ct_linear_modP(p, limits);
    out.gamma_ct = square_free ? linear : iterate_ct(block, linear);
    out.cycle_type = blowup(block, *out.gamma_ct);
    out.chi = chi_poly(f);
    out.factorization = std::move(fac);
    return out;
}

/// Cycle type of the explicit cascade permutation.
inline CascadeAnalysis ct_cascade_brute(const CascadeSpec& spec, const FsrLimits& limits = {}) {
    CascadeAnalysis out;
    out.method = Method::brute_force;
    out.cycle_type = ct_brute(cascade_transition(spec, limits));
    return out;
}

/// Upper bound 2^min(n,m) (2^max(n,m) - 1) on the cascade's longest cycle.
inline u128 max_period_bound(unsigned n, unsigned m) {
    if (n == 0 || m == 0) throw input_error("stage counts must be positive");
    if (n == 1 && m == 1) throw input_error("the period bound does not hold for m = n = 1");
    const unsigned lo = std::min(n, m);
    const unsigned hi = std::max(n, m);
    return checked_mul(pow2_128(lo), pow2_128(hi) - 1);
}

struct NuScan {
    std::set<unsigned> values;
    bool exhaustive = false;
    std::uint64_t examined = 0;
};

/// The valuations at x+1 of chi_f over all De Bruijn registers on n <= 4
/// stages, or over `samples` random ones.
inline NuScan nu_chi_scan(unsigned n, std::optional<std::uint64_t> samples, std::uint64_t seed = 1,
                          const FsrLimits& limits = {}) {
    NuScan out;
    auto record = [&](const FsrSpec& f) {
        out.values.insert(valuation(Poly2::x_plus_one(), chi_poly(f)));
        ++out.examined;
    };
    if (!samples) {
        out.exhaustive = true;
        for (const auto& f : all_debruijn(n)) record(f);
        return out;
    }
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < *samples; ++i) record(random_debruijn(n, rng, limits));
    return out;
}

} // namespace fsrcycle
