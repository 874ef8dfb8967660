#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it in-process.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsrcycle.hpp"
#include "fsrcycle/serialize.hpp"

namespace fsrcycle::cli {

enum ExitCode : int { ok = 0, bad_input = 2, over_cap = 3, mismatch = 4 };

inline constexpr const char* kEncodingHelp =
    "Registers are given either as an output sequence of 2^n bits read from the\n"
    "all-zero state (e.g. 0011), or as a truth table of the update function f1 in\n"
    "hex, \"n:HEX\" or \"0xHEX\", where bit s of the table is f1 at state s and\n"
    "stage x0 is the least significant bit of s. Cascade states put the driving\n"
    "register's bits above the driven register's.\n";

namespace detail {

// A bare 0/1 string is a sequence; anything with ':' or a 0x prefix is a table.
inline FsrSpec parse_register(const std::string& text, const FsrLimits& limits) {
    const bool table = text.find(':') != std::string::npos || text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0;
    if (!table && !text.empty() && text.find_first_not_of("01") == std::string::npos)
        return FsrSpec::from_sequence(text, limits);
    return FsrSpec::parse(text, limits);
}

inline std::string sequence_of(const FsrSpec& f) {
    std::string bits;
    std::uint64_t s = 0;
    do {
        bits.push_back((s & 1) ? '1' : '0');
        s = transition(f, s);
    } while (s != 0 && bits.size() < (std::size_t{1} << f.n()));
    return bits;
}

inline FsrLimits limits_from_env() {
    FsrLimits limits;
    if (const char* env = std::getenv("CASCADE_MAX_STATES"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || v == 0) throw input_error(std::string("CASCADE_MAX_STATES is not a positive integer: ") + env);
        limits.max_cascade_states = v;
    }
    return limits;
}

inline nlohmann::json nu_json(unsigned nu) {
    if (nu == kInfiniteValuation) return nullptr;
    return nu;
}

inline nlohmann::json bound_json(unsigned n, unsigned m) {
    if (n == 1 && m == 1) return nullptr;
    return count_json(max_period_bound(n, m));
}

inline std::string bound_text(unsigned n, unsigned m) {
    if (n == 1 && m == 1) return "none for m = n = 1";
    return to_string(max_period_bound(n, m));
}

inline std::string ms(std::chrono::steady_clock::duration d) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << std::chrono::duration<double, std::milli>(d).count() << " ms";
    return os.str();
}

inline void row(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(12) << key << value << '\n';
}

} // namespace detail

struct AnalyzeArgs {
    std::string debruijn, poly;
    bool verify = false;
    bool json = false;
};

inline int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    const FsrLimits limits = detail::limits_from_env();
    const auto start = std::chrono::steady_clock::now();
    const FsrSpec f = detail::parse_register(a.debruijn, limits);
    const Poly2 p = Poly2::parse(a.poly);
    std::optional<CascadeAnalysis> fast = ct_cascade_fast(f, p);
    CascadeAnalysis result = fast ? *fast : ct_cascade_closed(f, p);
    if (fast) {
        // The fast path skips the unipotent split; fill it in for the report.
        const CascadeAnalysis closed = ct_cascade_closed(f, p);
        result.gamma_zero_ct = closed.gamma_zero_ct;
        result.gamma_plus_ct = closed.gamma_plus_ct;
    }
    const unsigned n = f.n();
    const unsigned m = static_cast<unsigned>(p.degree());

    std::optional<bool> verified;
    if (a.verify) {
        const CascadeSpec spec{f, lfsr_spec(p, limits)};
        const CascadeAnalysis closed = ct_cascade_closed(f, p);
        const CascadeAnalysis polya = ct_polya_general(spec, limits);
        const CascadeAnalysis brute = ct_cascade_brute(spec, limits);
        verified = closed.cycle_type == brute.cycle_type && polya.cycle_type == brute.cycle_type &&
                   result.cycle_type == brute.cycle_type && closed.gamma_ct == polya.gamma_ct;
        if (!*verified) {
            err << "VERIFICATION MISMATCH for " << f.to_string() << " driving " << p.to_string() << '\n'
                << "  " << method_name(result.method) << ": " << result.cycle_type.to_string() << '\n'
                << "  closed_form: " << closed.cycle_type.to_string() << '\n'
                << "  general_polya: " << polya.cycle_type.to_string() << '\n'
                << "  brute_force: " << brute.cycle_type.to_string() << '\n';
        }
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const unsigned nu = valuation(Poly2::x_plus_one(), *result.chi);

    if (a.json) {
        nlohmann::json j = {
            {"n", n},
            {"m", m},
            {"f", f.to_string()},
            {"poly", p.to_string()},
            {"method", method_name(result.method)},
            {"cycle_type", to_json(result.cycle_type)},
            {"chi", result.chi->to_string()},
            {"nu", detail::nu_json(nu)},
            {"factors", to_json(*result.factorization)},
            {"bound", detail::bound_json(n, m)},
            {"gamma_ct", to_json(*result.gamma_ct)},
            {"gamma0_ct", to_json(*result.gamma_zero_ct)},
        };
        if (verified) j["verified"] = *verified;
        out << j.dump() << '\n';
    } else {
        detail::row(out, "stages", "n = " + std::to_string(n) + ", m = " + std::to_string(m));
        detail::row(out, "driving", f.to_string() + " (" + detail::sequence_of(f) + ")");
        detail::row(out, "driven", p.to_string() + " = " + result.factorization->to_string());
        detail::row(out, "chi", result.chi->to_string() + " (nu = " + std::to_string(nu) + ")");
        detail::row(out, "method", method_name(result.method));
        detail::row(out, "CT(Gamma)", result.gamma_ct->to_string());
        detail::row(out, "CT(Gamma0)", result.gamma_zero_ct->to_string());
        detail::row(out, "cycle type", result.cycle_type.to_string());
        detail::row(out, "bound", detail::bound_text(n, m));
        if (verified) detail::row(out, "verify", *verified ? "ok (closed_form, general_polya, brute_force agree)" : "MISMATCH");
        detail::row(out, "time", detail::ms(elapsed));
    }
    return verified.value_or(true) ? ok : mismatch;
}

struct SimulateArgs {
    std::string f, g;
    bool brute = false;
    bool json = false;
};

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const FsrLimits limits = detail::limits_from_env();
    const auto start = std::chrono::steady_clock::now();
    const CascadeSpec spec{detail::parse_register(a.f, limits), detail::parse_register(a.g, limits)};
    const CascadeAnalysis r = a.brute ? ct_cascade_brute(spec, limits) : ct_polya_general(spec, limits);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const unsigned n = spec.n(), m = spec.m();
    if (a.json) {
        nlohmann::json j = {
            {"n", n},
            {"m", m},
            {"f", spec.f.to_string()},
            {"g", spec.g.to_string()},
            {"method", method_name(r.method)},
            {"cycle_type", to_json(r.cycle_type)},
            {"bound", detail::bound_json(n, m)},
        };
        if (r.gamma_ct) j["gamma_ct"] = to_json(*r.gamma_ct);
        out << j.dump() << '\n';
    } else {
        detail::row(out, "stages", "n = " + std::to_string(n) + ", m = " + std::to_string(m));
        detail::row(out, "driving", spec.f.to_string());
        detail::row(out, "driven", spec.g.to_string());
        detail::row(out, "method", method_name(r.method));
        if (r.gamma_ct) detail::row(out, "CT(Gamma)", r.gamma_ct->to_string());
        detail::row(out, "cycle type", r.cycle_type.to_string());
        detail::row(out, "bound", detail::bound_text(n, m));
        detail::row(out, "time", detail::ms(elapsed));
    }
    return ok;
}

inline int cmd_chi(const std::string& debruijn, bool json, std::ostream& out) {
    const FsrSpec f = detail::parse_register(debruijn, detail::limits_from_env());
    if (!is_debruijn(f)) throw input_error("register " + f.to_string() + " is not a De Bruijn register");
    const Poly2 chi = chi_poly(f);
    const unsigned nu = valuation(Poly2::x_plus_one(), chi);
    if (json) {
        out << nlohmann::json{{"n", f.n()}, {"chi", chi.to_string()}, {"nu", detail::nu_json(nu)}}.dump() << '\n';
    } else {
        detail::row(out, "chi", chi.to_string());
        detail::row(out, "nu", std::to_string(nu));
    }
    return ok;
}

inline int cmd_bound(unsigned n, unsigned m, bool json, std::ostream& out) {
    const u128 b = max_period_bound(n, m);
    if (json)
        out << nlohmann::json{{"n", n}, {"m", m}, {"bound", count_json(b)}}.dump() << '\n';
    else
        out << to_string(b) << '\n';
    return ok;
}

inline int cmd_factor(const std::string& poly, bool json, std::ostream& out) {
    const Poly2 p = Poly2::parse(poly);
    const Factorization fac = factor(p);
    if (json)
        out << nlohmann::json{{"poly", p.to_string()}, {"factors", to_json(fac)}}.dump() << '\n';
    else
        out << fac.to_string() << '\n';
    return ok;
}

inline int cmd_scan_nu(unsigned n, std::optional<std::uint64_t> samples, std::uint64_t seed, bool json,
                       std::ostream& out) {
    const NuScan scan = nu_chi_scan(n, samples, seed, detail::limits_from_env());
    if (json) {
        out << nlohmann::json{{"n", n},
                              {"exhaustive", scan.exhaustive},
                              {"examined", scan.examined},
                              {"nu", scan.values}}
                   .dump()
            << '\n';
    } else {
        std::string values;
        for (unsigned v : scan.values) values += (values.empty() ? "" : " ") + std::to_string(v);
        detail::row(out, "registers", std::to_string(scan.examined) + (scan.exhaustive ? " (all)" : " (sampled)"));
        detail::row(out, "nu values", values);
    }
    return ok;
}

inline int cmd_debruijn(unsigned n, bool json, std::ostream& out) {
    const FsrSpec f = debruijn_prefer_one(n, detail::limits_from_env());
    const std::string seq = detail::sequence_of(f);
    if (json)
        out << nlohmann::json{{"n", n}, {"f", f.to_string()}, {"sequence", seq}}.dump() << '\n';
    else {
        detail::row(out, "table", f.to_string());
        detail::row(out, "sequence", seq);
    }
    return ok;
}

/// Runs the program on argv (argv[0] is the program name).
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cycle structure of cascaded feedback shift registers"};
    app.footer(kEncodingHelp);
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "cycle type of a De Bruijn register driving an LFSR");
    an->add_option("--debruijn", analyze.debruijn, "driving De Bruijn register")->required();
    an->add_option("--poly", analyze.poly, "characteristic polynomial of the driven LFSR")->required();
    an->add_flag("--verify", analyze.verify, "also run the general engine and brute force and compare");
    an->add_flag("--json", analyze.json, "machine-readable output");

    SimulateArgs simulate;
    auto* sim = app.add_subcommand("simulate", "cycle type of an arbitrary periodic cascade");
    sim->add_option("--f", simulate.f, "driving register")->required();
    sim->add_option("--g", simulate.g, "driven register")->required();
    sim->add_flag("--brute", simulate.brute, "enumerate the full state space");
    sim->add_flag("--json", simulate.json, "machine-readable output");

    std::string chi_reg;
    bool chi_json = false;
    auto* chi = app.add_subcommand("chi", "the polynomial read off a De Bruijn cycle and its valuation at x+1");
    chi->add_option("--debruijn", chi_reg, "De Bruijn register")->required();
    chi->add_flag("--json", chi_json, "machine-readable output");

    unsigned bound_n = 0, bound_m = 0;
    bool bound_json = false;
    auto* bnd = app.add_subcommand("bound", "upper bound on the longest cascade cycle");
    bnd->add_option("--n", bound_n, "driving stages")->required();
    bnd->add_option("--m", bound_m, "driven stages")->required();
    bnd->add_flag("--json", bound_json, "machine-readable output");

    std::string factor_poly;
    bool factor_json = false;
    auto* fac = app.add_subcommand("factor", "factor a polynomial over GF(2)");
    fac->add_option("--poly", factor_poly, "polynomial, e.g. x^5+x^2+x+1")->required();
    fac->add_flag("--json", factor_json, "machine-readable output");

    unsigned scan_n = 0;
    std::uint64_t scan_samples = 0, scan_seed = 1;
    bool scan_json = false;
    auto* scan = app.add_subcommand("scan-nu", "valuations at x+1 over De Bruijn registers");
    scan->add_option("--n", scan_n, "stages")->required();
    auto* exhaustive = scan->add_flag("--exhaustive", "every De Bruijn register (n <= 4)");
    auto* samples = scan->add_option("--samples", scan_samples, "number of uniformly random registers");
    exhaustive->excludes(samples);
    scan->add_option("--seed", scan_seed, "random seed")->capture_default_str();
    scan->add_flag("--json", scan_json, "machine-readable output");

    unsigned db_n = 0;
    bool db_json = false;
    auto* db = app.add_subcommand("debruijn", "the prefer-one De Bruijn register");
    db->add_option("--n", db_n, "stages")->required();
    db->add_flag("--json", db_json, "machine-readable output");

    std::vector<const char*> cargv;
    for (const auto& s : argv) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }

    try {
        if (*an) return cmd_analyze(analyze, out, err);
        if (*sim) return cmd_simulate(simulate, out);
        if (*chi) return cmd_chi(chi_reg, chi_json, out);
        if (*bnd) return cmd_bound(bound_n, bound_m, bound_json, out);
        if (*fac) return cmd_factor(factor_poly, factor_json, out);
        if (*scan) {
            std::optional<std::uint64_t> s;
            if (*samples) s = scan_samples;
            return cmd_scan_nu(scan_n, s, scan_seed, scan_json, out);
        }
        if (*db) return cmd_debruijn(db_n, db_json, out);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const unsupported& e) {
        err << "unsupported: " << e.what() << '\n';
        return bad_input;
    } catch (const cap_exceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return over_cap;
    } catch (const overflow_error& e) {
        err << "overflow: " << e.what() << '\n';
        return over_cap;
    }
    return bad_input;
}

} // namespace fsrcycle::cli
