#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fibword/cells.hpp"
#include "fibword/verify.hpp"
#include "fibword/words.hpp"

namespace {

using fibword::Convention;
using fibword::Params;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

struct Range {
    int lo;
    int hi;
};

// "lo..hi" inclusive on both ends; a single value stands for itself.
Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid range \"" + text + "\" (expected N or LO..HI)");
    }
}

std::vector<fibword::IdentityId> parse_ids(const std::string& text) {
    if (text.empty()) {
        return {fibword::kAllIdentities.begin(), fibword::kAllIdentities.end()};
    }
    std::vector<fibword::IdentityId> ids;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        if (!token.empty()) {
            const auto id = fibword::identity_from_name(token);
            if (!id) throw std::invalid_argument("unknown identity \"" + token + "\"");
            ids.push_back(*id);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ids;
}

Params make_params(int a, int b, bool classical) {
    return Params(a, b, classical ? Convention::classical_swapped : Convention::standard);
}

int run_gen(int a, int b, int n, bool classical, const std::string& kind, bool length_only,
            std::uint64_t cap) {
    const Params params = make_params(a, b, classical);
    if (length_only) {
        std::uint64_t len = 0;
        if (kind == "I") {
            len = fibword::length_I(params, n);
        } else {
            len = fibword::length_f(params, n);
            if (kind == "p") {
                if (len < 2) {
                    throw std::invalid_argument("p undefined: the word has fewer than two symbols");
                }
                len -= 2;
            }
        }
        std::cout << len << "\n";
        return kExitOk;
    }
    fibword::Word w;
    if (kind == "f") {
        w = fibword::word_f(params, n, cap);
    } else if (kind == "t") {
        w = fibword::word_t(params, n, cap);
    } else if (kind == "p") {
        w = fibword::palindromic_prefix(params, n, cap);
    } else {
        w = fibword::word_I(params, n, cap);
    }
    std::cout << w.to_string() << "\n";
    return kExitOk;
}

int run_decompose(int a, int b, int n, bool classical, int depth, bool expand_i,
                  bool compose_twice, const std::string& format, std::uint64_t cap) {
    const Params params = make_params(a, b, classical);
    fibword::DecomposeOptions options;
    options.compose_twice = compose_twice;
    fibword::CellStructure st = fibword::decompose(params, n, options);
    if (depth > 0) st = fibword::refine(st, depth);
    if (expand_i) st = fibword::expand_all_I(st);
    (void)cap;
    if (format == "plain") {
        std::cout << fibword::structure_to_diagram(st);
    } else {
        std::cout << fibword::structure_to_json(st) << "\n";
    }
    return kExitOk;
}

int run_verify(const std::string& a_range, const std::string& b_range, int n_max,
               const std::string& ids_text, bool classical_at_11, std::uint64_t cap) {
    const Range ar = parse_range(a_range);
    const Range br = parse_range(b_range);
    fibword::GridConfig config;
    config.a_lo = ar.lo;
    config.a_hi = ar.hi;
    config.b_lo = br.lo;
    config.b_hi = br.hi;
    config.n_max = n_max;
    config.length_cap = cap;
    config.ids = parse_ids(ids_text);
    config.classical_at_11 = classical_at_11;

    const auto reports = fibword::verify_grid(config);
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    for (const auto& report : reports) {
        std::cout << fibword::report_line(report) << "\n";
        switch (report.status) {
            case fibword::VerifyStatus::pass: ++passed; break;
            case fibword::VerifyStatus::fail: ++failed; break;
            default: ++skipped; break;
        }
    }
    std::cerr << reports.size() << " checks: " << passed << " pass, " << failed << " fail, "
              << skipped << " skipped\n";
    return failed == 0 ? kExitOk : kExitVerifyFailure;
}

int run_stats(int a, int b, bool classical, int n_max) {
    const Params params = make_params(a, b, classical);
    std::cout << "f(a=" << a << ", b=" << b << "), " << fibword::convention_name(params.convention)
              << " convention\n";
    std::cout << "period l = " << fibword::period_l(params) << "\n";
    std::cout << "   n   r   s             L_n\n";
    for (int n = 0; n <= n_max; ++n) {
        std::uint64_t len = 0;
        try {
            len = fibword::length_f(params, n);
        } catch (const std::length_error&) {
            std::cout << "  (lengths overflow the 64-bit range beyond n = " << n - 1 << ")\n";
            break;
        }
        const auto [r, s] = fibword::rs(params, n);
        std::printf("  %2d  %2d  %2d  %14llu\n", n, r, s,
                    static_cast<unsigned long long>(len));
    }

    std::cout << "decomposition rows:\n";
    for (const auto c : {fibword::ParityCase::even_r, fibword::ParityCase::both_odd,
                         fibword::ParityCase::odd_even}) {
        // first n at or above the case minimum whose parity routes to this case
        int first = -1;
        const int minimum = fibword::min_n_for_case(c, params);
        for (int n = minimum; n <= minimum + 1; ++n) {
            if (fibword::parity_case(params, n) == c) {
                first = n;
                break;
            }
        }
        if (first < 0) continue;
        const auto st = fibword::decompose(params, first);
        const auto expanded = fibword::expand_all_I(st);
        std::cout << "  " << fibword::parity_case_name(c) << ": level drop " << st.period
                  << ", minimum n = " << minimum << ", at n = " << first << ": "
                  << st.cells.size() << " cells (" << expanded.cells.size()
                  << " after I-expansion)"
                  << (st.self_similar ? "" : ", apply twice for true self-similarity") << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biperiodic Fibonacci words: generation, overlapping cell decompositions, "
                 "and brute-force identity verification"};
    app.require_subcommand(1);

    int a = 1;
    int b = 1;
    int n = 0;
    bool classical = false;
    std::uint64_t cap = fibword::kDefaultLengthCap;

    auto* gen = app.add_subcommand("gen", "print a word as a 0/1 string");
    std::string kind = "f";
    bool length_only = false;
    gen->add_option("--a", a, "parameter a (>= 1)")->required();
    gen->add_option("--b", b, "parameter b (>= 1)")->required();
    gen->add_option("--n", n, "index n (>= 0)")->required();
    gen->add_flag("--classical", classical, "swapped initial conditions (a = b = 1 only)");
    gen->add_option("--kind", kind, "which word: f, t, p, or I")
        ->check(CLI::IsMember({"f", "t", "p", "I"}));
    gen->add_flag("--length-only", length_only, "print the symbol count without the word");
    gen->add_option("--cap", cap, "maximum word length in symbols")
        ->envname("FIBWORD_LENGTH_CAP");

    auto* dec = app.add_subcommand("decompose", "emit the overlapping cell structure of f(a,b,n)");
    int depth = 0;
    bool expand_i = false;
    bool compose_twice = false;
    std::string format = "structured";
    dec->add_option("--a", a, "parameter a (>= 1)")->required();
    dec->add_option("--b", b, "parameter b (>= 1)")->required();
    dec->add_option("--n", n, "index n (>= case minimum)")->required();
    dec->add_flag("--classical", classical, "swapped initial conditions (a = b = 1 only)");
    dec->add_option("--depth", depth, "extra self-similar refinement steps")
        ->check(CLI::NonNegativeNumber);
    dec->add_flag("--expand-i", expand_i, "expand I-cells into overlapping F/T cells");
    dec->add_flag("--compose-twice", compose_twice,
                  "both-odd case: apply the pattern twice, landing at n-6");
    dec->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"plain", "structured"}));
    dec->add_option("--cap", cap, "maximum word length in symbols")
        ->envname("FIBWORD_LENGTH_CAP");

    auto* ver = app.add_subcommand("verify", "sweep identities over a parameter grid");
    std::string a_range = "1..6";
    std::string b_range = "1..6";
    int n_max = 64;
    std::string ids_text;
    bool classical_at_11 = true;
    std::uint64_t verify_cap = 1'000'000;
    ver->add_option("--a", a_range, "a range: N or LO..HI (default 1..6)");
    ver->add_option("--b", b_range, "b range: N or LO..HI (default 1..6)");
    ver->add_option("--n-max", n_max, "largest n to check")->check(CLI::NonNegativeNumber);
    ver->add_option("--ids", ids_text,
                    "comma-separated identity names (default: all); see the README for the list");
    ver->add_flag("--classical,!--no-classical", classical_at_11,
                  "use swapped initial conditions at a = b = 1 (default on)");
    ver->add_option("--cap", verify_cap, "skip words longer than this many symbols")
        ->envname("FIBWORD_LENGTH_CAP");

    auto* sts = app.add_subcommand("stats", "length table, r/s, period, and cell counts");
    int stats_n_max = 10;
    sts->add_option("--a", a, "parameter a (>= 1)")->required();
    sts->add_option("--b", b, "parameter b (>= 1)")->required();
    sts->add_flag("--classical", classical, "swapped initial conditions (a = b = 1 only)");
    sts->add_option("--n-max", stats_n_max, "last row of the length table")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return run_gen(a, b, n, classical, kind, length_only, cap);
        }
        if (dec->parsed()) {
            return run_decompose(a, b, n, classical, depth, expand_i, compose_twice, format, cap);
        }
        if (ver->parsed()) {
            return run_verify(a_range, b_range, n_max, ids_text, classical_at_11, verify_cap);
        }
        return run_stats(a, b, classical, stats_n_max);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
