#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibword/cells.hpp"
#include "fibword/params.hpp"
#include "fibword/word.hpp"
#include "fibword/words.hpp"

namespace fibword {

/// One verifiable identity. Each maps to exactly one statement about the word
/// family; the verifier builds both sides by independent routes (direct word
/// generation on one side, the formula or cell decomposition on the other)
/// and compares symbol-for-symbol.
enum class IdentityId {
    suffix_parity,     // last two symbols alternate between "01" and "10" with n
    palindrome,        // p(n) is a palindrome, n >= 3
    exchange,          // f(n-1) p(n-2) = f(n-2) p(n-1), n >= 3
    swap_ft,           // f(n-1) f(n-2) = f(n-2) t(n-1), n >= 5
    swap_ff,           // f(n-1) t(n-2) = f(n-2) f(n-1), n >= 5
    boundary_overlap,  // suffix of f(n) of length (r-2)L(n-1)+L(n-2) = prefix of t(n)
    i_equals_fft,      // I(n) = f(n-1)^2 t(n), n >= 5
    f_squared,         // f(n)^2 = f(n-1)^r I(n-1) t(n-1)^(r-1), n >= 6
    lemma_r_even,      // the r-even formula, by word concatenation
    lemma_both_odd,    // the both-odd formula, by word concatenation
    lemma_odd_even,    // the r-odd/s-even formula, by word concatenation
    table1_row1,       // flatten(decompose_even_r) = f(n), plain and I-expanded
    table1_row2,       // flatten(decompose_odd_odd) = f(n), plain and I-expanded
    table1_row3,       // flatten(decompose_odd_even) = f(n), plain and I-expanded
    i_variant_r1,      // the r = 1 three-word overlap form of I equals f(n-1)^2 t(n)
};

inline constexpr std::array<IdentityId, 15> kAllIdentities = {
    IdentityId::suffix_parity,  IdentityId::palindrome,     IdentityId::exchange,
    IdentityId::swap_ft,        IdentityId::swap_ff,        IdentityId::boundary_overlap,
    IdentityId::i_equals_fft,   IdentityId::f_squared,      IdentityId::lemma_r_even,
    IdentityId::lemma_both_odd, IdentityId::lemma_odd_even, IdentityId::table1_row1,
    IdentityId::table1_row2,    IdentityId::table1_row3,    IdentityId::i_variant_r1,
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

enum class VerifyStatus { pass, fail, skipped_precondition };

inline const char* verify_status_name(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::pass: return "pass";
        case VerifyStatus::fail: return "fail";
        default: return "skipped-precondition";
    }
}

/// Outcome of checking one identity at one (a, b, n). On failure `detail`
/// holds the first mismatch position and the two conflicting symbols; on a
/// skip it records which bound failed.
struct VerificationReport {
    IdentityId identity;
    Params params;
    int n;
    VerifyStatus status;
    std::string detail;
    double elapsed_seconds = 0.0;
};

/// Checks one identity. Precondition failures (below-minimum n, inapplicable
/// parity, size cap) yield skipped-precondition reports, never exceptions.
VerificationReport verify_identity(IdentityId id, const Params& params, int n,
                                   std::uint64_t length_cap = kDefaultLengthCap);

/// Grid sweep configuration. The default grid covers all six parity rows and
/// the a = 1 / b = 1 edge cases within seconds.
struct GridConfig {
    int a_lo = 1;
    int a_hi = 6;
    int b_lo = 1;
    int b_hi = 6;
    int n_max = 64;
    std::uint64_t length_cap = 1'000'000;
    std::vector<IdentityId> ids{kAllIdentities.begin(), kAllIdentities.end()};
    bool classical_at_11 = true;  // use the swapped convention at a = b = 1
};

/// Runs every requested identity at every (a, b, n) whose word fits the cap,
/// fanning the independent checks out across threads. Report order is
/// deterministic regardless of execution order: a, then b, then n, then
/// identity (in the order given).
std::vector<VerificationReport> verify_grid(const GridConfig& config);

/// Serial reference implementation of verify_grid, kept for testing and for
/// the benchmark target.
std::vector<VerificationReport> verify_grid_serial(const GridConfig& config);

/// True when no report failed (skips count as ok); the CLI exit-code contract.
bool all_reports_ok(const std::vector<VerificationReport>& reports);

/// Line-delimited record {identity, a, b, n, convention, status, detail}.
std::string report_line(const VerificationReport& report);

/// True iff for every factor length m <= max_factor_len, the 1-symbol counts
/// over all length-m factors of `word` take at most two consecutive values.
/// Requires 1 <= max_factor_len <= word length. The per-length windows run in
/// parallel; check_balanced_serial is the reference implementation.
bool check_balanced(const Word& word, std::size_t max_factor_len);
bool check_balanced_serial(const Word& word, std::size_t max_factor_len);

}  // namespace fibword
