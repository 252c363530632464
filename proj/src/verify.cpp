#include "fibword/verify.hpp"

#include <atomic>
#include <chrono>
#include <limits>
#include <tuple>

namespace fibword {

namespace {

struct CheckResult {
    VerifyStatus status;
    std::string detail;
};

CheckResult pass(std::string detail = "") { return {VerifyStatus::pass, std::move(detail)}; }
CheckResult fail(std::string detail) { return {VerifyStatus::fail, std::move(detail)}; }
CheckResult skip(std::string detail) {
    return {VerifyStatus::skipped_precondition, std::move(detail)};
}

CheckResult skip_below(int n, int minimum) {
    return skip("n = " + std::to_string(n) + " below minimum " + std::to_string(minimum));
}

int shifted(int base, const Params& p) { return base + (p.has_unit_parameter() ? 1 : 0); }

/// Cap for scratch words (doubled words, I, concatenations); proportional to
/// the subject-word cap.
std::uint64_t aux_cap(std::uint64_t cap) {
    constexpr auto limit = std::numeric_limits<std::uint64_t>::max();
    return cap > limit / 4 ? limit : cap * 4;
}

CheckResult compare_words(const Word& lhs, const Word& rhs) {
    if (auto mm = first_mismatch(lhs, rhs)) {
        if (lhs.size() != rhs.size() && mm->position == std::min(lhs.size(), rhs.size())) {
            return fail("length mismatch: " + std::to_string(lhs.size()) + " vs " +
                        std::to_string(rhs.size()));
        }
        return fail("first mismatch at position " + std::to_string(mm->position) + ": " +
                    std::to_string(mm->lhs) + " vs " + std::to_string(mm->rhs));
    }
    return pass();
}

CheckResult check_suffix_parity(const Params& p, int n, std::uint64_t cap) {
    if (n < 3) return skip_below(n, 3);
    const Word lt = last_two(p, n, cap);
    const std::string cur = lt.to_string();
    if (cur != "01" && cur != "10") return fail("suffix \"" + cur + "\" is neither 01 nor 10");
    std::string detail = "suffix=\"" + cur + "\"";
    if (n >= 4) {
        const std::string prev = last_two(p, n - 1, cap).to_string();
        if (prev == cur) return fail("suffix \"" + cur + "\" did not alternate from n-1");
        const bool n_even = n % 2 == 0;
        const std::string even_sfx = n_even ? cur : prev;
        const std::string odd_sfx = n_even ? prev : cur;
        detail += "; direction even->\"" + even_sfx + "\" odd->\"" + odd_sfx + "\"";
        detail += even_sfx == "01" ? "; assignment even->01/odd->10 holds"
                                   : "; note: assignment even->01/odd->10 is reversed here";
    }
    return pass(detail);
}

CheckResult check_palindrome(const Params& p, int n, std::uint64_t cap) {
    if (n < 3) return skip_below(n, 3);
    if (length_f(p, n) < 2) return skip("p undefined: word has fewer than two symbols");
    const Word w = palindromic_prefix(p, n, aux_cap(cap));
    for (std::size_t i = 0; i < w.size() / 2; ++i) {
        const std::size_t j = w.size() - 1 - i;
        if (w[i] != w[j]) {
            return fail("not a palindrome: position " + std::to_string(i) + " = " +
                        std::to_string(w[i]) + ", mirror position " + std::to_string(j) + " = " +
                        std::to_string(w[j]));
        }
    }
    return pass();
}

CheckResult check_exchange(const Params& p, int n, std::uint64_t cap) {
    if (n < 3) return skip_below(n, 3);
    if (length_f(p, n - 2) < 2) return skip("p(n-2) undefined: word has fewer than two symbols");
    const std::uint64_t c = aux_cap(cap);
    Word lhs = word_f(p, n - 1, c);
    lhs.append(palindromic_prefix(p, n - 2, c));
    Word rhs = word_f(p, n - 2, c);
    rhs.append(palindromic_prefix(p, n - 1, c));
    return compare_words(lhs, rhs);
}

CheckResult check_swap_ft(const Params& p, int n, std::uint64_t cap) {
    const int minimum = shifted(5, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    Word lhs = word_f(p, n - 1, c);
    lhs.append(word_f(p, n - 2, c));
    Word rhs = word_f(p, n - 2, c);
    rhs.append(word_t(p, n - 1, c));
    return compare_words(lhs, rhs);
}

CheckResult check_swap_ff(const Params& p, int n, std::uint64_t cap) {
    const int minimum = shifted(5, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    Word lhs = word_f(p, n - 1, c);
    lhs.append(word_t(p, n - 2, c));
    Word rhs = word_f(p, n - 2, c);
    rhs.append(word_f(p, n - 1, c));
    return compare_words(lhs, rhs);
}

CheckResult check_boundary_overlap(const Params& p, int n, std::uint64_t cap) {
    const int minimum = shifted(5, p);
    if (n < minimum) return skip_below(n, minimum);
    const int r = rs(p, n).r;
    if (r < 2) return skip("r(n) = 1: the boundary form requires r >= 2");
    const std::uint64_t c = aux_cap(cap);
    const auto seam = static_cast<std::size_t>(static_cast<std::uint64_t>(r - 2) * length_f(p, n - 1) +
                                               length_f(p, n - 2));
    const Word f_n = word_f(p, n, c);
    const Word t_n = word_t(p, n, c);
    return compare_words(f_n.suffix(seam), t_n.prefix(seam));
}

CheckResult check_i_equals_fft(const Params& p, int n, std::uint64_t cap) {
    const int minimum = shifted(5, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    Word lhs;
    try {
        lhs = word_I(p, n, c);
    } catch (const std::logic_error& e) {
        return fail(e.what());
    }
    const Word f_n1 = word_f(p, n - 1, c);
    Word rhs;
    rhs.reserve(2 * f_n1.size());
    rhs.append(f_n1);
    rhs.append(f_n1);
    rhs.append(word_t(p, n, c));
    return compare_words(lhs, rhs);
}

CheckResult check_f_squared(const Params& p, int n, std::uint64_t cap) {
    const int minimum = shifted(6, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    const int r = rs(p, n).r;
    const Word f_n = word_f(p, n, c);
    Word lhs;
    lhs.reserve(2 * f_n.size());
    lhs.append(f_n);
    lhs.append(f_n);
    Word rhs;
    rhs.reserve(lhs.size());
    rhs.append_repeat(word_f(p, n - 1, c), r);
    rhs.append(word_I(p, n - 1, c));
    rhs.append_repeat(word_t(p, n - 1, c), r - 1);
    return compare_words(lhs, rhs);
}

CheckResult check_lemma_r_even(const Params& p, int n, std::uint64_t cap) {
    const auto [r, s] = rs(p, n);
    if (r % 2 != 0) return skip("r(n) = " + std::to_string(r) + " is odd");
    const int minimum = shifted(7, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    const Word f2 = word_f(p, n - 2, c);
    const Word i2 = word_I(p, n - 2, c);
    const Word t2 = word_t(p, n - 2, c);
    Word rhs;
    rhs.reserve(static_cast<std::size_t>(length_f(p, n)));
    for (int g = 0; g < r / 2; ++g) {
        rhs.append_repeat(f2, s);
        rhs.append(i2);
        rhs.append_repeat(t2, s - 1);
    }
    rhs.append(f2);
    return compare_words(word_f(p, n, c), rhs);
}

CheckResult check_lemma_both_odd(const Params& p, int n, std::uint64_t cap) {
    const auto [r, s] = rs(p, n);
    if (r % 2 == 0 || s % 2 == 0) {
        return skip("r(n) = " + std::to_string(r) + ", s(n) = " + std::to_string(s) +
                    ": both must be odd");
    }
    const int minimum = shifted(8, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    const Word f2 = word_f(p, n - 2, c);
    Word sq;  // f(n-2)^2
    sq.reserve(2 * f2.size());
    sq.append(f2);
    sq.append(f2);
    const Word t3 = word_t(p, n - 3, c);
    const Word f3 = word_f(p, n - 3, c);
    Word rhs;
    rhs.reserve(static_cast<std::size_t>(length_f(p, n)));
    for (int g = 0; g < (r - 1) / 2; ++g) {
        rhs.append_repeat(sq, (s + 1) / 2);
        rhs.append(t3);
        rhs.append_repeat(sq, (s - 1) / 2);
        rhs.append(f3);
    }
    rhs.append_repeat(sq, (s + 1) / 2);
    rhs.append(t3);
    return compare_words(word_f(p, n, c), rhs);
}

CheckResult check_lemma_odd_even(const Params& p, int n, std::uint64_t cap) {
    const auto [r, s] = rs(p, n);
    if (r % 2 == 0 || s % 2 != 0) {
        return skip("r(n) = " + std::to_string(r) + ", s(n) = " + std::to_string(s) +
                    ": r must be odd and s even");
    }
    const int minimum = shifted(9, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    const Word f3 = word_f(p, n - 3, c);
    Word sq;  // f(n-3)^2
    sq.reserve(2 * f3.size());
    sq.append(f3);
    sq.append(f3);
    const Word t4 = word_t(p, n - 4, c);
    const Word f4 = word_f(p, n - 4, c);
    Word rhs;
    rhs.reserve(static_cast<std::size_t>(length_f(p, n)));
    const auto bracket = [&] {  // (f^2)^((r+1)/2) t (f^2)^((r-1)/2) f
        rhs.append_repeat(sq, (r + 1) / 2);
        rhs.append(t4);
        rhs.append_repeat(sq, (r - 1) / 2);
        rhs.append(f4);
    };
    for (int outer = 0; outer < (r - 1) / 2; ++outer) {
        for (int k = 0; k < s / 2; ++k) bracket();
        rhs.append_repeat(sq, (r + 1) / 2);
        rhs.append(f4);
        for (int k = 0; k < (s - 2) / 2; ++k) bracket();
        rhs.append_repeat(sq, (r + 1) / 2);
        rhs.append(t4);
    }
    for (int k = 0; k < s / 2; ++k) bracket();
    rhs.append_repeat(sq, (r + 1) / 2);
    rhs.append(f4);
    return compare_words(word_f(p, n, c), rhs);
}

CheckResult check_table1_row(ParityCase wanted, const Params& p, int n, std::uint64_t cap) {
    if (parity_case(p, n) != wanted) {
        return skip("parity case is " + std::string(parity_case_name(parity_case(p, n))));
    }
    const int minimum = min_n_for_case(wanted, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    const Word reference = word_f(p, n, c);
    try {
        const CellStructure st = decompose(p, n);
        if (auto r = compare_words(flatten(st, c), reference); r.status != VerifyStatus::pass) {
            r.detail = "flatten(decompose): " + r.detail;
            return r;
        }
        const CellStructure expanded = expand_all_I(st);
        if (auto r = compare_words(flatten(expanded, c), reference); r.status != VerifyStatus::pass) {
            r.detail = "flatten(I-expanded): " + r.detail;
            return r;
        }
        return pass("cells=" + std::to_string(st.cells.size()) +
                    ", expanded=" + std::to_string(expanded.cells.size()));
    } catch (const FlattenError& e) {
        return fail(e.what());
    }
}

CheckResult check_i_variant_r1(const Params& p, int n, std::uint64_t cap) {
    const int r = rs(p, n).r;
    if (r != 1) return skip("r(n) = " + std::to_string(r) + ": the variant applies to r = 1");
    const int minimum = shifted(5, p);
    if (n < minimum) return skip_below(n, minimum);
    const std::uint64_t c = aux_cap(cap);
    const Word f_n = word_f(p, n, c);
    const Word t_n = word_t(p, n, c);
    const auto seam = static_cast<std::size_t>(length_f(p, n - 2));
    if (f_n.suffix(seam) != f_n.prefix(seam)) {
        return fail("the adjacent f,f pair disagrees on the f(n-2) seam");
    }
    if (f_n.suffix(seam) != t_n.prefix(seam)) {
        return fail("the adjacent f,t pair disagrees on the f(n-2) seam");
    }
    Word variant;
    variant.reserve(3 * f_n.size() - 2 * seam);
    variant.append(f_n);
    variant.append_from(f_n, seam);
    variant.append_from(t_n, seam);
    const Word f_n1 = word_f(p, n - 1, c);
    Word rhs;
    rhs.reserve(variant.size());
    rhs.append(f_n1);
    rhs.append(f_n1);
    rhs.append(t_n);
    return compare_words(variant, rhs);
}

CheckResult dispatch(IdentityId id, const Params& p, int n, std::uint64_t cap) {
    switch (id) {
        case IdentityId::suffix_parity: return check_suffix_parity(p, n, cap);
        case IdentityId::palindrome: return check_palindrome(p, n, cap);
        case IdentityId::exchange: return check_exchange(p, n, cap);
        case IdentityId::swap_ft: return check_swap_ft(p, n, cap);
        case IdentityId::swap_ff: return check_swap_ff(p, n, cap);
        case IdentityId::boundary_overlap: return check_boundary_overlap(p, n, cap);
        case IdentityId::i_equals_fft: return check_i_equals_fft(p, n, cap);
        case IdentityId::f_squared: return check_f_squared(p, n, cap);
        case IdentityId::lemma_r_even: return check_lemma_r_even(p, n, cap);
        case IdentityId::lemma_both_odd: return check_lemma_both_odd(p, n, cap);
        case IdentityId::lemma_odd_even: return check_lemma_odd_even(p, n, cap);
        case IdentityId::table1_row1: return check_table1_row(ParityCase::even_r, p, n, cap);
        case IdentityId::table1_row2: return check_table1_row(ParityCase::both_odd, p, n, cap);
        case IdentityId::table1_row3: return check_table1_row(ParityCase::odd_even, p, n, cap);
        case IdentityId::i_variant_r1: return check_i_variant_r1(p, n, cap);
    }
    return fail("unknown identity");
}

constexpr std::array<std::string_view, 15> kIdentityNames = {
    "SUFFIX_PARITY", "PALINDROME",     "EXCHANGE",    "SWAP_FT",     "SWAP_FF",
    "BOUNDARY_OVERLAP", "I_EQUALS_FFT", "F_SQUARED",   "LEMMA_R_EVEN", "LEMMA_BOTH_ODD",
    "LEMMA_ODD_EVEN", "TABLE1_ROW1",   "TABLE1_ROW2", "TABLE1_ROW3", "I_VARIANT_R1",
};

std::vector<std::tuple<int, int, int, IdentityId>> grid_tasks(const GridConfig& config) {
    if (config.a_lo < 1 || config.b_lo < 1 || config.a_lo > config.a_hi ||
        config.b_lo > config.b_hi) {
        throw std::invalid_argument("verify grid: ranges must be nonempty with bounds >= 1");
    }
    if (config.n_max < 0) throw std::invalid_argument("verify grid: n_max must be nonnegative");
    if (config.length_cap < 1) throw std::invalid_argument("verify grid: length cap must be >= 1");

    std::vector<std::tuple<int, int, int, IdentityId>> tasks;
    for (int a = config.a_lo; a <= config.a_hi; ++a) {
        for (int b = config.b_lo; b <= config.b_hi; ++b) {
            const Params p(a, b,
                           (a == 1 && b == 1 && config.classical_at_11)
                               ? Convention::classical_swapped
                               : Convention::standard);
            for (int n = 0; n <= config.n_max; ++n) {
                std::uint64_t len = 0;
                try {
                    len = length_f(p, n);
                } catch (const std::length_error&) {
                    break;
                }
                if (len > config.length_cap) break;  // lengths are nondecreasing in n
                for (IdentityId id : config.ids) tasks.emplace_back(a, b, n, id);
            }
        }
    }
    return tasks;
}

Params task_params(const GridConfig& config, int a, int b) {
    return Params(a, b,
                  (a == 1 && b == 1 && config.classical_at_11) ? Convention::classical_swapped
                                                               : Convention::standard);
}

}  // namespace

std::string_view identity_name(IdentityId id) {
    return kIdentityNames[static_cast<std::size_t>(id)];
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kIdentityNames.size(); ++i) {
        if (kIdentityNames[i] == name) return static_cast<IdentityId>(i);
    }
    return std::nullopt;
}

VerificationReport verify_identity(IdentityId id, const Params& params, int n,
                                   std::uint64_t length_cap) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result{};
    if (n < 0) {
        result = skip("n < 0");
    } else {
        try {
            const std::uint64_t len = length_f(params, n);
            if (len > length_cap) {
                result = skip("size cap exceeded: length " + std::to_string(len) + " > cap " +
                              std::to_string(length_cap));
            } else {
                result = dispatch(id, params, n, length_cap);
            }
        } catch (const std::length_error& e) {
            result = skip(std::string("size cap exceeded: ") + e.what());
        } catch (const std::exception& e) {
            result = fail(std::string("exception: ") + e.what());
        }
    }
    const auto stop = std::chrono::steady_clock::now();
    return VerificationReport{
        id,     params, n, result.status, std::move(result.detail),
        std::chrono::duration<double>(stop - start).count()};
}

std::vector<VerificationReport> verify_grid_serial(const GridConfig& config) {
    const auto tasks = grid_tasks(config);
    std::vector<VerificationReport> reports;
    reports.reserve(tasks.size());
    for (const auto& [a, b, n, id] : tasks) {
        reports.push_back(verify_identity(id, task_params(config, a, b), n, config.length_cap));
    }
    return reports;
}

std::vector<VerificationReport> verify_grid(const GridConfig& config) {
    const auto tasks = grid_tasks(config);
    std::vector<VerificationReport> reports(
        tasks.size(), VerificationReport{IdentityId::suffix_parity, Params(1, 1), 0,
                                         VerifyStatus::skipped_precondition, "", 0.0});
    const auto count = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto& [a, b, n, id] = tasks[static_cast<std::size_t>(i)];
        reports[static_cast<std::size_t>(i)] =
            verify_identity(id, task_params(config, a, b), n, config.length_cap);
    }
    return reports;
}

bool all_reports_ok(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) {
        if (r.status == VerifyStatus::fail) return false;
    }
    return true;
}

namespace {

std::uint32_t window_spread(const std::vector<std::uint32_t>& prefix, std::size_t m) {
    std::uint32_t lo = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t hi = 0;
    for (std::size_t i = 0; i + m < prefix.size(); ++i) {
        const std::uint32_t count = prefix[i + m] - prefix[i];
        lo = std::min(lo, count);
        hi = std::max(hi, count);
    }
    return hi - lo;
}

std::vector<std::uint32_t> ones_prefix(const Word& word) {
    std::vector<std::uint32_t> prefix(word.size() + 1, 0);
    for (std::size_t i = 0; i < word.size(); ++i) {
        prefix[i + 1] = prefix[i] + word[i];
    }
    return prefix;
}

void validate_balance_args(const Word& word, std::size_t max_factor_len) {
    if (max_factor_len < 1 || max_factor_len > word.size()) {
        throw std::invalid_argument("check_balanced: max_factor_len must be in [1, word length]");
    }
}

}  // namespace

bool check_balanced_serial(const Word& word, std::size_t max_factor_len) {
    validate_balance_args(word, max_factor_len);
    const auto prefix = ones_prefix(word);
    for (std::size_t m = 1; m <= max_factor_len; ++m) {
        if (window_spread(prefix, m) > 1) return false;
    }
    return true;
}

bool check_balanced(const Word& word, std::size_t max_factor_len) {
    validate_balance_args(word, max_factor_len);
    const auto prefix = ones_prefix(word);
    std::atomic<bool> balanced{true};
    const auto limit = static_cast<std::ptrdiff_t>(max_factor_len);
#pragma omp parallel for schedule(dynamic) if (limit > 1)
    for (std::ptrdiff_t m = 1; m <= limit; ++m) {
        if (!balanced.load(std::memory_order_relaxed)) continue;
        if (window_spread(prefix, static_cast<std::size_t>(m)) > 1) {
            balanced.store(false, std::memory_order_relaxed);
        }
    }
    return balanced.load();
}

}  // namespace fibword
