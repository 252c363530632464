#include "fibword/words.hpp"

#include <string>
#include <utility>

namespace fibword {

namespace {

std::string word_label(const Params& p, int n) {
    return "f(" + std::to_string(p.a) + "," + std::to_string(p.b) + "," + std::to_string(n) + ")";
}

void require_nonnegative(int n) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative (got " + std::to_string(n) + ")");
}

void require_under_cap(std::uint64_t len, std::uint64_t cap, const Params& p, int n) {
    if (len > cap) {
        throw std::length_error("word too large: " + word_label(p, n) + " has " +
                                std::to_string(len) + " symbols, cap is " + std::to_string(cap));
    }
}

Word base_word_0(const Params& p) {
    Word w;
    w.push_back(p.convention == Convention::classical_swapped ? 1 : 0);
    return w;
}

Word base_word_1(const Params& p) {
    Word w;
    if (p.convention == Convention::classical_swapped) {
        w.push_back(0);
    } else {
        for (int i = 0; i < p.a - 1; ++i) w.push_back(0);
        w.push_back(1);
    }
    return w;
}

}  // namespace

std::uint64_t length_f(const Params& params, int n) {
    require_nonnegative(n);
    std::uint64_t prev = 1;
    std::uint64_t cur =
        params.convention == Convention::classical_swapped ? 1 : static_cast<std::uint64_t>(params.a);
    if (n == 0) return prev;
    for (int k = 2; k <= n; ++k) {
        const auto r = static_cast<std::uint64_t>(rs(params, k).r);
        std::uint64_t scaled = 0;
        std::uint64_t next = 0;
        if (__builtin_mul_overflow(cur, r, &scaled) || __builtin_add_overflow(scaled, prev, &next)) {
            throw std::length_error("word too large: length of " + word_label(params, k) +
                                    " overflows the 64-bit range");
        }
        prev = cur;
        cur = next;
    }
    return cur;
}

std::uint64_t length_I(const Params& params, int n) {
    if (n < 5) {
        throw std::invalid_argument("I undefined for n < 5 (got n = " + std::to_string(n) + ")");
    }
    const std::uint64_t ln = length_f(params, n);
    const std::uint64_t ln1 = length_f(params, n - 1);
    std::uint64_t twice = 0;
    std::uint64_t total = 0;
    if (__builtin_mul_overflow(ln1, std::uint64_t{2}, &twice) ||
        __builtin_add_overflow(ln, twice, &total)) {
        throw std::length_error("word too large: length of I overflows the 64-bit range");
    }
    return total;
}

Word word_f(const Params& params, int n, std::uint64_t cap) {
    require_nonnegative(n);
    require_under_cap(length_f(params, n), cap, params, n);

    Word prev = base_word_0(params);
    if (n == 0) return prev;
    Word cur = base_word_1(params);
    for (int k = 2; k <= n; ++k) {
        const int r = rs(params, k).r;
        Word next;
        next.reserve(static_cast<std::size_t>(r) * cur.size() + prev.size());
        next.append_repeat(cur, r);
        next.append(prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Word word_t(const Params& params, int n, std::uint64_t cap) {
    Word w = word_f(params, n, cap);
    if (w.size() < 2) {
        throw std::invalid_argument("t undefined: " + word_label(params, n) +
                                    " has fewer than two symbols");
    }
    const std::size_t last = w.size() - 1;
    Symbol* s = w.data();
    std::swap(s[last - 1], s[last]);
    return w;
}

Word palindromic_prefix(const Params& params, int n, std::uint64_t cap) {
    Word w = word_f(params, n, cap);
    if (w.size() < 2) {
        throw std::invalid_argument("p undefined: " + word_label(params, n) +
                                    " has fewer than two symbols");
    }
    return w.drop_last(2);
}

Word last_two(const Params& params, int n, std::uint64_t cap) {
    if (n < 3) {
        throw std::invalid_argument("last_two requires n >= 3 (got n = " + std::to_string(n) + ")");
    }
    Word w = word_f(params, n, cap);
    if (w.size() < 2) {
        throw std::invalid_argument("t undefined: " + word_label(params, n) +
                                    " has fewer than two symbols");
    }
    return w.suffix(2);
}

Word word_I(const Params& params, int n, std::uint64_t cap) {
    if (n < 5) {
        throw std::invalid_argument("I undefined for n < 5 (got n = " + std::to_string(n) + ")");
    }
    require_under_cap(length_I(params, n), cap, params, n);

    const auto [r, s] = rs(params, n);
    const std::uint64_t ln1 = length_f(params, n - 1);
    const std::uint64_t ln2 = length_f(params, n - 2);
    const Word f_n = word_f(params, n, cap);
    const Word t_n = word_t(params, n, cap);

    Word overlap_built;
    overlap_built.reserve(static_cast<std::size_t>(length_I(params, n)));
    if (r >= 2) {
        // f(n) and t(n) share f(n-1)^(r-2) f(n-2) at the seam.
        const std::size_t seam = static_cast<std::size_t>(r - 2) * ln1 + ln2;
        if (f_n.suffix(seam) != t_n.prefix(seam)) {
            throw std::logic_error("overlap construction failed: suffix of f(n) does not match "
                                   "prefix of t(n) at n = " + std::to_string(n));
        }
        overlap_built.append(f_n);
        overlap_built.append_from(t_n, seam);
    } else {
        // r = 1 variant: f(n), f(n), t(n) with adjacent overlaps of f(n-2).
        const auto seam = static_cast<std::size_t>(ln2);
        if (f_n.suffix(seam) != f_n.prefix(seam) || f_n.suffix(seam) != t_n.prefix(seam)) {
            throw std::logic_error("overlap construction failed: adjacent words disagree on the "
                                   "f(n-2) seam at n = " + std::to_string(n));
        }
        overlap_built.append(f_n);
        overlap_built.append_from(f_n, seam);
        overlap_built.append_from(t_n, seam);
    }

    // The overlap construction must reproduce f(n-1)^2 t(n); this equality
    // underpins every decomposition, so a mismatch is a hard error.
    Word reference;
    reference.reserve(overlap_built.size());
    const Word f_n1 = word_f(params, n - 1, cap);
    reference.append(f_n1);
    reference.append(f_n1);
    reference.append(t_n);
    if (auto mm = first_mismatch(overlap_built, reference)) {
        throw std::logic_error("overlap construction of I(" + std::to_string(n) +
                               ") differs from f(n-1)^2 t(n) at position " +
                               std::to_string(mm->position));
    }
    return overlap_built;
}

}  // namespace fibword
