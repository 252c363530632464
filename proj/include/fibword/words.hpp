#pragma once

#include <cstdint>

#include "fibword/params.hpp"
#include "fibword/word.hpp"

namespace fibword {

/// Default hard cap on materialized word length, in symbols. Desk-scale
/// verification never needs more; the CLI can override it via
/// FIBWORD_LENGTH_CAP or --cap.
inline constexpr std::uint64_t kDefaultLengthCap = 10'000'000;

/// Exact symbol count of f(a,b,n), computed from the length recurrence
/// L0 = 1, L1 = a (1 under the swapped convention), Ln = r(n) Ln-1 + Ln-2,
/// without materializing the word. Throws std::length_error ("word too
/// large") if the count overflows the 64-bit range.
std::uint64_t length_f(const Params& params, int n);

/// Symbol count of the overlapping word I(a,b,n) = Ln + 2 Ln-1. Requires n >= 5.
std::uint64_t length_I(const Params& params, int n);

/// The word f(a,b,n), built bottom-up from the recurrence
/// f(n) = f(n-1)^r(n) f(n-2). Throws std::length_error when the result would
/// exceed `cap`.
Word word_f(const Params& params, int n, std::uint64_t cap = kDefaultLengthCap);

/// f(a,b,n) with its final two symbols interchanged. Throws
/// std::invalid_argument ("t undefined") when the word has fewer than two
/// symbols, e.g. t(1,b,1).
Word word_t(const Params& params, int n, std::uint64_t cap = kDefaultLengthCap);

/// f(a,b,n) with its final two symbols removed; a palindrome for n >= 3.
/// Throws std::invalid_argument ("p undefined") when the word has fewer than
/// two symbols.
Word palindromic_prefix(const Params& params, int n, std::uint64_t cap = kDefaultLengthCap);

/// The final two symbols of f(a,b,n), always "01" or "10" for n >= 3,
/// alternating with the parity of n. Reports the empirically computed suffix;
/// which parity maps to which suffix depends on the initial-condition
/// convention, so nothing is hard-coded here.
Word last_two(const Params& params, int n, std::uint64_t cap = kDefaultLengthCap);

/// The overlapping word I(a,b,n), n >= 5. For r(n) >= 2 it begins as f(n) and
/// ends as t(n), the two overlapping by exactly f(n-1)^(r-2) f(n-2); for
/// r(n) = 1 it is f(n), f(n), t(n) with each adjacent pair overlapping by a
/// copy of f(n-2). Built from the overlap construction and cross-checked
/// against f(n-1)^2 t(n) on every call; a mismatch throws std::logic_error.
Word word_I(const Params& params, int n, std::uint64_t cap = kDefaultLengthCap);

}  // namespace fibword
