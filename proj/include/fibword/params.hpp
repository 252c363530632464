#pragma once

#include <stdexcept>
#include <string>

namespace fibword {

/// Initial-condition convention for the word family.
///
/// `standard` starts from f0 = "0", f1 = 0^(a-1) 1 and applies to every
/// parameter pair. `classical_swapped` starts from f0 = "1", f1 = "0" and is
/// only meaningful for a = b = 1; it exchanges the roles of 0 and 1 without
/// changing any cell structure.
enum class Convention {
    standard,
    classical_swapped,
};

inline const char* convention_name(Convention c) {
    return c == Convention::standard ? "standard" : "classical-swapped";
}

/// Parameter pair (a, b) of a biperiodic word family, plus the
/// initial-condition convention. Invariants are enforced on construction:
/// a, b >= 1, and the swapped convention requires a = b = 1.
struct Params {
    int a = 1;
    int b = 1;
    Convention convention = Convention::standard;

    Params(int a_, int b_, Convention c = Convention::standard)
        : a(a_), b(b_), convention(c) {
        if (a < 1 || b < 1) {
            throw std::invalid_argument("Params: a and b must be positive (got a=" +
                                        std::to_string(a) + ", b=" + std::to_string(b) + ")");
        }
        if (convention == Convention::classical_swapped && !(a == 1 && b == 1)) {
            throw std::invalid_argument(
                "Params: the classical-swapped convention requires a = b = 1");
        }
    }

    bool operator==(const Params&) const = default;

    /// True when a = 1 or b = 1; several results need their minimal n raised
    /// by one in that regime.
    bool has_unit_parameter() const { return a == 1 || b == 1; }
};

/// The (r, s) pair at step n: r is the parameter used most recently in the
/// recurrence for f(n) (a when n is even, b when n is odd), s is the other.
struct ParityPair {
    int r;
    int s;

    bool operator==(const ParityPair&) const = default;
};

inline ParityPair rs(const Params& p, long long n) {
    const bool even = (n % 2) == 0;
    return even ? ParityPair{p.a, p.b} : ParityPair{p.b, p.a};
}

}  // namespace fibword
