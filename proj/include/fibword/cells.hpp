#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibword/params.hpp"
#include "fibword/word.hpp"
#include "fibword/words.hpp"

namespace fibword {

/// F and T are positioned copies of f and t at some level; I is the composite
/// overlapping word, expandable into an (F,T) pair (r >= 2) or an (F,F,T)
/// triple (r = 1).
enum class CellKind : std::uint8_t { F, T, I };

inline char cell_kind_char(CellKind k) {
    switch (k) {
        case CellKind::F: return 'F';
        case CellKind::T: return 'T';
        default: return 'I';
    }
}

/// One positioned copy of an f-, t-, or I-word inside a parent word.
struct Cell {
    CellKind kind;
    int level;             // the n' of the copied word
    std::uint64_t offset;  // symbol index in the parent word
    std::uint64_t length;  // symbol count of the referenced word

    bool operator==(const Cell&) const = default;
};

/// An ordered, possibly overlapping list of cells that exactly tiles a parent
/// word. `period` is the level drop from root_level to the (uniform) cell
/// level; a single decomposition step yields 2, 3, or 4, composed steps
/// accumulate. `self_similar` is false only for a single both-odd step with
/// a != b, where the pattern at n-3 has the opposite parity.
struct CellStructure {
    Params params;
    int root_level;
    std::uint64_t parent_length;
    int period;
    bool self_similar;
    std::vector<Cell> cells;

    bool operator==(const CellStructure&) const = default;
};

/// The three parity regimes of the decomposition, keyed by (r(n), s(n)).
enum class ParityCase { even_r, both_odd, odd_even };

const char* parity_case_name(ParityCase c);

/// Which decomposition applies to f(a,b,n): even_r when r(n) is even,
/// both_odd when r and s are both odd, odd_even when r is odd and s is even.
ParityCase parity_case(const Params& params, int n);

/// Period of the self-similar structure: 2 when a and b are both even, 4 when
/// exactly one is odd, 6 when both are odd.
int period_l(const Params& params);

/// Smallest n for which the given case's decomposition is defined
/// (7 / 8 / 9, each raised by one when a = 1 or b = 1).
int min_n_for_case(ParityCase c, const Params& params);

/// f(n) = (f(n-2)^s I(n-2) t(n-2)^(s-1))^(r/2) f(n-2), all cells at level n-2.
/// Requires r(n) even and n >= min_n_for_case.
CellStructure decompose_even_r(const Params& params, int n);

/// One application of the both-odd pattern, all cells at level n-3: with
/// U = f^r I t^(r-1),
///   f(n) = [ U^((s+1)/2) t U^((s-1)/2) f ]^((r-1)/2) U^((s+1)/2) t.
/// Not yet self-similar unless a = b; apply twice (see refine / the
/// compose_twice option) for the n-6 structure.
CellStructure decompose_odd_odd(const Params& params, int n);

/// The r-odd / s-even pattern, all cells at level n-4: with
/// U = f^s I t^(s-1), A = U^((r+1)/2) t, B = U^((r+1)/2) f, C = U^((r-1)/2) f,
///   f(n) = { (A C)^(s/2) B (A C)^((s-2)/2) A }^((r-1)/2) (A C)^(s/2) B.
CellStructure decompose_odd_even(const Params& params, int n);

struct DecomposeOptions {
    bool expand_i = false;       // replace I-cells by their overlapping F/T expansion
    bool compose_twice = false;  // both-odd only: apply the pattern twice, landing at n-6
};

/// Dispatches on the parity of (r(n), s(n)) to exactly one of the three case
/// decompositions. Below-minimum n raises std::invalid_argument naming the
/// minimum rather than falling back to direct generation.
CellStructure decompose(const Params& params, int n, const DecomposeOptions& options = {});

/// Expands one I-cell at level m >= 5 into overlapping F/T cells:
/// r(m) >= 2 gives [F at offset, T at offset + 2 L(m-1)] overlapping by
/// L(m) - 2 L(m-1); r(m) = 1 gives an (F,F,T) triple with adjacent overlaps
/// of L(m-2).
std::vector<Cell> expand_I(const Cell& cell, const Params& params);

/// Applies expand_I to every I-cell and re-sorts by offset.
CellStructure expand_all_I(const CellStructure& structure);

/// Decomposition of the doubled word f(n) f(n) over a parent of length 2 Ln:
/// cells [F x r(n), I, T x (r(n)-1)] at level n-1. Requires n >= 6 (7 when
/// a = 1 or b = 1).
CellStructure expand_f_squared(const Params& params, int n);

/// Applies `depth` self-similar steps to a structure: each step expands all
/// I-cells, then decomposes every F/T cell at its level (a T-cell reuses the
/// f decomposition with the final cell's kind toggled, since t differs from f
/// only in the last two symbols). Throws when a step would drop below the
/// case minimum ("depth exhausts minimum level").
CellStructure refine(const CellStructure& structure, int depth);

/// Raised by flatten on an overlap disagreement or a coverage gap.
class FlattenError : public std::runtime_error {
public:
    enum class Kind { conflict, gap };

    static constexpr std::size_t no_cell = static_cast<std::size_t>(-1);

    FlattenError(Kind kind, std::uint64_t position, std::size_t cell_i, std::size_t cell_j,
                 const std::string& what)
        : std::runtime_error(what), kind(kind), position(position), cell_i(cell_i), cell_j(cell_j) {}

    Kind kind;
    std::uint64_t position;
    std::size_t cell_i;
    std::size_t cell_j;
};

/// Writes every cell's referenced word at its offset into a buffer of
/// parent_length and returns it. Any position written twice with different
/// symbols raises FlattenError ("overlap conflict at position p between cell
/// i and cell j"), as does any uncovered position ("gap at position p").
/// Cell writes and overlap checks run in parallel; the result and any error
/// are byte-identical to flatten_serial.
Word flatten(const CellStructure& structure, std::uint64_t cap = kDefaultLengthCap);

/// Serial reference implementation of flatten, kept for testing and for the
/// benchmark target.
Word flatten_serial(const CellStructure& structure, std::uint64_t cap = kDefaultLengthCap);

/// Stable single-line JSON encoding with fields in exactly this order:
/// {a, b, n, convention, period, self_similar, cells:[{kind, level, offset,
/// length}]}.
std::string structure_to_json(const CellStructure& structure);

/// Parses the encoding produced by structure_to_json.
CellStructure structure_from_json(const std::string& text);

/// Human-oriented aligned bracket diagram of the cell offsets (not a
/// stability surface).
std::string structure_to_diagram(const CellStructure& structure, int width = 64);

}  // namespace fibword
