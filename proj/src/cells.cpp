#include "fibword/cells.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <utility>

namespace fibword {

namespace {

bool is_even(int v) { return v % 2 == 0; }

/// A single both-odd step lands at n-3, where the pattern has the opposite
/// parity unless a = b; every other drop is self-similar as it stands.
bool drop_self_similar(const Params& p, int total_drop) {
    const bool both_odd = !is_even(p.a) && !is_even(p.b);
    if (both_odd && p.a != p.b) return (total_drop / 3) % 2 == 0;
    return true;
}

void require_case_minimum(ParityCase c, const Params& p, int n) {
    const int minimum = min_n_for_case(c, p);
    if (n < minimum) {
        throw std::invalid_argument("n too small for this parity case (" +
                                    std::string(parity_case_name(c)) + "): minimum n = " +
                                    std::to_string(minimum) + " (got n = " + std::to_string(n) + ")");
    }
}

/// Emits cells left to right, advancing the cursor by each cell's extent.
struct PatternBuilder {
    PatternBuilder(const Params& p, int level)
        : level(level), len_f(length_f(p, level)), len_i(length_I(p, level)) {}

    void f(int count = 1) { emit(CellKind::F, count, len_f); }
    void t(int count = 1) { emit(CellKind::T, count, len_f); }
    void i(int count = 1) { emit(CellKind::I, count, len_i); }

    void emit(CellKind kind, int count, std::uint64_t len) {
        for (int c = 0; c < count; ++c) {
            cells.push_back(Cell{kind, level, cursor, len});
            cursor += len;
        }
    }

    int level;
    std::uint64_t len_f;
    std::uint64_t len_i;
    std::uint64_t cursor = 0;
    std::vector<Cell> cells;
};

CellStructure finish(PatternBuilder&& b, const Params& p, int n, int drop) {
    const std::uint64_t parent = length_f(p, n);
    if (b.cursor != parent) {
        throw std::logic_error("decomposition of f(n) at n = " + std::to_string(n) +
                               " tiles " + std::to_string(b.cursor) + " symbols, expected " +
                               std::to_string(parent));
    }
    return CellStructure{p, n, parent, drop, drop_self_similar(p, drop), std::move(b.cells)};
}

}  // namespace

const char* parity_case_name(ParityCase c) {
    switch (c) {
        case ParityCase::even_r: return "r even";
        case ParityCase::both_odd: return "r and s odd";
        default: return "r odd, s even";
    }
}

ParityCase parity_case(const Params& params, int n) {
    const auto [r, s] = rs(params, n);
    if (is_even(r)) return ParityCase::even_r;
    if (!is_even(s)) return ParityCase::both_odd;
    return ParityCase::odd_even;
}

int period_l(const Params& params) {
    const int odd_count = (params.a % 2) + (params.b % 2);
    if (odd_count == 0) return 2;
    if (odd_count == 1) return 4;
    return 6;
}

int min_n_for_case(ParityCase c, const Params& params) {
    int base = 0;
    switch (c) {
        case ParityCase::even_r: base = 7; break;
        case ParityCase::both_odd: base = 8; break;
        case ParityCase::odd_even: base = 9; break;
    }
    return base + (params.has_unit_parameter() ? 1 : 0);
}

CellStructure decompose_even_r(const Params& params, int n) {
    const auto [r, s] = rs(params, n);
    if (!is_even(r)) {
        throw std::invalid_argument("decompose_even_r requires r(n) even, got r = " +
                                    std::to_string(r));
    }
    require_case_minimum(ParityCase::even_r, params, n);

    PatternBuilder b(params, n - 2);
    for (int g = 0; g < r / 2; ++g) {
        b.f(s);
        b.i();
        b.t(s - 1);
    }
    b.f();
    return finish(std::move(b), params, n, 2);
}

CellStructure decompose_odd_odd(const Params& params, int n) {
    const auto [r, s] = rs(params, n);
    if (is_even(r) || is_even(s)) {
        throw std::invalid_argument("decompose_odd_odd requires r(n) and s(n) odd, got r = " +
                                    std::to_string(r) + ", s = " + std::to_string(s));
    }
    require_case_minimum(ParityCase::both_odd, params, n);

    PatternBuilder b(params, n - 3);
    const auto unit = [&] {
        b.f(r);
        b.i();
        b.t(r - 1);
    };
    for (int g = 0; g < (r - 1) / 2; ++g) {
        for (int k = 0; k < (s + 1) / 2; ++k) unit();
        b.t();
        for (int k = 0; k < (s - 1) / 2; ++k) unit();
        b.f();
    }
    for (int k = 0; k < (s + 1) / 2; ++k) unit();
    b.t();
    return finish(std::move(b), params, n, 3);
}

CellStructure decompose_odd_even(const Params& params, int n) {
    const auto [r, s] = rs(params, n);
    if (is_even(r) || !is_even(s)) {
        throw std::invalid_argument("decompose_odd_even requires r(n) odd and s(n) even, got r = " +
                                    std::to_string(r) + ", s = " + std::to_string(s));
    }
    require_case_minimum(ParityCase::odd_even, params, n);

    PatternBuilder b(params, n - 4);
    const auto unit = [&] {
        b.f(s);
        b.i();
        b.t(s - 1);
    };
    const auto unit_rep = [&](int times) {
        for (int k = 0; k < times; ++k) unit();
    };
    const auto part_a = [&] {  // U^((r+1)/2) t
        unit_rep((r + 1) / 2);
        b.t();
    };
    const auto part_b = [&] {  // U^((r+1)/2) f
        unit_rep((r + 1) / 2);
        b.f();
    };
    const auto part_c = [&] {  // U^((r-1)/2) f
        unit_rep((r - 1) / 2);
        b.f();
    };

    for (int outer = 0; outer < (r - 1) / 2; ++outer) {
        for (int k = 0; k < s / 2; ++k) {
            part_a();
            part_c();
        }
        part_b();
        for (int k = 0; k < (s - 2) / 2; ++k) {
            part_a();
            part_c();
        }
        part_a();
    }
    for (int k = 0; k < s / 2; ++k) {
        part_a();
        part_c();
    }
    part_b();
    return finish(std::move(b), params, n, 4);
}

CellStructure decompose(const Params& params, int n, const DecomposeOptions& options) {
    const ParityCase c = parity_case(params, n);
    CellStructure st = [&] {
        switch (c) {
            case ParityCase::even_r: return decompose_even_r(params, n);
            case ParityCase::both_odd: return decompose_odd_odd(params, n);
            default: return decompose_odd_even(params, n);
        }
    }();
    if (options.compose_twice) {
        if (c != ParityCase::both_odd) {
            throw std::invalid_argument("compose_twice applies only to the both-odd case (" +
                                        std::string(parity_case_name(c)) + " here)");
        }
        st = refine(st, 1);
    }
    if (options.expand_i) st = expand_all_I(st);
    return st;
}

std::vector<Cell> expand_I(const Cell& cell, const Params& params) {
    if (cell.kind != CellKind::I) {
        throw std::invalid_argument("expand_I requires an I-cell");
    }
    if (cell.level < 5) {
        throw std::invalid_argument("expand_I requires level >= 5 (got " +
                                    std::to_string(cell.level) + ")");
    }
    const int m = cell.level;
    const int r = rs(params, m).r;
    const std::uint64_t lm = length_f(params, m);
    const std::uint64_t lm1 = length_f(params, m - 1);
    const std::uint64_t lm2 = length_f(params, m - 2);
    if (cell.length != lm + 2 * lm1) {
        throw std::invalid_argument("I-cell length mismatch at level " + std::to_string(m) +
                                    ": expected " + std::to_string(lm + 2 * lm1) + ", got " +
                                    std::to_string(cell.length));
    }

    std::vector<Cell> out;
    if (r >= 2) {
        out.push_back(Cell{CellKind::F, m, cell.offset, lm});
        out.push_back(Cell{CellKind::T, m, cell.offset + 2 * lm1, lm});
    } else {
        const std::uint64_t step = lm - lm2;
        out.push_back(Cell{CellKind::F, m, cell.offset, lm});
        out.push_back(Cell{CellKind::F, m, cell.offset + step, lm});
        out.push_back(Cell{CellKind::T, m, cell.offset + 2 * step, lm});
    }
    return out;
}

CellStructure expand_all_I(const CellStructure& structure) {
    CellStructure out = structure;
    std::vector<Cell> cells;
    cells.reserve(structure.cells.size() + 2);
    for (const Cell& cell : structure.cells) {
        if (cell.kind == CellKind::I) {
            for (const Cell& piece : expand_I(cell, structure.params)) cells.push_back(piece);
        } else {
            cells.push_back(cell);
        }
    }
    std::stable_sort(cells.begin(), cells.end(),
                     [](const Cell& x, const Cell& y) { return x.offset < y.offset; });
    out.cells = std::move(cells);
    return out;
}

CellStructure expand_f_squared(const Params& params, int n) {
    const int minimum = 6 + (params.has_unit_parameter() ? 1 : 0);
    if (n < minimum) {
        throw std::invalid_argument("f^2 decomposition requires n >= " + std::to_string(minimum) +
                                    " (got n = " + std::to_string(n) + ")");
    }
    const int r = rs(params, n).r;
    PatternBuilder b(params, n - 1);
    b.f(r);
    b.i();
    b.t(r - 1);

    const std::uint64_t ln = length_f(params, n);
    std::uint64_t parent = 0;
    if (__builtin_add_overflow(ln, ln, &parent)) {
        throw std::length_error("word too large: doubled length overflows the 64-bit range");
    }
    if (b.cursor != parent) {
        throw std::logic_error("f^2 decomposition tiles " + std::to_string(b.cursor) +
                               " symbols, expected " + std::to_string(parent));
    }
    return CellStructure{params, n, parent, 1, false, std::move(b.cells)};
}

CellStructure refine(const CellStructure& structure, int depth) {
    if (depth < 0) throw std::invalid_argument("refine depth must be nonnegative");
    CellStructure st = structure;
    for (int step = 0; step < depth; ++step) {
        const CellStructure expanded = expand_all_I(st);
        std::vector<Cell> next;
        int drop = 0;
        for (const Cell& cell : expanded.cells) {
            CellStructure sub = [&] {
                try {
                    return decompose(st.params, cell.level);
                } catch (const std::invalid_argument& e) {
                    throw std::invalid_argument(
                        "depth exhausts minimum level: refining a cell at level " +
                        std::to_string(cell.level) + ": " + e.what());
                }
            }();
            if (cell.kind == CellKind::T) {
                // t differs from f only in its final two symbols, which lie in
                // the pattern's last cell.
                Cell& last = sub.cells.back();
                last.kind = last.kind == CellKind::F ? CellKind::T : CellKind::F;
            }
            drop = sub.period;
            for (Cell c : sub.cells) {
                c.offset += cell.offset;
                next.push_back(c);
            }
        }
        std::stable_sort(next.begin(), next.end(),
                         [](const Cell& x, const Cell& y) { return x.offset < y.offset; });
        st.cells = std::move(next);
        st.period += drop;
        st.self_similar = drop_self_similar(st.params, st.period);
    }
    return st;
}

namespace {

/// Coverage watermark before each cell, validated: offsets sorted, cells in
/// bounds, no gaps, full coverage.
std::vector<std::uint64_t> flatten_plan(const CellStructure& st) {
    const auto& cells = st.cells;
    std::vector<std::uint64_t> covered_before(cells.size());
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& cell = cells[i];
        if (i > 0 && cell.offset < cells[i - 1].offset) {
            throw std::invalid_argument("cells are not sorted by offset");
        }
        if (cell.length == 0 || cell.offset + cell.length > st.parent_length) {
            throw std::invalid_argument("cell " + std::to_string(i) +
                                        " extends past the parent word");
        }
        covered_before[i] = covered;
        if (cell.offset > covered) {
            throw FlattenError(FlattenError::Kind::gap, covered, i, FlattenError::no_cell,
                               "gap at position " + std::to_string(covered));
        }
        covered = std::max(covered, cell.offset + cell.length);
    }
    if (covered != st.parent_length) {
        throw FlattenError(FlattenError::Kind::gap, covered, FlattenError::no_cell,
                           FlattenError::no_cell, "gap at position " + std::to_string(covered));
    }
    return covered_before;
}

Word cell_word(const CellStructure& st, const Cell& cell, std::uint64_t cap) {
    switch (cell.kind) {
        case CellKind::F: return word_f(st.params, cell.level, cap);
        case CellKind::T: return word_t(st.params, cell.level, cap);
        default: return word_I(st.params, cell.level, cap);
    }
}

using MaterialKey = std::pair<CellKind, int>;

/// Owner of position p: the first cell covering it, which is also the cell
/// whose disjoint write range contains it.
std::size_t owner_of(const CellStructure& st, std::uint64_t p) {
    for (std::size_t k = 0; k < st.cells.size(); ++k) {
        const Cell& c = st.cells[k];
        if (c.offset <= p && p < c.offset + c.length) return k;
    }
    return FlattenError::no_cell;
}

[[noreturn]] void throw_conflict(const CellStructure& st, std::size_t i, std::uint64_t p) {
    const std::size_t j = owner_of(st, p);
    throw FlattenError(FlattenError::Kind::conflict, p, i, j,
                       "overlap conflict at position " + std::to_string(p) + " between cell " +
                       std::to_string(i) + " and cell " + std::to_string(j));
}

void check_cell_word(const CellStructure& st, std::size_t index, const Word& w) {
    if (w.size() != st.cells[index].length) {
        throw std::invalid_argument("cell " + std::to_string(index) + " length " +
                                    std::to_string(st.cells[index].length) +
                                    " does not match its word (" + std::to_string(w.size()) + ")");
    }
}

}  // namespace

Word flatten_serial(const CellStructure& structure, std::uint64_t cap) {
    if (structure.parent_length > cap) {
        throw std::length_error("word too large: parent length " +
                                std::to_string(structure.parent_length) + " exceeds cap " +
                                std::to_string(cap));
    }
    if (structure.cells.empty() && structure.parent_length == 0) return Word{};
    const auto covered_before = flatten_plan(structure);

    std::vector<Symbol> buffer(structure.parent_length);
    std::map<MaterialKey, Word> cache;
    for (std::size_t i = 0; i < structure.cells.size(); ++i) {
        const Cell& cell = structure.cells[i];
        auto [it, inserted] = cache.try_emplace({cell.kind, cell.level});
        if (inserted) it->second = cell_word(structure, cell, cap);
        const Word& w = it->second;
        check_cell_word(structure, i, w);

        const std::uint64_t begin = cell.offset;
        const std::uint64_t end = begin + cell.length;
        const std::uint64_t overlap_end = std::min(covered_before[i], end);
        for (std::uint64_t p = begin; p < overlap_end; ++p) {
            if (buffer[p] != w[p - begin]) throw_conflict(structure, i, p);
        }
        if (end > covered_before[i]) {
            const std::uint64_t from = std::max(covered_before[i], begin);
            std::memcpy(buffer.data() + from, w.data() + (from - begin),
                        static_cast<std::size_t>(end - from));
        }
    }
    return Word(std::move(buffer));
}

Word flatten(const CellStructure& structure, std::uint64_t cap) {
    if (structure.parent_length > cap) {
        throw std::length_error("word too large: parent length " +
                                std::to_string(structure.parent_length) + " exceeds cap " +
                                std::to_string(cap));
    }
    if (structure.cells.empty() && structure.parent_length == 0) return Word{};
    const auto covered_before = flatten_plan(structure);
    const auto& cells = structure.cells;
    const auto cell_count = static_cast<std::ptrdiff_t>(cells.size());

    // Materialize each distinct (kind, level) word once, in parallel.
    std::map<MaterialKey, std::size_t> key_index;
    for (const Cell& cell : cells) key_index.try_emplace({cell.kind, cell.level}, key_index.size());
    std::vector<MaterialKey> keys(key_index.size());
    for (const auto& [key, idx] : key_index) keys[idx] = key;
    std::vector<Word> materials(keys.size());
    std::vector<std::exception_ptr> material_errors(keys.size());
#pragma omp parallel for schedule(dynamic) if (keys.size() > 1)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(keys.size()); ++k) {
        try {
            const Cell probe{keys[k].first, keys[k].second, 0, 0};
            materials[k] = cell_word(structure, probe, cap);
        } catch (...) {
            material_errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    // surface the error of the first affected cell, as the serial path would
    for (const Cell& cell : cells) {
        const auto& error = material_errors[key_index.at({cell.kind, cell.level})];
        if (error) std::rethrow_exception(error);
    }

    std::vector<const Word*> words(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        words[i] = &materials[key_index.at({cells[i].kind, cells[i].level})];
        check_cell_word(structure, i, *words[i]);
    }

    std::vector<Symbol> buffer(structure.parent_length);
    // Each cell writes only the range it is the first to cover; these ranges
    // partition [0, parent_length), so the writes are race-free.
#pragma omp parallel for schedule(static) if (cell_count > 1)
    for (std::ptrdiff_t i = 0; i < cell_count; ++i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        const std::uint64_t end = cell.offset + cell.length;
        const std::uint64_t from = std::max(covered_before[static_cast<std::size_t>(i)], cell.offset);
        if (from < end) {
            std::memcpy(buffer.data() + from,
                        words[static_cast<std::size_t>(i)]->data() + (from - cell.offset),
                        static_cast<std::size_t>(end - from));
        }
    }

    // Verify every cell's full extent against the buffer; a mismatch means two
    // cells disagree on an overlap.
    constexpr std::uint64_t no_mismatch = static_cast<std::uint64_t>(-1);
    std::vector<std::uint64_t> first_bad(cells.size(), no_mismatch);
#pragma omp parallel for schedule(static) if (cell_count > 1)
    for (std::ptrdiff_t i = 0; i < cell_count; ++i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        const Symbol* w = words[static_cast<std::size_t>(i)]->data();
        const Symbol* buf = buffer.data() + cell.offset;
        const auto len = static_cast<std::size_t>(cell.length);
        if (std::memcmp(buf, w, len) != 0) {
            for (std::size_t p = 0; p < len; ++p) {
                if (buf[p] != w[p]) {
                    first_bad[static_cast<std::size_t>(i)] = cell.offset + p;
                    break;
                }
            }
        }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (first_bad[i] != no_mismatch) throw_conflict(structure, i, first_bad[i]);
    }
    return Word(std::move(buffer));
}

}  // namespace fibword
