#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "fibword/cells.hpp"

using namespace fibword;

namespace {

std::string kinds_of(const CellStructure& st) {
    std::string out;
    for (const Cell& c : st.cells) out += cell_kind_char(c.kind);
    return out;
}

bool all_cells_at_level(const CellStructure& st, int level) {
    for (const Cell& c : st.cells) {
        if (c.level != level) return false;
    }
    return true;
}

Params params_for(int a, int b) {
    return Params(a, b, (a == 1 && b == 1) ? Convention::classical_swapped : Convention::standard);
}

}  // namespace

TEST_CASE("period_l follows the parities of a and b") {
    CHECK(period_l(Params(2, 4)) == 2);
    CHECK(period_l(Params(3, 2)) == 4);
    CHECK(period_l(Params(1, 1)) == 6);
    for (int a = 1; a <= 6; ++a) {
        for (int b = 1; b <= 6; ++b) {
            const int odd = (a % 2) + (b % 2);
            const int expected = odd == 0 ? 2 : (odd == 1 ? 4 : 6);
            CHECK(period_l(Params(a, b)) == expected);
        }
    }
}

TEST_CASE("decompose routes on the parity of (r, s)") {
    // all eight parity combinations of (a, b, n) collapse to three cases
    CHECK(parity_case(Params(2, 2), 8) == ParityCase::even_r);    // even even even
    CHECK(parity_case(Params(2, 2), 7) == ParityCase::even_r);    // even even odd
    CHECK(parity_case(Params(2, 3), 8) == ParityCase::even_r);    // even odd  even
    CHECK(parity_case(Params(3, 2), 9) == ParityCase::even_r);    // odd  even odd
    CHECK(parity_case(Params(3, 2), 8) == ParityCase::odd_even);  // odd  even even
    CHECK(parity_case(Params(2, 3), 9) == ParityCase::odd_even);  // even odd  odd
    CHECK(parity_case(Params(3, 5), 8) == ParityCase::both_odd);  // odd  odd  even
    CHECK(parity_case(Params(3, 5), 9) == ParityCase::both_odd);  // odd  odd  odd

    CHECK(all_cells_at_level(decompose(Params(2, 2), 7), 5));    // r even: drop 2
    CHECK(all_cells_at_level(decompose(Params(3, 2), 10), 6));   // r odd, s even: drop 4
    CHECK(all_cells_at_level(decompose(Params(3, 5), 8), 5));    // both odd: drop 3
    CHECK(all_cells_at_level(decompose(Params(2, 3), 8), 6));
}

TEST_CASE("decompose below the case minimum errors with the bound") {
    // (2,3,5): n odd routes to the r-odd/s-even case, whose minimum is 9
    CHECK_THROWS_WITH_AS(decompose(Params(2, 3), 5), doctest::Contains("minimum n = 9"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(decompose(Params(2, 3), 6), doctest::Contains("minimum n = 7"),
                         std::invalid_argument);
    // unit parameters shift every minimum up by one
    CHECK_THROWS_WITH_AS(decompose(Params(1, 2), 7), doctest::Contains("minimum n = 8"),
                         std::invalid_argument);
    CHECK_NOTHROW(decompose(Params(2, 3), 8));
}

TEST_CASE("r-even decomposition of f(2,3,8): cells and offsets") {
    const CellStructure st = decompose(Params(2, 3), 8);
    CHECK(st.parent_length == 2417);
    CHECK(st.period == 2);
    CHECK(st.self_similar);
    CHECK(kinds_of(st) == "FFFITTF");
    CHECK(all_cells_at_level(st, 6));

    // offsets advance by the cell extents: L6 = 307, I extent = 307 + 2*134
    const std::vector<std::uint64_t> offsets = {0, 307, 614, 921, 1496, 1803, 2110};
    REQUIRE(st.cells.size() == offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        CHECK(st.cells[i].offset == offsets[i]);
    }
    CHECK(st.cells[3].kind == CellKind::I);
    CHECK(st.cells[3].length == 575);
}

TEST_CASE("r-even decomposition of f(2,2,8)") {
    CHECK(kinds_of(decompose(Params(2, 2), 8)) == "FFITF");
}

TEST_CASE("both-odd decomposition of classical f(1,1,9)") {
    // unit parameters raise the both-odd minimum to 9
    CHECK_THROWS_WITH_AS(decompose(params_for(1, 1), 8), doctest::Contains("minimum n = 9"),
                         std::invalid_argument);

    const CellStructure st = decompose(params_for(1, 1), 9);
    CHECK(kinds_of(st) == "FIT");
    CHECK(all_cells_at_level(st, 6));
    CHECK(st.period == 3);
    CHECK(st.self_similar);  // a == b keeps the single step self-similar
    CHECK(flatten(st) == word_f(params_for(1, 1), 9));

    // the I-cell expands into an overlapping (F,F,T) triple at r = 1
    const auto triple = expand_I(st.cells[1], st.params);
    REQUIRE(triple.size() == 3);
    CHECK(triple[0].kind == CellKind::F);
    CHECK(triple[1].kind == CellKind::F);
    CHECK(triple[2].kind == CellKind::T);
}

TEST_CASE("both-odd single step is marked not self-similar when a != b") {
    CHECK_FALSE(decompose(Params(3, 5), 8).self_similar);
    CHECK(decompose(Params(3, 3), 8).self_similar);
}

TEST_CASE("flatten reproduces word_f for every case, including unit parameters") {
    const std::vector<std::tuple<int, int, int>> cases = {
        {2, 2, 7},  {2, 2, 8},  {2, 3, 8},  {2, 3, 10}, {4, 3, 8}, {3, 3, 8},
        {3, 3, 9},  {3, 5, 8},  {5, 3, 8},  {3, 5, 9},  {2, 3, 9}, {3, 2, 9},
        {3, 2, 10}, {1, 1, 9},  {1, 1, 12}, {1, 2, 9},  {1, 2, 10}, {2, 1, 8},
        {1, 3, 9},  {3, 1, 9},  {1, 4, 9},  {1, 4, 10},
    };
    for (const auto& [a, b, n] : cases) {
        const Params p = params_for(a, b);
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(n);
        const CellStructure st = decompose(p, n);
        const Word reference = word_f(p, n);
        REQUIRE(flatten(st) == reference);
        REQUIRE(flatten_serial(st) == reference);
        REQUIRE(flatten(expand_all_I(st)) == reference);
        REQUIRE(flatten_serial(expand_all_I(st)) == reference);
    }
}

TEST_CASE("expand_I splits an I-cell into overlapping copies") {
    const Params p(2, 3);
    const Cell cell{CellKind::I, 6, 921, 575};
    const auto pieces = expand_I(cell, p);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0] == Cell{CellKind::F, 6, 921, 307});
    CHECK(pieces[1] == Cell{CellKind::T, 6, 1189, 307});
    // overlap length L6 - 2 L5 = 39 = L4
    CHECK(pieces[0].offset + pieces[0].length - pieces[1].offset == 39);
    // total extent is always Lm + 2 Lm-1
    CHECK(pieces[1].offset + pieces[1].length - pieces[0].offset == 575);

    CHECK_THROWS_AS(expand_I(Cell{CellKind::F, 6, 0, 307}, p), std::invalid_argument);
    CHECK_THROWS_WITH_AS(expand_I(Cell{CellKind::I, 4, 0, 10}, p),
                         doctest::Contains("level >= 5"), std::invalid_argument);
}

TEST_CASE("expand_I at r = 1 yields the three-word variant") {
    const Params p(1, 2);
    const int m = 6;  // r(6) = a = 1
    const std::uint64_t lm = length_f(p, m);
    const std::uint64_t lm1 = length_f(p, m - 1);
    const std::uint64_t lm2 = length_f(p, m - 2);
    const Cell cell{CellKind::I, m, 0, lm + 2 * lm1};
    const auto pieces = expand_I(cell, p);
    REQUIRE(pieces.size() == 3);
    CHECK(pieces[0].offset == 0);
    CHECK(pieces[1].offset == lm - lm2);
    CHECK(pieces[2].offset == 2 * (lm - lm2));
    // adjacent overlaps are copies of f(m-2)
    CHECK(pieces[0].offset + lm - pieces[1].offset == lm2);
    CHECK(pieces[2].offset + lm - pieces[0].offset == cell.length);
}

TEST_CASE("expand_f_squared tiles the doubled word") {
    const Params p(2, 3);
    const CellStructure st6 = expand_f_squared(p, 6);
    CHECK(kinds_of(st6) == "FFIT");
    CHECK(all_cells_at_level(st6, 5));
    CHECK(st6.parent_length == 614);

    const CellStructure st7 = expand_f_squared(p, 7);
    CHECK(kinds_of(st7) == "FFFITT");
    CHECK(all_cells_at_level(st7, 6));

    for (const CellStructure& st : {st6, st7}) {
        Word doubled;
        const Word f_n = word_f(p, st.root_level);
        doubled.append(f_n);
        doubled.append(f_n);
        CHECK(flatten(st) == doubled);
        CHECK(flatten_serial(st) == doubled);
    }

    CHECK_THROWS_AS(expand_f_squared(p, 5), std::invalid_argument);
    CHECK_THROWS_AS(expand_f_squared(Params(1, 2), 6), std::invalid_argument);
}

TEST_CASE("refine: identity at depth 0, uniform level drop, flatten invariance") {
    const Params p(2, 2);
    const CellStructure st = decompose(p, 9);
    CHECK(refine(st, 0) == st);

    const CellStructure fine = refine(st, 1);
    CHECK(all_cells_at_level(fine, 5));
    CHECK(fine.period == 4);
    CHECK(flatten(fine) == flatten(st));
    CHECK(flatten(st) == word_f(p, 9));

    // depth 2 from n = 12 lands at level 6 for the r-even case
    const CellStructure deep = refine(decompose(Params(2, 3), 12), 2);
    CHECK(all_cells_at_level(deep, 6));
    CHECK(flatten(deep) == word_f(Params(2, 3), 12));
    CHECK(flatten_serial(deep) == word_f(Params(2, 3), 12));

    CHECK_THROWS_WITH_AS(refine(decompose(Params(3, 2), 10), 1),
                         doctest::Contains("depth exhausts minimum level"), std::invalid_argument);
}

TEST_CASE("both-odd composition lands at n-6 and flattens exactly") {
    const DecomposeOptions twice{.expand_i = false, .compose_twice = true};

    const CellStructure st33 = decompose(Params(3, 3), 11, twice);
    CHECK(all_cells_at_level(st33, 5));
    CHECK(st33.period == 6);
    CHECK(st33.self_similar);
    CHECK(flatten(st33) == word_f(Params(3, 3), 11));

    const CellStructure st11 = decompose(params_for(1, 1), 12, twice);
    CHECK(all_cells_at_level(st11, 6));
    CHECK(st11.period == 6);
    CHECK(flatten(st11) == word_f(params_for(1, 1), 12));

    // strict minimums: the second application needs n - 3 at or above the
    // case minimum
    CHECK_THROWS_WITH_AS(decompose(params_for(1, 1), 9, twice),
                         doctest::Contains("depth exhausts minimum level"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(decompose(Params(2, 2), 8, twice),
                         doctest::Contains("both-odd"), std::invalid_argument);
}

TEST_CASE("row-1 cell counts: (r/2)(2s) + 1 plain, (r/2)(2s+1) + 1 expanded") {
    for (const auto& [a, b, n] : std::vector<std::tuple<int, int, int>>{
             {2, 3, 8}, {2, 2, 8}, {4, 3, 8}, {2, 5, 10}, {4, 4, 7}, {3, 2, 7}}) {
        const Params p(a, b);
        REQUIRE(parity_case(p, n) == ParityCase::even_r);
        const auto [r, s] = rs(p, n);
        const CellStructure st = decompose(p, n);
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(n);
        CHECK(st.cells.size() == static_cast<std::size_t>(r / 2 * (2 * s) + 1));
        CHECK(expand_all_I(st).cells.size() == static_cast<std::size_t>(r / 2 * (2 * s + 1) + 1));
    }
}

TEST_CASE("length conservation: cell extents minus overlaps cover the parent") {
    for (const auto& [a, b, n] :
         std::vector<std::tuple<int, int, int>>{{2, 3, 8}, {3, 5, 8}, {3, 2, 9}, {1, 2, 10}}) {
        const Params p = params_for(a, b);
        const CellStructure st = expand_all_I(decompose(p, n));
        std::uint64_t total = 0;
        std::uint64_t overlap = 0;
        std::uint64_t covered = 0;
        for (const Cell& c : st.cells) {
            total += c.length;
            if (c.offset < covered) overlap += covered - c.offset;
            covered = std::max(covered, c.offset + c.length);
        }
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(n);
        CHECK(total - overlap == st.parent_length);
        CHECK(overlap > 0);  // these structures genuinely overlap
    }
}

TEST_CASE("structured serialization: field order, round trip, flatten") {
    const CellStructure st = decompose(Params(2, 2), 7);
    const std::string json = structure_to_json(st);
    CHECK(json.find("{\"a\":2,\"b\":2,\"n\":7,\"convention\":\"standard\",\"period\":2,"
                    "\"self_similar\":true,\"cells\":[{\"kind\":\"F\",\"level\":5,\"offset\":0,"
                    "\"length\":") == 0);

    const CellStructure parsed = structure_from_json(json);
    CHECK(parsed == st);
    CHECK(flatten(parsed) == word_f(Params(2, 2), 7));

    const CellStructure classical = decompose(params_for(1, 1), 9);
    CHECK(structure_from_json(structure_to_json(classical)) == classical);
    CHECK(structure_to_json(classical).find("\"convention\":\"classical-swapped\"") !=
          std::string::npos);

    CHECK_THROWS_AS(structure_from_json("{\"a\":2}"), std::exception);
}

TEST_CASE("flatten rejects conflicting overlaps and gaps, identically in both paths") {
    const Params p(2, 3);
    // f(2,3,2) = 01010 and t(2,3,2) = 01001 disagree at position 3
    CellStructure conflicted{p, 2, 5, 2, true, {}};
    conflicted.cells.push_back(Cell{CellKind::F, 2, 0, 5});
    conflicted.cells.push_back(Cell{CellKind::T, 2, 0, 5});

    std::string serial_message;
    std::string parallel_message;
    try {
        flatten_serial(conflicted);
    } catch (const FlattenError& e) {
        serial_message = e.what();
        CHECK(e.kind == FlattenError::Kind::conflict);
        CHECK(e.position == 3);
        CHECK(e.cell_i == 1);
        CHECK(e.cell_j == 0);
    }
    try {
        flatten(conflicted);
    } catch (const FlattenError& e) {
        parallel_message = e.what();
    }
    CHECK(serial_message == "overlap conflict at position 3 between cell 1 and cell 0");
    CHECK(parallel_message == serial_message);

    CellStructure gapped{p, 2, 10, 2, true, {}};
    gapped.cells.push_back(Cell{CellKind::F, 2, 0, 5});
    CHECK_THROWS_WITH_AS(flatten_serial(gapped), "gap at position 5", FlattenError);
    CHECK_THROWS_WITH_AS(flatten(gapped), "gap at position 5", FlattenError);

    CellStructure unsorted{p, 2, 10, 2, true, {}};
    unsorted.cells.push_back(Cell{CellKind::F, 2, 0, 5});
    unsorted.cells.push_back(Cell{CellKind::F, 2, 5, 5});
    unsorted.cells.push_back(Cell{CellKind::F, 2, 3, 5});
    CHECK_THROWS_WITH_AS(flatten(unsorted), doctest::Contains("not sorted"),
                         std::invalid_argument);
}

TEST_CASE("flatten of a singleton F-cell is word_f") {
    const Params p(2, 3);
    CellStructure single{p, 6, length_f(p, 6), 0, true, {}};
    single.cells.push_back(Cell{CellKind::F, 6, 0, length_f(p, 6)});
    CHECK(flatten(single) == word_f(p, 6));
}

TEST_CASE("parallel and serial flatten agree on refined structures") {
    const CellStructure st = expand_all_I(refine(decompose(Params(2, 2), 11), 1));
    CHECK(flatten(st) == flatten_serial(st));
}
