#include "fibword/cells.hpp"
#include "fibword/verify.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace fibword {

namespace {

using ordered_json = nlohmann::ordered_json;

CellKind kind_from_string(const std::string& s) {
    if (s == "F") return CellKind::F;
    if (s == "T") return CellKind::T;
    if (s == "I") return CellKind::I;
    throw std::invalid_argument("unknown cell kind \"" + s + "\" (expected F, T, or I)");
}

Convention convention_from_string(const std::string& s) {
    if (s == "standard") return Convention::standard;
    if (s == "classical-swapped") return Convention::classical_swapped;
    throw std::invalid_argument("unknown convention \"" + s + "\"");
}

}  // namespace

std::string structure_to_json(const CellStructure& structure) {
    ordered_json j;
    j["a"] = structure.params.a;
    j["b"] = structure.params.b;
    j["n"] = structure.root_level;
    j["convention"] = convention_name(structure.params.convention);
    j["period"] = structure.period;
    j["self_similar"] = structure.self_similar;
    ordered_json cells = ordered_json::array();
    for (const Cell& c : structure.cells) {
        ordered_json jc;
        jc["kind"] = std::string(1, cell_kind_char(c.kind));
        jc["level"] = c.level;
        jc["offset"] = c.offset;
        jc["length"] = c.length;
        cells.push_back(std::move(jc));
    }
    j["cells"] = std::move(cells);
    return j.dump();
}

CellStructure structure_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    const Params params(j.at("a").get<int>(), j.at("b").get<int>(),
                        convention_from_string(j.at("convention").get<std::string>()));
    CellStructure st{params,
                     j.at("n").get<int>(),
                     0,
                     j.at("period").get<int>(),
                     j.at("self_similar").get<bool>(),
                     {}};
    st.parent_length = length_f(params, st.root_level);
    for (const auto& jc : j.at("cells")) {
        st.cells.push_back(Cell{kind_from_string(jc.at("kind").get<std::string>()),
                                jc.at("level").get<int>(), jc.at("offset").get<std::uint64_t>(),
                                jc.at("length").get<std::uint64_t>()});
    }
    return st;
}

std::string report_line(const VerificationReport& report) {
    ordered_json j;
    j["identity"] = std::string(identity_name(report.identity));
    j["a"] = report.params.a;
    j["b"] = report.params.b;
    j["n"] = report.n;
    j["convention"] = convention_name(report.params.convention);
    j["status"] = verify_status_name(report.status);
    j["detail"] = report.detail;
    return j.dump();
}

std::string structure_to_diagram(const CellStructure& structure, int width) {
    if (width < 8) width = 8;
    std::ostringstream out;
    out << "f(" << structure.params.a << "," << structure.params.b << "," << structure.root_level
        << ") " << convention_name(structure.params.convention) << ": " << structure.parent_length
        << " symbols, " << structure.cells.size() << " cells, period " << structure.period
        << (structure.self_similar ? "" : ", not yet self-similar") << "\n";
    out << std::setw(4) << "#" << "  kind  " << std::setw(5) << "level" << "  " << std::setw(12)
        << "offset" << "  " << std::setw(12) << "length" << "\n";
    const auto column = [&](std::uint64_t pos) {
        if (structure.parent_length == 0) return 0;
        const double frac = static_cast<double>(pos) / static_cast<double>(structure.parent_length);
        return std::min(static_cast<int>(frac * width), width - 1);
    };
    for (std::size_t i = 0; i < structure.cells.size(); ++i) {
        const Cell& c = structure.cells[i];
        out << std::setw(4) << i << "     " << cell_kind_char(c.kind) << "  " << std::setw(5)
            << c.level << "  " << std::setw(12) << c.offset << "  " << std::setw(12) << c.length
            << "  |";
        const int lo = column(c.offset);
        const int hi = column(c.offset + c.length - 1);
        for (int col = 0; col < width; ++col) out << (col >= lo && col <= hi ? '=' : ' ');
        out << "|\n";
    }
    return out.str();
}

}  // namespace fibword
