#include "predistill/reference_tables.hpp"

#include "json.hpp"
#include "reference_tables_data.hpp"

namespace predistill {

namespace {

using nlohmann::json;

std::vector<ReferenceTables::PulseTableRow> pulse_rows(const json& table) {
    std::vector<ReferenceTables::PulseTableRow> rows;
    for (const auto& r : table.at("rows")) {
        const auto v = r.get<std::vector<double>>();
        rows.push_back({v.at(0), v.at(1), {v.begin() + 2, v.end()}});
    }
    return rows;
}

ReferenceTables::GateSequences gate_sequences(const json& j) {
    return {j.at("three_pulse").get<std::vector<double>>(), j.at("five_pulse").get<std::vector<double>>(),
            j.at("seven_pulse").get<std::vector<double>>()};
}

ReferenceTables parse() {
    const json doc = json::parse(detail::reference_tables_json);
    ReferenceTables t;
    t.version = doc.at("version").get<int>();
    t.three_pulse = pulse_rows(doc.at("three_pulse"));
    t.five_pulse = pulse_rows(doc.at("five_pulse"));
    t.t_gate = gate_sequences(doc.at("gate_sequences").at("t"));
    t.h_gate = gate_sequences(doc.at("gate_sequences").at("h"));
    for (const auto& [name, row] : doc.at("xz_three_segment").at("rows").items()) {
        const auto v = row.get<std::vector<double>>();
        XZSequence seq;
        for (std::size_t k = 0; k < 3; ++k) seq.segments.push_back({v.at(3 + k), v.at(k)});
        t.xz_three_segment.emplace(name, std::move(seq));
    }
    const json& designs = doc.at("coupler_designs");
    for (const char* name : {"two", "a", "b", "c"}) {
        CouplerDesign d;
        for (const auto& s : designs.at(name)) d.segments.push_back({s.at(0), s.at(1), s.at(2)});
        t.coupler_designs.emplace(name, std::move(d));
    }
    return t;
}

}  // namespace

const ReferenceTables& reference_tables() {
    static const ReferenceTables tables = parse();
    return tables;
}

}  // namespace predistill
