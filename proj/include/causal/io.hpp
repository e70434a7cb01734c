#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "causal/error.hpp"
#include "causal/team.hpp"

namespace causal {

// Team documents are JSON:
//
//   {
//     "mode": "set" | "multiteam",              // optional, default "set"
//     "variables": [ {"name": "U", "range": [1, 2, "high"]}, ... ],
//     "functions": [
//       {"variable": "Z", "parents": ["U", "X", "Y"],
//        "table": [ {"args": [4, 1, 2], "value": 3}, ... ]},
//       ...
//     ],
//     "rows": [ {"U": 2, "X": 1, "Y": 2, "Z": 4}, ... ]
//   }
//
// Formal terms appear anywhere a value does, as {"term": "f_Z", "args": [...]}.

namespace detail {

inline Value value_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_string()) return Value(j.get<std::string>());
    throw Error(ErrorKind::InvalidComponents,
                "expected an integer or string value, got " + j.dump());
}

inline ExtendedValue extended_from_json(const nlohmann::json& j) {
    if (j.is_object()) {
        if (!j.contains("term") || !j.contains("args"))
            throw Error(ErrorKind::InvalidComponents,
                        "formal terms need \"term\" and \"args\": " + j.dump());
        FormalTerm t;
        t.symbol = j.at("term").get<std::string>();
        for (const auto& a : j.at("args")) t.args.push_back(extended_from_json(a));
        return ExtendedValue(std::move(t));
    }
    return ExtendedValue(value_from_json(j));
}

inline nlohmann::json value_to_json(const Value& v) {
    if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
    return std::get<std::string>(v);
}

inline nlohmann::json extended_to_json(const ExtendedValue& e) {
    if (e.is_value()) return value_to_json(e.value());
    nlohmann::json j;
    j["term"] = e.term().symbol;
    auto args = nlohmann::json::array();
    for (const auto& a : e.term().args) args.push_back(extended_to_json(a));
    j["args"] = std::move(args);
    return j;
}

} // namespace detail

inline TeamComponents components_from_json(const nlohmann::json& doc) {
    TeamComponents c;
    if (doc.contains("mode")) {
        std::string mode = doc.at("mode").get<std::string>();
        if (mode == "set") c.mode = TeamMode::Set;
        else if (mode == "multiteam") c.mode = TeamMode::Multiteam;
        else throw Error(ErrorKind::InvalidComponents, "unknown mode: " + mode);
    }
    if (!doc.contains("variables"))
        throw Error(ErrorKind::InvalidComponents, "document lacks \"variables\"");
    for (const auto& v : doc.at("variables")) {
        std::vector<Value> range;
        for (const auto& rv : v.at("range")) range.push_back(detail::value_from_json(rv));
        c.variables.emplace_back(v.at("name").get<std::string>(), std::move(range));
    }
    for (const auto& f : doc.value("functions", nlohmann::json::array())) {
        TeamComponents::FunctionSpec spec;
        spec.variable = f.at("variable").get<std::string>();
        for (const auto& p : f.at("parents")) spec.parents.push_back(p.get<std::string>());
        for (const auto& e : f.value("table", nlohmann::json::array())) {
            std::vector<Value> args;
            for (const auto& a : e.at("args")) args.push_back(detail::value_from_json(a));
            spec.entries.emplace_back(std::move(args),
                                      detail::extended_from_json(e.at("value")));
        }
        c.functions.push_back(std::move(spec));
    }
    for (const auto& r : doc.value("rows", nlohmann::json::array())) {
        std::map<std::string, ExtendedValue> row;
        for (auto it = r.begin(); it != r.end(); ++it)
            row.emplace(it.key(), detail::extended_from_json(it.value()));
        c.rows.push_back(std::move(row));
    }
    return c;
}

inline nlohmann::json to_json(const CausalTeam& team) {
    nlohmann::json doc;
    doc["mode"] = team.mode == TeamMode::Set ? "set" : "multiteam";
    auto variables = nlohmann::json::array();
    for (int v = 0; v < team.var_count(); ++v) {
        nlohmann::json entry;
        entry["name"] = team.vars[v];
        auto range = nlohmann::json::array();
        for (const Value& rv : team.ranges[v]) range.push_back(detail::value_to_json(rv));
        entry["range"] = std::move(range);
        variables.push_back(std::move(entry));
    }
    doc["variables"] = std::move(variables);
    auto functions = nlohmann::json::array();
    for (const auto& [v, table] : team.functions) {
        nlohmann::json entry;
        entry["variable"] = team.vars[v];
        auto parents = nlohmann::json::array();
        for (int p : table.parents) parents.push_back(team.vars[p]);
        entry["parents"] = std::move(parents);
        auto rows = nlohmann::json::array();
        for (const auto& [args, out] : table.entries) {
            nlohmann::json e;
            auto ja = nlohmann::json::array();
            for (const Value& a : args) ja.push_back(detail::value_to_json(a));
            e["args"] = std::move(ja);
            e["value"] = detail::extended_to_json(out);
            rows.push_back(std::move(e));
        }
        entry["table"] = std::move(rows);
        functions.push_back(std::move(entry));
    }
    doc["functions"] = std::move(functions);
    auto rows = nlohmann::json::array();
    for (const Row& r : team.rows) {
        nlohmann::json jr;
        for (int v = 0; v < team.var_count(); ++v)
            jr[team.vars[v]] = detail::extended_to_json(r[v]);
        rows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

inline CausalTeam team_from_json(const nlohmann::json& doc) {
    return validate(components_from_json(doc));
}

inline CausalTeam load_team(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidComponents, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    return team_from_json(doc);
}

inline void save_team(const CausalTeam& team, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidComponents, "cannot write " + path);
    out << to_json(team).dump(2) << '\n';
}

// Aligned table of the support: variables alphabetical, rows in support
// order, formal terms rendered as f_Z(1,1,2). Columns are left-justified and
// separated by one space; the last column is not padded.
inline std::string render_table(const CausalTeam& team) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back(team.vars);
    for (const Row& r : team.rows) {
        std::vector<std::string> line;
        for (const ExtendedValue& e : r) line.push_back(causal::to_string(e));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(team.vars.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i)
            width[i] = std::max(width[i], line[i].size());
    std::string out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out += line[i];
            if (i + 1 < line.size()) out.append(width[i] - line[i].size() + 1, ' ');
        }
        out += '\n';
    }
    return out;
}

} // namespace causal
