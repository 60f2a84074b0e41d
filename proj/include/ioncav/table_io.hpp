// table_io.hpp — ResultTable serialization: CSV (RFC-4180-style quoting,
// '#'-prefixed provenance lines) and a JSON array-of-objects form.  Numbers
// carry 17 significant digits so they round-trip exactly.

#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "ioncav/sweep.hpp"

namespace ioncav {

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_to_csv(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const double* d = std::get_if<double>(&c)) {
        if (std::isnan(*d)) return "";
        return fmt17(*d);
    }
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return csv_quote(std::get<std::string>(c));
}

}  // namespace detail

inline std::string to_csv(const ResultTable& table) {
    std::ostringstream os;
    for (const auto& line : table.provenance) os << "# " << line << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << detail::csv_quote(table.columns[i]);
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << detail::cell_to_csv(row[i]);
        os << "\n";
    }
    return os.str();
}

inline std::string to_json(const ResultTable& table) {
    nlohmann::ordered_json doc;
    doc["provenance"] = table.provenance;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<std::monostate>(c))
                obj[table.columns[i]] = nullptr;
            else if (const double* d = std::get_if<double>(&c))
                obj[table.columns[i]] = *d;  // NaN serializes as null
            else if (const bool* b = std::get_if<bool>(&c))
                obj[table.columns[i]] = *b;
            else
                obj[table.columns[i]] = std::get<std::string>(c);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace ioncav
