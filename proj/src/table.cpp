#include "morse_gpe/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "json.hpp"

namespace morse_gpe::io {

using ordered_json = nlohmann::ordered_json;

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table row width does not match header");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

bool looks_numeric(const std::string& s) {
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

// Text that would read back as a number or an empty cell is quoted too.
bool needs_quotes(std::string_view s) {
    return s.empty() || s.find_first_of(",\"\n\r") != std::string_view::npos ||
           looks_numeric(std::string(s));
}

void append_csv_field(std::string& out, std::string_view s) {
    if (!needs_quotes(s)) {
        out += s;
        return;
    }
    out += '"';
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_cell(std::string& out, const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        out += format_number(*d);
    } else if (const auto* s = std::get_if<std::string>(&c)) {
        append_csv_field(out, *s);
    }
}

// Splits one CSV record starting at pos; advances pos past the line break.
std::vector<std::pair<std::string, bool>> read_record(std::string_view text, std::size_t& pos) {
    std::vector<std::pair<std::string, bool>> fields;  // (text, was_quoted)
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    while (pos < text.size()) {
        const char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            ++pos;
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(std::move(field), quoted);
            field.clear();
            quoted = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            ++pos;
            break;
        } else {
            field += c;
        }
        ++pos;
    }
    if (in_quotes) throw std::runtime_error("csv: unterminated quoted field");
    fields.emplace_back(std::move(field), quoted);
    return fields;
}

Cell parse_cell(const std::string& s, bool quoted) {
    if (quoted) return s;
    if (s.empty()) return std::monostate{};
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() + s.size() && errno == 0) return v;
    return s;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        append_csv_field(out, t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            append_cell(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    ordered_json doc;
    doc["command"] = t.command;
    doc["columns"] = t.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& c = row[i];
            if (const auto* d = std::get_if<double>(&c)) {
                obj[t.columns[i]] = std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr);
            } else if (const auto* s = std::get_if<std::string>(&c)) {
                obj[t.columns[i]] = *s;
            } else {
                obj[t.columns[i]] = nullptr;
            }
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string emit(const Table& t, Format f) { return f == Format::Csv ? to_csv(t) : to_json(t); }

Table parse_csv(std::string_view text, std::string command) {
    Table t;
    t.command = std::move(command);
    std::size_t pos = 0;
    if (text.empty()) throw std::runtime_error("csv: empty input");
    for (auto& [name, quoted] : read_record(text, pos)) t.columns.push_back(name);
    while (pos < text.size()) {
        auto fields = read_record(text, pos);
        // blank lines are skipped unless a single-column table uses them for empty cells
        if (fields.size() == 1 && fields[0].first.empty() && !fields[0].second &&
            t.columns.size() > 1) {
            continue;
        }
        if (fields.size() != t.columns.size()) {
            throw std::runtime_error("csv: row width does not match header");
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (auto& [s, quoted] : fields) row.push_back(parse_cell(s, quoted));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table parse_json(std::string_view text) {
    const auto doc = ordered_json::parse(text);
    Table t;
    t.command = doc.at("command").get<std::string>();
    t.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& obj : doc.at("rows")) {
        std::vector<Cell> row;
        for (const auto& name : t.columns) {
            const auto& v = obj.at(name);
            if (v.is_null()) {
                row.emplace_back(std::monostate{});
            } else if (v.is_number()) {
                row.emplace_back(v.get<double>());
            } else {
                row.emplace_back(v.get<std::string>());
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table parse_any(std::string_view text, std::string command, Format& detected) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        detected = Format::Json;
        return parse_json(text);
    }
    detected = Format::Csv;
    return parse_csv(text, std::move(command));
}

}  // namespace morse_gpe::io
