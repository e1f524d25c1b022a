#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Flat tabular output shared by every subcommand. CSV cells are written with
// 12 significant digits; JSON carries full double precision with keys in
// column order. Parsing and re-emitting either form reproduces it byte for byte.

namespace morse_gpe::io {

using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json };

std::string format_number(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string emit(const Table& t, Format f);

// Throws std::runtime_error on malformed input.
Table parse_csv(std::string_view text, std::string command);
Table parse_json(std::string_view text);

// Picks the parser from the first non-blank character ('{' means JSON).
Table parse_any(std::string_view text, std::string command, Format& detected);

}  // namespace morse_gpe::io
