// csv.hpp — deterministic CSV output: comma delimiter, '.' decimal separator,
// 17 significant digits, LF line endings.

#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "bosemix/errors.hpp"

namespace bosemix::io {

inline std::string format_double(double v, int precision = 17) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                                   precision);
    if (res.ec != std::errc{}) throw Error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

// Shortest round-trip representation, used for values embedded in headers.
inline std::string format_double_short(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw Error("format_double_short: conversion failed");
    return std::string(buf, res.ptr);
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw Error("write_csv: header/column mismatch");
    for (const auto& col : columns)
        if (col.size() != columns.front().size())
            throw Error("write_csv: ragged columns");

    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw Error("write_csv: cannot open " + path);
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) out << ',';
            out << format_double(columns[j][i]);
        }
        out << '\n';
    }
    if (!out) throw Error("write_csv: write failed for " + path);
}

}  // namespace bosemix::io
