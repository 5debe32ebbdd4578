// io.hpp: CSV and JSON output helpers

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhdimer/errors.hpp"

namespace bhdimer {

// Header row plus rows of doubles printed with 17 significant digits, so a
// rerun with identical inputs gives identical bytes.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
        : path_(path), columns_(std::move(columns)), out_(path) {
        if (!out_) throw FormatError("cannot open " + path.string() + " for writing");
        for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
        out_ << '\n';
    }

    void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_.size()) {
            throw std::logic_error("CsvWriter: row width does not match the header of " + path_.string());
        }
        char buf[40];
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << '\n';
        ++rows_;
    }

    std::size_t rows() const { return rows_; }

    void close() {
        out_.close();
        if (!out_) throw FormatError("write failed for " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::vector<std::string> columns_;
    std::ofstream out_;
    std::size_t rows_{0};
};

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw FormatError("write failed for " + path.string());
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw FormatError("cannot create directory " + dir.string() + ": " + ec.message());
}

inline nlohmann::json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

} // namespace bhdimer
