#include "lessinfer/csv.hpp"

#include <cstdio>

#include "lessinfer/error.hpp"

namespace lessinfer {

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string out = buf;
    // keep "." as the decimal separator even under an exotic global locale
    for (char& c : out)
        if (c == ',') c = '.';
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
    : path_(file), columns_(header.size()) {
    if (file.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
        if (ec)
            throw resource_error("csv: cannot create '" + file.parent_path().string() +
                                 "': " + ec.message());
    }
    out_.open(file, std::ios::binary | std::ios::trunc);
    if (!out_) throw resource_error("csv: cannot open '" + file.string() + "' for writing");
    write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_)
        throw argument_error("csv: row width does not match the header of " + path_.string());
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
    out_.flush();  // completed rows must survive a later cell's abort
    if (!out_) throw resource_error("csv: write failed on '" + path_.string() + "'");
}

}  // namespace lessinfer
