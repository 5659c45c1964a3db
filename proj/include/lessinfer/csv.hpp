#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace lessinfer {

// RFC-4180 quoting: wrap in double quotes when the field contains a comma,
// quote, CR or LF; double any embedded quotes.
std::string csv_escape(const std::string& field);

// Shortest round-trip-ish formatting used in every CSV: %.12g with "." as
// the decimal separator regardless of locale.
std::string format_double(double v);

// Line-buffered CSV writer.  Opens in binary mode so line endings are "\n"
// on every platform, writes the header immediately, and flushes after every
// row so completed rows survive a later abort.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header);

    void write_row(const std::vector<std::string>& fields);

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
};

}  // namespace lessinfer
