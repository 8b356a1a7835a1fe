#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace qsl {

// Numeric field with 9 significant digits, locale-independent.
std::string csv_number(double v);

// Quotes per RFC 4180 when the field contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

// Minimal RFC-4180-style writer: header row, CRLF records, deterministic bytes.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);
    // empty optional serializes as an empty field
    static std::string field(std::optional<double> v);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

} // namespace qsl
