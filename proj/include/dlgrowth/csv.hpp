#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dlgrowth::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; throws ValidationError listing the missing column.
    size_t column(const std::string& name) const;
    std::optional<size_t> find_column(const std::string& name) const;
};

// RFC-4180-style parsing: quoted fields, embedded commas/quotes/newlines.
Table read_file(const std::string& path);
Table read_stream(std::istream& in);

// Shortest round-trip representation; reproducible byte-for-byte.
std::string format_double(double v);

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

std::string quote_if_needed(const std::string& field);

// "" and "NA" are treated as missing.
bool is_missing(const std::string& field);
double parse_double(const std::string& field, const std::string& context);

}  // namespace dlgrowth::csv
