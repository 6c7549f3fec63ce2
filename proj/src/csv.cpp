#include "dlgrowth/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dlgrowth/errors.hpp"

namespace dlgrowth::csv {

size_t Table::column(const std::string& name) const {
    auto idx = find_column(name);
    if (!idx) throw ValidationError("missing required column '" + name + "'");
    return *idx;
}

std::optional<size_t> Table::find_column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    return read_stream(in);
}

Table read_stream(std::istream& in) {
    Table table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any_char = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty())
            table.header = std::move(record);
        else
            table.rows.push_back(std::move(record));
        record.clear();
        any_char = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            any_char = true;
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                any_char = true;
                break;
            case ',':
                end_field();
                any_char = true;
                break;
            case '\r':
                break;
            case '\n':
                if (any_char || !record.empty()) end_record();
                break;
            default:
                field.push_back(c);
                any_char = true;
        }
    }
    if (in_quotes) throw ValidationError("unterminated quoted CSV field");
    if (any_char || !record.empty()) end_record();
    return table;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

void Writer::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote_if_needed(fields[i]);
    }
    out_ << '\n';
}

bool is_missing(const std::string& field) { return field.empty() || field == "NA"; }

double parse_double(const std::string& field, const std::string& context) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("unparseable number '" + field + "' in " + context);
    return value;
}

}  // namespace dlgrowth::csv
