#include "dlgrowth/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "dlgrowth/errors.hpp"

namespace dlgrowth {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[static_cast<size_t>(m - 1)];
}

int parse_int(const std::string& text, size_t begin, size_t end) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end)
        throw ValidationError("unparseable date: '" + text + "'");
    return value;
}

}  // namespace

CivilDate parse_iso_date(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw ValidationError("unparseable date: '" + text + "' (expected YYYY-MM-DD)");
    CivilDate d;
    d.year = parse_int(text, 0, 4);
    d.month = parse_int(text, 5, 7);
    d.day = parse_int(text, 8, 10);
    if (d.month < 1 || d.month > 12)
        throw ValidationError("month out of range in date '" + text + "'");
    if (d.day < 1 || d.day > days_in_month(d.year, d.month))
        throw ValidationError("day out of range in date '" + text + "'");
    return d;
}

std::string format_iso_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

// Howard Hinnant's days_from_civil.
long days_from_civil(const CivilDate& d) {
    int y = d.year;
    const unsigned m = static_cast<unsigned>(d.month);
    const unsigned day = static_cast<unsigned>(d.day);
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

int months_since_2012(const CivilDate& d) {
    return (d.year - 2012) * 12 + (d.month - 1);
}

double years_since_2012(const CivilDate& d) {
    static const long epoch = days_from_civil(CivilDate{2012, 1, 1});
    return static_cast<double>(days_from_civil(d) - epoch) / 365.25;
}

}  // namespace dlgrowth
