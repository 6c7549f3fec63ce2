#pragma once

#include <string>

namespace dlgrowth {

// Proleptic Gregorian calendar date. Only needs to cover the dataset range
// (2012..present), but the civil-day arithmetic is exact for any year.
struct CivilDate {
    int year = 2012;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

// Strict ISO-8601 "YYYY-MM-DD". Throws ValidationError on malformed input,
// out-of-range fields, or impossible days (including leap-year handling).
CivilDate parse_iso_date(const std::string& text);

std::string format_iso_date(const CivilDate& d);

// Days since 1970-01-01 (negative before).
long days_from_civil(const CivilDate& d);

// Whole months since 2012-01; 2012-01 -> 0, 2014-06 -> 29.
int months_since_2012(const CivilDate& d);

// Fractional years since 2012-01-01, using 365.25-day years. This is the
// "years from 2012" trend regressor.
double years_since_2012(const CivilDate& d);

}  // namespace dlgrowth
