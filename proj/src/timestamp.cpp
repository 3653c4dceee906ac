#include "qrnet/timestamp.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace qrnet {

namespace {

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar
// (Howard Hinnant's civil-days algorithm).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int &y, unsigned &m, unsigned &d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const auto yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

bool is_leap(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

unsigned days_in_month(int y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) {
        return 29;
    }
    return lengths[m - 1];
}

bool parse_digits(std::string_view s, std::size_t pos, std::size_t count, int &out) {
    if (pos + count > s.size()) {
        return false;
    }
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') {
            return false;
        }
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

} // namespace

std::optional<std::int64_t> parse_creation_date(std::string_view text) {
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (text.size() < 19 || !parse_digits(text, 0, 4, year) || text[4] != '-' ||
        !parse_digits(text, 5, 2, month) || text[7] != '-' ||
        !parse_digits(text, 8, 2, day) || text[10] != 'T' ||
        !parse_digits(text, 11, 2, hour) || text[13] != ':' ||
        !parse_digits(text, 14, 2, minute) || text[16] != ':' ||
        !parse_digits(text, 17, 2, second)) {
        return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 ||
        day > static_cast<int>(days_in_month(year, static_cast<unsigned>(month))) ||
        hour > 23 || minute > 59 || second > 59) {
        return std::nullopt;
    }

    int millis = 0;
    std::size_t pos = 19;
    if (pos < text.size()) {
        if (text[pos] != '.') {
            return std::nullopt;
        }
        ++pos;
        int scale = 100;
        std::size_t digits = 0;
        while (pos < text.size() && digits < 3) {
            const char c = text[pos];
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            millis += (c - '0') * scale;
            scale /= 10;
            ++pos;
            ++digits;
        }
        if (digits == 0 || pos != text.size()) {
            return std::nullopt;
        }
    }

    const std::int64_t days =
        days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    const std::int64_t seconds = days * 86400 + hour * 3600 + minute * 60 + second;
    return seconds * 1000 + millis;
}

std::string format_creation_date(std::int64_t epoch_ms) {
    std::int64_t ms = epoch_ms % 1000;
    std::int64_t total_seconds = epoch_ms / 1000;
    if (ms < 0) {
        ms += 1000;
        total_seconds -= 1;
    }
    std::int64_t days = total_seconds / 86400;
    std::int64_t sod = total_seconds % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    int year = 0;
    unsigned month = 0, day = 0;
    civil_from_days(days, year, month, day);

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lld", year,
                  month, day, static_cast<long long>(sod / 3600),
                  static_cast<long long>((sod % 3600) / 60),
                  static_cast<long long>(sod % 60), static_cast<long long>(ms));
    return buf;
}

} // namespace qrnet
