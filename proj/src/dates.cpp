#include "procyc/dates.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace procyc {

namespace {

int parse_int(std::string_view s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("unparseable date field: '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

bool Date::valid() const {
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    return ymd.ok();
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::parse(std::string_view text) {
    Date d;
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        d.year = parse_int(text.substr(0, 4));
        d.month = parse_int(text.substr(5, 2));
        d.day = parse_int(text.substr(8, 2));
    } else if (text.size() == 10 && text[2] == '/' && text[5] == '/') {
        d.day = parse_int(text.substr(0, 2));
        d.month = parse_int(text.substr(3, 2));
        d.year = parse_int(text.substr(6, 4));
    } else {
        throw std::invalid_argument("unparseable date: '" + std::string(text) +
                                    "' (expected YYYY-MM-DD or DD/MM/YYYY)");
    }
    if (!d.valid()) {
        throw std::invalid_argument("invalid calendar date: '" + std::string(text) + "'");
    }
    return d;
}

}  // namespace procyc
