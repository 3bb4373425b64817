#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace procyc {

/// Calendar day used as a label on observations. Estimators work in
/// business time (index arithmetic); dates are carried along for reporting.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string to_string() const;  // ISO-8601, YYYY-MM-DD

    /// Parses ISO-8601 (YYYY-MM-DD) or DD/MM/YYYY.
    /// Throws std::invalid_argument on anything else.
    static Date parse(std::string_view text);
};

}  // namespace procyc
