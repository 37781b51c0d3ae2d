#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace finseer {

// ISO-8601 calendar day.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;
};

bool is_valid_date(const Date& d);
std::string to_string(const Date& d);

// One daily market row. Invariants (enforced by parse_csv):
//   high >= low, high >= max(open, close), low <= min(open, close),
//   all prices finite and > 0, volume finite and >= 0.
struct OhlcvRecord {
    Date date;
    double open = 0;
    double high = 0;
    double low = 0;
    double close = 0;
    double volume = 0;
};

// Ordered daily series; dates strictly increasing.
struct SeriesDataset {
    std::string symbol;
    std::vector<OhlcvRecord> records;

    std::size_t size() const { return records.size(); }
};

// Parses `date,open,high,low,close,volume` CSV text. Rows may arrive in any
// order; the result is sorted by date and duplicate dates are rejected.
// Throws ParseError (malformed row, naming the line) or ValidationError
// (invariant violation or duplicate date, naming the line and rule).
SeriesDataset parse_csv(std::string_view text, std::string symbol = "");

// Inverse of parse_csv: header plus one row per record, prices and volume
// printed with 17 significant digits so the round trip is value-exact.
std::string serialize_csv(const SeriesDataset& dataset);

// Shortest decimal form that still round-trips a double exactly (%.17g).
std::string format_double(double v);

} // namespace finseer
