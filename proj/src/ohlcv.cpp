#include "finseer/ohlcv.hpp"

#include "finseer/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace finseer {

namespace {

constexpr std::string_view kHeader = "date,open,high,low,close,volume";

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

Date parse_date_field(std::string_view s, std::size_t line_no) {
    // Strict YYYY-MM-DD.
    Date d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' ||
        !parse_int(s.substr(0, 4), d.year) ||
        !parse_int(s.substr(5, 2), d.month) ||
        !parse_int(s.substr(8, 2), d.day)) {
        throw ParseError("line " + std::to_string(line_no) + ": unparsable date '" +
                         std::string(s) + "' (expected YYYY-MM-DD)");
    }
    if (!is_valid_date(d)) {
        throw ParseError("line " + std::to_string(line_no) + ": invalid calendar date '" +
                         std::string(s) + "'");
    }
    return d;
}

double parse_number_field(std::string_view s, std::string_view field, std::size_t line_no) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": unparsable " +
                         std::string(field) + " '" + std::string(s) + "'");
    }
    return v;
}

void validate_record(const OhlcvRecord& r, std::size_t line_no) {
    auto fail = [line_no](const char* rule) {
        throw ValidationError("line " + std::to_string(line_no) + ": " + rule);
    };
    for (double p : {r.open, r.high, r.low, r.close}) {
        if (!std::isfinite(p)) fail("price is not finite");
        if (p <= 0) fail("price must be > 0");
    }
    if (!std::isfinite(r.volume)) fail("volume is not finite");
    if (r.volume < 0) fail("volume must be >= 0");
    if (r.high < r.low) fail("high < low");
    if (r.high < r.open || r.high < r.close) fail("high < max(open, close)");
    if (r.low > r.open || r.low > r.close) fail("low > min(open, close)");
}

} // namespace

bool is_valid_date(const Date& d) {
    return d.year >= 1 && d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_month(d.year, d.month);
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SeriesDataset parse_csv(std::string_view text, std::string symbol) {
    SeriesDataset dataset;
    dataset.symbol = std::move(symbol);

    struct Row {
        OhlcvRecord record;
        std::size_t line_no;
    };
    std::vector<Row> rows;

    std::size_t line_no = 0;
    bool saw_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (!saw_header) {
            if (line != kHeader) {
                throw ParseError("line 1: expected header '" + std::string(kHeader) + "'");
            }
            saw_header = true;
            continue;
        }

        auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 6 fields, got " +
                             std::to_string(fields.size()));
        }
        OhlcvRecord r;
        r.date = parse_date_field(fields[0], line_no);
        r.open = parse_number_field(fields[1], "open", line_no);
        r.high = parse_number_field(fields[2], "high", line_no);
        r.low = parse_number_field(fields[3], "low", line_no);
        r.close = parse_number_field(fields[4], "close", line_no);
        r.volume = parse_number_field(fields[5], "volume", line_no);
        validate_record(r, line_no);
        rows.push_back({r, line_no});
    }

    if (!saw_header) throw ParseError("line 1: missing header");

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.record.date < b.record.date;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].record.date == rows[i - 1].record.date) {
            throw ValidationError("line " + std::to_string(rows[i].line_no) +
                                  ": duplicate date " + to_string(rows[i].record.date));
        }
    }

    dataset.records.reserve(rows.size());
    for (const Row& row : rows) dataset.records.push_back(row.record);
    return dataset;
}

std::string serialize_csv(const SeriesDataset& dataset) {
    std::string out(kHeader);
    out += '\n';
    for (const OhlcvRecord& r : dataset.records) {
        out += to_string(r.date);
        for (double v : {r.open, r.high, r.low, r.close, r.volume}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace finseer
