#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bikeflow::csv {

/// Minimal RFC 4180 reader: comma separated, double-quote quoting with "" as
/// an escaped quote, quoted fields may span lines. A UTF-8 BOM on the first
/// line is stripped.
class Reader {
public:
    explicit Reader(std::istream &in);

    /// Reads the next record into `fields`. Returns false at end of input.
    bool next(std::vector<std::string> &fields);

    /// 1-based line number where the most recently returned record started.
    std::size_t line() const noexcept { return record_line_; }

private:
    std::istream &in_;
    std::size_t line_ = 0;
    std::size_t record_line_ = 0;
    bool first_ = true;
};

/// Quotes a field if it contains a separator, quote or line break.
std::string escape(std::string_view field);

std::string trim(std::string_view s);

/// Whole-field integer parse after trimming. "12.0" is accepted as 12.
std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

} // namespace bikeflow::csv
