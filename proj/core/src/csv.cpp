#include "bikeflow/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace bikeflow::csv {

Reader::Reader(std::istream &in) : in_(in) {}

bool Reader::next(std::vector<std::string> &fields) {
    fields.clear();
    std::string line;
    if (!std::getline(in_, line)) {
        return false;
    }
    ++line_;
    record_line_ = line_;
    if (first_) {
        first_ = false;
        if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
    }

    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    for (;;) {
        if (i == line.size()) {
            if (quoted) {
                // quoted field continues on the next physical line
                std::string more;
                if (!std::getline(in_, more)) {
                    break;
                }
                ++line_;
                field.push_back('\n');
                line = std::move(more);
                i = 0;
                continue;
            }
            break;
        }
        const char c = line[i++];
        if (quoted) {
            if (c == '"') {
                if (i < line.size() && line[i] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' && i == line.size()) {
            // CRLF line ending
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return true;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) {
        return std::nullopt;
    }
    std::int64_t value = 0;
    const char *begin = t.data();
    const char *end = t.data() + t.size();
    if (*begin == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc{} && ptr == end) {
        return value;
    }
    // some exports write ids as floats
    const auto d = parse_double(t);
    if (d && std::isfinite(*d) && std::trunc(*d) == *d && std::abs(*d) < 9.0e15) {
        return static_cast<std::int64_t>(*d);
    }
    return std::nullopt;
}

std::optional<double> parse_double(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) {
        return std::nullopt;
    }
    char *end = nullptr;
    const double value = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) {
        return std::nullopt;
    }
    return value;
}

} // namespace bikeflow::csv
