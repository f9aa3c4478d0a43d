#include "bikeflow/trip_ingest.hpp"

#include "bikeflow/csv.hpp"
#include "bikeflow/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace bikeflow {

namespace {

std::optional<int> parse_fixed(std::string_view s) {
    int value = 0;
    if (s.empty()) {
        return std::nullopt;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

} // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    const std::string t = csv::trim(text);
    const auto space = t.find(' ');
    if (space == std::string::npos) {
        return std::nullopt;
    }
    const auto date = split_any(std::string_view(t).substr(0, space), "/");
    const auto time = split_any(csv::trim(std::string_view(t).substr(space + 1)), ":");
    if (date.size() != 3 || time.size() < 2 || time.size() > 3) {
        return std::nullopt;
    }
    const auto dd = parse_fixed(date[0]);
    const auto mm = parse_fixed(date[1]);
    const auto yy = parse_fixed(date[2]);
    const auto hh = parse_fixed(time[0]);
    const auto mi = parse_fixed(time[1]);
    if (!dd || !mm || !yy || !hh || !mi) {
        return std::nullopt;
    }
    if (time.size() == 3 && !parse_fixed(time[2])) {
        return std::nullopt;
    }
    const year_month_day ymd{year{*yy}, month{static_cast<unsigned>(*mm)},
                             day{static_cast<unsigned>(*dd)}};
    if (!ymd.ok() || *hh < 0 || *hh > 23 || *mi < 0 || *mi > 59) {
        return std::nullopt;
    }
    return Timestamp{sys_days{ymd}} + hours{*hh} + minutes{*mi};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const auto day_start = floor<days>(t);
    const year_month_day ymd{day_start};
    const auto minute_of_day = (t - day_start).count();
    return fmt::format("{:02d}/{:02d}/{:04d} {:02d}:{:02d}", static_cast<unsigned>(ymd.day()),
                       static_cast<unsigned>(ymd.month()), static_cast<int>(ymd.year()),
                       minute_of_day / 60, minute_of_day % 60);
}

int hour_of_day(Timestamp t) {
    using namespace std::chrono;
    return static_cast<int>((t - floor<days>(t)).count() / 60);
}

bool is_weekend(Timestamp t) {
    using namespace std::chrono;
    const weekday wd{floor<days>(t)};
    return wd == Saturday || wd == Sunday;
}

RawTrip to_raw(const TripRecord &trip) {
    RawTrip raw;
    raw.rental_id = trip.rental_id;
    raw.duration = trip.duration;
    raw.bike_id = trip.bike_id;
    raw.start_time = trip.start_time;
    raw.end_time = trip.end_time;
    raw.start_station_id = trip.start_station_id;
    raw.end_station_id = trip.end_station_id;
    raw.start_station_name = trip.start_station_name;
    raw.end_station_name = trip.end_station_name;
    return raw;
}

ParseResult parse_trips(std::istream &source, const ColumnMapping &schema) {
    csv::Reader reader(source);
    std::vector<std::string> header;
    if (!reader.next(header) || (header.size() == 1 && csv::trim(header[0]).empty())) {
        throw SchemaError("trip file has no header row");
    }

    std::unordered_map<std::string, std::size_t> column_of;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column_of.emplace(csv::trim(header[i]), i);
    }
    auto require = [&](const std::string &name) {
        const auto it = column_of.find(name);
        if (it == column_of.end()) {
            throw SchemaError(fmt::format("trip file header lacks column '{}'", name));
        }
        return it->second;
    };
    const std::size_t c_rental = require(schema.rental_id);
    const std::size_t c_duration = require(schema.duration);
    const std::size_t c_bike = require(schema.bike_id);
    const std::size_t c_end_time = require(schema.end_time);
    const std::size_t c_end_id = require(schema.end_station_id);
    const std::size_t c_end_name = require(schema.end_station_name);
    const std::size_t c_start_time = require(schema.start_time);
    const std::size_t c_start_id = require(schema.start_station_id);
    const std::size_t c_start_name = require(schema.start_station_name);
    const std::size_t width = header.size();

    ParseResult result;
    std::unordered_set<std::int64_t> seen_rentals;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row.size() == 1 && csv::trim(row[0]).empty()) {
            continue; // blank line
        }
        ++result.rows_read;
        const std::size_t line = reader.line();
        auto fail = [&](std::string message) {
            result.errors.push_back(RowError{line, std::move(message)});
        };
        if (row.size() != width) {
            fail(fmt::format("expected {} fields, found {}", width, row.size()));
            continue;
        }

        RawTrip trip;
        const auto rental = csv::parse_int(row[c_rental]);
        if (!rental) {
            fail(fmt::format("unparseable rental id '{}'", row[c_rental]));
            continue;
        }
        const auto duration = csv::parse_int(row[c_duration]);
        if (!duration) {
            fail(fmt::format("unparseable duration '{}'", row[c_duration]));
            continue;
        }
        const auto start = parse_timestamp(row[c_start_time]);
        if (!start) {
            fail(fmt::format("unparseable start time '{}'", row[c_start_time]));
            continue;
        }
        const auto end = parse_timestamp(row[c_end_time]);
        if (!end) {
            fail(fmt::format("unparseable end time '{}'", row[c_end_time]));
            continue;
        }
        if (!seen_rentals.insert(*rental).second) {
            fail(fmt::format("duplicate rental id {}", *rental));
            continue;
        }
        trip.rental_id = *rental;
        trip.duration = *duration;
        trip.start_time = *start;
        trip.end_time = *end;
        trip.bike_id = csv::parse_int(row[c_bike]);
        trip.start_station_id = csv::parse_int(row[c_start_id]);
        trip.end_station_id = csv::parse_int(row[c_end_id]);
        trip.start_station_name = csv::trim(row[c_start_name]);
        trip.end_station_name = csv::trim(row[c_end_name]);
        result.trips.push_back(std::move(trip));
    }
    return result;
}

CleanResult clean_trips(std::span<const RawTrip> trips, const CleaningConfig &config) {
    CleanResult result;
    auto &stats = result.stats;
    stats.total_read = trips.size();
    const auto is_repair = [&](const std::optional<StationId> &id) {
        return id && config.repair_station_ids.count(*id) > 0;
    };

    for (const RawTrip &raw : trips) {
        if (is_repair(raw.start_station_id) || is_repair(raw.end_station_id)) {
            ++stats.dropped_repair;
            continue;
        }
        if (!raw.end_station_id || !raw.start_station_id || raw.duration < 0) {
            ++stats.dropped_negative_or_no_destination;
            continue;
        }
        if (!raw.bike_id) {
            ++stats.dropped_no_bike_id;
            continue;
        }
        if (config.drop_weekends && is_weekend(raw.start_time)) {
            ++stats.dropped_weekend;
            continue;
        }
        TripRecord trip;
        trip.rental_id = raw.rental_id;
        trip.duration = raw.duration;
        trip.bike_id = *raw.bike_id;
        trip.start_time = raw.start_time;
        trip.end_time = raw.end_time;
        trip.start_station_id = *raw.start_station_id;
        trip.end_station_id = *raw.end_station_id;
        trip.start_station_name = raw.start_station_name;
        trip.end_station_name = raw.end_station_name;
        result.trips.push_back(std::move(trip));
    }
    stats.retained = result.trips.size();
    return result;
}

std::vector<TripRecord> filter_by_hour(std::span<const TripRecord> trips, int hour) {
    if (hour < 0 || hour > 23) {
        throw ArgumentError(fmt::format("hour must be in 0..23, got {}", hour));
    }
    std::vector<TripRecord> out;
    std::copy_if(trips.begin(), trips.end(), std::back_inserter(out),
                 [hour](const TripRecord &t) { return hour_of_day(t.start_time) == hour; });
    return out;
}

namespace {

bool parse_bool(const std::string &key, const std::string &value) {
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "1" || v == "on") {
        return true;
    }
    if (v == "false" || v == "no" || v == "0" || v == "off") {
        return false;
    }
    throw SchemaError(fmt::format("config key '{}' expects a boolean, got '{}'", key, value));
}

} // namespace

IngestConfig parse_ingest_config(std::istream &in) {
    IngestConfig config;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = csv::trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw SchemaError(fmt::format("config line {}: expected 'key = value'", line_no));
        }
        const std::string key = csv::trim(std::string_view(line).substr(0, eq));
        const std::string value = csv::trim(std::string_view(line).substr(eq + 1));

        if (key == "repair_station_ids") {
            for (auto part : split_any(value, ", \t")) {
                if (csv::trim(part).empty()) {
                    continue;
                }
                const auto id = csv::parse_int(part);
                if (!id) {
                    throw SchemaError(fmt::format("config line {}: bad station id '{}'", line_no,
                                                  std::string(part)));
                }
                config.cleaning.repair_station_ids.insert(*id);
            }
        } else if (key == "drop_weekends") {
            config.cleaning.drop_weekends = parse_bool(key, value);
        } else if (key.rfind("column.", 0) == 0) {
            const std::string field = key.substr(7);
            auto &c = config.columns;
            const std::array<std::pair<const char *, std::string *>, 9> fields{{
                {"rental_id", &c.rental_id},
                {"duration", &c.duration},
                {"bike_id", &c.bike_id},
                {"end_time", &c.end_time},
                {"end_station_id", &c.end_station_id},
                {"end_station_name", &c.end_station_name},
                {"start_time", &c.start_time},
                {"start_station_id", &c.start_station_id},
                {"start_station_name", &c.start_station_name},
            }};
            const auto it = std::find_if(fields.begin(), fields.end(),
                                         [&](const auto &f) { return field == f.first; });
            if (it == fields.end()) {
                throw SchemaError(
                    fmt::format("config line {}: unknown column field '{}'", line_no, field));
            }
            *it->second = value;
        } else {
            throw SchemaError(fmt::format("config line {}: unknown key '{}'", line_no, key));
        }
    }
    return config;
}

void write_trips(std::ostream &out, std::span<const TripRecord> trips) {
    const ColumnMapping names;
    out << csv::escape(names.rental_id) << ',' << csv::escape(names.duration) << ','
        << csv::escape(names.bike_id) << ',' << csv::escape(names.end_time) << ','
        << csv::escape(names.end_station_id) << ',' << csv::escape(names.end_station_name) << ','
        << csv::escape(names.start_time) << ',' << csv::escape(names.start_station_id) << ','
        << csv::escape(names.start_station_name) << '\n';
    for (const TripRecord &t : trips) {
        out << t.rental_id << ',' << t.duration << ',' << t.bike_id << ','
            << format_timestamp(t.end_time) << ',' << t.end_station_id << ','
            << csv::escape(t.end_station_name) << ',' << format_timestamp(t.start_time) << ','
            << t.start_station_id << ',' << csv::escape(t.start_station_name) << '\n';
    }
}

} // namespace bikeflow
