#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bikeflow {

using StationId = std::int64_t;

/// Wall-clock time as written in the source file, minute resolution. No time
/// zone is applied; weekday and hour-of-day are read off the naive value.
using Timestamp = std::chrono::sys_time<std::chrono::minutes>;

/// Parses "DD/MM/YYYY HH:MM" (a trailing ":SS" is accepted and truncated).
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

int hour_of_day(Timestamp t);
bool is_weekend(Timestamp t);

/// One row of a trip export, before cleaning.
struct RawTrip {
    std::int64_t rental_id = 0;
    std::int64_t duration = 0; ///< seconds, negative in dirty data
    std::optional<std::int64_t> bike_id;
    Timestamp start_time{};
    Timestamp end_time{};
    std::optional<StationId> start_station_id;
    std::optional<StationId> end_station_id;
    std::string start_station_name;
    std::string end_station_name;
};

/// A rental that survived cleaning.
struct TripRecord {
    std::int64_t rental_id = 0;
    std::int64_t duration = 0;
    std::int64_t bike_id = 0;
    Timestamp start_time{};
    Timestamp end_time{};
    StationId start_station_id = 0;
    StationId end_station_id = 0;
    std::string start_station_name;
    std::string end_station_name;
};

RawTrip to_raw(const TripRecord &trip);

/// Header names for each field. Defaults follow the TfL cycle hire exports.
struct ColumnMapping {
    std::string rental_id = "Rental Id";
    std::string duration = "Duration";
    std::string bike_id = "Bike Id";
    std::string end_time = "End Date";
    std::string end_station_id = "EndStation Id";
    std::string end_station_name = "EndStation Name";
    std::string start_time = "Start Date";
    std::string start_station_id = "StartStation Id";
    std::string start_station_name = "StartStation Name";
};

struct RowError {
    std::size_t line = 0; ///< 1-based physical line in the source
    std::string message;
};

struct ParseResult {
    std::vector<RawTrip> trips;
    std::vector<RowError> errors;
    std::size_t rows_read = 0; ///< data rows, excluding the header
};

/// Reads a trip CSV. Unparseable optional fields become absent; rows whose
/// mandatory fields (rental id, duration, start/end time) do not parse, or
/// whose rental id repeats an earlier row, are skipped and reported in
/// `errors`. Throws SchemaError if the header is missing or lacks a column.
ParseResult parse_trips(std::istream &source, const ColumnMapping &schema = {});

struct CleaningStats {
    std::size_t total_read = 0;
    std::size_t dropped_repair = 0;
    std::size_t dropped_negative_or_no_destination = 0;
    std::size_t dropped_no_bike_id = 0;
    std::size_t dropped_weekend = 0;
    std::size_t retained = 0;

    std::size_t dropped_total() const noexcept {
        return dropped_repair + dropped_negative_or_no_destination + dropped_no_bike_id +
               dropped_weekend;
    }
};

struct CleaningConfig {
    std::set<StationId> repair_station_ids;
    bool drop_weekends = true;
};

struct CleanResult {
    std::vector<TripRecord> trips;
    CleaningStats stats;
};

/// Applies the cleaning rules in the fixed order repair station, missing
/// destination or negative duration, missing bike id, weekend. Each dropped
/// trip is counted under the first rule it fails. A trip with no start
/// station is counted with the missing-destination rule.
CleanResult clean_trips(std::span<const RawTrip> trips, const CleaningConfig &config);

/// Trips whose start time falls in [hour:00, hour+1:00). Throws ArgumentError
/// unless 0 <= hour <= 23.
std::vector<TripRecord> filter_by_hour(std::span<const TripRecord> trips, int hour);

/// Settings read from a plain `key = value` file:
///
///     # comment
///     repair_station_ids = 1, 2, 3
///     drop_weekends = true
///     column.bike_id = Bike Id
struct IngestConfig {
    CleaningConfig cleaning;
    ColumnMapping columns;
};

IngestConfig parse_ingest_config(std::istream &in);

/// Writes trips back out with the default TfL header layout.
void write_trips(std::ostream &out, std::span<const TripRecord> trips);

} // namespace bikeflow
