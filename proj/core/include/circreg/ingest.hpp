#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circreg/datasets.hpp"
#include "circreg/regression.hpp"

namespace circreg {

/// Read two named columns of a comma-separated file with a header row.
/// Degrees are converted to radians and every value is canonicalized to
/// [0, 2pi). Throws ParseError (with row and column) for malformed content
/// or an empty file, and UnitError for |value| > 360 in degree mode.
PairedSample ingest_csv(std::istream& in, AngleUnit unit, const std::string& x_col, const std::string& y_col);
PairedSample ingest_csv(const std::filesystem::path& path, AngleUnit unit, const std::string& x_col,
                        const std::string& y_col);

/// Single-column variant for series inputs.
std::vector<Angle> ingest_csv_column(std::istream& in, AngleUnit unit, const std::string& column);

/// One hourly reading from a DWD station file.
struct WindObservation {
    std::int64_t timestamp = 0;  ///< MESS_DATUM as yyyymmddhh
    Angle direction;

    std::int32_t date() const noexcept { return static_cast<std::int32_t>(timestamp / 100); }
    int hour() const noexcept { return static_cast<int>(timestamp % 100); }
};

struct DwdSelection {
    std::optional<std::int64_t> station;  ///< STATIONS_ID filter; any when empty
    int hour = 12;
    std::chrono::weekday weekday = std::chrono::Wednesday;
    std::optional<std::int32_t> first_date;  ///< yyyymmdd, inclusive
    std::optional<std::int32_t> last_date;   ///< yyyymmdd, inclusive
    /// Reject directions that are not whole multiples of 10 degrees.
    bool require_multiple_of_ten = true;
};

/// Parse a DWD hourly wind file (semicolon separated:
/// STATIONS_ID;MESS_DATUM;QN_3;F;D;eor) and keep the readings at the selected
/// hour and weekday. Missing directions (-999) and the variable-direction code
/// 990 are dropped. Throws FormatError for an unreadable layout and
/// EmptySelection when nothing survives the filter.
std::vector<WindObservation> ingest_dwd_wind(std::istream& in, const DwdSelection& selection);
std::vector<WindObservation> ingest_dwd_wind(const std::filesystem::path& path, const DwdSelection& selection);

/// Inner join of two series on calendar date, ordered by date.
PairedSample pair_by_date(std::span<const WindObservation> x, std::span<const WindObservation> y);

/// Weekday of a yyyymmdd date.
std::chrono::weekday weekday_of(std::int32_t yyyymmdd);

}  // namespace circreg
