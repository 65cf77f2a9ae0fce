#include "circreg/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "circreg/error.hpp"

namespace circreg {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        out.push_back(trim(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    }
    return in;
}

// Reads the header and the named columns; returns one vector per requested column.
std::vector<std::vector<Angle>> read_columns(std::istream& in, AngleUnit unit, const std::vector<std::string>& names) {
    std::string line;
    std::size_t row = 0;
    std::vector<std::string_view> header;
    std::string header_line;
    while (std::getline(in, line)) {
        ++row;
        if (!trim(line).empty()) {
            header_line = line;
            break;
        }
    }
    if (header_line.empty()) {
        throw ParseError("empty CSV input", row, 0);
    }
    header = split(header_line, ',');

    std::vector<std::size_t> index;
    for (const std::string& name : names) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw ParseError("column '" + name + "' not found in header", row, 0);
        }
        index.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    std::vector<std::vector<Angle>> columns(names.size());
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        for (std::size_t c = 0; c < names.size(); ++c) {
            const std::size_t col = index[c];
            if (col >= fields.size()) {
                throw ParseError("missing field '" + names[c] + "'", row, col + 1);
            }
            const auto value = parse_double(fields[col]);
            if (!value || !std::isfinite(*value)) {
                throw ParseError("not a finite number: '" + std::string(fields[col]) + "'", row, col + 1);
            }
            if (unit == AngleUnit::Degrees && std::abs(*value) > 360.0) {
                throw UnitError("value " + std::string(fields[col]) + " at row " + std::to_string(row) + ", column " +
                                std::to_string(col + 1) + " exceeds 360 in degree mode");
            }
            columns[c].push_back(angle_from(*value, unit));
        }
    }
    if (columns.front().empty()) {
        throw ParseError("CSV input has a header but no data rows", row, 0);
    }
    return columns;
}

}  // namespace

PairedSample ingest_csv(std::istream& in, AngleUnit unit, const std::string& x_col, const std::string& y_col) {
    auto columns = read_columns(in, unit, {x_col, y_col});
    return PairedSample(std::move(columns[0]), std::move(columns[1]));
}

PairedSample ingest_csv(const std::filesystem::path& path, AngleUnit unit, const std::string& x_col,
                        const std::string& y_col) {
    std::ifstream in = open_or_throw(path);
    return ingest_csv(in, unit, x_col, y_col);
}

std::vector<Angle> ingest_csv_column(std::istream& in, AngleUnit unit, const std::string& column) {
    return std::move(read_columns(in, unit, {column}).front());
}

std::chrono::weekday weekday_of(std::int32_t yyyymmdd) {
    using namespace std::chrono;
    const year_month_day ymd{year{yyyymmdd / 10000}, month{static_cast<unsigned>((yyyymmdd / 100) % 100)},
                             day{static_cast<unsigned>(yyyymmdd % 100)}};
    if (!ymd.ok()) {
        throw FormatError("invalid calendar date " + std::to_string(yyyymmdd));
    }
    return weekday{sys_days{ymd}};
}

std::vector<WindObservation> ingest_dwd_wind(std::istream& in, const DwdSelection& selection) {
    std::string line;
    std::size_t row = 0;
    bool saw_header = false;
    std::vector<WindObservation> out;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, ';');
        if (!saw_header) {
            if (fields.size() < 5 || fields[0] != "STATIONS_ID" || fields[1] != "MESS_DATUM") {
                throw FormatError("row " + std::to_string(row) +
                                  ": expected DWD header STATIONS_ID;MESS_DATUM;QN_3;F;D;eor");
            }
            saw_header = true;
            continue;
        }
        if (fields.size() < 5) {
            throw FormatError("row " + std::to_string(row) + ": expected at least 5 fields");
        }
        const auto station = parse_int(fields[0]);
        const auto stamp = parse_int(fields[1]);
        const auto direction = parse_double(fields[4]);
        if (!station || !stamp || !direction || *stamp < 1000000000 || *stamp > 9999999999) {
            throw FormatError("row " + std::to_string(row) + ": malformed station, timestamp or direction");
        }
        if (selection.station && *selection.station != *station) {
            continue;
        }
        WindObservation obs;
        obs.timestamp = *stamp;
        if (obs.hour() != selection.hour) {
            continue;
        }
        const std::int32_t date = obs.date();
        if ((selection.first_date && date < *selection.first_date) ||
            (selection.last_date && date > *selection.last_date)) {
            continue;
        }
        if (weekday_of(date) != selection.weekday) {
            continue;
        }
        const double deg = *direction;
        if (deg == -999.0 || deg == 990.0) {
            continue;
        }
        if (deg < 0.0 || deg > 360.0) {
            throw FormatError("row " + std::to_string(row) + ": wind direction " + std::string(fields[4]) +
                              " outside [0, 360]");
        }
        if (selection.require_multiple_of_ten && std::fmod(deg, 10.0) != 0.0) {
            throw FormatError("row " + std::to_string(row) + ": wind direction " + std::string(fields[4]) +
                              " is not a multiple of 10 degrees");
        }
        obs.direction = Angle::from_degrees(deg);
        out.push_back(obs);
    }
    if (!saw_header) {
        throw FormatError("DWD input is empty");
    }
    if (out.empty()) {
        throw EmptySelection("no DWD observations match hour " + std::to_string(selection.hour) +
                             " and the requested weekday/date range");
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    return out;
}

std::vector<WindObservation> ingest_dwd_wind(const std::filesystem::path& path, const DwdSelection& selection) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open '" + path.string() + "'");
    }
    return ingest_dwd_wind(in, selection);
}

PairedSample pair_by_date(std::span<const WindObservation> x, std::span<const WindObservation> y) {
    std::map<std::int32_t, Angle> by_date;
    for (const WindObservation& o : y) {
        by_date.emplace(o.date(), o.direction);
    }
    std::vector<std::pair<std::int32_t, std::pair<Angle, Angle>>> joined;
    for (const WindObservation& o : x) {
        if (const auto it = by_date.find(o.date()); it != by_date.end()) {
            joined.push_back({o.date(), {o.direction, it->second}});
        }
    }
    std::sort(joined.begin(), joined.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    joined.erase(std::unique(joined.begin(), joined.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                 joined.end());
    if (joined.empty()) {
        throw EmptySelection("the two series share no dates");
    }
    std::vector<Angle> xs;
    std::vector<Angle> ys;
    for (const auto& [date, pair] : joined) {
        xs.push_back(pair.first);
        ys.push_back(pair.second);
    }
    return PairedSample(std::move(xs), std::move(ys));
}

}  // namespace circreg
