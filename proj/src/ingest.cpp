#include "metocean/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <tuple>

namespace metocean {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(begin, i - begin)));
            begin = i + 1;
        }
    }
    return fields;
}

double parse_double(std::string_view field, std::size_t line) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("not a number: \"" + std::string(field) + "\"", line);
    return value;
}

int parse_int(std::string_view field, std::size_t line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("not an integer: \"" + std::string(field) + "\"", line);
    return value;
}

/// Iterates lines of `text` without copying; yields (1-based index, line).
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t nl = text.find('\n', begin);
        const std::size_t end = (nl == std::string_view::npos) ? text.size() : nl;
        ++line_no;
        fn(line_no, text.substr(begin, end - begin));
        if (nl == std::string_view::npos)
            break;
        begin = nl + 1;
    }
}

bool is_ndbc_sentinel(std::string_view field, double value) {
    return field == "MM" || value == 99.0 || value == 999.0;
}

ParsedObservations parse_ndbc_stdmet(std::string_view text, const std::string& site_id) {
    ParsedObservations out;
    std::vector<std::string> header;
    int wvht_col = -1, wspd_col = -1;
    std::vector<std::pair<SecondIndex, double>> wave, wind;
    std::size_t wave_sentinels = 0, wind_sentinels = 0;
    SecondIndex prev_time = INT64_MIN;

    std::size_t header_lines = 0;
    for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
        const std::string_view line = trim(raw);
        if (line.empty())
            return;
        if (header_lines == 0) {
            if (line.substr(0, 3) != "#YY")
                throw ParseError("unknown format marker: expected NDBC header starting with #YY",
                                 line_no);
            for (auto f : split_ws(line.substr(1)))
                header.emplace_back(f);
            for (std::size_t c = 0; c < header.size(); ++c) {
                if (header[c] == "WVHT")
                    wvht_col = int(c);
                if (header[c] == "WSPD")
                    wspd_col = int(c);
            }
            header_lines = 1;
            return;
        }
        if (header_lines == 1) {
            if (line.front() != '#')
                throw ParseError("expected NDBC units header line", line_no);
            header_lines = 2;
            return;
        }

        const auto fields = split_ws(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        const int year = parse_int(fields[0], line_no);
        const int month = parse_int(fields[1], line_no);
        const int day = parse_int(fields[2], line_no);
        const int hour = parse_int(fields[3], line_no);
        const int minute = parse_int(fields[4], line_no);
        SecondIndex t;
        try {
            t = to_seconds(CivilTime{year, month, day, hour, minute, 0});
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        if (t <= prev_time)
            throw ParseError("timestamps not strictly increasing", line_no);
        prev_time = t;

        const auto take = [&](int col, std::vector<std::pair<SecondIndex, double>>& sink,
                              std::size_t& sentinels) {
            if (col < 0)
                return;
            const std::string_view field = fields[std::size_t(col)];
            if (field == "MM") {
                ++sentinels;
                return;
            }
            const double value = parse_double(field, line_no);
            if (is_ndbc_sentinel(field, value)) {
                ++sentinels;
                return;
            }
            sink.emplace_back(t, value);
        };
        take(wvht_col, wave, wave_sentinels);
        take(wspd_col, wind, wind_sentinels);
    });

    if (header_lines == 0)
        throw ParseError("unknown format marker: empty file", 1);

    if (wvht_col >= 0) {
        out.batches.push_back(
            RawSampleBatch{VariableKind::SignificantWaveHeight, std::move(wave), site_id});
        out.sentinel_dropped[VariableKind::SignificantWaveHeight] = wave_sentinels;
    }
    if (wspd_col >= 0) {
        out.batches.push_back(RawSampleBatch{VariableKind::WindSpeed, std::move(wind), site_id});
        out.sentinel_dropped[VariableKind::WindSpeed] = wind_sentinels;
    }
    return out;
}

ParsedObservations parse_generic_csv(std::string_view text, const std::string& site_id) {
    ParsedObservations out;
    std::map<VariableKind, std::vector<std::pair<SecondIndex, double>>> samples;
    std::map<VariableKind, SecondIndex> prev_time;
    bool saw_header = false;

    for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
        const std::string_view line = trim(raw);
        if (line.empty())
            return;
        if (!saw_header) {
            const auto fields = split_csv(line);
            if (fields.size() != 3 || fields[0] != "time" || fields[1] != "variable" ||
                fields[2] != "value")
                throw ParseError("unknown format marker: expected header time,variable,value",
                                 line_no);
            saw_header = true;
            return;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, found " + std::to_string(fields.size()), line_no);
        SecondIndex t;
        try {
            t = parse_utc(fields[0]);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        const auto kind = variable_from_code(fields[1]);
        if (!kind)
            throw ParseError("unknown variable \"" + std::string(fields[1]) + "\"", line_no);
        auto [it, inserted] = prev_time.try_emplace(*kind, INT64_MIN);
        if (t <= it->second && !inserted)
            throw ParseError("timestamps not strictly increasing for variable " +
                                 std::string(fields[1]),
                             line_no);
        it->second = t;
        if (fields[2].empty()) {
            out.sentinel_dropped[*kind] += 1;
            return;
        }
        samples[*kind].emplace_back(t, parse_double(fields[2], line_no));
    });

    if (!saw_header)
        throw ParseError("unknown format marker: empty file", 1);
    for (auto& [kind, s] : samples) {
        out.sentinel_dropped.try_emplace(kind, 0);
        out.batches.push_back(RawSampleBatch{kind, std::move(s), site_id});
    }
    return out;
}

} // namespace

ParsedObservations parse_observation_file(std::string_view text, ObservationFormat format,
                                          const std::string& site_id) {
    switch (format) {
    case ObservationFormat::NdbcStdmet:
        return parse_ndbc_stdmet(text, site_id);
    case ObservationFormat::GenericCsv:
        return parse_generic_csv(text, site_id);
    }
    throw std::invalid_argument("unhandled observation format");
}

std::vector<GridPointSeries> parse_grid_file(std::string_view text) {
    struct Key {
        double lat, lon;
        VariableKind kind;
        bool operator<(const Key& o) const {
            return std::tie(lat, lon, kind) < std::tie(o.lat, o.lon, o.kind);
        }
    };
    struct Group {
        std::map<HourIndex, std::optional<double>> rows;
    };
    std::map<Key, Group> groups;

    int col_time = -1, col_lat = -1, col_lon = -1, col_var = -1, col_value = -1;
    bool saw_header = false;

    for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
        const std::string_view line = trim(raw);
        if (line.empty())
            return;
        const auto fields = split_csv(line);
        if (!saw_header) {
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (fields[c] == "time")
                    col_time = int(c);
                else if (fields[c] == "lat")
                    col_lat = int(c);
                else if (fields[c] == "lon")
                    col_lon = int(c);
                else if (fields[c] == "variable")
                    col_var = int(c);
                else if (fields[c] == "value")
                    col_value = int(c);
            }
            const std::pair<int, const char*> required[] = {{col_time, "time"},
                                                            {col_lat, "lat"},
                                                            {col_lon, "lon"},
                                                            {col_var, "variable"},
                                                            {col_value, "value"}};
            for (const auto& [col, name] : required)
                if (col < 0)
                    throw ParseError("missing required column \"" + std::string(name) + "\"",
                                     line_no);
            saw_header = true;
            return;
        }
        const std::size_t needed =
            std::size_t(std::max({col_time, col_lat, col_lon, col_var, col_value})) + 1;
        if (fields.size() < needed)
            throw ParseError("expected at least " + std::to_string(needed) + " fields", line_no);

        HourIndex hour;
        try {
            hour = parse_utc_hour(fields[std::size_t(col_time)]);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        const double lat = parse_double(fields[std::size_t(col_lat)], line_no);
        const double lon = parse_double(fields[std::size_t(col_lon)], line_no);
        const auto kind = variable_from_code(fields[std::size_t(col_var)]);
        if (!kind)
            throw ParseError("unknown variable \"" + std::string(fields[std::size_t(col_var)]) +
                                 "\"",
                             line_no);
        std::optional<double> value;
        if (!fields[std::size_t(col_value)].empty())
            value = parse_double(fields[std::size_t(col_value)], line_no);

        auto& group = groups[Key{lat, lon, *kind}];
        if (!group.rows.emplace(hour, value).second)
            throw ParseError("duplicate (time, lat, lon, variable) row", line_no);
    });

    if (!saw_header)
        throw ParseError("missing required column \"time\"", 1);

    std::vector<GridPointSeries> result;
    for (auto& [key, group] : groups) {
        const HourIndex start = group.rows.begin()->first;
        const HourIndex end = group.rows.rbegin()->first + 1;
        std::vector<std::optional<double>> values(std::size_t(end - start));
        for (const auto& [hour, value] : group.rows)
            values[std::size_t(hour - start)] = value;
        std::ostringstream label;
        label << "grid(" << key.lat << "," << key.lon << ")";
        result.push_back(GridPointSeries{
            key.lat, key.lon, HourlyTimeSeries(key.kind, start, std::move(values), label.str())});
    }
    return result;
}

HourlyTimeSeries extract_numerical_series(const std::vector<GridPointSeries>& grid,
                                          double latitude, double longitude,
                                          const std::string& site_id) {
    if (grid.size() < 3)
        throw std::invalid_argument("need at least 3 grid points around the site");
    const VariableKind kind = grid.front().series.variable();
    std::vector<GeoPoint> points;
    HourIndex start = grid.front().series.start();
    HourIndex end = grid.front().series.end();
    for (const auto& g : grid) {
        if (g.series.variable() != kind)
            throw std::invalid_argument("grid points mix variable kinds");
        points.push_back(GeoPoint{g.latitude, g.longitude});
        start = std::max(start, g.series.start());
        end = std::min(end, g.series.end());
    }
    if (start >= end)
        throw std::runtime_error("no temporal overlap between grid point series");

    const Triangulation tri = delaunay(std::move(points));

    std::vector<std::optional<double>> values(std::size_t(end - start));
    std::vector<std::optional<double>> at_points(grid.size());
    for (HourIndex hour = start; hour < end; ++hour) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            at_points[i] = grid[i].series.value_at_hour(hour);
        values[std::size_t(hour - start)] =
            interpolate_to_point(tri, at_points, GeoPoint{latitude, longitude});
    }
    return HourlyTimeSeries(kind, start, std::move(values), site_id);
}

} // namespace metocean
