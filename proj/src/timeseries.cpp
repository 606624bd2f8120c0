#include "metocean/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metocean {

const char* variable_code(VariableKind kind) {
    return kind == VariableKind::SignificantWaveHeight ? "H" : "v";
}

const char* variable_unit(VariableKind kind) {
    return kind == VariableKind::SignificantWaveHeight ? "m" : "m/s";
}

std::optional<VariableKind> variable_from_code(std::string_view code) {
    if (code == "H")
        return VariableKind::SignificantWaveHeight;
    if (code == "v")
        return VariableKind::WindSpeed;
    return std::nullopt;
}

HourlyTimeSeries::HourlyTimeSeries(VariableKind variable, HourIndex start,
                                   std::vector<std::optional<double>> values, std::string site_id)
    : variable_(variable), start_(start), values_(std::move(values)), site_id_(std::move(site_id)) {
    if (values_.empty())
        throw std::invalid_argument("hourly series must contain at least one slot (site " +
                                    site_id_ + ")");
    for (const auto& v : values_) {
        if (v && !(std::isfinite(*v) && *v >= 0.0))
            throw std::invalid_argument("hourly series value must be finite and non-negative "
                                        "(site " + site_id_ + ")");
    }
}

std::optional<double> HourlyTimeSeries::value_at_hour(HourIndex hour) const {
    if (hour < start_ || hour >= end())
        return std::nullopt;
    return values_[std::size_t(hour - start_)];
}

std::size_t HourlyTimeSeries::missing_count() const {
    return std::size_t(std::count_if(values_.begin(), values_.end(),
                                     [](const auto& v) { return !v.has_value(); }));
}

SeasonFilter::SeasonFilter(std::set<int> months, std::string label)
    : months_(std::move(months)), label_(std::move(label)) {
    if (months_.empty())
        throw std::invalid_argument("season filter needs at least one month");
    for (int m : months_)
        if (m < 1 || m > 12)
            throw std::invalid_argument("season month out of range: " + std::to_string(m));
}

SeasonFilter SeasonFilter::all_year() {
    return SeasonFilter({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, "all");
}

SeasonFilter SeasonFilter::summer() { return SeasonFilter({5, 6, 7, 8, 9, 10}, "summer"); }

SeasonFilter SeasonFilter::winter() { return SeasonFilter({11, 12, 1, 2, 3, 4}, "winter"); }

QualityBounds default_quality_bounds(VariableKind kind) {
    return kind == VariableKind::SignificantWaveHeight ? QualityBounds{0.0, 20.0}
                                                       : QualityBounds{0.0, 60.0};
}

HourlyTimeSeries resample_to_hourly(const RawSampleBatch& batch) {
    if (batch.samples.empty())
        throw std::invalid_argument("no samples (site " + batch.site_id + ")");
    for (std::size_t i = 0; i < batch.samples.size(); ++i) {
        const auto& [t, v] = batch.samples[i];
        if (!(std::isfinite(v) && v >= 0.0))
            throw std::invalid_argument("raw sample value must be finite and non-negative");
        if (i > 0 && t <= batch.samples[i - 1].first)
            throw std::invalid_argument("raw sample timestamps must be strictly increasing");
    }

    const HourIndex first = floor_to_hour(batch.samples.front().first);
    const HourIndex last = floor_to_hour(batch.samples.back().first);
    std::vector<double> sums(std::size_t(last - first + 1), 0.0);
    std::vector<std::size_t> counts(sums.size(), 0);
    for (const auto& [t, v] : batch.samples) {
        const auto slot = std::size_t(floor_to_hour(t) - first);
        sums[slot] += v;
        counts[slot] += 1;
    }

    std::vector<std::optional<double>> values(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
        if (counts[i] > 0)
            values[i] = sums[i] / double(counts[i]);
    return HourlyTimeSeries(batch.variable, first, std::move(values), batch.site_id);
}

FilterResult quality_filter(const HourlyTimeSeries& series, QualityBounds bounds) {
    if (!(bounds.min < bounds.max))
        throw std::invalid_argument("quality bounds require min < max");
    std::vector<std::optional<double>> values = series.values();
    std::size_t discarded = 0;
    for (auto& v : values) {
        if (v && (*v < bounds.min || *v > bounds.max)) {
            v.reset();
            ++discarded;
        }
    }
    return FilterResult{
        HourlyTimeSeries(series.variable(), series.start(), std::move(values), series.site_id()),
        discarded};
}

HourlyTimeSeries pool_series(const std::vector<HourlyTimeSeries>& inputs,
                             const std::string& pooled_site_id) {
    if (inputs.size() < 2)
        throw std::invalid_argument("pooling requires at least two input series");
    const VariableKind kind = inputs.front().variable();
    HourIndex start = inputs.front().start();
    HourIndex end = inputs.front().end();
    for (const auto& s : inputs) {
        if (s.variable() != kind)
            throw std::invalid_argument("pooling requires a single variable kind");
        start = std::min(start, s.start());
        end = std::max(end, s.end());
    }

    std::vector<std::optional<double>> values(std::size_t(end - start));
    for (std::size_t i = 0; i < values.size(); ++i) {
        const HourIndex hour = start + HourIndex(i);
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& s : inputs) {
            if (auto v = s.value_at_hour(hour)) {
                sum += *v;
                ++n;
            }
        }
        if (n > 0)
            values[i] = sum / double(n);
    }
    return HourlyTimeSeries(kind, start, std::move(values), pooled_site_id);
}

std::pair<HourlyTimeSeries, HourlyTimeSeries> align(const HourlyTimeSeries& a,
                                                    const HourlyTimeSeries& b) {
    if (a.variable() != b.variable())
        throw std::invalid_argument("cannot align series of different variables");
    const HourIndex start = std::max(a.start(), b.start());
    const HourIndex end = std::min(a.end(), b.end());
    if (start >= end)
        throw std::runtime_error("no temporal overlap between series " + a.site_id() + " and " +
                                 b.site_id());

    const auto slice = [&](const HourlyTimeSeries& s) {
        const auto offset = std::size_t(start - s.start());
        std::vector<std::optional<double>> values(s.values().begin() + long(offset),
                                                  s.values().begin() + long(offset + std::size_t(end - start)));
        return HourlyTimeSeries(s.variable(), start, std::move(values), s.site_id());
    };
    return {slice(a), slice(b)};
}

double missing_fraction(const HourlyTimeSeries& series, HourWindow window) {
    if (window.end <= window.start)
        throw std::invalid_argument("missing_fraction window must satisfy start < end");
    if (window.end <= series.start() || window.start >= series.end())
        throw std::invalid_argument("missing_fraction window does not overlap series coverage");

    std::size_t missing = 0;
    for (HourIndex h = window.start; h < window.end; ++h) {
        if (h < series.start() || h >= series.end())
            ++missing;
        else if (!series[std::size_t(h - series.start())])
            ++missing;
    }
    return double(missing) / double(window.end - window.start);
}

std::vector<std::size_t> seasonal_subset(const HourlyTimeSeries& series,
                                         const SeasonFilter& filter) {
    std::vector<std::size_t> indices;
    // Month boundaries are sparse; recompute the month lazily when it can change.
    int month = month_of(series.start());
    HourIndex next_check = series.start();
    for (std::size_t i = 0; i < series.size(); ++i) {
        const HourIndex hour = series.start() + HourIndex(i);
        if (hour >= next_check) {
            month = month_of(hour);
            const CivilTime c = to_civil(hour_to_seconds(hour));
            // Hours remaining in the current UTC day; month can only change at midnight.
            next_check = hour + (24 - c.hour);
        }
        if (filter.contains_month(month))
            indices.push_back(i);
    }
    return indices;
}

} // namespace metocean
