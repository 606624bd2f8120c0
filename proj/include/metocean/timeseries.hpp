#ifndef METOCEAN_TIMESERIES_HPP
#define METOCEAN_TIMESERIES_HPP

#include "metocean/time.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace metocean {

/// The two met-ocean variables handled by this toolkit.
enum class VariableKind {
    SignificantWaveHeight, // meters
    WindSpeed,             // meters/second
};

const char* variable_code(VariableKind kind);     // "H" / "v"
const char* variable_unit(VariableKind kind);     // "m" / "m/s"
std::optional<VariableKind> variable_from_code(std::string_view code);

/// One variable at one site on a uniform hourly UTC grid. Slot i carries the
/// value for hour start()+i; a slot without a value is an explicit gap, never
/// a sentinel number.
class HourlyTimeSeries {
public:
    HourlyTimeSeries(VariableKind variable, HourIndex start,
                     std::vector<std::optional<double>> values, std::string site_id);

    VariableKind variable() const { return variable_; }
    HourIndex start() const { return start_; }
    /// One past the last grid hour.
    HourIndex end() const { return start_ + HourIndex(values_.size()); }
    std::size_t size() const { return values_.size(); }
    const std::string& site_id() const { return site_id_; }

    const std::vector<std::optional<double>>& values() const { return values_; }
    const std::optional<double>& operator[](std::size_t i) const { return values_[i]; }

    /// Value at an absolute grid hour; empty outside coverage or at a gap.
    std::optional<double> value_at_hour(HourIndex hour) const;

    std::size_t missing_count() const;

private:
    VariableKind variable_;
    HourIndex start_;
    std::vector<std::optional<double>> values_;
    std::string site_id_;
};

/// Irregular samples as parsed from an archive file, before hourly resampling.
/// Timestamps are strictly increasing; values are finite and non-negative.
struct RawSampleBatch {
    VariableKind variable;
    std::vector<std::pair<SecondIndex, double>> samples;
    std::string site_id;
};

/// A site's observed and numerical series per variable, aligned on one grid.
struct SiteDataset {
    std::string site_id;
    double latitude = 0.0;
    double longitude = 0.0;
    std::map<VariableKind, HourlyTimeSeries> observed;
    std::map<VariableKind, HourlyTimeSeries> numerical;
};

/// Restriction to a set of calendar months (UTC), e.g. a summer/winter split.
class SeasonFilter {
public:
    SeasonFilter(std::set<int> months, std::string label);

    const std::set<int>& months() const { return months_; }
    const std::string& label() const { return label_; }
    bool contains_month(int month) const { return months_.count(month) != 0; }

    static SeasonFilter all_year();  // months 1..12, label "all"
    static SeasonFilter summer();    // May..Oct
    static SeasonFilter winter();    // Nov..Apr

private:
    std::set<int> months_;
    std::string label_;
};

/// Inclusive per-variable plausibility envelope for quality filtering.
struct QualityBounds {
    double min;
    double max;
};

/// Generous physical envelopes that still catch sensor sentinels:
/// H in [0, 20] m, v in [0, 60] m/s.
QualityBounds default_quality_bounds(VariableKind kind);

/// Half-open hour window [start, end).
struct HourWindow {
    HourIndex start;
    HourIndex end;
};

/// Hourly means over [hour, hour+1) bins from the first to the last sample's
/// hour; bins containing no sample become gaps. Throws on an empty batch,
/// non-increasing timestamps, or invalid values.
HourlyTimeSeries resample_to_hourly(const RawSampleBatch& batch);

struct FilterResult {
    HourlyTimeSeries series;
    std::size_t discarded;
};

/// Replaces values outside [bounds.min, bounds.max] with gaps.
FilterResult quality_filter(const HourlyTimeSeries& series, QualityBounds bounds);

/// Per-hour mean of all non-missing inputs over the union of the input
/// horizons; a slot is a gap only where every input is missing. Requires at
/// least two inputs of the same variable.
HourlyTimeSeries pool_series(const std::vector<HourlyTimeSeries>& inputs,
                             const std::string& pooled_site_id);

/// Both series restricted to the intersection of their hour grids.
/// Throws "no temporal overlap" when the intersection is empty.
std::pair<HourlyTimeSeries, HourlyTimeSeries> align(const HourlyTimeSeries& a,
                                                    const HourlyTimeSeries& b);

/// Fraction of window hours that are missing, counting both in-coverage gaps
/// and window hours outside the series' coverage. Window must overlap the
/// series coverage or contain it entirely.
double missing_fraction(const HourlyTimeSeries& series, HourWindow window);

/// Indices of grid slots whose calendar month is in the filter.
std::vector<std::size_t> seasonal_subset(const HourlyTimeSeries& series,
                                         const SeasonFilter& filter);

} // namespace metocean

#endif
