#ifndef METOCEAN_METRICS_HPP
#define METOCEAN_METRICS_HPP

#include "metocean/timeseries.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace metocean {

/// Per-variable upper safety bounds (H* in meters, v* in m/s). A value
/// exactly at its limit fails: all checks are strict.
struct SafetyLimits {
    std::map<VariableKind, double> limits;
};

void validate(const SafetyLimits& limits);

/// Minimum weather-window length in hours required by a mission.
struct MissionWindow {
    int zeta = 1;
};

/// How timesteps/windows touching a data gap are scored: excluded from the
/// denominator (default) or counted as failures for conservative planning.
enum class MissingPolicy {
    Exclude,
    Fail,
};

/// One variable per entry, all series on one shared hourly grid.
using SeriesByVariable = std::map<VariableKind, HourlyTimeSeries>;

/// Auditable metric outcome: score = passed/evaluated, with the candidates
/// excluded for missing data reported separately and the parameters echoed.
struct MetricReport {
    double score = 0.0;
    std::size_t passed = 0;
    std::size_t evaluated = 0;
    std::size_t excluded_missing = 0;
    std::map<VariableKind, double> limits;
    std::optional<int> zeta; // absent for the point-in-time metric
    std::string season = "all";
};

/// Fraction of timesteps with every variable strictly below its limit.
MetricReport approachability(const SeriesByVariable& series, const SafetyLimits& limits,
                             const std::optional<SeasonFilter>& season = {},
                             MissingPolicy policy = MissingPolicy::Exclude);

/// Fraction of mission start hours whose entire zeta-hour window stays
/// strictly below the limits for every variable.
MetricReport accessibility(const SeriesByVariable& series, const SafetyLimits& limits,
                           MissionWindow window, const std::optional<SeasonFilter>& season = {},
                           MissingPolicy policy = MissingPolicy::Exclude);

/// Vessel activity schedule: ordered (location index 1..J, dwell hours) legs
/// covering the zeta mission hours.
struct OperationalProfile {
    std::vector<std::pair<std::size_t, int>> legs;
    int zeta = 0;
};

/// J x zeta binary schedule; each mission hour has exactly one occupied
/// location.
class PositionMatrix {
public:
    /// Validating constructor from an explicit binary matrix (rows = locations).
    explicit PositionMatrix(const std::vector<std::vector<int>>& cells);
    /// From a per-mission-hour location row index (0-based).
    PositionMatrix(std::size_t location_count, std::vector<std::size_t> location_per_hour);

    std::size_t rows() const { return location_count_; }
    std::size_t cols() const { return schedule_.size(); }
    bool occupied(std::size_t location, std::size_t mission_hour) const {
        return schedule_[mission_hour] == location;
    }
    std::size_t location_at(std::size_t mission_hour) const { return schedule_[mission_hour]; }

private:
    std::size_t location_count_;
    std::vector<std::size_t> schedule_;
};

/// Expands an operational profile into the position matrix. Dwells must sum
/// to the profile's zeta and reference locations in [1, location_count].
PositionMatrix build_position_matrix(const OperationalProfile& profile,
                                     std::size_t location_count);

struct RouteLocation {
    std::string site_id;
    double latitude = 0.0;
    double longitude = 0.0;
    SeriesByVariable series;
};

/// Discretized vessel path with per-location met-ocean series on one grid.
struct Route {
    std::string route_id;
    std::vector<RouteLocation> locations;
};

/// Fraction of mission start hours for which conditions stay strictly below
/// the limits at the vessel's scheduled location for every mission hour.
MetricReport serviceability(const Route& route, const PositionMatrix& position,
                            const SafetyLimits& limits, MissionWindow window,
                            const std::optional<SeasonFilter>& season = {},
                            MissingPolicy policy = MissingPolicy::Exclude);

struct RouteProfileReport {
    std::vector<MetricReport> approachability; // per route location, in order
    std::vector<MetricReport> accessibility;   // per route location, in order
    double average_approachability = 0.0;      // unweighted over locations
    double average_accessibility = 0.0;
};

/// Per-location approachability/accessibility along the route plus the
/// unweighted route averages, for comparison against serviceability.
RouteProfileReport route_accessibility_profile(const Route& route, const SafetyLimits& limits,
                                               MissionWindow window,
                                               const std::optional<SeasonFilter>& season = {},
                                               MissingPolicy policy = MissingPolicy::Exclude);

enum class MetricKind {
    Approachability,
    Accessibility,
    Serviceability,
};

const char* metric_name(MetricKind kind);

/// One sweep grid cell; `error` is set instead of `report` when the cell
/// could not be evaluated.
struct SweepCell {
    std::string subject;
    MetricKind metric = MetricKind::Approachability;
    SafetyLimits limits;
    std::optional<int> zeta;
    std::string season = "all";
    std::optional<MetricReport> report;
    std::string error;
};

/// Cross product of limits x windows x seasons for a single site. Windows are
/// ignored for the point-in-time metric. Cells are ordered by key.
std::vector<SweepCell> sweep_site(const std::string& subject, const SeriesByVariable& series,
                                  const std::vector<SafetyLimits>& limits_grid,
                                  const std::vector<MissionWindow>& windows,
                                  const std::vector<SeasonFilter>& seasons, MetricKind metric,
                                  MissingPolicy policy = MissingPolicy::Exclude);

/// Serviceability across limits x seasons; the window length is fixed by the
/// position matrix.
std::vector<SweepCell> sweep_route(const Route& route, const PositionMatrix& position,
                                   const std::vector<SafetyLimits>& limits_grid,
                                   const std::vector<SeasonFilter>& seasons,
                                   MissingPolicy policy = MissingPolicy::Exclude);

/// H* from 1.5 m to 4.5 m in 0.25 m steps (13 values) at v* = 12 m/s.
std::vector<SafetyLimits> default_limits_grid();
/// Mission durations {2, 6, 12, 18, 24} hours.
std::vector<MissionWindow> default_window_grid();

} // namespace metocean

#endif
