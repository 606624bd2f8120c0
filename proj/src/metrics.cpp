#include "metocean/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace metocean {

namespace {

enum class SlotStatus : unsigned char { Pass, Fail, Missing };

void check_series_set(const SeriesByVariable& series, const SafetyLimits& limits) {
    if (series.empty())
        throw std::invalid_argument("no series provided");
    validate(limits);
    const auto& first = series.begin()->second;
    for (const auto& [kind, s] : series) {
        if (s.variable() != kind)
            throw std::invalid_argument("series map key does not match series variable");
        if (s.start() != first.start() || s.size() != first.size())
            throw std::invalid_argument("series must share one hourly grid");
    }
    for (const auto& [kind, s] : series)
        if (!limits.limits.count(kind))
            throw std::invalid_argument(std::string("no safety limit for variable ") +
                                        variable_code(kind));
    for (const auto& [kind, limit] : limits.limits)
        if (!series.count(kind))
            throw std::invalid_argument(std::string("limit provided for absent variable ") +
                                        variable_code(kind));
}

/// Per-slot verdict against the limits; a gap in any variable wins over a
/// limit violation in another.
std::vector<SlotStatus> classify(const SeriesByVariable& series, const SafetyLimits& limits) {
    const std::size_t length = series.begin()->second.size();
    std::vector<SlotStatus> status(length, SlotStatus::Pass);
    for (const auto& [kind, s] : series) {
        const double limit = limits.limits.at(kind);
        for (std::size_t i = 0; i < length; ++i) {
            if (status[i] == SlotStatus::Missing)
                continue;
            if (!s[i])
                status[i] = SlotStatus::Missing;
            else if (*s[i] >= limit && status[i] == SlotStatus::Pass)
                status[i] = SlotStatus::Fail;
        }
    }
    return status;
}

std::vector<bool> season_mask(HourIndex start, std::size_t length,
                              const std::optional<SeasonFilter>& season) {
    std::vector<bool> mask(length, true);
    if (!season)
        return mask;
    int month = month_of(start);
    HourIndex next_check = start;
    for (std::size_t i = 0; i < length; ++i) {
        const HourIndex hour = start + HourIndex(i);
        if (hour >= next_check) {
            month = month_of(hour);
            const CivilTime c = to_civil(hour_to_seconds(hour));
            next_check = hour + (24 - c.hour);
        }
        mask[i] = season->contains_month(month);
    }
    return mask;
}

MetricReport finish_report(std::size_t passed, std::size_t evaluated, std::size_t excluded,
                           const SafetyLimits& limits, std::optional<int> zeta,
                           const std::optional<SeasonFilter>& season, const char* what) {
    if (evaluated == 0)
        throw std::runtime_error(std::string("no evaluable ") + what +
                                 (season ? " in season " + season->label() : std::string()));
    MetricReport report;
    report.score = double(passed) / double(evaluated);
    report.passed = passed;
    report.evaluated = evaluated;
    report.excluded_missing = excluded;
    report.limits = limits.limits;
    report.zeta = zeta;
    report.season = season ? season->label() : "all";
    return report;
}

/// Shared window scan for the persistence metrics: prefix sums of failing and
/// missing slots give each window's verdict in O(1).
MetricReport window_metric(const std::vector<SlotStatus>& status, HourIndex grid_start, int zeta,
                           const SafetyLimits& limits, const std::optional<SeasonFilter>& season,
                           MissingPolicy policy, const char* what) {
    const std::size_t length = status.size();
    if (zeta < 1)
        throw std::invalid_argument("window length must be >= 1");
    if (length < std::size_t(zeta))
        throw std::runtime_error("series shorter than the mission window");

    std::vector<std::size_t> fail_prefix(length + 1, 0), missing_prefix(length + 1, 0);
    for (std::size_t i = 0; i < length; ++i) {
        fail_prefix[i + 1] = fail_prefix[i] + (status[i] == SlotStatus::Fail ? 1 : 0);
        missing_prefix[i + 1] = missing_prefix[i] + (status[i] == SlotStatus::Missing ? 1 : 0);
    }
    const auto mask = season_mask(grid_start, length, season);

    std::size_t passed = 0, evaluated = 0, excluded = 0;
    for (std::size_t start = 0; start + std::size_t(zeta) <= length; ++start) {
        if (!mask[start])
            continue;
        const std::size_t end = start + std::size_t(zeta);
        const bool has_missing = missing_prefix[end] > missing_prefix[start];
        const bool has_fail = fail_prefix[end] > fail_prefix[start];
        if (has_missing && policy == MissingPolicy::Exclude) {
            ++excluded;
            continue;
        }
        ++evaluated;
        if (!has_missing && !has_fail)
            ++passed;
    }
    return finish_report(passed, evaluated, excluded, limits, zeta, season, what);
}

} // namespace

void validate(const SafetyLimits& limits) {
    if (limits.limits.empty())
        throw std::invalid_argument("safety limits must not be empty");
    for (const auto& [kind, limit] : limits.limits)
        if (!(limit > 0.0) || !std::isfinite(limit))
            throw std::invalid_argument(std::string("safety limit for ") + variable_code(kind) +
                                        " must be positive and finite");
}

MetricReport approachability(const SeriesByVariable& series, const SafetyLimits& limits,
                             const std::optional<SeasonFilter>& season, MissingPolicy policy) {
    check_series_set(series, limits);
    const auto status = classify(series, limits);
    const auto mask = season_mask(series.begin()->second.start(), status.size(), season);

    std::size_t passed = 0, evaluated = 0, excluded = 0;
    for (std::size_t i = 0; i < status.size(); ++i) {
        if (!mask[i])
            continue;
        if (status[i] == SlotStatus::Missing && policy == MissingPolicy::Exclude) {
            ++excluded;
            continue;
        }
        ++evaluated;
        if (status[i] == SlotStatus::Pass)
            ++passed;
    }
    return finish_report(passed, evaluated, excluded, limits, std::nullopt, season, "timesteps");
}

MetricReport accessibility(const SeriesByVariable& series, const SafetyLimits& limits,
                           MissionWindow window, const std::optional<SeasonFilter>& season,
                           MissingPolicy policy) {
    check_series_set(series, limits);
    const auto status = classify(series, limits);
    return window_metric(status, series.begin()->second.start(), window.zeta, limits, season,
                         policy, "mission starts");
}

PositionMatrix::PositionMatrix(const std::vector<std::vector<int>>& cells) {
    if (cells.empty() || cells.front().empty())
        throw std::invalid_argument("position matrix must be at least 1x1");
    location_count_ = cells.size();
    const std::size_t zeta = cells.front().size();
    for (const auto& row : cells)
        if (row.size() != zeta)
            throw std::invalid_argument("position matrix rows must have equal length");
    schedule_.assign(zeta, 0);
    for (std::size_t tau = 0; tau < zeta; ++tau) {
        int sum = 0;
        for (std::size_t j = 0; j < location_count_; ++j) {
            const int cell = cells[j][tau];
            if (cell != 0 && cell != 1)
                throw std::invalid_argument("position matrix entries must be 0 or 1");
            if (cell == 1)
                schedule_[tau] = j;
            sum += cell;
        }
        if (sum != 1)
            throw std::invalid_argument("each mission hour must occupy exactly one location");
    }
}

PositionMatrix::PositionMatrix(std::size_t location_count, std::vector<std::size_t> location_per_hour)
    : location_count_(location_count), schedule_(std::move(location_per_hour)) {
    if (location_count_ == 0 || schedule_.empty())
        throw std::invalid_argument("position matrix must be at least 1x1");
    for (const std::size_t j : schedule_)
        if (j >= location_count_)
            throw std::invalid_argument("schedule references a location outside the route");
}

PositionMatrix build_position_matrix(const OperationalProfile& profile,
                                     std::size_t location_count) {
    if (profile.legs.empty())
        throw std::invalid_argument("operational profile has no legs");
    int total = 0;
    std::vector<std::size_t> schedule;
    for (const auto& [location, dwell] : profile.legs) {
        if (location < 1 || location > location_count)
            throw std::invalid_argument("profile leg location index out of range");
        if (dwell < 1)
            throw std::invalid_argument("profile leg dwell must be >= 1 hour");
        total += dwell;
        schedule.insert(schedule.end(), std::size_t(dwell), location - 1);
    }
    if (total != profile.zeta)
        throw std::invalid_argument("profile dwells sum to " + std::to_string(total) +
                                    " hours, expected zeta = " + std::to_string(profile.zeta));
    return PositionMatrix(location_count, std::move(schedule));
}

MetricReport serviceability(const Route& route, const PositionMatrix& position,
                            const SafetyLimits& limits, MissionWindow window,
                            const std::optional<SeasonFilter>& season, MissingPolicy policy) {
    if (route.locations.empty())
        throw std::invalid_argument("route has no locations");
    if (route.locations.size() != position.rows())
        throw std::invalid_argument("position matrix rows must match route locations");
    if (std::size_t(window.zeta) != position.cols())
        throw std::invalid_argument("position matrix columns must match the mission window");

    const auto& reference = route.locations.front().series;
    for (const auto& location : route.locations)
        check_series_set(location.series, limits);
    const HourIndex grid_start = reference.begin()->second.start();
    const std::size_t length = reference.begin()->second.size();
    for (const auto& location : route.locations) {
        if (location.series.begin()->second.start() != grid_start ||
            location.series.begin()->second.size() != length)
            throw std::invalid_argument("route locations must share one hourly grid");
        if (location.series.size() != reference.size())
            throw std::invalid_argument("route locations must carry the same variables");
    }

    const std::size_t zeta = position.cols();
    if (length < zeta)
        throw std::runtime_error("series shorter than the mission window");

    std::vector<std::vector<SlotStatus>> status_by_location;
    status_by_location.reserve(route.locations.size());
    for (const auto& location : route.locations)
        status_by_location.push_back(classify(location.series, limits));

    const auto mask = season_mask(grid_start, length, season);

    std::size_t passed = 0, evaluated = 0, excluded = 0;
    for (std::size_t start = 0; start + zeta <= length; ++start) {
        if (!mask[start])
            continue;
        bool has_missing = false, has_fail = false;
        for (std::size_t tau = 0; tau < zeta; ++tau) {
            const SlotStatus s = status_by_location[position.location_at(tau)][start + tau];
            if (s == SlotStatus::Missing)
                has_missing = true;
            else if (s == SlotStatus::Fail)
                has_fail = true;
        }
        if (has_missing && policy == MissingPolicy::Exclude) {
            ++excluded;
            continue;
        }
        ++evaluated;
        if (!has_missing && !has_fail)
            ++passed;
    }
    return finish_report(passed, evaluated, excluded, limits, int(zeta), season, "mission starts");
}

RouteProfileReport route_accessibility_profile(const Route& route, const SafetyLimits& limits,
                                               MissionWindow window,
                                               const std::optional<SeasonFilter>& season,
                                               MissingPolicy policy) {
    if (route.locations.empty())
        throw std::invalid_argument("route has no locations");
    RouteProfileReport report;
    for (const auto& location : route.locations) {
        report.approachability.push_back(
            approachability(location.series, limits, season, policy));
        report.accessibility.push_back(
            accessibility(location.series, limits, window, season, policy));
    }
    for (const auto& r : report.approachability)
        report.average_approachability += r.score;
    for (const auto& r : report.accessibility)
        report.average_accessibility += r.score;
    report.average_approachability /= double(route.locations.size());
    report.average_accessibility /= double(route.locations.size());
    return report;
}

const char* metric_name(MetricKind kind) {
    switch (kind) {
    case MetricKind::Approachability:
        return "approachability";
    case MetricKind::Accessibility:
        return "accessibility";
    case MetricKind::Serviceability:
        return "serviceability";
    }
    return "?";
}

namespace {

void sort_cells(std::vector<SweepCell>& cells) {
    std::sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
        return std::tie(a.subject, a.metric, a.limits.limits, a.zeta, a.season) <
               std::tie(b.subject, b.metric, b.limits.limits, b.zeta, b.season);
    });
}

template <typename Fn>
SweepCell run_cell(SweepCell cell, Fn&& fn) {
    try {
        cell.report = fn();
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

} // namespace

std::vector<SweepCell> sweep_site(const std::string& subject, const SeriesByVariable& series,
                                  const std::vector<SafetyLimits>& limits_grid,
                                  const std::vector<MissionWindow>& windows,
                                  const std::vector<SeasonFilter>& seasons, MetricKind metric,
                                  MissingPolicy policy) {
    if (limits_grid.empty() || seasons.empty())
        throw std::invalid_argument("sweep grids must be non-empty");
    if (metric == MetricKind::Serviceability)
        throw std::invalid_argument("serviceability sweeps require a route");
    if (metric == MetricKind::Accessibility && windows.empty())
        throw std::invalid_argument("sweep grids must be non-empty");

    std::vector<SweepCell> cells;
    for (const auto& limits : limits_grid) {
        for (const auto& season : seasons) {
            if (metric == MetricKind::Approachability) {
                SweepCell cell{subject, metric, limits, std::nullopt, season.label(), {}, {}};
                cells.push_back(run_cell(std::move(cell), [&] {
                    return approachability(series, limits, season, policy);
                }));
            } else {
                for (const auto& window : windows) {
                    SweepCell cell{subject, metric, limits, window.zeta, season.label(), {}, {}};
                    cells.push_back(run_cell(std::move(cell), [&] {
                        return accessibility(series, limits, window, season, policy);
                    }));
                }
            }
        }
    }
    sort_cells(cells);
    return cells;
}

std::vector<SweepCell> sweep_route(const Route& route, const PositionMatrix& position,
                                   const std::vector<SafetyLimits>& limits_grid,
                                   const std::vector<SeasonFilter>& seasons,
                                   MissingPolicy policy) {
    if (limits_grid.empty() || seasons.empty())
        throw std::invalid_argument("sweep grids must be non-empty");

    std::vector<SweepCell> cells;
    const MissionWindow window{int(position.cols())};
    for (const auto& limits : limits_grid) {
        for (const auto& season : seasons) {
            SweepCell cell{route.route_id, MetricKind::Serviceability, limits, window.zeta,
                           season.label(), {}, {}};
            cells.push_back(run_cell(std::move(cell), [&] {
                return serviceability(route, position, limits, window, season, policy);
            }));
        }
    }
    sort_cells(cells);
    return cells;
}

std::vector<SafetyLimits> default_limits_grid() {
    std::vector<SafetyLimits> grid;
    for (int i = 0; i <= 12; ++i) {
        SafetyLimits limits;
        limits.limits[VariableKind::SignificantWaveHeight] = 1.5 + 0.25 * i;
        limits.limits[VariableKind::WindSpeed] = 12.0;
        grid.push_back(std::move(limits));
    }
    return grid;
}

std::vector<MissionWindow> default_window_grid() {
    return {MissionWindow{2}, MissionWindow{6}, MissionWindow{12}, MissionWindow{18},
            MissionWindow{24}};
}

} // namespace metocean
