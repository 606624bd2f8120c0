#ifndef METOCEAN_INGEST_HPP
#define METOCEAN_INGEST_HPP

#include "metocean/timeseries.hpp"
#include "metocean/triangulation.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metocean {

enum class ObservationFormat {
    NdbcStdmet, // NDBC standard meteorological text archive
    GenericCsv, // header "time,variable,value"
};

/// Parse failure with the 1-based line it was detected on.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ParsedObservations {
    std::vector<RawSampleBatch> batches; // one per variable present in the file
    /// Rows whose value carried a missing-data sentinel (99.0/999.0/"MM", or an
    /// empty CSV value) and were mapped to "no sample".
    std::map<VariableKind, std::size_t> sentinel_dropped;
};

ParsedObservations parse_observation_file(std::string_view text, ObservationFormat format,
                                          const std::string& site_id);

/// One numerical-model grid point's hourly series for one variable.
struct GridPointSeries {
    double latitude;
    double longitude;
    HourlyTimeSeries series;
};

/// Parses the tabular grid extract: header "time,lat,lon,variable,value",
/// blank value = missing. One GridPointSeries per distinct (lat, lon, variable).
std::vector<GridPointSeries> parse_grid_file(std::string_view text);

/// Hour-by-hour Delaunay-barycentric interpolation of the grid-point series to
/// the site coordinates, over the intersection of the input grids. All inputs
/// must carry the same variable and the site must lie inside their hull.
HourlyTimeSeries extract_numerical_series(const std::vector<GridPointSeries>& grid,
                                          double latitude, double longitude,
                                          const std::string& site_id);

} // namespace metocean

#endif
