#ifndef METOCEAN_RUNCONFIG_HPP
#define METOCEAN_RUNCONFIG_HPP

#include "metocean/ingest.hpp"
#include "metocean/metrics.hpp"
#include "metocean/tsr.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace metocean {

/// Invalid or inconsistent run configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ObservationFileRef {
    std::filesystem::path path;
    ObservationFormat format;
};

struct PoolMemberConfig {
    std::string site_id;
    std::optional<double> latitude;
    std::optional<double> longitude;
    std::vector<ObservationFileRef> observations;
};

struct SiteConfig {
    std::string site_id;
    std::optional<double> latitude;  // defaults to the member centroid for pooled sites
    std::optional<double> longitude;
    std::vector<ObservationFileRef> observations; // direct sites
    std::vector<PoolMemberConfig> pool_of;        // pooled sites (>= 2 members)
    std::vector<std::filesystem::path> grid_files;

    bool pooled() const { return !pool_of.empty(); }
    double resolved_latitude() const;
    double resolved_longitude() const;
};

/// Half-open [start, end) analysis windows; train and test must be disjoint.
struct SplitConfig {
    HourIndex train_start = 0;
    HourIndex train_end = 0;
    HourIndex test_start = 0;
    HourIndex test_end = 0;
};

struct RouteConfig {
    std::string route_id;
    std::vector<std::string> location_site_ids; // port first, destination last
    OperationalProfile profile;
};

struct RunConfig {
    std::vector<SiteConfig> sites;
    std::vector<VariableKind> variables;
    FourierConfig fourier;
    SplitConfig split;
    std::map<VariableKind, std::vector<double>> limits_grid;
    std::vector<int> zeta_grid;
    std::vector<SeasonFilter> seasons; // evaluated in addition to the full year
    std::vector<RouteConfig> routes;
    std::map<VariableKind, QualityBounds> quality_bounds;
    std::filesystem::path output_dir;

    const SiteConfig& site(const std::string& site_id) const;
    /// Cross product of the per-variable limit grids, ordered.
    std::vector<SafetyLimits> safety_limits_grid() const;
};

/// Loads and validates a declarative run configuration. Relative paths are
/// resolved against the config file's directory; every referenced file must
/// exist. Throws ConfigError on any problem.
RunConfig load_run_config(const std::filesystem::path& config_path);

} // namespace metocean

#endif
