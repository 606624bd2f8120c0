#include "metocean/runconfig.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace metocean {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

std::string require_id(const json& doc, const char* key, const std::string& context) {
    if (!doc.contains(key) || !doc.at(key).is_string())
        fail(context + ": missing string field \"" + key + "\"");
    const std::string id = doc.at(key).get<std::string>();
    if (id.empty())
        fail(context + ": \"" + std::string(key) + "\" must be non-empty");
    const bool clean = std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
    if (!clean)
        fail(context + ": id \"" + id + "\" may only contain [A-Za-z0-9_.-]");
    return id;
}

HourIndex parse_hour_field(const json& doc, const char* key, const std::string& context) {
    if (!doc.contains(key) || !doc.at(key).is_string())
        fail(context + ": missing timestamp field \"" + key + "\"");
    try {
        return parse_utc_hour(doc.at(key).get<std::string>());
    } catch (const std::exception& e) {
        fail(context + ": " + e.what());
    }
}

ObservationFormat parse_format(const std::string& text, const std::string& context) {
    if (text == "ndbc_stdmet")
        return ObservationFormat::NdbcStdmet;
    if (text == "generic_csv")
        return ObservationFormat::GenericCsv;
    fail(context + ": unknown observation format \"" + text +
         "\" (expected ndbc_stdmet or generic_csv)");
}

std::vector<ObservationFileRef> parse_observations(const json& doc,
                                                   const std::filesystem::path& base,
                                                   const std::string& context) {
    std::vector<ObservationFileRef> refs;
    if (!doc.contains("observations"))
        return refs;
    for (const auto& entry : doc.at("observations")) {
        if (!entry.contains("path") || !entry.contains("format"))
            fail(context + ": observation entries need \"path\" and \"format\"");
        ObservationFileRef ref;
        ref.path = base / entry.at("path").get<std::string>();
        ref.format = parse_format(entry.at("format").get<std::string>(), context);
        if (!std::filesystem::exists(ref.path))
            fail(context + ": observation file does not exist: " + ref.path.string());
        refs.push_back(std::move(ref));
    }
    return refs;
}

VariableKind parse_variable(const std::string& code, const std::string& context) {
    const auto kind = variable_from_code(code);
    if (!kind)
        fail(context + ": unknown variable \"" + code + "\" (expected \"H\" or \"v\")");
    return *kind;
}

} // namespace

double SiteConfig::resolved_latitude() const {
    if (latitude)
        return *latitude;
    double sum = 0.0;
    for (const auto& member : pool_of)
        sum += member.latitude.value();
    return sum / double(pool_of.size());
}

double SiteConfig::resolved_longitude() const {
    if (longitude)
        return *longitude;
    double sum = 0.0;
    for (const auto& member : pool_of)
        sum += member.longitude.value();
    return sum / double(pool_of.size());
}

const SiteConfig& RunConfig::site(const std::string& site_id) const {
    for (const auto& s : sites)
        if (s.site_id == site_id)
            return s;
    throw ConfigError("unknown site id: " + site_id);
}

std::vector<SafetyLimits> RunConfig::safety_limits_grid() const {
    std::vector<SafetyLimits> grid{SafetyLimits{}};
    for (const VariableKind kind : variables) {
        const auto it = limits_grid.find(kind);
        if (it == limits_grid.end())
            throw ConfigError(std::string("no limits grid for variable ") + variable_code(kind));
        std::vector<SafetyLimits> next;
        for (const auto& partial : grid) {
            for (const double value : it->second) {
                SafetyLimits extended = partial;
                extended.limits[kind] = value;
                next.push_back(std::move(extended));
            }
        }
        grid = std::move(next);
    }
    std::sort(grid.begin(), grid.end(),
              [](const SafetyLimits& a, const SafetyLimits& b) { return a.limits < b.limits; });
    return grid;
}

RunConfig load_run_config(const std::filesystem::path& config_path) {
    std::ifstream in(config_path);
    if (!in)
        fail("cannot open config file: " + config_path.string());
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        fail("config is not valid JSON: " + std::string(e.what()));
    }
    const std::filesystem::path base = config_path.parent_path();

    RunConfig config;

    if (!doc.contains("sites") || !doc.at("sites").is_array() || doc.at("sites").empty())
        fail("config needs a non-empty \"sites\" array");
    std::set<std::string> seen_ids;
    for (const auto& site_doc : doc.at("sites")) {
        SiteConfig site;
        site.site_id = require_id(site_doc, "site_id", "site");
        const std::string context = "site " + site.site_id;
        if (!seen_ids.insert(site.site_id).second)
            fail("duplicate site id: " + site.site_id);
        if (site_doc.contains("lat"))
            site.latitude = site_doc.at("lat").get<double>();
        if (site_doc.contains("lon"))
            site.longitude = site_doc.at("lon").get<double>();
        site.observations = parse_observations(site_doc, base, context);
        if (site_doc.contains("pool_of")) {
            for (const auto& member_doc : site_doc.at("pool_of")) {
                PoolMemberConfig member;
                member.site_id = require_id(member_doc, "site_id", context + " pool member");
                if (member_doc.contains("lat"))
                    member.latitude = member_doc.at("lat").get<double>();
                if (member_doc.contains("lon"))
                    member.longitude = member_doc.at("lon").get<double>();
                member.observations = parse_observations(member_doc, base,
                                                         context + " member " + member.site_id);
                if (member.observations.empty())
                    fail(context + " member " + member.site_id + " needs observation files");
                site.pool_of.push_back(std::move(member));
            }
            if (site.pool_of.size() < 2)
                fail(context + ": pooling needs at least 2 members");
            if (!site.observations.empty())
                fail(context + ": a pooled site cannot also list direct observations");
            if (!site.latitude || !site.longitude) {
                for (const auto& member : site.pool_of)
                    if (!member.latitude || !member.longitude)
                        fail(context + ": pooled site without lat/lon needs member coordinates "
                                       "for the centroid default");
            }
        } else {
            if (site.observations.empty())
                fail(context + ": needs observation files (or a pool_of list)");
            if (!site.latitude || !site.longitude)
                fail(context + ": needs lat and lon");
        }
        if (site.latitude && (*site.latitude < -90.0 || *site.latitude > 90.0))
            fail(context + ": latitude out of range");
        if (site.longitude && (*site.longitude < -180.0 || *site.longitude > 180.0))
            fail(context + ": longitude out of range");
        if (!site_doc.contains("grid_files") || site_doc.at("grid_files").empty())
            fail(context + ": needs at least one grid file");
        for (const auto& entry : site_doc.at("grid_files")) {
            const std::filesystem::path p = base / entry.get<std::string>();
            if (!std::filesystem::exists(p))
                fail(context + ": grid file does not exist: " + p.string());
            site.grid_files.push_back(p);
        }
        config.sites.push_back(std::move(site));
    }

    if (doc.contains("variables")) {
        for (const auto& v : doc.at("variables"))
            config.variables.push_back(parse_variable(v.get<std::string>(), "variables"));
        std::set<VariableKind> unique(config.variables.begin(), config.variables.end());
        if (unique.size() != config.variables.size() || config.variables.empty())
            fail("\"variables\" must be a non-empty list without duplicates");
    } else {
        config.variables = {VariableKind::SignificantWaveHeight, VariableKind::WindSpeed};
    }

    if (doc.contains("fourier")) {
        const auto& f = doc.at("fourier");
        config.fourier.harmonics = f.value("harmonics", 8);
        config.fourier.period_short = f.value("period_short", 720.0);
        config.fourier.period_long = f.value("period_long", 8760.0);
    }
    try {
        validate(config.fourier);
    } catch (const std::exception& e) {
        fail(std::string("fourier: ") + e.what());
    }

    if (!doc.contains("split"))
        fail("config needs a \"split\" object with train/test windows");
    const auto& split_doc = doc.at("split");
    config.split.train_start = parse_hour_field(split_doc, "train_start", "split");
    config.split.train_end = parse_hour_field(split_doc, "train_end", "split");
    config.split.test_start = parse_hour_field(split_doc, "test_start", "split");
    config.split.test_end = parse_hour_field(split_doc, "test_end", "split");
    if (config.split.train_start >= config.split.train_end)
        fail("split: train window must satisfy start < end");
    if (config.split.test_start >= config.split.test_end)
        fail("split: test window must satisfy start < end");
    const bool disjoint = config.split.train_end <= config.split.test_start ||
                          config.split.test_end <= config.split.train_start;
    if (!disjoint)
        fail("split: train and test windows must be disjoint");

    if (doc.contains("limits_grid")) {
        for (const auto& [code, values] : doc.at("limits_grid").items()) {
            const VariableKind kind = parse_variable(code, "limits_grid");
            for (const auto& v : values)
                config.limits_grid[kind].push_back(v.get<double>());
            if (config.limits_grid[kind].empty())
                fail("limits_grid: empty grid for variable " + code);
            for (const double v : config.limits_grid[kind])
                if (!(v > 0.0))
                    fail("limits_grid: limits must be positive");
        }
    } else {
        for (int i = 0; i <= 12; ++i)
            config.limits_grid[VariableKind::SignificantWaveHeight].push_back(1.5 + 0.25 * i);
        config.limits_grid[VariableKind::WindSpeed] = {12.0};
    }
    for (const VariableKind kind : config.variables)
        if (!config.limits_grid.count(kind))
            fail(std::string("limits_grid: no grid for variable ") + variable_code(kind));

    if (doc.contains("zeta_grid")) {
        for (const auto& z : doc.at("zeta_grid"))
            config.zeta_grid.push_back(z.get<int>());
    } else {
        config.zeta_grid = {2, 6, 12, 18, 24};
    }
    if (config.zeta_grid.empty())
        fail("zeta_grid must be non-empty");
    for (const int z : config.zeta_grid)
        if (z < 1)
            fail("zeta_grid entries must be >= 1");

    if (doc.contains("seasons")) {
        for (const auto& season_doc : doc.at("seasons")) {
            const std::string label = require_id(season_doc, "label", "season");
            std::set<int> months;
            if (!season_doc.contains("months"))
                fail("season " + label + ": needs a months list");
            for (const auto& m : season_doc.at("months"))
                months.insert(m.get<int>());
            try {
                config.seasons.emplace_back(std::move(months), label);
            } catch (const std::exception& e) {
                fail("season " + label + ": " + e.what());
            }
        }
    } else {
        config.seasons = {SeasonFilter::summer(), SeasonFilter::winter()};
    }

    if (doc.contains("routes")) {
        for (const auto& route_doc : doc.at("routes")) {
            RouteConfig route;
            route.route_id = require_id(route_doc, "route_id", "route");
            const std::string context = "route " + route.route_id;
            if (!route_doc.contains("locations") || route_doc.at("locations").size() < 1)
                fail(context + ": needs a locations list");
            for (const auto& loc : route_doc.at("locations")) {
                const std::string id = loc.get<std::string>();
                if (!seen_ids.count(id))
                    fail(context + ": unknown site id \"" + id + "\"");
                route.location_site_ids.push_back(id);
            }
            if (!route_doc.contains("profile") || route_doc.at("profile").empty())
                fail(context + ": needs profile legs");
            int total = 0;
            for (const auto& leg : route_doc.at("profile")) {
                if (!leg.is_array() || leg.size() != 2)
                    fail(context + ": profile legs are [location_index, dwell_hours] pairs");
                const auto index = leg.at(0).get<long long>();
                const int dwell = leg.at(1).get<int>();
                if (index < 1 || std::size_t(index) > route.location_site_ids.size())
                    fail(context + ": leg location index out of range");
                if (dwell < 1)
                    fail(context + ": leg dwell must be >= 1");
                route.profile.legs.emplace_back(std::size_t(index), dwell);
                total += dwell;
            }
            route.profile.zeta = total;
            config.routes.push_back(std::move(route));
        }
    }

    config.quality_bounds[VariableKind::SignificantWaveHeight] =
        default_quality_bounds(VariableKind::SignificantWaveHeight);
    config.quality_bounds[VariableKind::WindSpeed] =
        default_quality_bounds(VariableKind::WindSpeed);
    if (doc.contains("quality_bounds")) {
        for (const auto& [code, bounds] : doc.at("quality_bounds").items()) {
            const VariableKind kind = parse_variable(code, "quality_bounds");
            if (!bounds.is_array() || bounds.size() != 2)
                fail("quality_bounds: expected [min, max] for variable " + code);
            const QualityBounds qb{bounds.at(0).get<double>(), bounds.at(1).get<double>()};
            if (!(qb.min < qb.max))
                fail("quality_bounds: min must be less than max for variable " + code);
            config.quality_bounds[kind] = qb;
        }
    }

    config.output_dir = base / doc.value("output_dir", "out");
    return config;
}

} // namespace metocean
