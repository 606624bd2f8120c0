#include "metocean/tsr.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace metocean {

void validate(const FourierConfig& config) {
    if (config.harmonics < 1)
        throw std::invalid_argument("fourier harmonics must be >= 1");
    if (!(config.period_short > 0.0) || !(config.period_long > 0.0))
        throw std::invalid_argument("fourier periods must be positive");
    if (!(config.period_short < config.period_long))
        throw std::invalid_argument("short period must be less than long period");
}

std::vector<double> fourier_features(std::int64_t t, const FourierConfig& config) {
    validate(config);
    const auto K = std::size_t(config.harmonics);
    std::vector<double> features(4 * K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double arg_short = 2.0 * std::numbers::pi * double(k) * double(t) / config.period_short;
        const double arg_long = 2.0 * std::numbers::pi * double(k) * double(t) / config.period_long;
        features[k - 1] = std::sin(arg_short);
        features[K + k - 1] = std::cos(arg_short);
        features[2 * K + k - 1] = std::sin(arg_long);
        features[3 * K + k - 1] = std::cos(arg_long);
    }
    return features;
}

DesignMatrix build_design(const HourlyTimeSeries& numerical, const HourlyTimeSeries& observed,
                          HourIndex epoch, const FourierConfig& config) {
    validate(config);
    if (numerical.variable() != observed.variable())
        throw std::invalid_argument("design requires matching variable kinds");
    if (numerical.start() != observed.start() || numerical.size() != observed.size())
        throw std::invalid_argument("design requires aligned series; align() them first");
    if (epoch > numerical.start())
        throw std::invalid_argument("epoch must not postdate the series start");

    DesignMatrix design{observed.variable(), observed.site_id(), epoch, config, {}, 0};
    const std::int64_t offset = numerical.start() - epoch;
    const std::size_t p = design.feature_count();

    for (std::size_t i = 0; i < observed.size(); ++i) {
        const auto& target = observed[i];
        const auto& current = numerical[i];
        const bool has_lag1 = i >= 1 && numerical[i - 1].has_value();
        const bool has_lag24 = i >= 24 && numerical[i - 24].has_value();
        if (!target || !current || !has_lag1 || !has_lag24) {
            ++design.dropped_rows;
            continue;
        }
        const std::int64_t t = offset + std::int64_t(i);
        DesignRow row{t, {}, *target};
        row.features.reserve(p);
        row.features.push_back(1.0);
        row.features.push_back(*current);
        row.features.push_back(*numerical[i - 1]);
        row.features.push_back(*numerical[i - 24]);
        const auto basis = fourier_features(t, config);
        row.features.insert(row.features.end(), basis.begin(), basis.end());
        design.rows.push_back(std::move(row));
    }

    if (design.rows.size() < p + 1)
        throw std::runtime_error("underdetermined: " + std::to_string(design.rows.size()) +
                                 " usable rows for " + std::to_string(p) + " coefficients (site " +
                                 design.site_id + ", " + variable_code(design.variable) + ")");
    return design;
}

std::vector<double> TsrModel::coefficients() const {
    std::vector<double> packed(theta.begin(), theta.end());
    packed.insert(packed.end(), alpha.begin(), alpha.end());
    packed.insert(packed.end(), beta.begin(), beta.end());
    packed.insert(packed.end(), psi.begin(), psi.end());
    packed.insert(packed.end(), omega.begin(), omega.end());
    return packed;
}

TsrModel fit(const DesignMatrix& design) {
    validate(design.config);
    const std::size_t n = design.rows.size();
    const std::size_t p = design.feature_count();
    if (n < p)
        throw std::runtime_error("underdetermined: " + std::to_string(n) + " rows for " +
                                 std::to_string(p) + " coefficients");

    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const DesignRow& row = design.rows[i];
        if (row.features.size() != p)
            throw std::invalid_argument("design row has wrong feature count");
        for (std::size_t j = 0; j < p; ++j) {
            if (!std::isfinite(row.features[j]))
                throw std::invalid_argument("non-finite design feature");
            X(long(i), long(j)) = row.features[j];
        }
        if (!std::isfinite(row.target))
            throw std::invalid_argument("non-finite design target");
        y(long(i)) = row.target;
    }

    // Rank-revealing orthogonal factorization; minimum-norm solution when the
    // design loses column rank.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X);
    const Eigen::VectorXd coeffs = cod.solve(y);
    const double sse = (y - X * coeffs).squaredNorm();

    const auto K = std::size_t(design.config.harmonics);
    TsrModel model;
    model.variable = design.variable;
    model.site_id = design.site_id;
    model.epoch = design.epoch;
    model.config = design.config;
    for (std::size_t j = 0; j < 4; ++j)
        model.theta[j] = coeffs(long(j));
    const auto block = [&](std::size_t offset) {
        return std::vector<double>(coeffs.data() + 4 + offset * K, coeffs.data() + 4 + (offset + 1) * K);
    };
    model.alpha = block(0);
    model.beta = block(1);
    model.psi = block(2);
    model.omega = block(3);
    model.n_train = n;
    model.rank_deficient = std::size_t(cod.rank()) < p;
    model.eta_hat = n > p ? sse / double(n - p) : 0.0;
    return model;
}

namespace {

double model_output(const TsrModel& model, double current, double lag1, double lag24,
                    std::int64_t t) {
    double value = model.theta[0] + model.theta[1] * current + model.theta[2] * lag1 +
                   model.theta[3] * lag24;
    const auto basis = fourier_features(t, model.config);
    const auto K = std::size_t(model.config.harmonics);
    for (std::size_t k = 0; k < K; ++k) {
        value += model.alpha[k] * basis[k];
        value += model.beta[k] * basis[K + k];
        value += model.psi[k] * basis[2 * K + k];
        value += model.omega[k] * basis[3 * K + k];
    }
    return value;
}

} // namespace

std::vector<std::optional<double>> predict_raw(const TsrModel& model,
                                               const HourlyTimeSeries& numerical) {
    if (model.variable != numerical.variable())
        throw std::invalid_argument("model/series variable mismatch");
    if (model.alpha.size() != std::size_t(model.config.harmonics) ||
        model.beta.size() != model.alpha.size() || model.psi.size() != model.alpha.size() ||
        model.omega.size() != model.alpha.size())
        throw std::invalid_argument("model coefficient blocks do not match K");

    const std::int64_t offset = numerical.start() - model.epoch;
    std::vector<std::optional<double>> out(numerical.size());
    for (std::size_t i = 0; i < numerical.size(); ++i) {
        if (!numerical[i] || i < 1 || !numerical[i - 1] || i < 24 || !numerical[i - 24])
            continue;
        out[i] = model_output(model, *numerical[i], *numerical[i - 1], *numerical[i - 24],
                              offset + std::int64_t(i));
    }
    return out;
}

HourlyTimeSeries predict(const TsrModel& model, const HourlyTimeSeries& numerical) {
    auto values = predict_raw(model, numerical);
    for (auto& v : values)
        if (v && *v < 0.0)
            v = 0.0;
    return HourlyTimeSeries(model.variable, numerical.start(), std::move(values),
                            numerical.site_id());
}

EvaluationMetrics evaluate_values(std::span<const std::optional<double>> predicted,
                                  const HourlyTimeSeries& observed) {
    if (predicted.size() != observed.size())
        throw std::invalid_argument("evaluation requires aligned grids");

    double sum_diff = 0.0, sum_sq = 0.0, sum_abs = 0.0, sum_obs = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!predicted[i] || !observed[i])
            continue;
        const double d = *predicted[i] - *observed[i];
        sum_diff += d;
        sum_sq += d * d;
        sum_abs += std::abs(d);
        sum_obs += *observed[i];
        ++n;
    }
    if (n < 2)
        throw std::runtime_error("evaluation needs at least 2 jointly present slots");

    const double mean_obs = sum_obs / double(n);
    double sst = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] && observed[i])
            sst += (*observed[i] - mean_obs) * (*observed[i] - mean_obs);
    if (sst <= 0.0)
        throw std::runtime_error("zero observed variance: r2 undefined");

    EvaluationMetrics m;
    m.n = n;
    m.bias = sum_diff / double(n);
    m.rmse = std::sqrt(sum_sq / double(n));
    m.mae = sum_abs / double(n);
    m.r2 = 1.0 - sum_sq / sst;
    return m;
}

EvaluationMetrics evaluate(const HourlyTimeSeries& predicted, const HourlyTimeSeries& observed) {
    if (predicted.variable() != observed.variable())
        throw std::invalid_argument("evaluation requires matching variable kinds");
    if (predicted.start() != observed.start())
        throw std::invalid_argument("evaluation requires aligned grids");
    return evaluate_values(predicted.values(), observed);
}

int select_harmonics(const HourlyTimeSeries& train_numerical,
                     const HourlyTimeSeries& train_observed,
                     const HourlyTimeSeries& validation_numerical,
                     const HourlyTimeSeries& validation_observed, HourIndex epoch,
                     const FourierConfig& base, const std::vector<int>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("no harmonic candidates");

    int best_k = 0;
    double best_mae = std::numeric_limits<double>::infinity();
    for (const int k : candidates) {
        FourierConfig config = base;
        config.harmonics = k;
        const TsrModel model = fit(build_design(train_numerical, train_observed, epoch, config));
        const auto metrics =
            evaluate(predict(model, validation_numerical), validation_observed);
        if (metrics.mae < best_mae) {
            best_mae = metrics.mae;
            best_k = k;
        }
    }
    return best_k;
}

HourIndex default_epoch() { return utc_hour(2019, 1, 1, 0); }

nlohmann::json model_to_json(const TsrModel& model) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["site_id"] = model.site_id;
    doc["variable"] = variable_code(model.variable);
    doc["epoch"] = format_utc_hour(model.epoch);
    doc["harmonics"] = model.config.harmonics;
    doc["period_short"] = model.config.period_short;
    doc["period_long"] = model.config.period_long;
    doc["coefficients"] = model.coefficients();
    doc["eta_hat"] = model.eta_hat;
    doc["n_train"] = model.n_train;
    doc["rank_deficient"] = model.rank_deficient;
    return doc;
}

TsrModel model_from_json(const nlohmann::json& doc) {
    if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported model schema version");

    TsrModel model;
    model.site_id = doc.at("site_id").get<std::string>();
    const auto kind = variable_from_code(doc.at("variable").get<std::string>());
    if (!kind)
        throw std::runtime_error("unknown variable code in model document");
    model.variable = *kind;
    model.epoch = parse_utc_hour(doc.at("epoch").get<std::string>());
    model.config.harmonics = doc.at("harmonics").get<int>();
    model.config.period_short = doc.at("period_short").get<double>();
    model.config.period_long = doc.at("period_long").get<double>();
    validate(model.config);

    const auto packed = doc.at("coefficients").get<std::vector<double>>();
    const auto K = std::size_t(model.config.harmonics);
    if (packed.size() != 4 + 4 * K)
        throw std::runtime_error("coefficient vector length does not match 4+4K");
    for (const double c : packed)
        if (!std::isfinite(c))
            throw std::runtime_error("non-finite model coefficient");
    std::copy(packed.begin(), packed.begin() + 4, model.theta.begin());
    const auto block = [&](std::size_t offset) {
        return std::vector<double>(packed.begin() + long(4 + offset * K),
                                   packed.begin() + long(4 + (offset + 1) * K));
    };
    model.alpha = block(0);
    model.beta = block(1);
    model.psi = block(2);
    model.omega = block(3);

    model.eta_hat = doc.at("eta_hat").get<double>();
    if (!(model.eta_hat >= 0.0) || !std::isfinite(model.eta_hat))
        throw std::runtime_error("eta_hat must be finite and non-negative");
    model.n_train = doc.at("n_train").get<std::size_t>();
    model.rank_deficient = doc.value("rank_deficient", false);
    return model;
}

} // namespace metocean
