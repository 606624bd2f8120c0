#ifndef METOCEAN_TSR_HPP
#define METOCEAN_TSR_HPP

#include "metocean/timeseries.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace metocean {

/// Trigonometric basis configuration: K sine/cosine pairs per period, one
/// basis on a 720-hour (monthly) cycle and one on 8760 hours (yearly).
struct FourierConfig {
    int harmonics = 8;
    double period_short = 720.0;
    double period_long = 8760.0;
};

void validate(const FourierConfig& config);

/// Basis values at hour offset t, ordered
/// [s_1..s_K, c_1..c_K, s'_1..s'_K, c'_1..c'_K] with s_k = sin(2*pi*k*t/720),
/// c_k = cos(2*pi*k*t/720) and the primed pair on the 8760-hour period.
std::vector<double> fourier_features(std::int64_t t, const FourierConfig& config);

struct DesignRow {
    std::int64_t t;                // hour offset from the design epoch
    std::vector<double> features;  // [1, x~_t, x~_{t-1}, x~_{t-24}, bases...]
    double target;                 // observed value
};

struct DesignMatrix {
    VariableKind variable;
    std::string site_id;
    HourIndex epoch;
    FourierConfig config;
    std::vector<DesignRow> rows;
    std::size_t dropped_rows = 0; // grid hours lacking the target or a lag

    std::size_t feature_count() const { return std::size_t(4 + 4 * config.harmonics); }
};

/// One usable row per hour where the observation, the current numerical value
/// and both lags (1 h, 24 h) are present. Both series must share one grid and
/// the epoch must not postdate it. Throws "underdetermined" when fewer than
/// 4+4K+1 rows remain.
DesignMatrix build_design(const HourlyTimeSeries& numerical, const HourlyTimeSeries& observed,
                          HourIndex epoch, const FourierConfig& config);

/// Calibration model regressing observations on numerical-model output with
/// lagged terms and two trigonometric bases.
struct TsrModel {
    VariableKind variable;
    std::string site_id;
    HourIndex epoch = 0;
    FourierConfig config;
    std::array<double, 4> theta{};  // intercept, current, lag-1h, lag-24h
    std::vector<double> alpha;      // K short-period sine coefficients
    std::vector<double> beta;       // K short-period cosine coefficients
    std::vector<double> psi;        // K long-period sine coefficients
    std::vector<double> omega;      // K long-period cosine coefficients
    double eta_hat = 0.0;           // residual variance estimate, SSE/(n-p)
    std::size_t n_train = 0;
    bool rank_deficient = false;

    /// Packed order [theta0..theta3, alpha_1..K, beta_1..K, psi_1..K, omega_1..K].
    std::vector<double> coefficients() const;
};

/// Ordinary least squares via a rank-revealing orthogonal factorization.
/// A rank-deficient design yields the minimum-norm solution and sets the
/// rank_deficient flag instead of failing.
TsrModel fit(const DesignMatrix& design);

/// Calibrated series: model output wherever the numerical value and both lags
/// are present, with negative outputs clamped to zero.
HourlyTimeSeries predict(const TsrModel& model, const HourlyTimeSeries& numerical);

/// Unclamped model outputs on the numerical series' grid, for sensitivity
/// analysis of the clamping rule.
std::vector<std::optional<double>> predict_raw(const TsrModel& model,
                                               const HourlyTimeSeries& numerical);

struct EvaluationMetrics {
    double r2 = 0.0;
    double rmse = 0.0;
    double bias = 0.0;
    double mae = 0.0;
    std::size_t n = 0;
};

/// Test-set comparison over jointly present slots of two aligned series.
EvaluationMetrics evaluate(const HourlyTimeSeries& predicted, const HourlyTimeSeries& observed);

/// As evaluate() but for raw prediction slots sharing the observed grid.
EvaluationMetrics evaluate_values(std::span<const std::optional<double>> predicted,
                                  const HourlyTimeSeries& observed);

/// Picks the harmonic count minimizing validation-set MAE; ties go to the
/// smallest candidate.
int select_harmonics(const HourlyTimeSeries& train_numerical,
                     const HourlyTimeSeries& train_observed,
                     const HourlyTimeSeries& validation_numerical,
                     const HourlyTimeSeries& validation_observed, HourIndex epoch,
                     const FourierConfig& base, const std::vector<int>& candidates);

/// Default model epoch, 2019-01-01T00:00Z. Coefficients depend on the epoch
/// but predictions do not.
HourIndex default_epoch();

nlohmann::json model_to_json(const TsrModel& model);
TsrModel model_from_json(const nlohmann::json& doc);

} // namespace metocean

#endif
