#ifndef METOCEAN_REPORT_HPP
#define METOCEAN_REPORT_HPP

#include "metocean/metrics.hpp"
#include "metocean/tsr.hpp"

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace metocean {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// "H=2;v=12" (kinds in map order).
std::string limits_to_string(const std::map<VariableKind, double>& limits);

/// CSV with header subject,variable_limits,zeta,season,score,passed,evaluated,
/// excluded_missing. Failed cells leave the numeric columns blank; the error
/// tag is carried by the JSON serialization.
std::string sweep_to_csv(const std::vector<SweepCell>& cells);
nlohmann::json sweep_to_json(const std::vector<SweepCell>& cells);

struct SweepCsvRow {
    std::string subject;
    std::string variable_limits;
    std::string zeta;   // may be blank
    std::string season;
    std::optional<double> score; // absent for failed cells
    std::string passed, evaluated, excluded_missing;
};
std::vector<SweepCsvRow> sweep_rows_from_csv(std::string_view text, const std::string& file_label);

struct EvaluationRow {
    std::string site;
    VariableKind variable = VariableKind::SignificantWaveHeight;
    std::string model; // "tsr" | "numerical"
    EvaluationMetrics metrics;
};
std::string evaluation_to_csv(const std::vector<EvaluationRow>& rows);
std::vector<EvaluationRow> evaluation_from_csv(std::string_view text);

/// Side-by-side TSR vs numerical text table with a '*' on the better value
/// per metric (higher r2; smaller rmse and |bias|).
std::string render_evaluation_table(const std::vector<EvaluationRow>& rows);

/// Pivot of accessibility-style sweep rows: one block per (subject, season),
/// H* rows by zeta columns.
std::string render_sweep_table(const std::string& title, const std::vector<SweepCsvRow>& rows);

} // namespace metocean

#endif
