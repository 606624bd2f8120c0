#include "metocean/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace metocean {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{})
        throw std::runtime_error("failed to format double");
    return std::string(buf, ptr);
}

std::string limits_to_string(const std::map<VariableKind, double>& limits) {
    std::string out;
    for (const auto& [kind, value] : limits) {
        if (!out.empty())
            out += ';';
        out += variable_code(kind);
        out += '=';
        out += format_double(value);
    }
    return out;
}

namespace {

constexpr std::string_view kSweepHeader =
    "subject,variable_limits,zeta,season,score,passed,evaluated,excluded_missing";

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            std::string_view f = line.substr(begin, i - begin);
            while (!f.empty() && (f.back() == '\r' || f.back() == ' '))
                f.remove_suffix(1);
            fields.emplace_back(f);
            begin = i + 1;
        }
    }
    return fields;
}

double parse_csv_double(const std::string& field, const std::string& context) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error(context + ": not a number: \"" + field + "\"");
    return value;
}

} // namespace

std::string sweep_to_csv(const std::vector<SweepCell>& cells) {
    std::string out{kSweepHeader};
    out += '\n';
    for (const auto& cell : cells) {
        out += cell.subject;
        out += ',';
        out += limits_to_string(cell.limits.limits);
        out += ',';
        if (cell.zeta)
            out += std::to_string(*cell.zeta);
        out += ',';
        out += cell.season;
        out += ',';
        if (cell.report) {
            out += format_double(cell.report->score);
            out += ',';
            out += std::to_string(cell.report->passed);
            out += ',';
            out += std::to_string(cell.report->evaluated);
            out += ',';
            out += std::to_string(cell.report->excluded_missing);
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    return out;
}

nlohmann::json sweep_to_json(const std::vector<SweepCell>& cells) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& cell : cells) {
        nlohmann::json rec;
        rec["subject"] = cell.subject;
        rec["metric"] = metric_name(cell.metric);
        nlohmann::json limits;
        for (const auto& [kind, value] : cell.limits.limits)
            limits[variable_code(kind)] = value;
        rec["limits"] = limits;
        if (cell.zeta)
            rec["zeta"] = *cell.zeta;
        rec["season"] = cell.season;
        if (cell.report) {
            rec["score"] = cell.report->score;
            rec["passed"] = cell.report->passed;
            rec["evaluated"] = cell.report->evaluated;
            rec["excluded_missing"] = cell.report->excluded_missing;
        } else {
            rec["error"] = cell.error;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SweepCsvRow> sweep_rows_from_csv(std::string_view text, const std::string& file_label) {
    std::vector<SweepCsvRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        const auto fields = split_line(line);
        if (!saw_header) {
            const auto expected = split_line(kSweepHeader);
            if (fields.size() != expected.size())
                throw std::runtime_error(file_label + ": malformed header: expected columns \"" +
                                         std::string(kSweepHeader) + "\"");
            for (std::size_t i = 0; i < expected.size(); ++i)
                if (fields[i] != expected[i])
                    throw std::runtime_error(file_label + ": missing or misplaced column \"" +
                                             expected[i] + "\"");
            saw_header = true;
            continue;
        }
        if (fields.size() != 8)
            throw std::runtime_error(file_label + ": expected 8 columns, found " +
                                     std::to_string(fields.size()));
        SweepCsvRow row;
        row.subject = fields[0];
        row.variable_limits = fields[1];
        row.zeta = fields[2];
        row.season = fields[3];
        if (!fields[4].empty())
            row.score = parse_csv_double(fields[4], file_label);
        row.passed = fields[5];
        row.evaluated = fields[6];
        row.excluded_missing = fields[7];
        rows.push_back(std::move(row));
    }
    if (!saw_header)
        throw std::runtime_error(file_label + ": missing or misplaced column \"subject\"");
    return rows;
}

std::string evaluation_to_csv(const std::vector<EvaluationRow>& rows) {
    std::string out = "site,variable,model,r2,rmse,bias,mae,n\n";
    for (const auto& row : rows) {
        out += row.site;
        out += ',';
        out += variable_code(row.variable);
        out += ',';
        out += row.model;
        out += ',';
        out += format_double(row.metrics.r2);
        out += ',';
        out += format_double(row.metrics.rmse);
        out += ',';
        out += format_double(row.metrics.bias);
        out += ',';
        out += format_double(row.metrics.mae);
        out += ',';
        out += std::to_string(row.metrics.n);
        out += '\n';
    }
    return out;
}

std::vector<EvaluationRow> evaluation_from_csv(std::string_view text) {
    std::vector<EvaluationRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        const auto fields = split_line(line);
        if (!saw_header) {
            const auto expected = split_line("site,variable,model,r2,rmse,bias,mae,n");
            if (fields.size() != expected.size())
                throw std::runtime_error("evaluation.csv: malformed header");
            for (std::size_t i = 0; i < expected.size(); ++i)
                if (fields[i] != expected[i])
                    throw std::runtime_error("evaluation.csv: missing or misplaced column \"" +
                                             expected[i] + "\"");
            saw_header = true;
            continue;
        }
        if (fields.size() != 8)
            throw std::runtime_error("evaluation.csv: expected 8 columns");
        EvaluationRow row;
        row.site = fields[0];
        const auto kind = variable_from_code(fields[1]);
        if (!kind)
            throw std::runtime_error("evaluation.csv: unknown variable \"" + fields[1] + "\"");
        row.variable = *kind;
        row.model = fields[2];
        row.metrics.r2 = parse_csv_double(fields[3], "evaluation.csv");
        row.metrics.rmse = parse_csv_double(fields[4], "evaluation.csv");
        row.metrics.bias = parse_csv_double(fields[5], "evaluation.csv");
        row.metrics.mae = parse_csv_double(fields[6], "evaluation.csv");
        row.metrics.n = std::size_t(parse_csv_double(fields[7], "evaluation.csv"));
        rows.push_back(std::move(row));
    }
    if (!saw_header)
        throw std::runtime_error("evaluation.csv: missing or misplaced column \"site\"");
    return rows;
}

namespace {

std::string fixed3(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v;
    return out.str();
}

} // namespace

std::string render_evaluation_table(const std::vector<EvaluationRow>& rows) {
    // site -> variable -> model -> metrics
    std::map<std::string, std::map<VariableKind, std::map<std::string, EvaluationMetrics>>> table;
    std::set<VariableKind> variables;
    for (const auto& row : rows) {
        table[row.site][row.variable][row.model] = row.metrics;
        variables.insert(row.variable);
    }

    std::ostringstream out;
    for (const VariableKind kind : variables) {
        out << "Variable " << variable_code(kind) << " (" << variable_unit(kind) << ")\n";
        out << "  " << std::left << std::setw(16) << "site" << std::right << std::setw(9) << "tsr_r2"
            << std::setw(10) << "tsr_rmse" << std::setw(10) << "tsr_bias" << std::setw(9) << "num_r2"
            << std::setw(10) << "num_rmse" << std::setw(10) << "num_bias" << "\n";
        for (const auto& [site, by_var] : table) {
            const auto it = by_var.find(kind);
            if (it == by_var.end())
                continue;
            const auto tsr = it->second.find("tsr");
            const auto num = it->second.find("numerical");
            if (tsr == it->second.end() || num == it->second.end())
                continue;
            const auto flag = [](bool best) { return best ? "*" : " "; };
            const auto& a = tsr->second;
            const auto& b = num->second;
            out << "  " << std::left << std::setw(16) << site << std::right
                << std::setw(8) << fixed3(a.r2) << flag(a.r2 >= b.r2)
                << std::setw(9) << fixed3(a.rmse) << flag(a.rmse <= b.rmse)
                << std::setw(9) << fixed3(a.bias) << flag(std::abs(a.bias) <= std::abs(b.bias))
                << std::setw(8) << fixed3(b.r2) << flag(b.r2 > a.r2)
                << std::setw(9) << fixed3(b.rmse) << flag(b.rmse < a.rmse)
                << std::setw(9) << fixed3(b.bias) << flag(std::abs(b.bias) < std::abs(a.bias))
                << "\n";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_sweep_table(const std::string& title, const std::vector<SweepCsvRow>& rows) {
    // (subject, season) -> limits -> zeta -> score; zeta -1 = not applicable
    std::map<std::pair<std::string, std::string>,
             std::map<std::string, std::map<int, std::string>>>
        blocks;
    std::set<int> zetas;
    for (const auto& row : rows) {
        int zeta = -1;
        if (!row.zeta.empty()) {
            const auto [ptr, ec] =
                std::from_chars(row.zeta.data(), row.zeta.data() + row.zeta.size(), zeta);
            if (ec != std::errc{} || ptr != row.zeta.data() + row.zeta.size())
                throw std::runtime_error(title + ": malformed zeta \"" + row.zeta + "\"");
        }
        zetas.insert(zeta);
        blocks[{row.subject, row.season}][row.variable_limits][zeta] =
            row.score ? fixed3(*row.score) : std::string("err");
    }

    const auto zeta_label = [](int z) { return z < 0 ? std::string("z=-") : "z=" + std::to_string(z); };

    std::ostringstream out;
    out << title << "\n";
    for (const auto& [key, by_limits] : blocks) {
        out << "  " << key.first << " [" << key.second << "]\n";
        out << "    " << std::left << std::setw(22) << "limits";
        for (const int z : zetas)
            out << std::right << std::setw(8) << zeta_label(z);
        out << "\n";
        for (const auto& [limits, by_zeta] : by_limits) {
            out << "    " << std::left << std::setw(22) << limits;
            for (const int z : zetas) {
                const auto it = by_zeta.find(z);
                out << std::right << std::setw(8) << (it == by_zeta.end() ? "." : it->second);
            }
            out << "\n";
        }
    }
    out << "\n";
    return out.str();
}

} // namespace metocean
