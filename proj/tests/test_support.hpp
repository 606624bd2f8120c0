#ifndef METOCEAN_TEST_SUPPORT_HPP
#define METOCEAN_TEST_SUPPORT_HPP

#include "metocean/timeseries.hpp"

#include <optional>
#include <random>
#include <vector>

namespace testsupport {

using metocean::HourIndex;
using metocean::HourlyTimeSeries;
using metocean::VariableKind;

/// Random hourly series with the given missingness probability.
inline HourlyTimeSeries random_series(std::mt19937& rng, VariableKind kind, HourIndex start,
                                      std::size_t length, double missing_prob,
                                      double max_value = 5.0,
                                      const std::string& site = "synthetic") {
    std::uniform_real_distribution<double> value(0.0, max_value);
    std::bernoulli_distribution gap(missing_prob);
    std::vector<std::optional<double>> values(length);
    for (auto& v : values)
        if (!gap(rng))
            v = value(rng);
    return HourlyTimeSeries(kind, start, std::move(values), site);
}

} // namespace testsupport

#endif
