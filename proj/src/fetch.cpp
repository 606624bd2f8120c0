#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "metocean/fetch.hpp"

#include <chrono>
#include <thread>

namespace metocean {

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
    return text;
}

struct UrlParts {
    std::string origin; // scheme://host[:port]
    std::string path;   // path + query, at least "/"
};

UrlParts split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("endpoint template must be an http(s) URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

int current_utc_year() {
    const auto now = std::chrono::system_clock::now();
    const std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(now)};
    return int(ymd.year());
}

bool is_timeout(httplib::Error err) {
    return err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
           err == httplib::Error::Write;
}

} // namespace

std::string fetch_historical(const std::string& station_id, int year,
                             const std::string& endpoint_template, const FetchPolicy& policy) {
    if (station_id.empty())
        throw std::invalid_argument("station id must be non-empty");
    if (year < 1970 || year > current_utc_year())
        throw std::invalid_argument("year out of range: " + std::to_string(year));

    const std::string url =
        substitute(substitute(endpoint_template, "{station}", station_id), "{year}",
                   std::to_string(year));
    const UrlParts parts = split_url(url);

    int backoff_ms = policy.initial_backoff_ms;
    for (int attempt = 0;; ++attempt) {
        httplib::Client client(parts.origin);
        client.set_connection_timeout(policy.timeout_seconds, 0);
        client.set_read_timeout(policy.timeout_seconds, 0);
        client.set_follow_location(true);

        httplib::Result res = client.Get(parts.path);
        if (res) {
            if (res->status == 404)
                throw FetchError(FetchErrorKind::NotFound, 404, "404 Not Found: " + url);
            if (res->status >= 400 && res->status < 500)
                throw FetchError(FetchErrorKind::HttpStatus, res->status,
                                 "HTTP " + std::to_string(res->status) + ": " + url);
            if (res->status >= 500) {
                if (attempt < policy.max_retries) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
                    backoff_ms *= 2;
                    continue;
                }
                throw FetchError(FetchErrorKind::HttpStatus, res->status,
                                 "HTTP " + std::to_string(res->status) + " after " +
                                     std::to_string(attempt + 1) + " attempts: " + url);
            }
            return res->body;
        }

        if (is_timeout(res.error()) && attempt < policy.max_retries) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
            continue;
        }
        const auto kind =
            is_timeout(res.error()) ? FetchErrorKind::Timeout : FetchErrorKind::Transport;
        throw FetchError(kind, 0,
                         "transport failure (" + httplib::to_string(res.error()) + "): " + url);
    }
}

} // namespace metocean
