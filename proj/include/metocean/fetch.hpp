#ifndef METOCEAN_FETCH_HPP
#define METOCEAN_FETCH_HPP

#include <stdexcept>
#include <string>

namespace metocean {

enum class FetchErrorKind {
    Transport, // connection-level failure (refused, reset, DNS)
    Timeout,   // connect/read timeout after all retries
    HttpStatus,// HTTP status >= 400 other than 404
    NotFound,  // HTTP 404
};

class FetchError : public std::runtime_error {
public:
    FetchError(FetchErrorKind kind, int status, const std::string& message)
        : std::runtime_error(message), kind_(kind), status_(status) {}
    FetchErrorKind kind() const { return kind_; }
    int status() const { return status_; } // 0 for non-HTTP failures

private:
    FetchErrorKind kind_;
    int status_;
};

struct FetchPolicy {
    int max_retries = 3;          // on timeouts and 5xx only
    int initial_backoff_ms = 1000;
    int timeout_seconds = 30;
};

/// Downloads one historical observation archive. The URL template carries
/// "{station}" and "{year}" placeholders. Returns the raw response body;
/// never parses it.
std::string fetch_historical(const std::string& station_id, int year,
                             const std::string& endpoint_template, const FetchPolicy& policy = {});

} // namespace metocean

#endif
