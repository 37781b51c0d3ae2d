#include "finseer/fetch.hpp"

#include "finseer/errors.hpp"

#include <httplib.h>

#include <cmath>
#include <string>

namespace finseer {

namespace {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path; // /rest, defaults to /
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw FetchError("unsupported URL '" + url + "': expected http:// or https://");
    }
    std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw FetchError("unsupported URL scheme '" + scheme + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

std::string fetch_csv(const std::string& url, double timeout_seconds) {
    if (!(timeout_seconds > 0)) throw ParameterError("timeout must be > 0 seconds");
    SplitUrl parts = split_url(url);

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (parts.base.rfind("https://", 0) == 0) {
        throw FetchError("https fetch requires a TLS-enabled build");
    }
#endif

    httplib::Client client(parts.base);
    auto secs = static_cast<time_t>(timeout_seconds);
    auto usecs = static_cast<time_t>((timeout_seconds - std::floor(timeout_seconds)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);

    httplib::Headers headers = {{"Accept", "text/csv"}};
    auto res = client.Get(parts.path, headers);
    if (!res) {
        throw FetchError("fetch failed for '" + url + "': " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw FetchError("fetch failed for '" + url + "': HTTP status " +
                             std::to_string(res->status),
                         res->status);
    }
    return res->body;
}

} // namespace finseer
