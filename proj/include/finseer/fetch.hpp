#pragma once

#include <string>

namespace finseer {

// Blocking HTTP GET returning the response body on status 200.
// Accepts http:// and https:// URLs; anything else is a FetchError, as is a
// network failure, a timeout, or a non-200 status (carried in the error).
// The body is returned whole or not at all.
std::string fetch_csv(const std::string& url, double timeout_seconds = 30.0);

} // namespace finseer
