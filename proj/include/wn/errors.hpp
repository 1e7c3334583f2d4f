#pragma once

#include <stdexcept>
#include <string>

namespace wn {

// Thrown when a series has zero lag-0 autocovariance (e.g. a constant
// series after demeaning), so autocorrelations are undefined.
class DegenerateSeriesError : public std::runtime_error {
public:
    explicit DegenerateSeriesError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace wn
