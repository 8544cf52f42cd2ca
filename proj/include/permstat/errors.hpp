#pragma once

#include <stdexcept>
#include <string>

namespace permstat {

// Malformed input: bad permutation word, code vector outside L_n, unknown
// statistic or map name.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Work refused because it would exceed a configured degree cap.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permstat
