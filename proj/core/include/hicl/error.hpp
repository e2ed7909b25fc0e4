#pragma once

#include <stdexcept>
#include <string>

namespace hicl {

// Malformed input data, files, or configuration. The CLI maps this to exit code 2.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown (non-finite values, solver failure). CLI exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hicl
