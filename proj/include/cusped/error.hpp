#pragma once

#include <stdexcept>
#include <string>

namespace cusped {

// All library failures surface as this type with a human-readable message.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cusped
