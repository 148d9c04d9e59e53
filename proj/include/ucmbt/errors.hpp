#pragma once

#include <stdexcept>
#include <string>

namespace ucmbt {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

} // namespace ucmbt
