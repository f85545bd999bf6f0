#pragma once

#include <stdexcept>
#include <string>

namespace infotweet {

// Exit-code contract: usage errors exit 1, data errors exit 2, anything
// else that escapes exits 3.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class UnsupportedOperationError : public std::runtime_error {
public:
    explicit UnsupportedOperationError(const std::string& msg)
        : std::runtime_error(msg) {}
};

}  // namespace infotweet
