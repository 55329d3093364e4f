#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace umbra {

/// A documented precondition of an operation was violated.
class precondition_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operator-expression syntax error. `position` is a 1-based byte offset.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position, std::vector<std::string> expected = {})
        : std::runtime_error(what), position_(position), expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

}  // namespace umbra
