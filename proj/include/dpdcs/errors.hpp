#pragma once

#include <stdexcept>
#include <string>

namespace dpdcs {

// Input that does not conform to one of the text formats.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its contract (wrong graph class, bad ids, ...).
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A solver refused to run because the instance exceeds its configured cap.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dpdcs
