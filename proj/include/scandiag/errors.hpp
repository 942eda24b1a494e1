#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scandiag {

// Bad parameter values, unknown names, invalid weight vectors.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation domain (scan region after boundary exclusion) too small for a reduction.
class InsufficientDomain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Statistic undefined for the input, e.g. correlation with a constant vector.
class DegenerateStatistic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two data sources disagree on which strategies they cover.
class InputMismatch : public std::runtime_error {
public:
    InputMismatch(const std::string& what, std::vector<std::string> ids)
        : std::runtime_error(what), ids_(std::move(ids)) {}

    const std::vector<std::string>& ids() const noexcept { return ids_; }

private:
    std::vector<std::string> ids_;
};

// Unparseable input file. line() is 1-based; 0 when no line applies.
class MalformedInput : public std::runtime_error {
public:
    MalformedInput(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace scandiag
