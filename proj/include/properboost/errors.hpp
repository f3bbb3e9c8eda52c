#pragma once

#include <stdexcept>
#include <string>

namespace properboost {

// Bad user input: unknown loss/model name, invalid dataset parameters, ...
// The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine could not deliver its contract (bracket blow-up,
// non-convergence). The CLI maps it to exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The leveraging equation has no finite root: the hypothesis (or its
// negation) classifies its region perfectly and the link is unbounded.
class DegenerateLeveraging : public NumericError {
public:
    DegenerateLeveraging(const std::string& what, int direction)
        : NumericError(what), direction_(direction) {}

    // +1 when the root escapes to +infinity, -1 for -infinity.
    int direction() const noexcept { return direction_; }

private:
    int direction_;
};

} // namespace properboost
