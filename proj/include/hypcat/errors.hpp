#pragma once

#include <stdexcept>
#include <string>

namespace hypcat {

// Error taxonomy. The CLI maps these onto exit codes: DomainError -> 2,
// every solver failure -> 3, ConfigError -> 4.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSignChange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompleteSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IllConditionedFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hypcat
