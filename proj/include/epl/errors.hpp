#pragma once

#include <stdexcept>
#include <string>

namespace epl {

// Error taxonomy shared by all modules. Messages are prefixed with the
// owning module name so the CLI can propagate them verbatim.

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct constraint_error : parameter_error {
    using parameter_error::parameter_error;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_partition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct applicability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace epl
