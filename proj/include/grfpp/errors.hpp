#pragma once

#include <stdexcept>
#include <string>

namespace grfpp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace grfpp
