#ifndef EQS_ERRORS_HPP
#define EQS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqs {

// Caller broke a precondition (bad argument, bad config). CLI maps this to exit 1.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data is missing or malformed. CLI maps this to exit 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eqs

#endif
