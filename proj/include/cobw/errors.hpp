#pragma once

#include <stdexcept>
#include <string>

namespace cobw {

// Raised when an identity that must hold (a proven one) fails on computed values.
// Distinct from bad input: this always means a bug or a false premise.
class VerificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace cobw
