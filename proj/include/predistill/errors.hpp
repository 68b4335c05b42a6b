#pragma once

#include <stdexcept>

namespace predistill {

// A solver ran but could not produce a result meeting its contract.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace predistill
