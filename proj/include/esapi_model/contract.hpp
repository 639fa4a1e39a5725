#pragma once

#include <stdexcept>
#include <string>

namespace esapi_model {

/// Thrown when a checked precondition of a modeled function does not hold.
class ContractError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

constexpr void require(bool cond, const char* what)
{
    if (!cond)
        throw ContractError(what);
}

} // namespace esapi_model
