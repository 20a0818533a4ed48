#pragma once

#include <stdexcept>
#include <string>

namespace permgeo {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Vectors or files disagree on the number of individuals.
class DimensionError : public Error
{
public:
    using Error::Error;
};

// Malformed input file content.
class FormatError : public Error
{
public:
    using Error::Error;
};

// Argument outside the operation's domain (alpha, t, radius, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

// Exhaustive enumeration would exceed the configured budget.
class BudgetError : public Error
{
public:
    using Error::Error;
};

} // namespace permgeo
