#ifndef SEMICIRCLE_ERRORS_HPP
#define SEMICIRCLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semicircle
{

/// Base class for every error thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Exact integer result does not fit in 64 bits.
class overflow_error : public error
{
public:
    using error::error;
};

/// Argument outside the documented domain of an operation.
class domain_error : public error
{
public:
    using error::error;
};

/// Operands with incompatible or too small dimensions.
class dimension_error : public error
{
public:
    using error::error;
};

/// A series or quadrature failed to reach its tolerance within the term cap.
class convergence_error : public error
{
public:
    using error::error;
};

/// A truncated computation cannot represent the requested quantity.
class truncation_error : public error
{
public:
    using error::error;
};

/// A numerical postcondition (norm preservation, singular node) was violated.
class numerical_error : public error
{
public:
    using error::error;
};

} // namespace semicircle

#endif
