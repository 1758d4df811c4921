// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_ERROR_HPP
#define FRACLAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fraclap
{

// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition (out-of-range s, unsupported rule order, ...).
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

// An iterative solver ran out of iterations.
class ConvergenceError : public Error
{
public:
  using Error::Error;
};

// A structural assumption failed at runtime: negative da/du, failed factorization,
// negative quadratic form.
class NumericalError : public Error
{
public:
  using Error::Error;
};

// File could not be read or written, or its content does not parse.
class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace fraclap

#endif  // FRACLAP_ERROR_HPP
