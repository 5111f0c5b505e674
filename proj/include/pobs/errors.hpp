#pragma once

#include <stdexcept>
#include <string>

namespace pobs {

//! Invalid configuration: bandwidth, kernel, empty evaluation window, ...
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! Input data that cannot be used (empty, degenerate, violates a design
//! inequality).
class DataError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! The estimator is undefined at the requested point, typically because the
//! kernel mass around it is zero.
class NotEstimable : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace pobs
