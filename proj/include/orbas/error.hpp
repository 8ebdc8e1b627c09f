#pragma once

#include <stdexcept>
#include <string>

namespace orbas {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (empty sequence, threshold out of range, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class RepositoryExists : public Error {
public:
    using Error::Error;
};

class RepositoryCorrupt : public Error {
public:
    using Error::Error;
};

/// Brute-force oracle refused an instance above its size guard.
class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace orbas
