#ifndef QFORCE_ERROR_HPP
#define QFORCE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qforce {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Undamped oscillator evaluated exactly on resonance.
class ResonanceError : public Error {
public:
    using Error::Error;
};

/// Prior covariance is singular (a bin with zero prior spectrum).
class SingularPriorError : public Error {
public:
    using Error::Error;
};

/// Total Fisher information is not invertible.
class SingularFisherError : public Error {
public:
    using Error::Error;
};

class NonCirculantError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class UnsupportedPriorError : public Error {
public:
    using Error::Error;
};

/// Covariance lost positive semidefiniteness during a recursion.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration; key() names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace qforce

#endif  // QFORCE_ERROR_HPP
