#pragma once

#include <stdexcept>
#include <string>

namespace qlocker {

// Base for every error raised by the library. Subclasses name the failure
// category so callers (and the CLI exit-code mapping) can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapacityError : public Error { using Error::Error; };
class IndexError : public Error { using Error::Error; };
class NumericalError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class InputError : public Error { using Error::Error; };

// Protocol-level failures.
class ChannelError : public Error { using Error::Error; };
class InvalidMessageError : public Error { using Error::Error; };
class OneTimeError : public Error { using Error::Error; };

}  // namespace qlocker
