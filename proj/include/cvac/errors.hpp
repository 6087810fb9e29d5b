#pragma once

#include <stdexcept>
#include <string>

namespace cvac {

// Bad or inconsistent input data. The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class ScheduleError : public InputError {
public:
    using InputError::InputError;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

// A numerical procedure failed on otherwise valid input. Exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CalibrationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace cvac
