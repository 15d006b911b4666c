// SPDX-License-Identifier: Apache-2.0
//
// Error types shared by every stage of the simulator. Validation-style
// failures derive from InvalidInput so the CLI can map them to exit code 2.

#ifndef AROF_ERRORS_HPP
#define AROF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arof
{

class InvalidInput : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// RF tones would spill into a neighbouring optical channel.
class ToneOverlapError : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

// MZM harmonics of two distinct input lines land on the same frequency.
class AliasingError : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class RangeError : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class DegenerateBeatError : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

class DeadElementError : public std::runtime_error
{
public:
    DeadElementError(std::size_t element, std::string band)
        : std::runtime_error("antenna element " + std::to_string(element) + " has no tones in band '" + band + "'"),
          element_(element), band_(std::move(band))
    {
    }
    std::size_t element() const noexcept { return element_; }
    const std::string &band() const noexcept { return band_; }

private:
    std::size_t element_;
    std::string band_;
};

class NoPeakError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Config parse/validation failure; line is 0 when not tied to a line.
class ConfigError : public InvalidInput
{
public:
    ConfigError(std::size_t line, const std::string &message)
        : InvalidInput(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error
{
public:
    IoError(const std::string &path, const std::string &what)
        : std::runtime_error(path + ": " + what), path_(path)
    {
    }
    const std::string &path() const noexcept { return path_; }

private:
    std::string path_;
};

// Wraps a runtime failure with the name of the chain stage that raised it.
class StageError : public std::runtime_error
{
public:
    StageError(std::string stage, const std::string &what)
        : std::runtime_error("stage '" + stage + "': " + what), stage_(std::move(stage))
    {
    }
    const std::string &stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace arof

#endif
