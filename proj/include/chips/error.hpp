#pragma once

#include <stdexcept>
#include <string>

namespace chips {

enum class ErrorKind {
    input,    // bad user input (files, flags, argument domains)
    internal  // violated invariant; indicates a bug
};

// Every error carries the component that raised it so the CLI can print
// "chips: <component>: message" and choose the exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string component, const std::string& message)
        : std::runtime_error(component + ": " + message),
          kind_(kind),
          component_(std::move(component)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& component() const { return component_; }

private:
    ErrorKind kind_;
    std::string component_;
};

[[noreturn]] inline void throw_input(const std::string& component, const std::string& message) {
    throw Error(ErrorKind::input, component, message);
}

[[noreturn]] inline void throw_internal(const std::string& component, const std::string& message) {
    throw Error(ErrorKind::internal, component, message);
}

}  // namespace chips
