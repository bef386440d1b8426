#pragma once

#include <stdexcept>
#include <string>

namespace runmove {

enum class Errc {
    invalid_spec,
    bounds,
    overflow,
    invalid_permutation,
    invalid_parameter,
    unsupported_mode,
    invalid_input,
    missing_column,
    corrupt_file,
    io,
    too_large,
};

const char* to_string(Errc code) noexcept;

// Every failure the library reports is an Error carrying a category code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace runmove
