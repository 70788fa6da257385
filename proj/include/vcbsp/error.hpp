#pragma once

#include <stdexcept>
#include <string>

namespace vcbsp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files (edge lists, option strings).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace vcbsp
