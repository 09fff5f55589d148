#pragma once

#include <stdexcept>
#include <string>

namespace orbitpit {

// Shared exception vocabulary.  Every throwing operation in the library uses
// one of these so callers (and the CLI) can map failures to exit codes
// without string matching.

struct dimension_error : std::invalid_argument {
    explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

struct shape_error : std::invalid_argument {
    explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

struct parameter_error : std::invalid_argument {
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

struct size_error : std::invalid_argument {
    explicit size_error(const std::string& what) : std::invalid_argument(what) {}
};

struct interpolation_error : std::invalid_argument {
    explicit interpolation_error(const std::string& what) : std::invalid_argument(what) {}
};

struct empty_input_error : std::invalid_argument {
    explicit empty_input_error(const std::string& what) : std::invalid_argument(what) {}
};

struct parse_error : std::invalid_argument {
    explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace orbitpit
