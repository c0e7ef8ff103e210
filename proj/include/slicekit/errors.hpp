#pragma once

#include <stdexcept>
#include <string>

namespace slicekit {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A constructor or operation precondition was violated.
struct contract_error : error {
    using error::error;
};

// A point fell outside a declared domain (diffeomorphism box, interval, ...).
struct domain_error : error {
    using error::error;
};

// An input hit a singular locus: x on the sphere [s], vanishing vector part,
// a Moebius pole, a degenerate Jacobian.
struct singular_error : error {
    using error::error;
};

// Requested dimension is outside what an operation supports.
struct unsupported_dimension_error : error {
    using error::error;
};

// Config text could not be parsed or validated; carries the 1-based line.
struct config_error : error {
    int line;
    config_error(int line_, const std::string& what_)
        : error("config line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// An integrand or jet evaluation failed at a specific node.
struct eval_error : error {
    using error::error;
};

} // namespace slicekit
